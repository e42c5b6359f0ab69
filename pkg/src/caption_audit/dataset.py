"""Loaders for evaluation inputs: annotations, category tables, detections.

Two annotation layouts are accepted: the toolkit's own JSON (version 1,
"examples" list) and the published FOIL-style layout ("annotations" list with
foil/foil_word/target_word fields), auto-detected from the top-level keys.
"""

import csv
import json
from dataclasses import dataclass

from .errors import DataFormatError
from .pipeline import Detection, DetectionSet

ANNOTATIONS_VERSION = 1
DETECTIONS_VERSION = 1


@dataclass(frozen=True)
class EvalExample:
    """One gold-labelled caption for one image."""

    example_id: str
    image_id: str
    caption: str
    gold_is_foil: bool
    gold_foil_word: str | None = None
    gold_target_word: str | None = None

    def __post_init__(self):
        if self.gold_is_foil:
            if not self.gold_foil_word or not self.gold_target_word:
                raise DataFormatError(
                    f"example {self.example_id!r}: foil examples need both gold_foil_word "
                    f"and gold_target_word"
                )
            if self.gold_foil_word == self.gold_target_word:
                raise DataFormatError(
                    f"example {self.example_id!r}: gold foil and target words must differ"
                )
        elif self.gold_foil_word or self.gold_target_word:
            raise DataFormatError(
                f"example {self.example_id!r}: correct examples must not carry gold words"
            )


@dataclass(frozen=True)
class CategoryTable:
    """(name, supercategory) rows; names unique."""

    rows: tuple[tuple[str, str], ...]

    @property
    def names(self):
        return [name for name, _ in self.rows]

    def supercategory_of(self, name):
        for row_name, supercategory in self.rows:
            if row_name == name:
                return supercategory
        raise KeyError(name)


def _read_json(source):
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"not valid JSON: {exc}") from exc


def _require(record, index, field, expected):
    value = record.get(field)
    if not isinstance(value, expected) or (expected is str and not value):
        raise DataFormatError(f"record {index}: field {field!r} missing or invalid")
    return value


def load_annotations(source) -> list[EvalExample]:
    """Load evaluation examples, auto-detecting the document layout.

    Returns records sorted by example_id. Schema violations raise
    DataFormatError naming the offending record index and field.
    """
    document = _read_json(source)
    if not isinstance(document, dict):
        raise DataFormatError("annotations document must be a JSON object")
    if "examples" in document:
        examples = _load_native_annotations(document)
    elif "annotations" in document:
        examples = _load_foil_style_annotations(document)
    else:
        raise DataFormatError("unrecognized annotations layout: expected 'examples' or 'annotations' key")

    seen = set()
    for ex in examples:
        if ex.example_id in seen:
            raise DataFormatError(f"duplicate example_id {ex.example_id!r}")
        seen.add(ex.example_id)
    return sorted(examples, key=lambda ex: ex.example_id)


def _load_native_annotations(document):
    version = document.get("version")
    if version != ANNOTATIONS_VERSION:
        raise DataFormatError(f"unsupported annotations version {version!r}")
    records = document["examples"]
    if not isinstance(records, list):
        raise DataFormatError("'examples' must be a list")
    examples = []
    for index, record in enumerate(records):
        if not isinstance(record, dict):
            raise DataFormatError(f"record {index}: not an object")
        gold_is_foil = record.get("gold_is_foil")
        if not isinstance(gold_is_foil, bool):
            raise DataFormatError(f"record {index}: field 'gold_is_foil' missing or invalid")
        for optional in ("gold_foil_word", "gold_target_word"):
            value = record.get(optional)
            if value is not None and not isinstance(value, str):
                raise DataFormatError(f"record {index}: field {optional!r} must be a string or null")
        try:
            examples.append(
                EvalExample(
                    example_id=_require(record, index, "example_id", str),
                    image_id=_require(record, index, "image_id", str),
                    caption=_require(record, index, "caption", str),
                    gold_is_foil=gold_is_foil,
                    gold_foil_word=record.get("gold_foil_word"),
                    gold_target_word=record.get("gold_target_word"),
                )
            )
        except DataFormatError as exc:
            raise DataFormatError(f"record {index}: {exc}") from None
    return examples


def _load_foil_style_annotations(document):
    records = document["annotations"]
    if not isinstance(records, list):
        raise DataFormatError("'annotations' must be a list")
    examples = []
    for index, record in enumerate(records):
        if not isinstance(record, dict):
            raise DataFormatError(f"record {index}: not an object")
        foil = record.get("foil")
        if not isinstance(foil, bool):
            raise DataFormatError(f"record {index}: field 'foil' missing or invalid")
        image_id = record.get("image_id")
        if isinstance(image_id, int):
            image_id = str(image_id)
        if not isinstance(image_id, str) or not image_id:
            raise DataFormatError(f"record {index}: field 'image_id' missing or invalid")
        caption = _require(record, index, "caption", str)
        example_id = record.get("id")
        example_id = str(example_id) if example_id is not None else f"{image_id}#{index}"
        foil_word = target_word = None
        if foil:
            foil_word = _require(record, index, "foil_word", str)
            target_word = _require(record, index, "target_word", str)
        try:
            examples.append(
                EvalExample(
                    example_id=example_id,
                    image_id=image_id,
                    caption=caption,
                    gold_is_foil=foil,
                    gold_foil_word=foil_word,
                    gold_target_word=target_word,
                )
            )
        except DataFormatError as exc:
            raise DataFormatError(f"record {index}: {exc}") from None
    return examples


def dump_annotations(examples) -> dict:
    """Serialize examples back to the native layout (load round-trips)."""
    records = []
    for ex in examples:
        record = {
            "example_id": ex.example_id,
            "image_id": ex.image_id,
            "caption": ex.caption,
            "gold_is_foil": ex.gold_is_foil,
        }
        if ex.gold_is_foil:
            record["gold_foil_word"] = ex.gold_foil_word
            record["gold_target_word"] = ex.gold_target_word
        records.append(record)
    return {"version": ANNOTATIONS_VERSION, "examples": records}


def load_categories(source) -> CategoryTable:
    """Read a `name,supercategory` CSV with a header row."""
    if hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        with open(source, encoding="utf-8", newline="") as fh:
            lines = fh.read().splitlines()
    reader = csv.reader(lines)
    try:
        header = next(reader)
    except StopIteration:
        raise DataFormatError("categories file is empty") from None
    if [h.strip().lower() for h in header] != ["name", "supercategory"]:
        raise DataFormatError(f"categories header must be 'name,supercategory', got {header!r}")
    rows = []
    seen = set()
    for index, row in enumerate(reader):
        if not row:
            continue
        if len(row) != 2 or not row[0].strip() or not row[1].strip():
            raise DataFormatError(f"categories row {index}: expected two non-empty fields, got {row!r}")
        name, supercategory = row[0].strip().lower(), row[1].strip().lower()
        if name in seen:
            raise DataFormatError(f"categories row {index}: duplicate name {name!r}")
        seen.add(name)
        rows.append((name, supercategory))
    return CategoryTable(rows=tuple(rows))


def _object_pairs_no_duplicates(pairs):
    result = {}
    for key, value in pairs:
        if key in result:
            raise DataFormatError(f"duplicate key {key!r} in detections document")
        result[key] = value
    return result


def load_detections(source) -> dict[str, DetectionSet]:
    """Read a version-1 detections JSON into per-image DetectionSets.

    Unknown per-detection fields are ignored; structural problems (bad score,
    negative box size, duplicate image ids) raise DataFormatError.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    try:
        document = json.loads(text, object_pairs_hook=_object_pairs_no_duplicates)
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise DataFormatError("detections document must be a JSON object")
    if document.get("version") != DETECTIONS_VERSION:
        raise DataFormatError(f"unsupported detections version {document.get('version')!r}")
    mapping = document.get("detections")
    if not isinstance(mapping, dict):
        raise DataFormatError("'detections' must be an object keyed by image id")

    out: dict[str, DetectionSet] = {}
    for image_id, items in mapping.items():
        if not isinstance(items, list):
            raise DataFormatError(f"image {image_id!r}: detections must be a list")
        dets = []
        for index, item in enumerate(items):
            if not isinstance(item, dict):
                raise DataFormatError(f"image {image_id!r}, detection {index}: not an object")
            label = item.get("label")
            if not isinstance(label, str) or not label:
                raise DataFormatError(f"image {image_id!r}, detection {index}: field 'label' missing or invalid")
            score = item.get("score")
            if score is not None:
                if not isinstance(score, (int, float)) or isinstance(score, bool) or not 0.0 <= score <= 1.0:
                    raise DataFormatError(f"image {image_id!r}, detection {index}: score must be in [0, 1]")
                score = float(score)
            bbox = item.get("bbox")
            if bbox is not None:
                if (
                    not isinstance(bbox, list)
                    or len(bbox) != 4
                    or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in bbox)
                ):
                    raise DataFormatError(f"image {image_id!r}, detection {index}: bbox must be [x, y, w, h]")
                if bbox[2] < 0 or bbox[3] < 0:
                    raise DataFormatError(f"image {image_id!r}, detection {index}: bbox w/h must be non-negative")
                bbox = tuple(float(v) for v in bbox)
            dets.append(Detection(label=label, score=score, bbox=bbox))
        out[image_id] = DetectionSet(image_id=image_id, detections=tuple(dets))
    return out


def dump_detections(detections: dict[str, DetectionSet]) -> dict:
    """Serialize detection sets back to the version-1 layout."""
    mapping = {}
    for image_id in detections:
        items = []
        for det in detections[image_id].detections:
            item = {"label": det.label}
            if det.score is not None:
                item["score"] = det.score
            if det.bbox is not None:
                item["bbox"] = list(det.bbox)
            items.append(item)
        mapping[image_id] = items
    return {"version": DETECTIONS_VERSION, "detections": mapping}
