"""Caption validation against detected objects.

Everything funnels into `validate`: detected labels and caption nouns are
mapped onto the shared category vocabulary, compared with plain set algebra,
and each caption-only term is matched against image-only terms to propose a
replacement. A caption is a foil exactly when at least one replacement is
found.
"""

import logging
from dataclasses import dataclass, field

from .config import Config
from .lexicon import SemanticNetwork
from .nlp import TaggerModel, filter_nouns, normalize, tag, tokenize

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Detection:
    label: str
    score: float | None = None
    bbox: tuple[float, float, float, float] | None = None


@dataclass(frozen=True)
class DetectionSet:
    """Objects reported for one image. Scores and boxes are carried along but
    the comparison itself never uses geometry."""

    image_id: str
    detections: tuple[Detection, ...] = ()


@dataclass(frozen=True)
class ComparisonResult:
    """The five term sets of the comparison step.

    s_inter = s_nouns & s_names, s_caption = s_nouns - s_names (foil
    candidates), s_image = s_names - s_nouns (replacement candidates).
    unmapped_nouns are caption nouns with no category anchor; they stay out
    of the set algebra.
    """

    s_nouns: frozenset[str]
    s_names: frozenset[str]
    s_inter: frozenset[str]
    s_caption: frozenset[str]
    s_image: frozenset[str]
    unmapped_nouns: frozenset[str] = frozenset()


@dataclass(frozen=True)
class Verdict:
    is_foil: bool
    corrections: dict[str, str]
    comparison: ComparisonResult
    explanation: str


def build_name_set(detections: DetectionSet, net: SemanticNetwork, config: Config) -> frozenset[str]:
    """Map detection labels onto category names (the detected-term set)."""
    names = set()
    for det in detections.detections:
        score = 1.0 if det.score is None else det.score
        if score < config.min_score:
            continue
        term = net.map_to_common_term(normalize(det.label), tau=config.tau)
        if term is None:
            log.warning("detection label %r (image %s) has no category mapping; dropped",
                        det.label, detections.image_id)
            continue
        names.add(term.name)
    return frozenset(names)


def build_noun_set(caption: str, model: TaggerModel, net: SemanticNetwork,
                   config: Config) -> tuple[frozenset[str], frozenset[str]]:
    """Extract caption nouns and map them onto category names.

    Returns (mapped category names, unmapped nouns).
    """
    tagged = tag(tokenize(caption), model)
    multiword = [name for name in net.categories if " " in name]
    nouns = filter_nouns(tagged, multiword)
    mapped, unmapped = set(), set()
    for noun in sorted(nouns):
        term = net.map_to_common_term(noun, tau=config.tau)
        if term is None:
            unmapped.add(noun)
        else:
            mapped.add(term.name)
    return frozenset(mapped), frozenset(unmapped)


def compare(s_nouns, s_names, unmapped_nouns=()) -> ComparisonResult:
    """Set algebra between caption terms and detected terms."""
    s_nouns = frozenset(s_nouns)
    s_names = frozenset(s_names)
    return ComparisonResult(
        s_nouns=s_nouns,
        s_names=s_names,
        s_inter=s_nouns & s_names,
        s_caption=s_nouns - s_names,
        s_image=s_names - s_nouns,
        unmapped_nouns=frozenset(unmapped_nouns),
    )


def propose_corrections(cmp: ComparisonResult, net: SemanticNetwork,
                        config: Config = Config()) -> dict[str, str]:
    """Pick a replacement from s_image for each replaceable foil candidate.

    Candidates qualify through the configured similarity predicate (same
    supercategory by default); the top-ranked candidate wins. Foil words with
    no qualifying candidate are dropped: an undetected but plausible caption
    noun does not make the caption a foil.
    """
    corrections: dict[str, str] = {}
    for foil in sorted(cmp.s_caption):
        if config.similar_by == "path":
            anchor = net.categories[foil].synset_id
            scored = []
            for name in cmp.s_image:
                sim = net.path_similarity(anchor, net.categories[name].synset_id)
                if sim is not None and sim >= config.similar_path_tau:
                    scored.append((name, sim))
            scored.sort(key=lambda pair: (-pair[1], pair[0]))
            ranked = scored
        else:
            ranked = [(term.name, sim) for term, sim in net.rank_candidates(foil, cmp.s_image)]
        if ranked:
            corrections[foil] = ranked[0][0]
    return corrections


def _explain(verdict_is_foil, corrections, cmp) -> str:
    def fmt(values):
        return "{" + ", ".join(sorted(values)) + "}" if values else "{}"

    lines = [
        f"caption terms: {fmt(cmp.s_nouns)}; detected terms: {fmt(cmp.s_names)}; "
        f"confirmed by both: {fmt(cmp.s_inter)}"
    ]
    if cmp.unmapped_nouns:
        lines.append(f"nouns without a category anchor were ignored: {fmt(cmp.unmapped_nouns)}")
    if verdict_is_foil:
        for foil, replacement in corrections.items():
            lines.append(
                f"'{foil}' appears in the caption but was not detected; "
                f"'{replacement}' was detected instead and is a plausible substitute "
                f"-> replace '{foil}' with '{replacement}'"
            )
        lines.append("verdict: foil")
    else:
        if cmp.s_caption:
            lines.append(
                f"caption-only terms {fmt(cmp.s_caption)} have no plausible detected "
                f"substitute; treating them as detector misses"
            )
        lines.append("verdict: correct")
    return "\n".join(lines)


def validate(detections: DetectionSet, caption: str, model: TaggerModel,
             net: SemanticNetwork, config: Config = Config()) -> Verdict:
    """Classify a caption as correct or foil given detected objects."""
    s_names = build_name_set(detections, net, config)
    s_nouns, unmapped = build_noun_set(caption, model, net, config)
    cmp = compare(s_nouns, s_names, unmapped)
    corrections = propose_corrections(cmp, net, config)
    is_foil = bool(corrections)
    return Verdict(
        is_foil=is_foil,
        corrections=corrections,
        comparison=cmp,
        explanation=_explain(is_foil, corrections, cmp),
    )
