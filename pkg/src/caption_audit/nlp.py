"""Caption text processing: tokenizer, POS tagger and noun extraction.

The tagger is a greedy averaged perceptron trained on a packaged corpus of
caption-style sentences. It is deliberately self-contained: no external
corpora or model downloads, and training is deterministic for a fixed
(corpus, iterations, seed) triple.
"""

import hashlib
import json
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .errors import ModelFormatError

MODEL_FORMAT_VERSION = 1

# tags treated as nouns when building the caption noun set
NOUN_TAGS = frozenset({"NN", "NNS", "NNP", "NNPS"})

_PUNCT = set(".,!?;:\"'()")

_START = ["-START-", "-START2-"]
_END = ["-END-", "-END2-"]

# plural -> singular for forms the suffix rules cannot reach; identity entries
# pin invariant plurals so the -s rule leaves them alone
_IRREGULAR_NOUNS = {
    "men": "man",
    "women": "woman",
    "people": "person",
    "children": "child",
    "teeth": "tooth",
    "feet": "foot",
    "mice": "mouse",
    "geese": "goose",
    "buses": "bus",
    "tvs": "tv",
    "sheep": "sheep",
    "scissors": "scissors",
}

_VES_TO_FE = {"knives": "knife", "wives": "wife", "lives": "life"}
_VES_TO_F = {"wolves", "leaves", "shelves", "scarves", "calves", "halves", "loaves", "thieves", "hooves"}


@dataclass(frozen=True)
class Token:
    """A caption word with its lowercase form."""

    surface: str
    normalized: str


@dataclass(frozen=True)
class TaggedToken:
    token: Token
    tag: str


def _make_token(surface: str) -> Token:
    return Token(surface=surface, normalized=surface.lower())


def tokenize(caption: str) -> list[Token]:
    """Split a caption on whitespace, peeling boundary punctuation into tokens.

    Leading/trailing characters from .,!?;:"'() become tokens of their own;
    interior punctuation (hyphens, apostrophes) stays inside the word. No
    non-whitespace character is ever dropped.
    """
    tokens: list[Token] = []
    for chunk in caption.split():
        leading: list[str] = []
        trailing: list[str] = []
        start, end = 0, len(chunk)
        while start < end and chunk[start] in _PUNCT:
            leading.append(chunk[start])
            start += 1
        while end > start and chunk[end - 1] in _PUNCT:
            trailing.append(chunk[end - 1])
            end -= 1
        tokens.extend(_make_token(c) for c in leading)
        if end > start:
            tokens.append(_make_token(chunk[start:end]))
        tokens.extend(_make_token(c) for c in reversed(trailing))
    return tokens


def split_sentences(text: str) -> list[str]:
    """Crude sentence split on ./!/? — captions are single sentences anyway."""
    out, current = [], []
    for ch in text:
        current.append(ch)
        if ch in ".!?":
            sentence = "".join(current).strip()
            if sentence:
                out.append(sentence)
            current = []
    tail = "".join(current).strip()
    if tail:
        out.append(tail)
    return out


def normalize(word: str) -> str:
    """Lowercase and singularize a noun with rule-based suffix handling."""
    w = word.lower()
    if w in _IRREGULAR_NOUNS:
        return _IRREGULAR_NOUNS[w]
    if w in _VES_TO_FE:
        return _VES_TO_FE[w]
    if w in _VES_TO_F:
        return w[:-3] + "f"
    if w.endswith("ies") and len(w) > 4:
        return w[:-3] + "y"
    if w.endswith(("sses", "xes", "zes", "ches", "shes")):
        return w[:-2]
    if w.endswith("s") and not w.endswith(("ss", "us", "is")) and len(w) > 3:
        return w[:-1]
    return w


def filter_nouns(tagged, multiword_terms=()) -> set[str]:
    """Collect normalized nouns from tagged tokens.

    Adjacent noun pairs whose normalized forms join into a known multi-word
    term (e.g. "traffic lights" -> "traffic light") merge into that term
    before singleton nouns are collected. Duplicates collapse into a set.
    """
    pair_table: dict[tuple[str, str], str] = {}
    for name in multiword_terms:
        parts = name.split()
        if len(parts) == 2:
            pair_table[(normalize(parts[0]), normalize(parts[1]))] = name

    nouns: set[str] = set()
    i = 0
    while i < len(tagged):
        current = tagged[i]
        if (
            pair_table
            and i + 1 < len(tagged)
            and current.tag in NOUN_TAGS
            and tagged[i + 1].tag in NOUN_TAGS
        ):
            key = (normalize(current.token.normalized), normalize(tagged[i + 1].token.normalized))
            if key in pair_table:
                nouns.add(pair_table[key])
                i += 2
                continue
        if current.tag in NOUN_TAGS:
            nouns.add(normalize(current.token.normalized))
        i += 1
    return nouns


# ---------------------------------------------------------------------------
# averaged perceptron tagger
# ---------------------------------------------------------------------------


@dataclass
class TaggerModel:
    """Weights and lookup tables of a trained tagger.

    weights maps feature -> {tag: weight}; tagdict short-circuits words whose
    tag was unambiguous in training. Immutable by convention after training.
    """

    weights: dict[str, dict[str, float]]
    tagdict: dict[str, str]
    classes: list[str]
    metadata: dict = field(default_factory=dict)


def _word_shape(surface: str) -> str:
    shape = []
    for ch in surface[:8]:
        if ch.isupper():
            shape.append("X")
        elif ch.islower():
            shape.append("x")
        elif ch.isdigit():
            shape.append("d")
        else:
            shape.append(ch)
    return "".join(shape)


def _features(i, word, surface, context, prev, prev2):
    """Feature set for one tagging decision; all features are binary."""
    feats = {
        "word=" + word,
        "shape=" + _word_shape(surface),
        "suf1=" + word[-1:],
        "suf2=" + word[-2:],
        "suf3=" + word[-3:],
        "prev=" + context[i - 1],
        "next=" + context[i + 1],
        "ptag=" + prev,
        "p2tag=" + prev2,
        "ptags=" + prev + " " + prev2,
    }
    return feats


def _predict(feats, weights, classes):
    scores = dict.fromkeys(classes, 0.0)
    for feat in feats:
        per_tag = weights.get(feat)
        if not per_tag:
            continue
        for tag, w in per_tag.items():
            scores[tag] += w
    # ties break toward the alphabetically first tag
    return max(sorted(scores), key=scores.__getitem__)


def _context(words: list[str]) -> list[str]:
    return _START + words + _END


def tag(tokens: list[Token], model: TaggerModel) -> list[TaggedToken]:
    """Greedy left-to-right tagging; tagdict hits bypass the perceptron."""
    output: list[TaggedToken] = []
    context = _context([t.normalized for t in tokens])
    prev, prev2 = _START
    for i, token in enumerate(tokens):
        word = token.normalized
        guess = model.tagdict.get(word)
        if guess is None:
            feats = _features(i + len(_START), word, token.surface, context, prev, prev2)
            guess = _predict(feats, model.weights, model.classes)
        output.append(TaggedToken(token=token, tag=guess))
        prev2 = prev
        prev = guess
    return output


def _build_tagdict(corpus, freq_threshold=20, ambiguity_threshold=0.97):
    counts: dict[str, Counter] = defaultdict(Counter)
    for sentence in corpus:
        for word, t in sentence:
            counts[word.lower()][t] += 1
    tagdict = {}
    for word, tag_counts in counts.items():
        n = sum(tag_counts.values())
        mode_tag, mode_n = max(sorted(tag_counts.items()), key=lambda kv: kv[1])
        if n >= freq_threshold and mode_n / n >= ambiguity_threshold:
            tagdict[word] = mode_tag
    return tagdict


def corpus_checksum(corpus) -> str:
    payload = "\n".join(
        " ".join(f"{word}_{t}" for word, t in sentence) for sentence in corpus
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def train_tagger(corpus, iterations: int = 5, seed: int = 42) -> TaggerModel:
    """Train an averaged perceptron tagger.

    corpus is a list of sentences, each a list of (word, tag) pairs. Training
    is greedy left-to-right with per-token updates; the returned weights are
    the running average over all update steps. Sentence order is reshuffled
    each iteration by a generator seeded with `seed`, so identical inputs
    yield identical models.
    """
    if not corpus:
        raise ValueError("training corpus is empty")
    for idx, sentence in enumerate(corpus):
        if not sentence:
            raise ValueError(f"sentence {idx} in training corpus is empty")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")

    sentences = [[(w.lower(), t) for w, t in sentence] for sentence in corpus]
    tagdict = _build_tagdict(sentences)
    classes = sorted({t for sentence in sentences for _, t in sentence})

    weights: dict[str, dict[str, float]] = {}
    totals: dict[tuple[str, str], float] = defaultdict(float)
    tstamps: dict[tuple[str, str], int] = defaultdict(int)
    step = 0

    def upd(tag_, feat, value):
        nonlocal step
        key = (feat, tag_)
        per_tag = weights.setdefault(feat, {})
        current = per_tag.get(tag_, 0.0)
        totals[key] += (step - tstamps[key]) * current
        tstamps[key] = step
        per_tag[tag_] = current + value

    rng = random.Random(seed)
    order = list(range(len(sentences)))
    for _ in range(iterations):
        rng.shuffle(order)
        for sentence_idx in order:
            sentence = sentences[sentence_idx]
            words = [w for w, _ in sentence]
            context = _context(words)
            prev, prev2 = _START
            for i, (word, gold) in enumerate(sentence):
                guess = tagdict.get(word)
                if guess is None:
                    feats = _features(i + len(_START), word, word, context, prev, prev2)
                    guess = _predict(feats, weights, classes)
                    step += 1
                    if guess != gold:
                        for feat in feats:
                            upd(gold, feat, 1.0)
                            upd(guess, feat, -1.0)
                prev2 = prev
                prev = guess

    # average of the weight state after every update step 1..T; a value set at
    # step s stays live for steps s..T, hence the +1 on the closing span
    averaged: dict[str, dict[str, float]] = {}
    for feat, per_tag in weights.items():
        for tag_, w in per_tag.items():
            key = (feat, tag_)
            total = totals[key] + (step - tstamps[key] + 1) * w
            avg = round(total / step, 6) if step else 0.0
            if avg:
                averaged.setdefault(feat, {})[tag_] = avg

    metadata = {
        "iterations": iterations,
        "seed": seed,
        "sentences": len(sentences),
        "corpus_sha256": corpus_checksum(sentences),
    }
    return TaggerModel(weights=averaged, tagdict=tagdict, classes=classes, metadata=metadata)


# ---------------------------------------------------------------------------
# model and corpus serialization
# ---------------------------------------------------------------------------


def _canonical_payload(model: TaggerModel) -> str:
    body = {
        "format_version": MODEL_FORMAT_VERSION,
        "metadata": model.metadata,
        "classes": model.classes,
        "tagdict": model.tagdict,
        "weights": model.weights,
    }
    return json.dumps(body, sort_keys=True, separators=(",", ":"))


def model_to_bytes(model: TaggerModel) -> bytes:
    payload = _canonical_payload(model)
    checksum = hashlib.sha256(payload.encode("utf-8")).hexdigest()
    return json.dumps(
        {"checksum": checksum, "payload": json.loads(payload)},
        sort_keys=True,
        separators=(",", ":"),
    ).encode("utf-8")


def model_from_bytes(data: bytes) -> TaggerModel:
    try:
        document = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ModelFormatError(f"model file is not valid JSON: {exc}") from exc
    if not isinstance(document, dict) or "payload" not in document or "checksum" not in document:
        raise ModelFormatError("model file is missing payload or checksum")
    payload = document["payload"]
    version = payload.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ModelFormatError(
            f"unsupported model format version {version!r} (expected {MODEL_FORMAT_VERSION})"
        )
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    checksum = hashlib.sha256(canonical.encode("utf-8")).hexdigest()
    if checksum != document["checksum"]:
        raise ModelFormatError("model checksum mismatch; file is corrupt")
    model = TaggerModel(
        weights=payload["weights"],
        tagdict=payload["tagdict"],
        classes=list(payload["classes"]),
        metadata=payload.get("metadata", {}),
    )
    missing = {t for t in model.tagdict.values() if t not in model.classes}
    missing |= {t for per_tag in model.weights.values() for t in per_tag if t not in model.classes}
    if missing:
        raise ModelFormatError(f"model references tags outside its tagset: {sorted(missing)}")
    return model


def save_model(model: TaggerModel, path) -> None:
    with open(path, "wb") as fh:
        fh.write(model_to_bytes(model))


def load_model(path) -> TaggerModel:
    with open(path, "rb") as fh:
        return model_from_bytes(fh.read())


def load_tagged_corpus(source) -> list[list[tuple[str, str]]]:
    """Read a corpus of `word_TAG` sentences, one sentence per line."""
    if hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        with open(source, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    corpus = []
    for line_no, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        sentence = []
        for item in line.split():
            word, sep, t = item.rpartition("_")
            if not sep or not word or not t:
                raise ValueError(f"line {line_no}: malformed token {item!r} (expected word_TAG)")
            sentence.append((word, t))
        corpus.append(sentence)
    return corpus
