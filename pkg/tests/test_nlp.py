import json
import random
import string

import pytest

from caption_audit.errors import ModelFormatError
from caption_audit.nlp import (
    TaggedToken,
    Token,
    filter_nouns,
    load_tagged_corpus,
    model_from_bytes,
    model_to_bytes,
    normalize,
    split_sentences,
    tag,
    tokenize,
    train_tagger,
)

from conftest import HELDOUT_CORPUS_PATH, TRAIN_CORPUS_PATH


def surfaces(tokens):
    return [t.surface for t in tokens]


# ---- tokenize ----


def test_tokenize_plain_caption():
    assert surfaces(tokenize("a man riding a motorcycle")) == ["a", "man", "riding", "a", "motorcycle"]


def test_tokenize_empty():
    assert tokenize("") == []


def test_tokenize_separates_trailing_punctuation():
    tokens = tokenize("A woman cutting a cake.")
    assert [t.normalized for t in tokens] == ["a", "woman", "cutting", "a", "cake", "."]
    assert tokens[0].surface == "A"


def test_tokenize_peels_nested_boundary_punctuation():
    assert surfaces(tokenize('"(hello!)" she said...')) == [
        '"', "(", "hello", "!", ")", '"', "she", "said", ".", ".", ".",
    ]


def test_tokenize_keeps_interior_punctuation():
    assert surfaces(tokenize("a man's well-worn hat")) == ["a", "man's", "well-worn", "hat"]


def test_tokenize_never_drops_characters():
    rng = random.Random(3)
    alphabet = string.ascii_letters + ".,!?;:\"'()- \t"
    for _ in range(300):
        text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 40)))
        rejoined = "".join(t.surface for t in tokenize(text))
        assert rejoined == "".join(text.split())


def test_split_sentences():
    assert split_sentences("A dog. A cat!") == ["A dog.", "A cat!"]
    assert split_sentences("no terminator") == ["no terminator"]


# ---- normalize ----


@pytest.mark.parametrize(
    "word,expected",
    [
        ("Women", "woman"),
        ("man", "man"),
        ("pizzas", "pizza"),
        ("people", "person"),
        ("children", "child"),
        ("mice", "mouse"),
        ("buses", "bus"),
        ("knives", "knife"),
        ("wolves", "wolf"),
        ("puppies", "puppy"),
        ("ties", "tie"),
        ("skies", "sky"),
        ("glasses", "glass"),
        ("boxes", "box"),
        ("sandwiches", "sandwich"),
        ("dishes", "dish"),
        ("horses", "horse"),
        ("vases", "vase"),
        ("glass", "glass"),
        ("bus", "bus"),
        ("sheep", "sheep"),
        ("scissors", "scissors"),
        ("TVs", "tv"),
    ],
)
def test_normalize_cases(word, expected):
    assert normalize(word) == expected


def test_normalize_idempotent_over_fixture_vocabulary(net):
    vocabulary = set(net.categories)
    for synset in net.synsets.values():
        vocabulary.update(synset.lemmas)
    for word in sorted(vocabulary):
        assert normalize(normalize(word)) == normalize(word), word


# ---- filter_nouns ----


def tagged(*pairs):
    return [TaggedToken(token=Token(w, w.lower()), tag=t) for w, t in pairs]


def test_filter_nouns_keeps_nouns_only():
    result = filter_nouns(
        tagged(("a", "DT"), ("man", "NN"), ("riding", "VBG"), ("a", "DT"), ("motorcycle", "NN"))
    )
    assert result == {"man", "motorcycle"}


def test_filter_nouns_all_verbs_is_empty():
    assert filter_nouns(tagged(("running", "VBG"), ("jumping", "VBG"))) == set()


def test_filter_nouns_merges_multiword_categories():
    result = filter_nouns(
        tagged(
            ("two", "CD"), ("traffic", "NN"), ("lights", "NNS"),
            ("near", "IN"), ("the", "DT"), ("dogs", "NNS"),
        ),
        multiword_terms=["traffic light", "stop sign"],
    )
    assert result == {"traffic light", "dog"}


def test_filter_nouns_collapses_duplicates():
    result = filter_nouns(tagged(("dogs", "NNS"), ("dog", "NN"), ("Dog", "NNP")))
    assert result == {"dog"}


def test_filter_nouns_result_is_normalized_subset():
    items = tagged(("cats", "NNS"), ("ran", "VBD"), ("home", "NN"))
    result = filter_nouns(items)
    allowed = {normalize(t.token.normalized) for t in items}
    assert result <= allowed


# ---- tagger ----


def test_tag_matches_textbook_example(model):
    tokens = tokenize("a man riding a motorcycle")
    got = [(t.token.normalized, t.tag) for t in tag(tokens, model)]
    assert got == [("a", "DT"), ("man", "NN"), ("riding", "VBG"), ("a", "DT"), ("motorcycle", "NN")]


def test_tag_empty_and_length_property(model):
    assert tag([], model) == []
    for caption in ["a dog", "two dogs play in the park .", "there is a bottle on the table"]:
        tokens = tokenize(caption)
        assert len(tag(tokens, model)) == len(tokens)


def test_single_sentence_memorization():
    corpus = [[("a", "DT"), ("tiny", "JJ"), ("example", "NN")]]
    model = train_tagger(corpus, iterations=1, seed=0)
    tokens = [Token(w, w) for w, _ in corpus[0]]
    assert [t.tag for t in tag(tokens, model)] == ["DT", "JJ", "NN"]


def test_training_is_deterministic():
    corpus = load_tagged_corpus(TRAIN_CORPUS_PATH)[:80]
    a = train_tagger(corpus, iterations=2, seed=7)
    b = train_tagger(corpus, iterations=2, seed=7)
    assert model_to_bytes(a) == model_to_bytes(b)


def test_different_seed_changes_nothing_structural():
    corpus = load_tagged_corpus(TRAIN_CORPUS_PATH)[:80]
    a = train_tagger(corpus, iterations=2, seed=7)
    b = train_tagger(corpus, iterations=2, seed=8)
    assert a.classes == b.classes
    assert a.tagdict == b.tagdict


def test_empty_corpus_is_a_usage_error():
    with pytest.raises(ValueError):
        train_tagger([], iterations=1, seed=0)
    with pytest.raises(ValueError):
        train_tagger([[]], iterations=1, seed=0)


def test_heldout_accuracy_gate(model):
    corpus = load_tagged_corpus(HELDOUT_CORPUS_PATH)
    correct = total = 0
    for sentence in corpus:
        tokens = [Token(surface=w, normalized=w.lower()) for w, _ in sentence]
        for (word, gold), got in zip(sentence, tag(tokens, model)):
            total += 1
            correct += got.tag == gold
    assert total >= 1000
    assert correct / total >= 0.90


def test_model_tags_stay_in_closed_tagset(model):
    assert set(model.tagdict.values()) <= set(model.classes)
    for per_tag in model.weights.values():
        assert set(per_tag) <= set(model.classes)


# ---- model serialization ----


def test_model_round_trips_bit_exactly(model):
    data = model_to_bytes(model)
    again = model_to_bytes(model_from_bytes(data))
    assert data == again


def test_packaged_model_file_is_canonical():
    from conftest import MODEL_PATH

    raw = MODEL_PATH.read_bytes()
    assert model_to_bytes(model_from_bytes(raw)) == raw


def test_corrupt_checksum_is_rejected(model):
    document = json.loads(model_to_bytes(model))
    document["payload"]["tagdict"]["hacked"] = "NN"
    with pytest.raises(ModelFormatError, match="checksum"):
        model_from_bytes(json.dumps(document).encode())


def test_wrong_format_version_is_rejected(model):
    document = json.loads(model_to_bytes(model))
    document["payload"]["format_version"] = 99
    with pytest.raises(ModelFormatError, match="version"):
        model_from_bytes(json.dumps(document).encode())


def test_garbage_model_file_is_rejected():
    with pytest.raises(ModelFormatError):
        model_from_bytes(b"not json at all")
    with pytest.raises(ModelFormatError):
        model_from_bytes(b'{"no": "payload"}')


def test_malformed_corpus_line_is_rejected(tmp_path):
    path = tmp_path / "corpus.txt"
    path.write_text("a_DT dog_NN\nbroken token\n")
    with pytest.raises(ValueError, match="line 2"):
        load_tagged_corpus(path)
