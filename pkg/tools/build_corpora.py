#!/usr/bin/env python3
"""Regenerate the packaged tagger corpora and the pretrained model.

Deterministic: a fixed seed produces byte-identical corpus files and model.
Run from the repository root:

    python tools/build_corpora.py
"""

import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from caption_audit.nlp import load_tagged_corpus, save_model, tag, train_tagger, Token  # noqa: E402

SEED = 20240613
TRAIN_SIZE = 500
HELDOUT_SIZE = 200

TRAIN_PATH = ROOT / "src" / "caption_audit" / "data" / "corpus_train.txt"
HELDOUT_PATH = ROOT / "tests" / "data" / "corpus_heldout.txt"
MODEL_PATH = ROOT / "src" / "caption_audit" / "data" / "tagger_model.json"

# caption sentences the pipeline's documentation leans on; always in training
PINNED = [
    "a_DT man_NN riding_VBG a_DT motorcycle_NN",
    "a_DT woman_NN cutting_VBG a_DT cake_NN ._.",
    "the_DT woman_NN is_VBZ cutting_VBG a_DT pizza_NN",
    "a_DT man_NN riding_VBG a_DT bicycle_NN",
    "two_CD traffic_NN lights_NNS near_IN the_DT dogs_NNS",
    "a_DT woman_NN cutting_VBG a_DT pizza_NN",
    "a_DT man_NN walking_VBG a_DT cat_NN ._.",
    "a_DT dog_NN catching_VBG a_DT frisbee_NN ._.",
    "a_DT man_NN standing_VBG near_IN a_DT truck_NN ._.",
]

SINGULAR = [
    "man", "woman", "child", "boy", "girl", "person", "rider", "player",
    "dog", "puppy", "cat", "kitten", "horse", "cow", "bird", "duck",
    "elephant", "bear", "zebra", "giraffe", "rabbit", "monkey", "goat",
    "car", "truck", "bus", "train", "boat", "bicycle", "motorcycle",
    "airplane", "helicopter", "scooter", "van",
    "pizza", "cake", "sandwich", "donut", "banana", "apple", "orange",
    "carrot", "salad", "burger", "taco", "muffin",
    "bottle", "cup", "bowl", "glass", "fork", "knife", "spoon", "plate",
    "chair", "couch", "bench", "table", "desk", "bed", "toilet", "sink",
    "oven", "microwave", "toaster", "refrigerator", "laptop", "keyboard",
    "mouse", "tv", "phone", "camera", "clock", "book", "vase",
    "umbrella", "backpack", "handbag", "suitcase", "tie", "hat", "jacket",
    "frisbee", "kite", "skateboard", "surfboard", "snowboard", "ball",
    "racket", "helmet",
    "street", "road", "park", "field", "beach", "mountain", "river",
    "lake", "tree", "flower", "garden", "house", "building", "window",
    "door", "wall", "fence", "bridge", "kitchen", "bathroom", "bedroom",
    "office", "market", "zoo", "farm", "station", "sidewalk", "harbor",
]

# only nouns whose plural survives the round trip through normalize()
PLURAL = {
    "man": "men", "woman": "women", "child": "children", "person": "people",
    "dog": "dogs", "puppy": "puppies", "cat": "cats", "kitten": "kittens",
    "horse": "horses", "cow": "cows", "bird": "birds", "duck": "ducks",
    "elephant": "elephants", "bear": "bears", "zebra": "zebras",
    "giraffe": "giraffes", "rabbit": "rabbits", "monkey": "monkeys",
    "car": "cars", "truck": "trucks", "bus": "buses", "train": "trains",
    "boat": "boats", "bicycle": "bicycles", "motorcycle": "motorcycles",
    "pizza": "pizzas", "cake": "cakes", "sandwich": "sandwiches",
    "donut": "donuts", "banana": "bananas", "apple": "apples",
    "orange": "oranges", "carrot": "carrots",
    "bottle": "bottles", "cup": "cups", "glass": "glasses",
    "fork": "forks", "knife": "knives", "spoon": "spoons", "plate": "plates",
    "chair": "chairs", "couch": "couches", "bench": "benches",
    "table": "tables", "book": "books", "vase": "vases",
    "umbrella": "umbrellas", "kite": "kites", "ball": "balls",
    "tree": "trees", "flower": "flowers", "house": "houses",
    "window": "windows", "building": "buildings", "light": "lights",
}

MULTIWORD = [
    ("traffic", "light"), ("stop", "sign"), ("fire", "hydrant"),
    ("parking", "meter"), ("sports", "ball"), ("baseball", "bat"),
    ("baseball", "glove"), ("tennis", "racket"), ("wine", "glass"),
    ("hot", "dog"), ("potted", "plant"), ("dining", "table"),
    ("cell", "phone"), ("teddy", "bear"), ("hair", "drier"),
]

VBG = ["riding", "cutting", "holding", "eating", "walking", "standing",
       "sitting", "playing", "catching", "wearing", "carrying", "watching",
       "feeding", "chasing", "jumping", "crossing", "pushing", "pulling",
       "drinking", "reading", "using", "driving", "flying", "throwing"]
VBZ = ["sits", "stands", "rests", "waits", "sleeps", "grazes"]
VBP = ["sit", "stand", "play", "graze", "rest", "wait", "walk", "run"]
VBD = ["ate", "held", "carried", "watched", "chased", "rode", "crossed"]
VBN = ["parked", "covered", "stacked", "filled", "topped", "stopped"]
JJ = ["small", "large", "big", "red", "blue", "green", "white", "black",
      "yellow", "brown", "old", "young", "busy", "empty", "wooden", "little"]
IN = ["in", "on", "near", "by", "under", "beside", "behind", "at", "over"]
CD = ["two", "three", "four", "five"]
DT = ["a", "the"]
PRPS = ["his", "her"]


def build_sentences(rng):
    def w(word, tag_):
        return f"{word}_{tag_}"

    def dt():
        return w(rng.choice(DT), "DT")

    def nn():
        return w(rng.choice(SINGULAR), "NN")

    def nns():
        singular = rng.choice(sorted(PLURAL))
        return w(PLURAL[singular], "NNS")

    def mw():
        first, second = rng.choice(MULTIWORD)
        return f"{w(first, 'NN')} {w(second, 'NN')}"

    def mw_plural():
        first, second = rng.choice([p for p in MULTIWORD if p[1] in PLURAL])
        return f"{w(first, 'NN')} {w(PLURAL[second], 'NNS')}"

    def stop():
        return w(".", ".") if rng.random() < 0.6 else None

    templates = [
        lambda: [dt(), nn(), w(rng.choice(VBG), "VBG"), dt(), nn()],
        lambda: [dt(), nn(), w("is", "VBZ"), w(rng.choice(VBG), "VBG"), dt(), nn()],
        lambda: [w(rng.choice(CD), "CD"), nns(), w(rng.choice(VBP), "VBP"),
                 w(rng.choice(IN), "IN"), dt(), nn()],
        lambda: [dt(), nn(), w(rng.choice(IN), "IN"), dt(), nn()],
        lambda: [w("there", "EX"), w("is", "VBZ"), dt(), nn(),
                 w(rng.choice(IN), "IN"), dt(), nn()],
        lambda: [dt(), w(rng.choice(JJ), "JJ"), nn(), w(rng.choice(VBG), "VBG"),
                 dt(), w(rng.choice(JJ), "JJ"), nn()],
        lambda: [dt(), nn(), w("and", "CC"), dt(), nn(),
                 w(rng.choice(IN), "IN"), dt(), nn()],
        lambda: [w(rng.choice(CD), "CD"), nns(), w(rng.choice(VBG), "VBG"),
                 w(rng.choice(IN), "IN"), dt(), nn()],
        lambda: [dt(), nn(), w(rng.choice(VBZ), "VBZ"), w(rng.choice(IN), "IN"),
                 dt(), nn()],
        lambda: [dt(), nn(), w(rng.choice(VBG), "VBG"), dt(), nn(),
                 w(rng.choice(IN), "IN"), dt(), nn()],
        lambda: [dt(), nn(), w(rng.choice(VBG), "VBG"), dt(), mw()],
        lambda: [dt(), mw(), w(rng.choice(IN), "IN"), dt(), nn()],
        lambda: [w(rng.choice(PRPS), "PRP$"), nn(), w(rng.choice(VBG), "VBG"),
                 w(rng.choice(IN), "IN"), dt(), nn()],
        lambda: [dt(), nn(), w(rng.choice(VBD), "VBD"), dt(), nn()],
        lambda: [dt(), nn(), w(rng.choice(VBN), "VBN"), w(rng.choice(IN), "IN"),
                 dt(), nn()],
        lambda: [w(rng.choice(CD), "CD"), nns(), w(rng.choice(IN), "IN"),
                 dt(), nn()],
        lambda: [dt(), nn(), w("with", "IN"), dt(), nn()],
        lambda: [dt(), nn(), w(rng.choice(VBG), "VBG"), dt(), mw_plural()],
    ]

    sentences = []
    seen = set(PINNED)
    while len(sentences) < TRAIN_SIZE - len(PINNED) + HELDOUT_SIZE:
        parts = rng.choice(templates)()
        end = stop()
        if end:
            parts.append(end)
        sentence = " ".join(parts)
        if sentence in seen:
            continue
        seen.add(sentence)
        sentences.append(sentence)
    return sentences


def main():
    rng = random.Random(SEED)
    generated = build_sentences(rng)
    train = PINNED + generated[: TRAIN_SIZE - len(PINNED)]
    heldout = generated[TRAIN_SIZE - len(PINNED):]
    assert len(train) == TRAIN_SIZE and len(heldout) == HELDOUT_SIZE

    TRAIN_PATH.parent.mkdir(parents=True, exist_ok=True)
    HELDOUT_PATH.parent.mkdir(parents=True, exist_ok=True)
    TRAIN_PATH.write_text("\n".join(train) + "\n", encoding="utf-8")
    HELDOUT_PATH.write_text("\n".join(heldout) + "\n", encoding="utf-8")
    print(f"wrote {TRAIN_SIZE} training sentences -> {TRAIN_PATH}")
    print(f"wrote {HELDOUT_SIZE} held-out sentences -> {HELDOUT_PATH}")

    corpus = load_tagged_corpus(TRAIN_PATH)
    model = train_tagger(corpus, iterations=5, seed=42)
    save_model(model, MODEL_PATH)
    print(f"trained model ({len(model.weights)} features) -> {MODEL_PATH}")

    heldout_corpus = load_tagged_corpus(HELDOUT_PATH)
    correct = total = 0
    for sentence in heldout_corpus:
        tokens = [Token(surface=word, normalized=word.lower()) for word, _ in sentence]
        predicted = tag(tokens, model)
        for (word, gold), got in zip(sentence, predicted):
            total += 1
            correct += got.tag == gold
    print(f"held-out token accuracy: {correct / total:.4f} ({correct}/{total})")


if __name__ == "__main__":
    main()
