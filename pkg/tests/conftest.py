import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from caption_audit import load_annotations, load_detections, load_model, load_taxonomy  # noqa: E402

DATA_DIR = SRC / "caption_audit" / "data"
TEST_DATA = Path(__file__).resolve().parent / "data"

TAXONOMY_PATH = DATA_DIR / "taxonomy.txt"
CATEGORIES_PATH = DATA_DIR / "categories.csv"
MODEL_PATH = DATA_DIR / "tagger_model.json"
TRAIN_CORPUS_PATH = DATA_DIR / "corpus_train.txt"
HELDOUT_CORPUS_PATH = TEST_DATA / "corpus_heldout.txt"


@pytest.fixture(scope="session")
def net():
    return load_taxonomy(TAXONOMY_PATH)


@pytest.fixture(scope="session")
def model():
    return load_model(MODEL_PATH)


@pytest.fixture(scope="session")
def fixture_examples():
    return load_annotations(TEST_DATA / "annotations_native.json")


@pytest.fixture(scope="session")
def fixture_detections():
    return load_detections(TEST_DATA / "detections_fixture.json")
