import json

import pytest

from caption_audit.cli import main
from caption_audit.nlp import load_model

from conftest import TAXONOMY_PATH, TEST_DATA, TRAIN_CORPUS_PATH
from helpers import bfs_distances, parse_taxonomy_file

ANNOTATIONS = str(TEST_DATA / "annotations_native.json")
DETECTIONS = str(TEST_DATA / "detections_fixture.json")


def test_validate_foil_exit_code_and_output(capsys):
    code = main([
        "validate",
        "--caption", "a woman cutting a pizza",
        "--detections", DETECTIONS,
        "--image-id", "img-cake",
        "--format", "json",
    ])
    out = capsys.readouterr().out
    assert code == 3
    payload = json.loads(out)
    assert payload["is_foil"] is True
    assert payload["corrections"] == {"pizza": "cake"}
    assert payload["sets"]["s_caption"] == ["pizza"]


def test_validate_correct_exit_code(capsys):
    code = main([
        "validate",
        "--caption", "a woman cutting a cake",
        "--detections", DETECTIONS,
        "--image-id", "img-cake",
    ])
    captured = capsys.readouterr()
    assert code == 0
    assert "verdict: correct" in captured.out


def test_validate_misses_foil_when_object_is_elsewhere_in_image(capsys):
    # the documented blind spot: every caption noun exists somewhere in the image
    code = main([
        "validate",
        "--caption", "a man riding a bicycle",
        "--detections", DETECTIONS,
        "--image-id", "img-moto",
    ])
    captured = capsys.readouterr()
    assert code == 0
    assert "verdict: correct" in captured.out


def test_validate_unknown_image_id_warns_and_degrades(capsys):
    code = main([
        "validate",
        "--caption", "a woman cutting a cake",
        "--detections", DETECTIONS,
        "--image-id", "no-such-image",
    ])
    captured = capsys.readouterr()
    assert code == 0
    assert "no-such-image" in captured.err


def test_missing_detections_file_is_usage_error(capsys):
    code = main([
        "validate",
        "--caption", "x",
        "--detections", "/nonexistent/detections.json",
        "--image-id", "i",
    ])
    captured = capsys.readouterr()
    assert code == 2
    assert "error" in captured.err


def test_bad_tau_is_rejected_by_the_parser():
    with pytest.raises(SystemExit) as excinfo:
        main(["validate", "--caption", "x", "--detections", DETECTIONS,
              "--image-id", "i", "--tau", "1.5"])
    assert excinfo.value.code == 2


def test_bench_matches_pinned_report_for_any_job_count(capsys):
    outputs = []
    for jobs in ("1", "8"):
        code = main([
            "bench",
            "--annotations", ANNOTATIONS,
            "--detections", DETECTIONS,
            "--jobs", jobs,
            "--format", "json",
        ])
        assert code == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
    expected = json.loads((TEST_DATA / "expected_report.json").read_text())
    assert json.loads(outputs[0]) == expected


def test_bench_empty_annotations_has_zero_denominators(tmp_path, capsys):
    annotations = tmp_path / "empty.json"
    annotations.write_text(json.dumps({"version": 1, "examples": []}))
    code = main([
        "bench",
        "--annotations", str(annotations),
        "--detections", DETECTIONS,
        "--format", "json",
    ])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["task1"]["evaluated"] == 0
    assert payload["task2"]["denominator"] == 0


def test_bench_missing_annotations_file_is_usage_error(capsys):
    code = main([
        "bench",
        "--annotations", "/nonexistent/annotations.json",
        "--detections", DETECTIONS,
    ])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_train_tagger_writes_loadable_model(tmp_path, capsys):
    out = tmp_path / "model.json"
    code = main([
        "train-tagger",
        "--corpus", str(TRAIN_CORPUS_PATH),
        "--iterations", "1",
        "--seed", "1",
        "--out", str(out),
    ])
    assert code == 0
    model = load_model(out)
    assert model.metadata["iterations"] == 1
    assert capsys.readouterr().out == ""  # summary goes to stderr


def test_lexicon_map_woman(capsys):
    assert main(["lexicon", "map", "woman"]) == 0
    assert capsys.readouterr().out.strip() == "person"


def test_lexicon_map_unknown_prints_none(capsys):
    assert main(["lexicon", "map", "zamboni"]) == 0
    assert capsys.readouterr().out.strip() == "none"


def test_lexicon_sim_identity(capsys):
    assert main(["lexicon", "sim", "cake", "cake"]) == 0
    assert capsys.readouterr().out.strip() == "1.0"


def test_lexicon_sim_matches_bfs_oracle(capsys):
    _, adjacency, categories = parse_taxonomy_file(TAXONOMY_PATH)
    d = bfs_distances(adjacency, categories["cake"][1])[categories["pizza"][1]]
    assert main(["lexicon", "sim", "cake", "pizza"]) == 0
    assert float(capsys.readouterr().out.strip()) == 1.0 / (1.0 + d)


def test_lexicon_sim_unknown_word_is_usage_error(capsys):
    assert main(["lexicon", "sim", "cake", "zamboni"]) == 2
    assert "zamboni" in capsys.readouterr().err


def test_data_dir_env_override(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CAPTION_AUDIT_DATA", str(tmp_path))
    code = main(["lexicon", "map", "woman"])
    assert code == 2  # taxonomy missing in the override directory
    assert "not found" in capsys.readouterr().err
