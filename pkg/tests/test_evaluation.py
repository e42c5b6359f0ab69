import json
import random

import pytest

from caption_audit.config import Config
from caption_audit.dataset import EvalExample
from caption_audit.evaluation import (
    render_report,
    report_from_dict,
    report_to_dict,
    run_benchmark,
)
from caption_audit.pipeline import Detection, DetectionSet

from conftest import TEST_DATA


@pytest.fixture(scope="module")
def fixture_report(net, model, fixture_examples, fixture_detections):
    return run_benchmark(fixture_examples, fixture_detections, model, net)


def test_fixture_report_matches_pinned_expectation(fixture_report):
    expected = json.loads((TEST_DATA / "expected_report.json").read_text())
    assert report_to_dict(fixture_report) == expected


def test_rates_recompute_from_confusion_counts(fixture_report):
    t1 = fixture_report.task1
    assert abs(t1.precision_foil - t1.tp / (t1.tp + t1.fp)) < 1e-12
    assert abs(t1.recall_foil - t1.tp / (t1.tp + t1.fn)) < 1e-12
    assert abs(t1.precision_correct - t1.tn / (t1.tn + t1.fn)) < 1e-12
    assert abs(t1.recall_correct - t1.tn / (t1.tn + t1.fp)) < 1e-12
    assert abs(t1.accuracy_overall - (t1.tp + t1.tn) / t1.evaluated) < 1e-12
    assert abs(fixture_report.task2.accuracy
               - fixture_report.task2.hits / fixture_report.task2.denominator) < 1e-12
    assert abs(fixture_report.task3.accuracy
               - fixture_report.task3.hits / fixture_report.task3.denominator) < 1e-12


def test_task_hit_ordering_invariants(fixture_report, net, model, fixture_examples, fixture_detections):
    reports = [fixture_report]
    rng = random.Random(31)
    detections = dict(fixture_detections)
    for _ in range(5):
        subset = rng.sample(list(fixture_examples), rng.randint(1, len(fixture_examples)))
        reports.append(run_benchmark(subset, detections, model, net))
    for report in reports:
        gold_foils = report.task2.denominator
        assert report.task3.hits <= report.task2.hits <= gold_foils
        assert report.task1.tp >= report.task2.hits
        assert report.task3.denominator == report.task2.hits


def test_shuffling_example_order_changes_nothing(net, model, fixture_examples, fixture_detections):
    baseline = run_benchmark(fixture_examples, fixture_detections, model, net)
    shuffled = list(fixture_examples)
    random.Random(5).shuffle(shuffled)
    assert run_benchmark(shuffled, fixture_detections, model, net) == baseline


def test_jobs_do_not_change_the_report(net, model, fixture_examples, fixture_detections):
    baseline = run_benchmark(fixture_examples, fixture_detections, model, net, jobs=1)
    assert run_benchmark(fixture_examples, fixture_detections, model, net, jobs=8) == baseline


def test_empty_example_list(net, model):
    report = run_benchmark([], {}, model, net)
    assert report.task1.evaluated == 0
    assert report.task2.denominator == 0
    assert report.task3.denominator == 0
    assert "accuracy_overall" in report.task1.undefined_rates
    assert report.task1.accuracy_overall == 0.0


def test_all_correct_degenerate_class(net, model):
    examples = [
        EvalExample(example_id=f"e{i}", image_id=f"i{i}", caption="A dog.", gold_is_foil=False)
        for i in range(3)
    ]
    detections = {
        f"i{i}": DetectionSet(image_id=f"i{i}", detections=(Detection(label="dog"),))
        for i in range(3)
    }
    report = run_benchmark(examples, detections, model, net)
    assert report.task1.precision_correct == 1.0
    assert report.task1.recall_correct == 1.0
    assert report.task1.precision_foil == 0.0
    assert report.task1.recall_foil == 0.0
    assert {"precision_foil", "recall_foil", "task2_accuracy", "task3_accuracy"} <= set(
        report.task1.undefined_rates
    )


def test_missing_detections_are_skipped_not_fatal(net, model, fixture_examples):
    report = run_benchmark(fixture_examples, {}, model, net)
    assert report.task1.evaluated == 0
    assert len(report.skipped) == len(fixture_examples)
    assert all(s.reason == "missing detections" for s in report.skipped)
    ids = [s.example_id for s in report.skipped]
    assert ids == sorted(ids)


def test_gold_words_map_like_caption_nouns(net, model):
    # plural gold word still counts as a hit thanks to normalization
    examples = [
        EvalExample(
            example_id="e0",
            image_id="i0",
            caption="A woman cutting some pizzas.",
            gold_is_foil=True,
            gold_foil_word="pizzas",
            gold_target_word="cakes",
        )
    ]
    detections = {
        "i0": DetectionSet(
            image_id="i0",
            detections=(Detection(label="person"), Detection(label="cake"), Detection(label="knife")),
        )
    }
    report = run_benchmark(examples, detections, model, net)
    assert report.task2.hits == 1
    assert report.task3.hits == 1


# ---- rendering ----


def test_text_render_matches_golden_file(fixture_report):
    golden = (TEST_DATA / "expected_report.txt").read_text()
    assert render_report(fixture_report, "text") + "\n" == golden


def test_json_render_round_trips(fixture_report):
    document = json.loads(render_report(fixture_report, "json"))
    assert report_from_dict(document) == fixture_report


def test_markdown_render_has_both_class_rows(fixture_report):
    rendered = render_report(fixture_report, "markdown")
    assert "| Correct |" in rendered
    assert "| Foil |" in rendered


def test_unknown_format_is_a_usage_error(fixture_report):
    with pytest.raises(ValueError, match="format"):
        render_report(fixture_report, "yaml")


def test_config_echo_is_embedded(net, model, fixture_examples, fixture_detections):
    config = Config(tau=0.5, min_score=0.25)
    report = run_benchmark(fixture_examples, fixture_detections, model, net, config)
    assert report.config_echo == {"tau": 0.5, "min_score": 0.25, "similar_by": "supercategory"}
