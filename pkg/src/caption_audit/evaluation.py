"""Benchmark harness: run the validator over a corpus and score three tasks.

Task 1 scores the correct/foil classification, task 2 whether the gold foil
word was identified, task 3 whether the proposed replacement matches the gold
target. One validation per example feeds all three tasks. Per-example
aggregation is commutative, so results are identical for any worker count or
example order.
"""

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .config import Config
from .errors import DataFormatError
from .nlp import normalize
from .pipeline import validate

REPORT_VERSION = 1


@dataclass(frozen=True)
class Task1Report:
    tp: int
    fp: int
    tn: int
    fn: int
    evaluated: int
    precision_correct: float
    recall_correct: float
    f1_correct: float
    precision_foil: float
    recall_foil: float
    f1_foil: float
    accuracy_overall: float
    accuracy_correct: float
    accuracy_foil: float
    undefined_rates: tuple[str, ...]


@dataclass(frozen=True)
class TaskRate:
    hits: int
    denominator: int
    accuracy: float


@dataclass(frozen=True)
class SkippedExample:
    example_id: str
    reason: str


@dataclass(frozen=True)
class EvalReport:
    task1: Task1Report
    task2: TaskRate
    task3: TaskRate
    skipped: tuple[SkippedExample, ...]
    config_echo: dict
    version: int = REPORT_VERSION


def _rate(numerator, denominator, name, undefined):
    if denominator == 0:
        undefined.append(name)
        return 0.0
    return numerator / denominator


def _task1(outcomes, undefined):
    tp = sum(1 for gold, predicted in outcomes if gold and predicted)
    fp = sum(1 for gold, predicted in outcomes if not gold and predicted)
    tn = sum(1 for gold, predicted in outcomes if not gold and not predicted)
    fn = sum(1 for gold, predicted in outcomes if gold and not predicted)
    evaluated = len(outcomes)

    precision_foil = _rate(tp, tp + fp, "precision_foil", undefined)
    recall_foil = _rate(tp, tp + fn, "recall_foil", undefined)
    f1_foil = _rate(2 * precision_foil * recall_foil, precision_foil + recall_foil, "f1_foil", undefined)
    precision_correct = _rate(tn, tn + fn, "precision_correct", undefined)
    recall_correct = _rate(tn, tn + fp, "recall_correct", undefined)
    f1_correct = _rate(
        2 * precision_correct * recall_correct, precision_correct + recall_correct, "f1_correct", undefined
    )
    return Task1Report(
        tp=tp,
        fp=fp,
        tn=tn,
        fn=fn,
        evaluated=evaluated,
        precision_correct=precision_correct,
        recall_correct=recall_correct,
        f1_correct=f1_correct,
        precision_foil=precision_foil,
        recall_foil=recall_foil,
        f1_foil=f1_foil,
        accuracy_overall=_rate(tp + tn, evaluated, "accuracy_overall", undefined),
        accuracy_correct=recall_correct,
        accuracy_foil=recall_foil,
        undefined_rates=(),  # placeholder; final tuple attached by run_benchmark
    )


def run_benchmark(examples, detections, model, net, config: Config = Config(), jobs: int = 1) -> EvalReport:
    """Validate every example once and aggregate the three task metrics.

    `detections` maps image_id -> DetectionSet; examples with no detections
    entry are recorded as skipped, never crashed on. Gold words pass through
    the same normalize + common-term mapping as caption nouns, so inflected
    gold words still match.
    """

    def evaluate(example):
        detection_set = detections.get(example.image_id)
        if detection_set is None:
            return example, None
        return example, validate(detection_set, example.caption, model, net, config)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(evaluate, examples))
    else:
        results = [evaluate(example) for example in examples]

    gold_term_cache: dict[str, str | None] = {}

    def gold_term(word):
        if word not in gold_term_cache:
            term = net.map_to_common_term(normalize(word), tau=config.tau)
            gold_term_cache[word] = term.name if term else None
        return gold_term_cache[word]

    outcomes = []
    skipped = []
    task2_hits = task2_denominator = task3_hits = 0
    for example, verdict in results:
        if verdict is None:
            skipped.append(SkippedExample(example_id=example.example_id, reason="missing detections"))
            continue
        outcomes.append((example.gold_is_foil, verdict.is_foil))
        if example.gold_is_foil:
            task2_denominator += 1
            foil_name = gold_term(example.gold_foil_word)
            if verdict.is_foil and foil_name is not None and foil_name in verdict.corrections:
                task2_hits += 1
                if verdict.corrections[foil_name] == gold_term(example.gold_target_word):
                    task3_hits += 1

    undefined: list[str] = []
    task1 = _task1(outcomes, undefined)
    task2 = TaskRate(
        hits=task2_hits,
        denominator=task2_denominator,
        accuracy=_rate(task2_hits, task2_denominator, "task2_accuracy", undefined),
    )
    task3 = TaskRate(
        hits=task3_hits,
        denominator=task2_hits,
        accuracy=_rate(task3_hits, task2_hits, "task3_accuracy", undefined),
    )
    task1 = replace(task1, undefined_rates=tuple(sorted(undefined)))
    return EvalReport(
        task1=task1,
        task2=task2,
        task3=task3,
        skipped=tuple(sorted(skipped, key=lambda s: s.example_id)),
        config_echo=config.echo(),
    )


# ---------------------------------------------------------------------------
# serialization and rendering
# ---------------------------------------------------------------------------


def report_to_dict(report: EvalReport) -> dict:
    return {
        "version": report.version,
        "task1": {
            "tp": report.task1.tp,
            "fp": report.task1.fp,
            "tn": report.task1.tn,
            "fn": report.task1.fn,
            "evaluated": report.task1.evaluated,
            "precision_correct": report.task1.precision_correct,
            "recall_correct": report.task1.recall_correct,
            "f1_correct": report.task1.f1_correct,
            "precision_foil": report.task1.precision_foil,
            "recall_foil": report.task1.recall_foil,
            "f1_foil": report.task1.f1_foil,
            "accuracy_overall": report.task1.accuracy_overall,
            "accuracy_correct": report.task1.accuracy_correct,
            "accuracy_foil": report.task1.accuracy_foil,
            "undefined_rates": list(report.task1.undefined_rates),
        },
        "task2": {
            "hits": report.task2.hits,
            "denominator": report.task2.denominator,
            "accuracy": report.task2.accuracy,
        },
        "task3": {
            "hits": report.task3.hits,
            "denominator": report.task3.denominator,
            "accuracy": report.task3.accuracy,
        },
        "skipped": {
            "count": len(report.skipped),
            "records": [
                {"example_id": s.example_id, "reason": s.reason} for s in report.skipped
            ],
        },
        "config_echo": report.config_echo,
    }


def report_from_dict(document: dict) -> EvalReport:
    if document.get("version") != REPORT_VERSION:
        raise DataFormatError(f"unsupported report version {document.get('version')!r}")
    t1 = document["task1"]
    return EvalReport(
        task1=Task1Report(
            tp=t1["tp"],
            fp=t1["fp"],
            tn=t1["tn"],
            fn=t1["fn"],
            evaluated=t1["evaluated"],
            precision_correct=t1["precision_correct"],
            recall_correct=t1["recall_correct"],
            f1_correct=t1["f1_correct"],
            precision_foil=t1["precision_foil"],
            recall_foil=t1["recall_foil"],
            f1_foil=t1["f1_foil"],
            accuracy_overall=t1["accuracy_overall"],
            accuracy_correct=t1["accuracy_correct"],
            accuracy_foil=t1["accuracy_foil"],
            undefined_rates=tuple(t1["undefined_rates"]),
        ),
        task2=TaskRate(**document["task2"]),
        task3=TaskRate(**document["task3"]),
        skipped=tuple(
            SkippedExample(example_id=r["example_id"], reason=r["reason"])
            for r in document["skipped"]["records"]
        ),
        config_echo=document["config_echo"],
    )


def render_report(report: EvalReport, format: str = "text") -> str:
    """Render a report as json (canonical), text or markdown tables."""
    if format == "json":
        return json.dumps(report_to_dict(report), indent=2, sort_keys=True)
    if format == "text":
        return _render_text(report)
    if format == "markdown":
        return _render_markdown(report)
    raise ValueError(f"unknown report format {format!r} (expected text, json or markdown)")


def _pct(value):
    return f"{100.0 * value:.2f}%"


def _render_text(report: EvalReport) -> str:
    t1 = report.task1
    lines = [
        "Caption classification (task 1)",
        f"{'caption':<9} {'precision':>9} {'recall':>7} {'f1':>6}",
        f"{'Correct':<9} {t1.precision_correct:>9.3f} {t1.recall_correct:>7.3f} {t1.f1_correct:>6.3f}",
        f"{'Foil':<9} {t1.precision_foil:>9.3f} {t1.recall_foil:>7.3f} {t1.f1_foil:>6.3f}",
        "",
        f"accuracy: overall {_pct(t1.accuracy_overall)}  correct {_pct(t1.accuracy_correct)}"
        f"  foil {_pct(t1.accuracy_foil)}",
        f"confusion: tp={t1.tp} fp={t1.fp} tn={t1.tn} fn={t1.fn} (evaluated {t1.evaluated})",
        "",
        f"Error detection (task 2): {report.task2.hits}/{report.task2.denominator}"
        f" = {_pct(report.task2.accuracy)}",
        f"Word correction (task 3): {report.task3.hits}/{report.task3.denominator}"
        f" = {_pct(report.task3.accuracy)}",
        f"skipped: {len(report.skipped)}",
    ]
    for s in report.skipped:
        lines.append(f"  - {s.example_id}: {s.reason}")
    if t1.undefined_rates:
        lines.append(f"undefined rates (zero denominator, reported as 0): {', '.join(t1.undefined_rates)}")
    lines.append("config: " + " ".join(f"{k}={v}" for k, v in sorted(report.config_echo.items())))
    return "\n".join(lines)


def _render_markdown(report: EvalReport) -> str:
    t1 = report.task1
    lines = [
        "| caption | precision | recall | f1 |",
        "|---------|-----------|--------|----|",
        f"| Correct | {t1.precision_correct:.3f} | {t1.recall_correct:.3f} | {t1.f1_correct:.3f} |",
        f"| Foil | {t1.precision_foil:.3f} | {t1.recall_foil:.3f} | {t1.f1_foil:.3f} |",
        "",
        f"- overall accuracy: {_pct(t1.accuracy_overall)}",
        f"- correct accuracy: {_pct(t1.accuracy_correct)}",
        f"- foil accuracy: {_pct(t1.accuracy_foil)}",
        f"- confusion: tp={t1.tp} fp={t1.fp} tn={t1.tn} fn={t1.fn} (evaluated {t1.evaluated})",
        f"- error detection (task 2): {report.task2.hits}/{report.task2.denominator} = {_pct(report.task2.accuracy)}",
        f"- word correction (task 3): {report.task3.hits}/{report.task3.denominator} = {_pct(report.task3.accuracy)}",
        f"- skipped: {len(report.skipped)}",
    ]
    if t1.undefined_rates:
        lines.append(f"- undefined rates (zero denominator): {', '.join(t1.undefined_rates)}")
    return "\n".join(lines)
