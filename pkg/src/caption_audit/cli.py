"""Command-line interface.

Exit codes: 0 success (or "correct" verdict), 2 usage or I/O error, 3 foil
verdict (`validate` only). Machine-readable output goes to stdout,
diagnostics to stderr.
"""

import argparse
import json
import logging
import sys

from .config import (
    CATEGORIES_FILENAME,
    MODEL_FILENAME,
    TAXONOMY_FILENAME,
    Config,
    default_data_dir,
)
from .dataset import load_annotations, load_categories, load_detections
from .errors import CaptionAuditError
from .evaluation import render_report, run_benchmark
from .lexicon import load_taxonomy
from .nlp import load_model, load_tagged_corpus, normalize, save_model, train_tagger
from .pipeline import DetectionSet, validate

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FOIL = 3


def _unit_interval(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must be in [0, 1]: {text}")
    return value


def _tau(text):
    value = _unit_interval(text)
    if value == 0.0:
        raise argparse.ArgumentTypeError("tau must be in (0, 1]")
    return value


def _similar_by(text):
    if text == "supercategory":
        return ("supercategory", None)
    if text.startswith("path:"):
        return ("path", _tau(text[len("path:"):]))
    if text == "path":
        return ("path", None)
    raise argparse.ArgumentTypeError(
        f"expected 'supercategory' or 'path:<tau>', got {text!r}"
    )


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text}")
    return value


def _add_config_args(parser, default_min_score):
    data_dir = default_data_dir()
    parser.add_argument("--tau", type=_tau, default=None,
                        help="similarity acceptance threshold in (0, 1] (default 0.25)")
    parser.add_argument("--min-score", type=_unit_interval, default=default_min_score,
                        help=f"drop detections scoring below this (default {default_min_score})")
    parser.add_argument("--similar-by", type=_similar_by, default=("supercategory", None),
                        metavar="PREDICATE",
                        help="replacement predicate: 'supercategory' (default) or 'path:<tau>'")
    parser.add_argument("--taxonomy", default=str(data_dir / TAXONOMY_FILENAME),
                        help="taxonomy document path")
    parser.add_argument("--model", default=str(data_dir / MODEL_FILENAME),
                        help="tagger model path")
    parser.add_argument("--categories", default=None,
                        help="optional category CSV, cross-checked against the taxonomy")


def _build_config(args) -> Config:
    similar_by, path_tau = args.similar_by
    tau = args.tau if args.tau is not None else Config().tau
    kwargs = {"tau": tau, "min_score": args.min_score, "similar_by": similar_by}
    if path_tau is not None:
        kwargs["similar_path_tau"] = path_tau
    return Config(**kwargs)


def _load_runtime(args):
    net = load_taxonomy(args.taxonomy)
    model = load_model(args.model)
    if args.categories:
        table = load_categories(args.categories)
        table_rows = set(table.rows)
        net_rows = {(t.name, t.supercategory) for t in net.categories.values()}
        if table_rows != net_rows:
            raise CaptionAuditError(
                f"category table {args.categories} disagrees with the taxonomy's categories"
            )
    return net, model


def _cmd_validate(args) -> int:
    net, model = _load_runtime(args)
    config = _build_config(args)
    detections_by_image = load_detections(args.detections)
    detection_set = detections_by_image.get(args.image_id)
    if detection_set is None:
        print(f"warning: image id {args.image_id!r} not present in {args.detections}; "
              f"validating against an empty detection set", file=sys.stderr)
        detection_set = DetectionSet(image_id=args.image_id, detections=())
    verdict = validate(detection_set, args.caption, model, net, config)
    if args.format == "json":
        print(json.dumps({
            "is_foil": verdict.is_foil,
            "corrections": verdict.corrections,
            "sets": {
                "s_nouns": sorted(verdict.comparison.s_nouns),
                "s_names": sorted(verdict.comparison.s_names),
                "s_inter": sorted(verdict.comparison.s_inter),
                "s_caption": sorted(verdict.comparison.s_caption),
                "s_image": sorted(verdict.comparison.s_image),
                "unmapped_nouns": sorted(verdict.comparison.unmapped_nouns),
            },
            "explanation": verdict.explanation,
        }, indent=2, sort_keys=True))
    else:
        print(verdict.explanation)
    return EXIT_FOIL if verdict.is_foil else EXIT_OK


def _cmd_bench(args) -> int:
    net, model = _load_runtime(args)
    config = _build_config(args)
    examples = load_annotations(args.annotations)
    detections = load_detections(args.detections)
    report = run_benchmark(examples, detections, model, net, config, jobs=args.jobs)
    print(render_report(report, args.format))
    return EXIT_OK


def _cmd_train_tagger(args) -> int:
    corpus = load_tagged_corpus(args.corpus)
    model = train_tagger(corpus, iterations=args.iterations, seed=args.seed)
    save_model(model, args.out)
    print(f"trained on {len(corpus)} sentences ({len(model.weights)} features, "
          f"{len(model.tagdict)} tagdict entries) -> {args.out}", file=sys.stderr)
    return EXIT_OK


def _resolve_word_synsets(net, word):
    word = normalize(word)
    ids = []
    if word in net.categories:
        ids.append(net.categories[word].synset_id)
    for sid in net._lemma_to_synsets.get(word, ()):
        if sid not in ids:
            ids.append(sid)
    return word, ids


def _cmd_lexicon(args) -> int:
    net = load_taxonomy(args.taxonomy)
    if args.lexicon_command == "map":
        term = net.map_to_common_term(normalize(args.noun), tau=args.tau or Config().tau)
        print(term.name if term else "none")
        return EXIT_OK
    # sim
    word_a, ids_a = _resolve_word_synsets(net, args.word_a)
    word_b, ids_b = _resolve_word_synsets(net, args.word_b)
    if not ids_a or not ids_b:
        missing = word_a if not ids_a else word_b
        print(f"error: {missing!r} is not in the lexicon", file=sys.stderr)
        return EXIT_USAGE
    best = None
    for a in ids_a:
        for b in ids_b:
            sim = net.path_similarity(a, b)
            if sim is not None and (best is None or sim > best):
                best = sim
    print("none" if best is None else best)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="caption-audit",
        description="Validate image captions against detected-object evidence.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="classify one caption against one image's detections")
    p_validate.add_argument("--caption", required=True)
    p_validate.add_argument("--detections", required=True, help="detections JSON file")
    p_validate.add_argument("--image-id", required=True)
    p_validate.add_argument("--format", choices=["text", "json"], default="text")
    _add_config_args(p_validate, default_min_score=0.5)
    p_validate.set_defaults(func=_cmd_validate)

    p_bench = sub.add_parser("bench", help="run the three-task benchmark over an annotated corpus")
    p_bench.add_argument("--annotations", required=True)
    p_bench.add_argument("--detections", required=True)
    p_bench.add_argument("--jobs", type=_positive_int, default=1)
    p_bench.add_argument("--format", choices=["text", "json", "markdown"], default="text")
    _add_config_args(p_bench, default_min_score=0.0)
    p_bench.set_defaults(func=_cmd_bench)

    p_train = sub.add_parser("train-tagger", help="train the POS tagger from a word_TAG corpus")
    p_train.add_argument("--corpus", required=True)
    p_train.add_argument("--iterations", type=_positive_int, default=5)
    p_train.add_argument("--seed", type=int, default=42)
    p_train.add_argument("--out", required=True)
    p_train.set_defaults(func=_cmd_train_tagger)

    p_lex = sub.add_parser("lexicon", help="query the semantic network")
    lex_sub = p_lex.add_subparsers(dest="lexicon_command", required=True)
    p_sim = lex_sub.add_parser("sim", help="path similarity between two words")
    p_sim.add_argument("word_a")
    p_sim.add_argument("word_b")
    p_sim.add_argument("--taxonomy", default=str(default_data_dir() / TAXONOMY_FILENAME))
    p_sim.set_defaults(func=_cmd_lexicon)
    p_map = lex_sub.add_parser("map", help="map a noun to its common term")
    p_map.add_argument("noun")
    p_map.add_argument("--tau", type=_tau, default=None)
    p_map.add_argument("--taxonomy", default=str(default_data_dir() / TAXONOMY_FILENAME))
    p_map.set_defaults(func=_cmd_lexicon)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc.filename or exc}: file not found", file=sys.stderr)
        return EXIT_USAGE
    except (CaptionAuditError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
