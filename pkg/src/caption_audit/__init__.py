"""caption-audit: validate image captions against detected-object evidence.

The core flow is `validate(detections, caption, model, net)`: caption nouns
and detected labels are mapped onto a shared category vocabulary, compared by
set algebra, and caption-only terms are matched against image-only terms to
propose replacements. A caption is a foil exactly when a replacement exists.
"""

from .config import Config, default_data_dir
from .dataset import (
    CategoryTable,
    EvalExample,
    dump_annotations,
    dump_detections,
    load_annotations,
    load_categories,
    load_detections,
)
from .errors import (
    CaptionAuditError,
    DataFormatError,
    ModelFormatError,
    TaxonomyParseError,
    TaxonomyValidationError,
    UnknownSynsetError,
)
from .evaluation import EvalReport, render_report, report_from_dict, report_to_dict, run_benchmark
from .lexicon import CommonTerm, SemanticNetwork, Synset, load_taxonomy
from .nlp import (
    TaggedToken,
    TaggerModel,
    Token,
    filter_nouns,
    load_model,
    load_tagged_corpus,
    normalize,
    save_model,
    split_sentences,
    tag,
    tokenize,
    train_tagger,
)
from .pipeline import (
    ComparisonResult,
    Detection,
    DetectionSet,
    Verdict,
    build_name_set,
    build_noun_set,
    compare,
    propose_corrections,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "CaptionAuditError",
    "CategoryTable",
    "CommonTerm",
    "ComparisonResult",
    "Config",
    "DataFormatError",
    "Detection",
    "DetectionSet",
    "EvalExample",
    "EvalReport",
    "ModelFormatError",
    "SemanticNetwork",
    "Synset",
    "TaggedToken",
    "TaggerModel",
    "TaxonomyParseError",
    "TaxonomyValidationError",
    "Token",
    "UnknownSynsetError",
    "Verdict",
    "build_name_set",
    "build_noun_set",
    "compare",
    "default_data_dir",
    "dump_annotations",
    "dump_detections",
    "filter_nouns",
    "load_annotations",
    "load_categories",
    "load_detections",
    "load_model",
    "load_tagged_corpus",
    "load_taxonomy",
    "normalize",
    "propose_corrections",
    "render_report",
    "report_from_dict",
    "report_to_dict",
    "run_benchmark",
    "save_model",
    "split_sentences",
    "tag",
    "tokenize",
    "train_tagger",
    "validate",
]
