"""Runtime configuration shared by the pipeline, benchmark and CLI."""

import os
from dataclasses import dataclass
from pathlib import Path

DEFAULT_TAU = 0.25
DATA_ENV_VAR = "CAPTION_AUDIT_DATA"

TAXONOMY_FILENAME = "taxonomy.txt"
CATEGORIES_FILENAME = "categories.csv"
MODEL_FILENAME = "tagger_model.json"


@dataclass(frozen=True)
class Config:
    """Knobs the underlying method leaves open.

    tau            similarity acceptance threshold for mapping a caption noun
                   onto a common term (1/(1+d) form, so 0.25 accepts path
                   length <= 3).
    min_score      detections below this confidence are ignored. 0.0 keeps
                   everything, which matches the set-algebra method that does
                   not use confidences; interactive validation defaults to 0.5.
    similar_by     replacement predicate: "supercategory" (default) accepts a
                   replacement iff it shares the foil's supercategory; "path"
                   accepts it iff path similarity >= similar_path_tau.
    similar_path_tau  threshold for the "path" predicate.
    """

    tau: float = DEFAULT_TAU
    min_score: float = 0.0
    similar_by: str = "supercategory"
    similar_path_tau: float = DEFAULT_TAU

    def __post_init__(self):
        if not 0.0 < self.tau <= 1.0:
            raise ValueError(f"tau must be in (0, 1], got {self.tau}")
        if not 0.0 <= self.min_score <= 1.0:
            raise ValueError(f"min_score must be in [0, 1], got {self.min_score}")
        if self.similar_by not in ("supercategory", "path"):
            raise ValueError(f"similar_by must be 'supercategory' or 'path', got {self.similar_by!r}")
        if not 0.0 < self.similar_path_tau <= 1.0:
            raise ValueError(f"similar_path_tau must be in (0, 1], got {self.similar_path_tau}")

    def echo(self) -> dict:
        """Serializable view of the semantic knobs, embedded in reports."""
        d = {"tau": self.tau, "min_score": self.min_score, "similar_by": self.similar_by}
        if self.similar_by == "path":
            d["similar_path_tau"] = self.similar_path_tau
        return d


def default_data_dir() -> Path:
    """Directory holding the packaged taxonomy, category table and tagger model.

    The CAPTION_AUDIT_DATA environment variable overrides the packaged data.
    """
    env = os.environ.get(DATA_ENV_VAR)
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"
