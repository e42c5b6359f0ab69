#!/usr/bin/env python3
"""Run the packaged six-example benchmark and print the three-task report.

The fixture covers one true negative, three true positives, one false
positive (an undetected frisbee repaired by a detected sports ball) and the
classic false negative where the foil object appears elsewhere in the image.
"""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from caption_audit import (
    default_data_dir,
    load_annotations,
    load_detections,
    load_model,
    load_taxonomy,
    render_report,
    run_benchmark,
)

data = default_data_dir()
net = load_taxonomy(data / "taxonomy.txt")
model = load_model(data / "tagger_model.json")

examples = load_annotations(ROOT / "tests" / "data" / "annotations_native.json")
detections = load_detections(ROOT / "tests" / "data" / "detections_fixture.json")

report = run_benchmark(examples, detections, model, net, jobs=4)
print(render_report(report, "text"))
