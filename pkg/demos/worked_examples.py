#!/usr/bin/env python3
"""Walk through the validator on the two canonical scenes.

Scene 1: a woman cutting a cake, with a knife detected. A caption claiming
she cuts a pizza is a foil, and the detected cake is the obvious repair.

Scene 2: a man on a motorcycle with a bicycle in the background. The foil
caption "a man riding a bicycle" slips through, because every caption noun
really is somewhere in the image — a known blind spot of set-based grounding.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from caption_audit import Detection, DetectionSet, default_data_dir, load_model, load_taxonomy, validate

data = default_data_dir()
net = load_taxonomy(data / "taxonomy.txt")
model = load_model(data / "tagger_model.json")


def show(labels, caption):
    detections = DetectionSet(image_id="demo", detections=tuple(Detection(label=l) for l in labels))
    verdict = validate(detections, caption, model, net)
    print(f"detections: {sorted(labels)}")
    print(f"caption:    {caption!r}")
    print(verdict.explanation)
    print()


print("--- scene 1: cake on the table ---")
show({"person", "cake", "knife"}, "a woman cutting a pizza")
show({"person", "cake", "knife"}, "a woman cutting a cake")

print("--- scene 2: motorcycle and background bicycle ---")
show({"person", "motorcycle", "bicycle"}, "a man riding a bicycle")
