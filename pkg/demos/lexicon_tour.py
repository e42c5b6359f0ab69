#!/usr/bin/env python3
"""Poke at the semantic network: similarities, mappings, rankings."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from caption_audit import default_data_dir, load_taxonomy
from caption_audit.nlp import normalize

net = load_taxonomy(default_data_dir() / "taxonomy.txt")

print(f"{len(net.synsets)} synsets, {len(net.hypernym_edges)} hypernym edges, "
      f"{len(net.categories)} categories\n")

print("path similarity (1 / (1 + shortest path)):")
for a, b in [("cake.n.01", "pizza.n.01"), ("truck.n.01", "car.n.01"),
             ("truck.n.01", "bus.n.01"), ("puppy.n.01", "dog.n.01")]:
    print(f"  {a:14} ~ {b:14} = {net.path_similarity(a, b):.4f}")

print("\nnoun -> common term (after normalization):")
for noun in ["woman", "men", "puppies", "traffic light", "glass", "zamboni"]:
    term = net.map_to_common_term(normalize(noun))
    print(f"  {noun:14} -> {term.name if term else '(none)'}")

print("\nreplacement ranking for a missing 'pizza' against a detected set:")
for term, sim in net.rank_candidates("pizza", ["cake", "sandwich", "bicycle", "donut"]):
    print(f"  {term.name:10} similarity {sim:.4f} (supercategory {term.supercategory})")
