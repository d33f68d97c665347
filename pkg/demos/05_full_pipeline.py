"""Drive the command line end to end, including a parameter sweep.

Writes the toy fixtures into a temporary directory and calls the CLI the
same way a shell user would: reason for a single run, sweep for a grid,
genq for scoring explicit term sets, validate for parse-only checks.
"""
import json
import tempfile
from pathlib import Path

from reex.cli import main

OBO = "\n".join(
    ["[Term]\nid: T0\nname: T0-name"]
    + [f"[Term]\nid: T{i}\nname: T{i}-name\nis_a: T0" for i in (1, 2, 3)]
    + [f"[Term]\nid: T{i}\nname: T{i}-name\nis_a: T1" for i in (4, 7)]
    + [f"[Term]\nid: T{i}\nname: T{i}-name\nis_a: T2" for i in (5, 6)]
    + ["[Term]\nid: T8\nname: T8-name\nis_a: T3"]
)

MAPPING = "\n".join(f"g{i}\tT{i}" for i in (4, 5, 6, 7, 8))

EXPLANATIONS = {
    "classes": ["green", "red"],
    "features": ["g4", "g5", "g6", "g8"],
    "instances": [
        {"true_class": "green", "predicted_class": "green", "values": [1.0, 0.0, 0.0, 0.0]},
        {"true_class": "green", "predicted_class": "green", "values": [0.8, 0.0, 0.0, 0.0]},
        {"true_class": "red", "predicted_class": "red", "values": [0.0, 0.9, 0.7, 0.5]},
        {"true_class": "red", "predicted_class": "red", "values": [0.0, 0.7, 0.9, 0.5]},
    ],
}

with tempfile.TemporaryDirectory() as workdir:
    root = Path(workdir)
    (root / "toy.obo").write_text(OBO)
    (root / "toy.tsv").write_text(MAPPING)
    (root / "toy.json").write_text(json.dumps(EXPLANATIONS))
    (root / "sets.tsv").write_text("general\tT0\nleaves\tT4,T5,T8\n")
    inputs = [
        "--ontology", str(root / "toy.obo"),
        "--mapping", str(root / "toy.tsv"),
        "--explanations", str(root / "toy.json"),
    ]

    print("== validate ==")
    main(["validate", *inputs])

    print("\n== reason, staircase at threshold 0 ==")
    main(["reason", *inputs, "--algorithm", "staircase", "--threshold", "0"])

    print("\n== reason, ancestry (seeded) ==")
    main(["reason", *inputs, "--algorithm", "ancestry", "--weight", "1e-6", "--seed", "5"])

    print("\n== sweep over the staircase thresholds ==")
    main(["sweep", *inputs, "--sweep-threshold", "0,0.2,0.4"])

    print("\n== genq scoring of explicit term sets ==")
    main(["genq", "--ontology", str(root / "toy.obo"), "--mapping", str(root / "toy.tsv"),
          "--terms", str(root / "sets.tsv")])
