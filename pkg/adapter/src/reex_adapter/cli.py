"""Command line wrapper: tabular dataset in, interchange JSON out."""
from __future__ import annotations

import argparse
import sys

from .adapter import AdapterConfig, CLASSIFIERS, explain_cross_validated, to_json


def build_parser():
    parser = argparse.ArgumentParser(
        prog="reex-adapter",
        description="Prune features by mutual information, cross-validate a classifier "
                    "and emit per-instance explanation vectors as interchange JSON.",
    )
    parser.add_argument("--dataset", required=True,
                        help="CSV/TSV file, header row, last column is the class label")
    parser.add_argument("--subset-size", type=int, default=100,
                        help="features kept after mutual-information pruning")
    parser.add_argument("--classifier", choices=sorted(CLASSIFIERS), default="random-forest")
    parser.add_argument("--folds", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--output", default=None, help="write JSON here instead of stdout")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = AdapterConfig(
            dataset_path=args.dataset,
            subset_size=args.subset_size,
            classifier=args.classifier,
            folds=args.folds,
            seed=args.seed,
        )
        document = explain_cross_validated(cfg)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = to_json(document)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
