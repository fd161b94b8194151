#!/usr/bin/env python3
"""
Instance file generator for the hypertoric toolkit.

Writes the named instances (diagonal family, determinant-one family) and a seeded
random suite of regular polarized arrangements as JSON files.

Usage:
    python scripts/generate_instances.py [--output DIR] [--seed S] [--count N] [--n-max N]
"""

import argparse
import logging
import os
import sys

# Add the parent directory to the Python path so we can import from hypertoric
current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)
sys.path.insert(0, parent_dir)

from hypertoric.services.instances import named_instances, random_suite  # noqa: E402
from hypertoric.utils.helpers import canonical_json  # noqa: E402

logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")
logger = logging.getLogger(__name__)


class InstanceGenerator:
    def __init__(self, output_dir: str):
        self.output_dir = output_dir

    def write(self, name: str, arrangement) -> str:
        data = {"name": name, **arrangement.to_dict()}
        path = os.path.join(self.output_dir, f"{name}.json")
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(canonical_json(data) + "\n")
        return path

    def run(self, seed: int, count: int, n_max: int, n_values) -> int:
        os.makedirs(self.output_dir, exist_ok=True)
        written = 0
        for name, arrangement in named_instances(n_values).items():
            self.write(name, arrangement)
            written += 1
        logger.info(f"Wrote {written} named instances to {self.output_dir}")
        for position, arrangement in enumerate(random_suite(seed, count, n_max)):
            self.write(f"random_{seed}_{position:03d}", arrangement)
            written += 1
        logger.info(f"Wrote {count} random instances (seed {seed}, n <= {n_max})")
        return written


def main():
    parser = argparse.ArgumentParser(description="Generate hypertoric instance files")
    parser.add_argument("--output", default="instances", help="Output directory (default: instances)")
    parser.add_argument("--seed", type=int, default=0, help="Seed of the random suite (default: 0)")
    parser.add_argument("--count", type=int, default=25, help="Number of random instances (default: 25)")
    parser.add_argument("--n-max", dest="n_max", type=int, default=6, help="Largest ambient rank (default: 6)")
    parser.add_argument("--n", dest="n_values", type=int, nargs="*", default=[2, 3], help="Sizes of named families")
    args = parser.parse_args()

    written = InstanceGenerator(args.output).run(args.seed, args.count, args.n_max, args.n_values)
    print(f"\n[SUCCESS] Wrote {written} instance files to {args.output}")
    sys.exit(0)


if __name__ == "__main__":
    main()
