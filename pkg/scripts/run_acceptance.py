#!/usr/bin/env python3
"""
Run the acceptance suite over a directory of instance files.

Usage:
    python scripts/run_acceptance.py DIR [--seed S] [--max-degree D]

Exits 1 if any check fails on any instance.
"""

import argparse
import glob
import logging
import os
import sys

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)
sys.path.insert(0, parent_dir)

from hypertoric import create_app  # noqa: E402
from hypertoric.config.settings import config  # noqa: E402
from hypertoric.services.verification import verify  # noqa: E402
from hypertoric.utils.errors import HypertoricError  # noqa: E402
from hypertoric.utils.helpers import render_table  # noqa: E402
from hypertoric.utils.validators import ValidationError, load_instance, validator  # noqa: E402

logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")
logger = logging.getLogger(__name__)


def run_directory(directory: str, seed=None, max_degree=None):
    rows = []
    failures = 0
    for path in sorted(glob.glob(os.path.join(directory, "*.json"))):
        name = os.path.basename(path)
        try:
            arrangement = validator.validate_instance(load_instance(path))
            results = verify(arrangement, seed=seed, max_degree=max_degree)
        except (HypertoricError, ValidationError) as e:
            logger.error(f"{name}: {e}")
            rows.append([name, "error", str(e)])
            failures += 1
            continue
        failed = [r.name for r in results if not r.passed]
        skipped = sum(1 for r in results if r.skipped)
        failures += bool(failed)
        rows.append([name, "FAILED" if failed else "ok", ", ".join(failed) or f"{skipped} skipped"])
    return rows, failures


def main():
    parser = argparse.ArgumentParser(description="Run the acceptance checks on every instance in a directory")
    parser.add_argument("directory", help="Directory of instance JSON files")
    parser.add_argument("--seed", type=int, default=None, help="Also run the random Gale suite with this seed")
    parser.add_argument("--max-degree", dest="max_degree", type=int, default=None, help="Degree budget D")
    args = parser.parse_args()

    create_app(config[os.getenv("HYPO_ENV", "default")])
    rows, failures = run_directory(args.directory, args.seed, args.max_degree)
    print(render_table(rows, headers=["instance", "status", "details"]))
    if failures:
        print(f"\n[ERROR] {failures} instance(s) failed")
        sys.exit(1)
    print(f"\n[SUCCESS] All {len(rows)} instances passed")
    sys.exit(0)


if __name__ == "__main__":
    main()
