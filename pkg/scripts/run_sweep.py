"""Run the property suites from a config file and print the summary table.

    python scripts/run_sweep.py scripts/configs/default.json --workers 4
"""
import argparse
import logging
import sys
from pathlib import Path

from povmrt.sweep import ExperimentConfig, run_sweep


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("config", nargs="?", default=str(Path(__file__).parent / "configs" / "default.json"))
    ap.add_argument("--seed", type=int)
    ap.add_argument("--workers", type=int)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    cfg = ExperimentConfig.load(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.workers is not None:
        cfg.workers = args.workers
    report = run_sweep(cfg)
    print(Path(cfg.summary_path).read_text(), end="")
    print(f"records: {cfg.records_path}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
