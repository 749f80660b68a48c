"""Batch runner for the property suites.

A sweep writes two files: ``records`` (JSON lines, one object per
trial, sorted by suite then trial index) and ``summary`` (CSV, one row
per suite). Each trial draws from its own stream derived from
``(seed, suite, trial)``, so serial and parallel runs write identical
bytes.
"""
from __future__ import annotations

import csv
import io as _io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .suites import SUITES, Ranges, run_trial
from .tolerances import ToleranceProfile

log = logging.getLogger(__name__)

DEFAULT_TRIALS = {
    "decomposition": 500,
    "order_soundness": 200,
    "terminal": 100,
    "irreversibility": 100,
    "irreversibility_proportional": 50,
    "monotones": 500,
    "majorization": 500,
    "no_catalysis": 200,
    "discrimination": 1000,
    "witness": 50,
}


@dataclass
class ExperimentConfig:
    seed: int = 0
    dims: tuple[int, int] = (2, 3)
    outcomes: tuple[int, int] = (2, 4)
    suites: list[str] = field(default_factory=lambda: list(DEFAULT_TRIALS))
    trials: dict[str, int] = field(default_factory=dict)
    tolerances: ToleranceProfile = field(default_factory=ToleranceProfile)
    records_path: str = "records.jsonl"
    summary_path: str = "summary.csv"
    workers: int = 1

    def __post_init__(self):
        self.dims = tuple(int(x) for x in self.dims)
        self.outcomes = tuple(int(x) for x in self.outcomes)
        for name, (lo, hi) in (("dims", self.dims), ("outcomes", self.outcomes)):
            if lo < 1 or hi < lo:
                raise ValueError(f"{name} range {[lo, hi]} is empty or nonpositive")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ValueError(f"unknown suites {unknown}; available: {sorted(SUITES)}")
        if not self.suites:
            raise ValueError("no suites selected")
        for s in self.suites:
            if self.trial_count(s) < 1:
                raise ValueError(f"trial count for {s!r} must be at least 1")

    def trial_count(self, suite: str) -> int:
        return int(self.trials.get(suite, DEFAULT_TRIALS.get(suite, 100)))

    @classmethod
    def from_dict(cls, data: dict, base_dir: str | Path | None = None) -> "ExperimentConfig":
        data = dict(data)
        tol = ToleranceProfile.from_env(base=ToleranceProfile.from_dict(data.pop("tolerances", {})))
        trials = data.pop("trials", {})
        if isinstance(trials, int):
            trials = {s: trials for s in data.get("suites", DEFAULT_TRIALS)}
        cfg = cls(tolerances=tol, trials=trials, **data)
        if base_dir is not None:
            cfg.records_path = str(Path(base_dir) / cfg.records_path)
            cfg.summary_path = str(Path(base_dir) / cfg.summary_path)
        return cfg

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            data = json.load(fh)
        return cls.from_dict(data, base_dir=Path(path).parent)


@dataclass
class Report:
    records: list[dict]
    summary: list[dict]

    @property
    def passed(self) -> bool:
        return all(row["failed"] == 0 for row in self.summary)


def summarize(records: list[dict]) -> list[dict]:
    rows: dict[str, dict] = {}
    for r in records:
        row = rows.setdefault(r["suite"], {"suite": r["suite"], "trials": 0, "passed": 0, "failed": 0,
                                           "max_violation": 0.0})
        row["trials"] += 1
        row["passed" if r["passed"] else "failed"] += 1
        row["max_violation"] = max(row["max_violation"], float(r["violation"]))
        if "found" in r:
            row["found"] = row.get("found", 0) + int(r["found"])
    return [rows[k] for k in sorted(rows)]


def _sort_key(r: dict):
    return (r["suite"], r["trial"])


def records_to_jsonl(records: list[dict]) -> str:
    return "".join(json.dumps(r, sort_keys=True, allow_nan=False) + "\n" for r in sorted(records, key=_sort_key))


def summary_to_csv(summary: list[dict]) -> str:
    buf = _io.StringIO()
    cols = ["suite", "trials", "passed", "failed", "max_violation", "found"]
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n", restval="")
    w.writeheader()
    for row in summary:
        w.writerow({**row, "max_violation": repr(row["max_violation"])})
    return buf.getvalue()


def write_report(report: Report, cfg: ExperimentConfig) -> None:
    Path(cfg.records_path).parent.mkdir(parents=True, exist_ok=True)
    Path(cfg.records_path).write_text(records_to_jsonl(report.records))
    Path(cfg.summary_path).write_text(summary_to_csv(report.summary))


def _job(args):
    return run_trial(*args)


def run_sweep(cfg: ExperimentConfig, write: bool = True) -> Report:
    ranges = Ranges(cfg.dims, cfg.outcomes)
    jobs = [(s, cfg.seed, i, ranges, cfg.tolerances) for s in cfg.suites for i in range(cfg.trial_count(s))]
    records: list[dict] = []
    try:
        if cfg.workers > 1:
            with ProcessPoolExecutor(cfg.workers) as pool:
                for rec in pool.map(_job, jobs, chunksize=8):
                    records.append(rec)
        else:
            for job in jobs:
                records.append(_job(job))
    finally:
        # flush whatever finished, including on interruption
        report = Report(records, summarize(records))
        if write:
            write_report(report, cfg)
    for row in report.summary:
        log.info("%s: %d/%d passed (max violation %.3e)", row["suite"], row["passed"], row["trials"],
                 row["max_violation"])
    return report
