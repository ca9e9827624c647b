"""
Suite reports: per-trial records, aggregates and flat-file output.
"""

import logging
import platform
from collections import defaultdict
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from remez_lab import __version__

logger = logging.getLogger(__name__)

# suites that only record findings and never count violations
RECORD_ONLY_SUITES = ("bh-ratio", "composite-findings")
GROWTH_SPLIT_N = 4


class TrialRecord(BaseModel):
    index: int
    n: Optional[int] = None
    d: Optional[int] = None
    K: Optional[int] = None
    seed: int
    digest: Optional[str] = None
    metrics: Dict[str, Any] = Field(default_factory=dict)
    passed: bool = True
    skipped: bool = False
    note: Optional[str] = None


class RatioRow(BaseModel):
    d: Optional[int]
    K: Optional[int]
    n: Optional[int]
    max_ratio: float
    certified_C: Optional[float] = None


class SuiteAggregates(BaseModel):
    trials: int
    violation_count: int
    skipped: int
    max_ratio_per_n: List[RatioRow] = Field(default_factory=list)
    growth_ok: Optional[bool] = None
    record_only: bool = False


class Environment(BaseModel):
    seed: int
    version: str = __version__
    python: str = Field(default_factory=platform.python_version)
    numpy: str = np.__version__
    cap: int


class SuiteReport(BaseModel):
    suite: str
    config: Dict[str, Any]
    records: List[TrialRecord]
    aggregates: SuiteAggregates
    environment: Environment

    @property
    def passed(self) -> bool:
        return self.aggregates.violation_count == 0 and self.aggregates.growth_ok is not False


def ratio_rows(records: Sequence[TrialRecord]) -> List[RatioRow]:
    """Max of the `ratio` metric per (d, K, n), sorted."""
    best: Dict[tuple, float] = {}
    certified: Dict[tuple, Optional[float]] = {}
    for record in records:
        ratio = record.metrics.get("ratio")
        if ratio is None or record.skipped:
            continue
        key = (record.d, record.K, record.n)
        best[key] = max(best.get(key, float("-inf")), float(ratio))
        certified[key] = record.metrics.get("certified_C")
    return [
        RatioRow(d=d, K=K, n=n, max_ratio=best[(d, K, n)], certified_C=certified[(d, K, n)])
        for d, K, n in sorted(best, key=lambda k: tuple(-1 if v is None else v for v in k))
    ]


def growth_check(rows: Sequence[RatioRow], factor: float) -> Optional[bool]:
    """
    Per (d, K): max ratio over n > GROWTH_SPLIT_N stays within `factor` times
    the max over n <= GROWTH_SPLIT_N. None when no (d, K) has both sides.
    """
    low: Dict[tuple, float] = defaultdict(lambda: float("-inf"))
    high: Dict[tuple, float] = defaultdict(lambda: float("-inf"))
    for row in rows:
        side = low if (row.n or 0) <= GROWTH_SPLIT_N else high
        side[(row.d, row.K)] = max(side[(row.d, row.K)], row.max_ratio)
    shared = [key for key in high if key in low]
    if not shared:
        return None
    return all(high[key] <= factor * low[key] for key in shared)


def aggregate(suite: str, records: Sequence[TrialRecord], growth_factor: Optional[float] = None) -> SuiteAggregates:
    record_only = suite in RECORD_ONLY_SUITES
    violations = 0 if record_only else sum(1 for r in records if not r.passed and not r.skipped)
    rows = ratio_rows(records)
    return SuiteAggregates(
        trials=len(records),
        violation_count=violations,
        skipped=sum(1 for r in records if r.skipped),
        max_ratio_per_n=rows,
        growth_ok=growth_check(rows, growth_factor) if growth_factor is not None else None,
        record_only=record_only,
    )


def write_report(report: SuiteReport, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.info("Saved report %s", path)
    return path


def records_frame(report: SuiteReport) -> pd.DataFrame:
    """One row per trial with metrics flattened into columns."""
    rows = [record.model_dump() for record in report.records]
    if not rows:
        return pd.DataFrame(columns=["index", "n", "d", "K", "seed", "digest", "passed", "skipped", "note"])
    return pd.json_normalize(rows, sep="_")


def summary_frame(report: SuiteReport) -> pd.DataFrame:
    """(d, K, n, max ratio, certified C) rows; falls back to the per-trial frame."""
    if not report.aggregates.max_ratio_per_n:
        return records_frame(report)
    return pd.DataFrame([row.model_dump() for row in report.aggregates.max_ratio_per_n])


def write_csv(report: SuiteReport, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    summary_frame(report).to_csv(path, index=False)
    logger.info("Saved CSV %s", path)
    return path
