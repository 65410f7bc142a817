"""Scan reports, envelope fits and the CSV / JSON / plot-data writers."""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

SCHEMA_VERSION = 1

PASS = "PASS"
COMPLETE = "COMPLETE"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"
NOT_APPLICABLE = "NOT-APPLICABLE"
DEGENERATE = "DEGENERATE"

EXIT_CODES = {PASS: 0, COMPLETE: 0, DEGENERATE: 0, FAIL: 2, INCONCLUSIVE: 3, NOT_APPLICABLE: 3}


@dataclass
class Fit:
    """Upper envelope ``value <= slope * key + intercept`` of bucket maxima.

    ``slope`` is the largest slope between consecutive buckets (optionally
    clamped from below), ``intercept`` the largest residual, so every point
    lies under the line. Least squares is kept for the trend only.
    """

    slope: Fraction
    intercept: Fraction
    raw_slope: Optional[Fraction]
    lsq_slope: Optional[float]
    lsq_intercept: Optional[float]
    method: str = "envelope: max consecutive slope, max residual"

    def bound(self, key) -> Fraction:
        return self.slope * key + self.intercept

    def holds(self, key, value) -> bool:
        return value <= self.bound(key)

    def to_json(self):
        return {
            "slope": _num(self.slope),
            "intercept": _num(self.intercept),
            "raw_slope": _num(self.raw_slope),
            "lsq_slope": None if self.lsq_slope is None else round(self.lsq_slope, 12),
            "lsq_intercept": None if self.lsq_intercept is None else round(self.lsq_intercept, 12),
            "method": self.method,
        }


def _num(v):
    if v is None:
        return None
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else str(v)
    return v


def envelope_fit(points: Sequence[Tuple[int, int]], min_slope=None, min_intercept=None) -> Optional[Fit]:
    pts = sorted((Fraction(k), Fraction(v)) for k, v in points)
    if not pts:
        return None
    raw = None
    for (k1, v1), (k2, v2) in zip(pts, pts[1:]):
        if k2 != k1:
            s = (v2 - v1) / (k2 - k1)
            raw = s if raw is None else max(raw, s)
    slope = raw if raw is not None else Fraction(0)
    if min_slope is not None:
        slope = max(slope, Fraction(min_slope))
    intercept = max(v - slope * k for k, v in pts)
    if min_intercept is not None:
        intercept = max(intercept, Fraction(min_intercept))
    lsq_s = lsq_i = None
    if len(pts) >= 2:
        n = len(pts)
        mk = sum(k for k, _ in pts) / n
        mv = sum(v for _, v in pts) / n
        var = sum((k - mk) ** 2 for k, _ in pts)
        if var:
            cov = sum((k - mk) * (v - mv) for k, v in pts)
            lsq_s = float(cov / var)
            lsq_i = float(mv - cov / var * mk)
    return Fit(slope, intercept, raw, lsq_s, lsq_i)


@dataclass
class ScanReport:
    command: str
    params: Dict
    columns: List[str]
    rows: List[Dict]
    fit: Optional[Fit] = None
    verdict: str = COMPLETE
    flags: Dict = field(default_factory=dict)
    counts: Dict = field(default_factory=dict)
    extra: Dict = field(default_factory=dict)
    plot: List[Tuple] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES.get(self.verdict, 3)

    def to_json(self) -> Dict:
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "params": self.params,
            "columns": self.columns,
            "rows": self.rows,
            "fit": self.fit.to_json() if self.fit else None,
            "verdict": self.verdict,
            "flags": self.flags,
            "counts": self.counts,
            "extra": self.extra,
        }

    def json_text(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, default=_json_default) + "\n"

    def csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow(["" if r.get(c) is None else r.get(c) for c in self.columns])
        return buf.getvalue()

    def dat_text(self) -> str:
        lines = [f"# {self.command}: " + " ".join(self.columns[:2])]
        for p in self.plot:
            lines.append(" ".join(str(v) for v in p))
        return "\n".join(lines) + "\n"

    def write(self, out_dir: str, stem: Optional[str] = None) -> Dict[str, str]:
        os.makedirs(out_dir, exist_ok=True)
        stem = stem or self.command
        paths = {}
        for ext, text in (("csv", self.csv_text()), ("json", self.json_text()), ("dat", self.dat_text())):
            p = os.path.join(out_dir, f"{stem}.{ext}")
            with open(p, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
            paths[ext] = p
        return paths

    def summary(self) -> str:
        out = [f"{self.command}: verdict {self.verdict}"]
        if self.fit:
            out.append(f"  envelope: value <= {_num(self.fit.slope)} * key + {_num(self.fit.intercept)}")
        for k, v in sorted(self.flags.items()):
            out.append(f"  {k}: {v}")
        return "\n".join(out)


def _json_default(o):
    if isinstance(o, Fraction):
        return _num(o)
    if hasattr(o, "to_json"):
        return o.to_json()
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    return str(o)
