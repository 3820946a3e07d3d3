"""Verification records shared by every checking routine."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Mapping

REPORT_COLUMNS = ("name", "d", "c", "m", "k", "lhs", "rhs", "slack", "condition_met", "pass")


def fmt_real(x) -> str:
    """Format a real with 17 significant digits (bit-faithful round trip)."""
    if x is None:
        return ""
    return format(float(x), ".17g")


@dataclass
class BoundReport:
    """One evaluated inequality ``lhs <= rhs``.

    ``condition_met`` is False when the hypothesis of the underlying statement
    does not hold; such reports are recorded but never counted as failures.
    ``gating`` is False for informational comparisons whose outcome is
    recorded without deciding overall success.
    """

    name: str
    lhs: float
    rhs: float
    params: dict = field(default_factory=dict)
    condition_met: bool = True
    rel_tol: float = 1e-12
    note: str = ""
    passed: bool | None = None
    gating: bool = True

    def __post_init__(self):
        self.lhs = float(self.lhs)
        self.rhs = float(self.rhs)
        if self.passed is None:
            self.passed = bool(self.slack >= -self.rel_tol * abs(self.rhs))

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def ok(self) -> bool:
        """True unless a gating report's hypothesis holds and the inequality fails."""
        return self.passed or not self.condition_met or not self.gating

    def row(self) -> dict:
        p = self.params
        return {
            "name": self.name,
            "d": p.get("d", ""),
            "c": fmt_real(p["c"]) if "c" in p else "",
            "m": p.get("m", ""),
            "k": p.get("k", p.get("n", p.get("j", ""))),
            "lhs": fmt_real(self.lhs),
            "rhs": fmt_real(self.rhs),
            "slack": fmt_real(self.slack),
            "condition_met": str(bool(self.condition_met)).lower(),
            "pass": str(bool(self.passed)).lower(),
        }


def write_csv(rows: Iterable[Mapping], columns: Iterable[str], stream=None) -> str:
    """Write rows as comma-separated text with LF line endings; returns the text."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n",
                            extrasaction="ignore")
    writer.writeheader()
    for r in rows:
        writer.writerow(r)
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text


def reports_to_csv(reports: Iterable[BoundReport], stream=None) -> str:
    return write_csv((r.row() for r in reports), REPORT_COLUMNS, stream)


def summarize(reports: Iterable[BoundReport]) -> dict:
    reports = list(reports)
    gated = [r for r in reports if r.condition_met and r.gating]
    info = [r for r in reports if r.condition_met and not r.gating]
    return {
        "total": len(reports),
        "passed": sum(r.passed for r in gated),
        "failed": sum(not r.passed for r in gated),
        "skipped": sum(not r.condition_met for r in reports),
        "informational": len(info),
    }
