"""Structured check results and their JSON form."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from . import __version__

PASS = "pass"
FAIL = "fail"
BOUND_ONLY = "bound-only"
SKIPPED = "skipped"
RECORDED = "recorded"

CONVENTIONS = (
    "d_Y is the diameter of the union of projections; annular arcs n, n' sit at "
    "distance 1 + |n - n'|, so a single arc has diameter 1 and annular values carry "
    "+-1 slack against the minimal-distance convention"
)


@dataclass
class CheckRecord:
    check_id: str
    anchor: str
    status: str
    inputs: dict = field(default_factory=dict)
    lhs: object = None
    rhs: object = None
    slack: str = ""
    reason: str = ""
    unconditional: bool = True

    def __post_init__(self):
        if not self.anchor:
            raise ValueError("every check record needs an anchor")
        if self.status == SKIPPED and not self.reason:
            raise ValueError("skipped records need a reason")

    @property
    def failed(self):
        return self.status == FAIL and self.unconditional


def record(check_id, anchor, lhs, rhs, holds, **kw):
    return CheckRecord(check_id, anchor, PASS if holds else FAIL, lhs=lhs, rhs=rhs, **kw)


@dataclass
class CheckReport:
    records: list
    seed: int = 0
    subject: str = ""
    wall_clock_s: float = None

    def sorted_records(self):
        return sorted(self.records, key=lambda r: r.check_id)

    @property
    def failures(self):
        return [r for r in self.records if r.failed]

    @property
    def ok(self):
        return not self.failures

    def to_dict(self, timestamps=True):
        out = {
            "tool": "veerlat",
            "tool_version": __version__,
            "subject": self.subject,
            "seed": self.seed,
            "conventions": CONVENTIONS,
            "summary": {
                "total": len(self.records),
                "failed": len(self.failures),
                "by_status": _count_status(self.records),
            },
            "records": [asdict(r) for r in self.sorted_records()],
        }
        if timestamps and self.wall_clock_s is not None:
            out["wall_clock_s"] = round(self.wall_clock_s, 3)
        return out

    def to_json(self, timestamps=True):
        return json.dumps(self.to_dict(timestamps), indent=2, sort_keys=True, default=str) + "\n"


def _count_status(records):
    out = {}
    for r in records:
        out[r.status] = out.get(r.status, 0) + 1
    return dict(sorted(out.items()))
