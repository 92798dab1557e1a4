"""Verification reports shared by every checker."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List

from .partitions import Partition
from .scalars import TruncSeries, format_rational


@dataclass
class Report:
    check: str
    inputs: Dict[str, Any]
    passed: bool = True
    residuals: List[Dict[str, Any]] = field(default_factory=list)
    notes: Dict[str, Any] = field(default_factory=dict)

    def fail(self, **entry) -> None:
        self.passed = False
        self.residuals.append(entry)

    def require(self, ok: bool, **entry) -> None:
        if not ok:
            self.fail(**entry)

    def merge(self, other: "Report", label: str | None = None) -> None:
        if not other.passed:
            self.passed = False
            for r in other.residuals:
                self.residuals.append({"sub": label or other.check, **r})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "inputs": jsonable(self.inputs),
            "pass": self.passed,
            "residuals": jsonable(self.residuals),
            "notes": jsonable(self.notes),
        }

    def __bool__(self) -> bool:
        return self.passed


def jsonable(obj):
    """Convert exact values to JSON-friendly strings and containers."""
    from .polyring import Poly

    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, Partition):
        return obj.serialize()
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, TruncSeries):
        return obj.to_json()
    if isinstance(obj, Poly):
        return obj.to_text()
    if isinstance(obj, dict):
        return {_key(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "serialize"):
        return obj.serialize()
    return str(obj)


def _key(k) -> str:
    if isinstance(k, str):
        return k
    if isinstance(k, tuple) and all(isinstance(p, Partition) for p in k):
        return "|".join(p.serialize() for p in k)
    if isinstance(k, Partition):
        return k.serialize()
    if hasattr(k, "serialize"):
        return k.serialize()
    return str(k)


def dumps(report_dict: Dict[str, Any]) -> str:
    return json.dumps(report_dict, indent=2, sort_keys=False)
