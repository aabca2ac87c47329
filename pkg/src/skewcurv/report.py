"""Residual records and deterministic JSON output."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass
class Check:
    """One verified quantity.

    ``relation`` says how residual and tolerance compare on success: ``"<"``
    for residuals that must be small, ``">"`` for quantities that must
    exceed the tolerance (e.g. a property that is required to fail).
    """

    name: str
    residual: float
    tolerance: float
    relation: str = "<"
    expected: float | None = None
    value: float | None = None
    note: str = ""

    @property
    def passed(self) -> bool:
        r = self.residual
        if not math.isfinite(r):
            return False
        if self.relation == "<":
            return r < self.tolerance
        if self.relation == "<=":
            return r <= self.tolerance
        if self.relation == ">":
            return r > self.tolerance
        if self.relation == ">=":
            return r >= self.tolerance
        raise ValueError(f"unknown relation {self.relation!r}")

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "name": self.name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "relation": self.relation,
            "pass": self.passed,
        }
        if self.expected is not None:
            d["expected"] = self.expected
        if self.value is not None:
            d["value"] = self.value
        if self.note:
            d["note"] = self.note
        return d

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: residual {self.residual:.3e} {self.relation} {self.tolerance:.1e}"


def value_check(name: str, value: float, expected: float, tolerance: float) -> Check:
    return Check(name, abs(value - expected), tolerance, expected=expected, value=value)


@dataclass
class Report:
    command: str
    checks: list[Check] = field(default_factory=list)
    computed: dict[str, Any] = field(default_factory=dict)
    metadata: dict[str, Any] = field(default_factory=dict)
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.passed for c in self.checks)

    def to_dict(self) -> dict[str, Any]:
        d = {
            "command": self.command,
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "computed": self.computed,
            "metadata": self.metadata,
        }
        if self.error is not None:
            d["error"] = self.error
        return d


def _plain(obj: Any) -> Any:
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def _encode(obj: Any, indent: int, level: int) -> str:
    import json

    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        return format(obj, ".17g")
    if isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _encode(_plain(obj), indent, 0)
