"""Manifold definition files (JSON).

Three document shapes, told apart by ``"type"``::

    {"type": "chart", "A": "2 + 0.1*sin(x1)", "B": "0.5"}
    {"type": "lie_group", "brackets": [[1, 4, [1, 0, 0, 0]], ...],
     "S_images": [[0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]}
    {"type": "preset", "name": "g45", "a": 1, "b": 1}

``S_images`` is optional (default S e1 = -e4, S e2 = e1, S e3 = e2, S e4 = e3).
"""
from __future__ import annotations

import json
import os
from typing import Any

from . import expr as ex
from .connection import ChartManifold, LieGroupManifold, g45_algebra, lie_from_brackets
from .errors import ManifoldFileError, ParameterOutOfRange, ParseError
from .manifold import structure_from_images

PRESETS = ("g45",)


def _number(doc: dict, key: str) -> float:
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ManifoldFileError(f"field {key!r} must be a number")
    return float(v)


def manifold_from_dict(doc: Any) -> ChartManifold | LieGroupManifold:
    if not isinstance(doc, dict):
        raise ManifoldFileError("manifold document must be a JSON object")
    kind = doc.get("type")
    if kind == "chart":
        fields = {}
        for key in ("A", "B"):
            src = doc.get(key)
            if not isinstance(src, str):
                raise ManifoldFileError(f"chart field {key!r} must be an expression string")
            try:
                fields[key] = ex.parse(src)
            except ParseError as e:
                raise ManifoldFileError(f"field {key!r}: {e}") from e
        return ChartManifold(fields["A"], fields["B"], domain_note=str(doc.get("domain_note", "")))
    if kind == "lie_group":
        brackets = doc.get("brackets")
        if not isinstance(brackets, list):
            raise ManifoldFileError("lie_group needs a 'brackets' list")
        entries = []
        for item in brackets:
            if (
                not isinstance(item, list)
                or len(item) != 3
                or not all(isinstance(t, int) and not isinstance(t, bool) for t in item[:2])
                or not isinstance(item[2], list)
                or len(item[2]) != 4
            ):
                raise ManifoldFileError(f"bracket entry {item!r} must be [i, j, [c1, c2, c3, c4]]")
            i, j, coeffs = item
            if not (1 <= i <= 4 and 1 <= j <= 4) or i == j:
                raise ManifoldFileError(f"bracket indices must be distinct and in 1..4, got ({i}, {j})")
            if not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in coeffs):
                raise ManifoldFileError(f"bracket coefficients must be numbers: {coeffs!r}")
            entries.append((i, j, coeffs))
        S = None
        if "S_images" in doc:
            try:
                S = structure_from_images(doc["S_images"])
            except ValueError as e:
                raise ManifoldFileError(f"S_images: {e}") from e
        try:
            return lie_from_brackets(entries, S, name=str(doc.get("name", "lie_group")))
        except ValueError as e:
            raise ManifoldFileError(str(e)) from e
    if kind == "preset":
        name = doc.get("name")
        if name not in PRESETS:
            raise ManifoldFileError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}")
        try:
            return g45_algebra(_number(doc, "a"), _number(doc, "b"))
        except ParameterOutOfRange as e:
            raise ManifoldFileError(str(e)) from e
    raise ManifoldFileError(f"unknown manifold type {kind!r} (expected chart, lie_group or preset)")


def load_manifold(path: str | os.PathLike) -> ChartManifold | LieGroupManifold:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as e:
        raise ManifoldFileError(f"invalid JSON: {e}") from e
    return manifold_from_dict(doc)
