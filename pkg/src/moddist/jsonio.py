"""Exact JSON encodings for field elements, places, point sets and reports.

Rationals are always written as ``"num/den"`` strings with decimal big
integers, so every file round-trips bit for bit. Output is deterministic:
keys appear in schema order and the layout is fixed.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .arith import QElem, QuadField
from .geometry import Model, PointSet
from .ideals import PrimePlace, place

__all__ = [
    "SchemaError",
    "rational_to_str",
    "rational_from_str",
    "qelem_to_json",
    "qelem_from_json",
    "place_to_json",
    "place_from_json",
    "pointset_to_json",
    "pointset_from_json",
    "dumps",
    "read_pointset",
    "write_pointset",
    "write_report",
]


class SchemaError(ValueError):
    """A JSON document does not match the expected schema."""


def rational_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rational_from_str(s, where: str = "value") -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise SchemaError(f"{where}: expected a \"num/den\" string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{where}: bad rational {s!r} ({exc})") from None


def _field(r, where: str) -> QuadField:
    if isinstance(r, bool) or not isinstance(r, int):
        raise SchemaError(f"{where}: r must be an integer, got {r!r}")
    try:
        return QuadField(r)
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def qelem_to_json(x: QElem, r: int | None = None) -> dict:
    return {"r": x.field.r if r is None else r, "a": rational_to_str(x.a), "b": rational_to_str(x.b)}


def _require(obj, keys, where):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object, got {type(obj).__name__}")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise SchemaError(f"{where}: missing field(s) {', '.join(missing)}")


def qelem_from_json(obj, where: str = "element", field: QuadField | None = None) -> QElem:
    _require(obj, ("r", "a", "b"), where)
    K = _field(obj["r"], f"{where}.r")
    a = rational_from_str(obj["a"], f"{where}.a")
    b = rational_from_str(obj["b"], f"{where}.b")
    if K.is_rational and b:
        raise SchemaError(f"{where}: b must be 0 over the rationals")
    x = QElem(K, a, b)
    if field is not None and K != field:
        if x.is_rational:
            return x.lift(field)
        raise SchemaError(f"{where}: element of Q(sqrt({K.r})) inside a point set over Q(sqrt({field.r}))")
    return x


def place_to_json(P: PrimePlace) -> dict:
    return {"r": P.field.r, "p": P.p, "splitting": P.splitting.value, "c": P.c}


def place_from_json(obj, where: str = "place") -> PrimePlace:
    _require(obj, ("r", "p"), where)
    K = _field(obj["r"], f"{where}.r")
    try:
        P = place(K, obj["p"], obj.get("c"))
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from None
    if "splitting" in obj and obj["splitting"] != P.splitting.value:
        raise SchemaError(f"{where}.splitting: {obj['splitting']!r} disagrees with computed {P.splitting.value!r}")
    return P


def pointset_to_json(X: PointSet) -> dict:
    r = X.field.r
    return {
        "r": r,
        "ambient": {"model": X.model.value, "d": X.d},
        "sqScale": qelem_to_json(X.sq_scale, r),
        "points": [[qelem_to_json(x, r) for x in row] for row in X.points],
    }


def pointset_from_json(obj) -> PointSet:
    _require(obj, ("r", "ambient", "sqScale", "points"), "pointset")
    K = _field(obj["r"], "pointset.r")
    amb = obj["ambient"]
    _require(amb, ("model", "d"), "ambient")
    try:
        model = Model(amb["model"])
    except ValueError:
        raise SchemaError(f"ambient.model: expected 'hyperplane' or 'cartesian', got {amb['model']!r}") from None
    d = amb["d"]
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise SchemaError(f"ambient.d: expected a positive integer, got {d!r}")
    scale = qelem_from_json(obj["sqScale"], "sqScale", K)
    rows = obj["points"]
    if not isinstance(rows, list) or not rows:
        raise SchemaError("points: expected a nonempty list of points")
    pts = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise SchemaError(f"points[{i}]: expected a list of coordinates")
        pts.append([qelem_from_json(x, f"points[{i}][{j}]", K) for j, x in enumerate(row)])
    try:
        return PointSet(K, model, d, tuple(tuple(r) for r in pts), scale)
    except ValueError as exc:
        raise SchemaError(f"pointset: {exc}") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


def read_pointset(path) -> PointSet:
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return pointset_from_json(obj)
    except SchemaError as exc:
        raise SchemaError(f"{path}: {exc}") from None


def write_pointset(X: PointSet, path) -> None:
    Path(path).write_text(dumps(pointset_to_json(X)))


def write_report(report: str, path=None, stream=None) -> None:
    """Write ``report`` text to ``path``, or to ``stream`` when no path is given."""
    if path is None:
        stream.write(report)
    else:
        Path(path).write_text(report)
