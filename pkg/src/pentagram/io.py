"""Exact JSON serialization of every state kind, plus conversions between them.

Each document is an object tagged with ``"mode"``; rationals are written as
``"p/q"`` strings (integers as plain ``"p"``), so a print/parse round trip
is the identity.
"""

from __future__ import annotations

import json
from typing import Any

from pentagram.dynamics import CornerState, MapShape, PQState, XYState, corner_to_xy, project_pq
from pentagram.errors import StateFormatError
from pentagram.exact.rational import as_rational, format_rational
from pentagram.geometry import LiftedPolygon, RP1Point, polygon_from_dict, polygon_from_xy, polygon_to_dict, xy_from_polygon
from pentagram.leapfrog import LeapfrogState, leapfrog_coords

MODES = ("xy", "pq", "corner", "polygon", "leapfrog")

_FIELDS = {
    "xy": {"mode", "k", "x", "y"},
    "pq": {"mode", "k", "p", "q"},
    "corner": {"mode", "X", "Y"},
    "polygon": {"mode", "k", "n", "vertices", "monodromy"},
    "leapfrog": {"mode", "n", "S_minus", "S", "monodromy"},
}


def _fmt(values) -> list[str]:
    return [format_rational(v) for v in values]


def _point(p: RP1Point) -> list[str]:
    return [format_rational(p.u), format_rational(p.v)]


def state_mode(state) -> str:
    if isinstance(state, XYState):
        return "xy"
    if isinstance(state, PQState):
        return "pq"
    if isinstance(state, CornerState):
        return "corner"
    if isinstance(state, LiftedPolygon):
        return "polygon"
    if isinstance(state, LeapfrogState):
        return "leapfrog"
    raise TypeError(f"not a state: {type(state).__name__}")


def state_to_dict(state) -> dict:
    mode = state_mode(state)
    if mode == "xy":
        return {"mode": mode, "k": state.shape.k, "x": _fmt(state.x), "y": _fmt(state.y)}
    if mode == "pq":
        return {"mode": mode, "k": state.shape.k, "p": _fmt(state.p), "q": _fmt(state.q)}
    if mode == "corner":
        return {"mode": mode, "X": _fmt(state.X), "Y": _fmt(state.Y)}
    if mode == "polygon":
        return {"mode": mode, **polygon_to_dict(state)}
    return {
        "mode": mode,
        "n": state.n,
        "S_minus": [_point(p) for p in state.S_minus],
        "S": [_point(p) for p in state.S],
        "monodromy": [_fmt(row) for row in state.monodromy],
    }


def _rationals(data: dict, field: str) -> list:
    values = data[field]
    if not isinstance(values, list):
        raise StateFormatError(f"field {field!r} must be a list")
    out = []
    for j, v in enumerate(values):
        try:
            out.append(as_rational(v))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise StateFormatError(f"field {field!r}[{j}]: {exc}") from exc
    return out


def _points(data: dict, field: str) -> list[RP1Point]:
    values = data[field]
    if not isinstance(values, list):
        raise StateFormatError(f"field {field!r} must be a list")
    out = []
    for j, v in enumerate(values):
        try:
            u, w = (as_rational(a) for a in v)
            out.append(RP1Point(u, w))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise StateFormatError(f"field {field!r}[{j}]: expected a pair [u, v] ({exc})") from exc
    return out


def _integer(data: dict, field: str) -> int:
    v = data[field]
    if isinstance(v, bool) or not isinstance(v, int):
        raise StateFormatError(f"field {field!r} must be an integer")
    return v


def state_from_dict(data: Any):
    if not isinstance(data, dict):
        raise StateFormatError("a state must be a JSON object")
    mode = data.get("mode")
    if mode not in _FIELDS:
        raise StateFormatError(f"field 'mode' must be one of {list(MODES)}, got {mode!r}")
    expected = _FIELDS[mode]
    extra = sorted(set(data) - expected)
    if extra:
        raise StateFormatError(f"unknown field(s) for mode {mode!r}: {extra}")
    missing = sorted(expected - set(data))
    if missing:
        raise StateFormatError(f"missing field(s) for mode {mode!r}: {missing}")
    try:
        if mode == "xy":
            x, y = _rationals(data, "x"), _rationals(data, "y")
            return XYState(MapShape(_integer(data, "k"), len(x)), x, y)
        if mode == "pq":
            p, q = _rationals(data, "p"), _rationals(data, "q")
            return PQState(MapShape(_integer(data, "k"), len(p)), p, q)
        if mode == "corner":
            return CornerState(_rationals(data, "X"), _rationals(data, "Y"))
        if mode == "polygon":
            return polygon_from_dict({f: data[f] for f in expected - {"mode"}})
        mono = data["monodromy"]
        if not (isinstance(mono, list) and len(mono) == 2):
            raise StateFormatError("field 'monodromy' must be a 2x2 matrix")
        rows = [_rationals({"monodromy": row}, "monodromy") for row in mono]
        return LeapfrogState(_integer(data, "n"), _points(data, "S_minus"), _points(data, "S"), rows)
    except ValueError as exc:
        raise StateFormatError(str(exc)) from exc


def dumps(state) -> str:
    return json.dumps(state_to_dict(state), indent=2) + "\n"


def loads(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFormatError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return state_from_dict(data)


def load(path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(state, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(state))


def convert(state, target: str, k: int | None = None):
    """Convert between state kinds along the maps the library defines.

    Supported: corner -> xy (k = 3), polygon -> xy, leapfrog -> xy (k = 2),
    xy -> pq, xy -> polygon (k >= 3), and the identity.  ``k`` relabels an
    xy/pq state when given.
    """
    if target not in MODES:
        raise StateFormatError(f"unknown target mode {target!r}")
    mode = state_mode(state)
    if mode == target and k is None:
        return state
    if mode == "pq" and target == "pq":
        return PQState(MapShape(k, state.shape.n), state.p, state.q)
    if mode == "corner":
        xy = corner_to_xy(state)
    elif mode == "polygon":
        xy = xy_from_polygon(state)
    elif mode == "leapfrog":
        xy = leapfrog_coords(state)
    elif mode == "xy":
        xy = state
    else:
        raise StateFormatError(f"no conversion from {mode!r} to {target!r}")
    if k is not None:
        xy = xy.with_shape(k)
    if target == "xy":
        return xy
    if target == "pq":
        return project_pq(xy)
    if target == "polygon":
        return polygon_from_xy(xy)
    raise StateFormatError(f"no conversion from {mode!r} to {target!r}")
