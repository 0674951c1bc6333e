"""JSON structure files and weight maps.

Writers emit entries in a canonical order so identical structures produce
byte-identical files.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .algebra import MultiPoly
from .deltamatroid import DeltaMatroid
from .errors import MalformedInput
from .multimatroid import Carrier, Multimatroid, SkewClass
from .ribbon import ArrowPresentation, Occurrence


def read_json(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise MalformedInput(f"cannot read {path}: {err.strerror}") from err
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise MalformedInput(f"{path}: invalid JSON ({err.msg} at line {err.lineno})") from err


def _flat(x) -> bool:
    if isinstance(x, dict):
        return all(not isinstance(v, (dict, list)) for v in x.values())
    if isinstance(x, list):
        return all(not isinstance(v, (dict, list)) for v in x)
    return True


def _render(obj, depth: int) -> str:
    if _flat(obj):
        return json.dumps(obj, ensure_ascii=False)
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(obj, dict):
        items = [f"{inner}{json.dumps(k)}: {_render(v, depth + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    items = [inner + _render(v, depth + 1) for v in obj]
    return "[\n" + ",\n".join(items) + "\n" + pad + "]"


def dumps(obj) -> str:
    """Indented JSON with flat lists and objects kept on one line."""
    return _render(obj, 0) + "\n"


def _need(data, key: str, kind: type, where: str):
    if not isinstance(data, dict) or key not in data:
        raise MalformedInput(f"{where}: missing key {key!r}")
    value = data[key]
    if not isinstance(value, kind):
        raise MalformedInput(f"{where}: {key!r} must be a {kind.__name__}")
    return value


def _labels(items, where: str) -> list:
    if not isinstance(items, list) or not all(isinstance(x, (str, int)) for x in items):
        raise MalformedInput(f"{where}: expected a list of labels")
    return [str(x) for x in items]


# multimatroids -----------------------------------------------------------------

def mm_from_json(data) -> Multimatroid:
    classes = []
    for i, c in enumerate(_need(data, "classes", list, "multimatroid")):
        where = f"class #{i}"
        name = str(_need(c, "name", (str, int), where))
        elems = _labels(_need(c, "elems", list, where), where)
        if not elems:
            raise MalformedInput(f"{where}: skew classes must be nonempty")
        classes.append(SkewClass(name, tuple(elems), bool(c.get("ordered", False))))
    carrier = Carrier(classes)
    bases = [_labels(b, "bases") for b in _need(data, "bases", list, "multimatroid")]
    for b in bases:
        unknown = [x for x in b if x not in carrier.bit]
        if unknown:
            raise MalformedInput(f"basis mentions unknown elements {unknown}")
    return Multimatroid(carrier, bases)


def mm_to_json(Z: Multimatroid) -> dict:
    c = Z.carrier
    bases = [sorted(c.elems_of(m), key=c.bit.get) for m in Z.basis_masks()]
    bases.sort(key=lambda b: [c.bit[e] for e in b])
    return {
        "classes": [{"name": k.name, "ordered": k.ordered, "elems": list(k.elems)} for k in c.classes],
        "bases": bases,
    }


def load_mm(path) -> Multimatroid:
    return mm_from_json(read_json(path))


# delta-matroids ----------------------------------------------------------------

def dm_from_json(data, validate: bool = True) -> DeltaMatroid:
    ground = _labels(_need(data, "ground", list, "delta-matroid"), "ground")
    feasible = [_labels(F, "feasible") for F in _need(data, "feasible", list, "delta-matroid")]
    known = set(ground)
    for F in feasible:
        if not set(F) <= known:
            raise MalformedInput(f"feasible set {F} is not inside the ground set")
    return DeltaMatroid(ground, feasible, validate=validate)


def dm_to_json(D: DeltaMatroid) -> dict:
    def key(m):
        return (m.bit_count(), [i for i in range(D.n) if m >> i & 1])
    return {"ground": list(D.ground),
            "feasible": [[g for i, g in enumerate(D.ground) if m >> i & 1]
                         for m in sorted(D.masks, key=key)]}


def load_dm(path) -> DeltaMatroid:
    return dm_from_json(read_json(path))


# ribbon graphs -----------------------------------------------------------------

def rg_from_json(data) -> ArrowPresentation:
    circles = []
    for c in _need(data, "circles", list, "ribbon graph"):
        if not isinstance(c, list):
            raise MalformedInput("each circle must be a list of arrows")
        circle = []
        for o in c:
            edge = str(_need(o, "edge", (str, int), "arrow"))
            slot = _need(o, "slot", int, "arrow")
            d = _need(o, "dir", str, "arrow")
            circle.append(Occurrence(edge, slot, d))
        circles.append(circle)
    dist = data.get("distinguished") or {}
    if not isinstance(dist, dict):
        raise MalformedInput("'distinguished' must map edges to slots")
    return ArrowPresentation(circles, dist)


def rg_to_json(G: ArrowPresentation) -> dict:
    return G.to_json()


def load_rg(path) -> ArrowPresentation:
    return rg_from_json(read_json(path))


# weights -----------------------------------------------------------------------

_RATIONAL = re.compile(r"-?\d+(/\d+)?")


def parse_value(v) -> MultiPoly:
    """A number, a ``p/q`` string or polynomial text."""
    if isinstance(v, bool):
        raise MalformedInput("weights must be numbers or polynomial text")
    if isinstance(v, int):
        return MultiPoly.const(v)
    if isinstance(v, str):
        s = v.strip()
        if _RATIONAL.fullmatch(s):
            try:
                return MultiPoly.const(Fraction(s))
            except ZeroDivisionError as err:
                raise MalformedInput(f"zero denominator in {v!r}") from err
        return MultiPoly.parse(s)
    raise MalformedInput(f"unsupported weight {v!r}; use an integer or a string")


def weights_from_json(data) -> dict:
    if not isinstance(data, dict):
        raise MalformedInput("a weight map must be a JSON object")
    return {str(k): parse_value(v) for k, v in data.items()}


def load_weights(path) -> dict:
    return weights_from_json(read_json(path))
