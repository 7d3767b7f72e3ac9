"""JSON file formats with exact rational strings.

Numbers are JSON integers or strings like ``"3/2"``; JSON floats and decimal
strings are rejected.  Formats (all objects)::

    body      {"cone": {"generators": [[..], ..]},
               "delta": {"basePoints": [[..], ..]}, "xi": [..]}
    polytope  {"vertices": [[..], ..]}
    family    {"kind": "coconvex" | "convex" | "wedge", ...}

A coconvex or convex family lists ``"bodies"`` (inline objects or paths
relative to the family file) and ``"marked"`` coefficient vectors.  A wedge
family lists ``"normals"`` and the second wedge ray ``"wedge"``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .coconvex import CoconvexBody, make_body
from .errors import ContractError, ParseError
from .geometry import Polytope, convex_hull
from .mixed import LinearFamilyConvex, LinearFamilyCoconvex
from .polygon2d import WedgeFamily

_RATIONAL = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


def _reject_float(s: str):
    raise ParseError(f"float literal {s!r} is not allowed; write rationals as strings like \"3/2\"")


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}: line {e.lineno} column {e.colno}: {e.msg}") from None


def load(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from None
    try:
        return loads(text, str(path))
    except ParseError as e:
        if str(path) in str(e):
            raise
        raise ParseError(f"{path}: {e}") from None


def rational(x: Any, where: str) -> Fraction:
    if isinstance(x, bool):
        raise ParseError(f"{where}: expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and _RATIONAL.match(x):
        try:
            return Fraction(x.replace(" ", ""))
        except ZeroDivisionError:
            raise ParseError(f"{where}: zero denominator in {x!r}") from None
    raise ParseError(f"{where}: malformed rational {x!r}")


def integer(x: Any, where: str) -> int:
    q = x if isinstance(x, Fraction) else rational(x, where)
    if q.denominator != 1:
        raise ParseError(f"{where}: expected an integer, got {x!r}")
    return int(q)


def vector(x: Any, where: str, length: int | None = None) -> tuple[Fraction, ...]:
    if not isinstance(x, list) or not x:
        raise ParseError(f"{where}: expected a non-empty list")
    out = tuple(rational(c, f"{where}[{i}]") for i, c in enumerate(x))
    if length is not None and len(out) != length:
        raise ParseError(f"{where}: expected {length} coordinates, got {len(out)}")
    return out


def vectors(x: Any, where: str, length: int | None = None) -> list[tuple[Fraction, ...]]:
    if not isinstance(x, list) or not x:
        raise ParseError(f"{where}: expected a non-empty list of vectors")
    out = []
    for i, v in enumerate(x):
        out.append(vector(v, f"{where}[{i}]", length))
        length = len(out[0])
    return out


def _field(obj: Any, key: str, where: str) -> Any:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    return obj[key]


def parse_body(obj: Any, where: str = "body") -> CoconvexBody:
    cone = vectors(_field(_field(obj, "cone", where), "generators", f"{where}.cone"), f"{where}.cone.generators")
    d = len(cone[0])
    for i, g in enumerate(cone):
        if not any(g):
            raise ParseError(f"{where}.cone.generators[{i}]: generator is zero")
    delta = _field(obj, "delta", where)
    pts = vectors(_field(delta, "basePoints", f"{where}.delta"), f"{where}.delta.basePoints", d)
    xi = vector(_field(obj, "xi", where), f"{where}.xi", d)
    return make_body(cone, pts, xi)


def parse_polytope(obj: Any, where: str = "polytope") -> Polytope:
    return convex_hull(vectors(_field(obj, "vertices", where), f"{where}.vertices"))


def _resolve(entry: Any, base: Path | None, where: str) -> tuple[Any, str]:
    if isinstance(entry, str):
        path = (base / entry) if base is not None else Path(entry)
        return load(path), str(path)
    return entry, where


def parse_family(obj: Any, base: Path | None = None, where: str = "family"):
    kind = _field(obj, "kind", where)
    if kind == "wedge":
        normals = vectors(_field(obj, "normals", where), f"{where}.normals", 2)
        w = vector(_field(obj, "wedge", where), f"{where}.wedge", 2)
        try:
            return WedgeFamily(
                tuple(tuple(integer(c, f"{where}.normals[{i}]") for c in u) for i, u in enumerate(normals)),
                tuple(integer(c, f"{where}.wedge") for c in w),
            )
        except ContractError as e:
            raise ParseError(f"{where}: {e}") from None
    if kind not in ("coconvex", "convex"):
        raise ParseError(f"{where}.kind: unknown family kind {kind!r}")
    entries = _field(obj, "bodies", where)
    if not isinstance(entries, list) or not entries:
        raise ParseError(f"{where}.bodies: expected a non-empty list")
    bodies = []
    for i, e in enumerate(entries):
        data, src = _resolve(e, base, f"{where}.bodies[{i}]")
        bodies.append(parse_body(data, src) if kind == "coconvex" else parse_polytope(data, src))
    marked_raw = obj.get("marked", [])
    marked = [vector(v, f"{where}.marked[{i}]", len(bodies)) for i, v in enumerate(marked_raw)]
    cls = LinearFamilyCoconvex if kind == "coconvex" else LinearFamilyConvex
    try:
        return cls(bodies, marked)
    except ContractError as e:
        raise ParseError(f"{where}: {e}") from None


def load_body(path: str | Path) -> CoconvexBody:
    return parse_body(load(path), str(path))


def load_polytope(path: str | Path) -> Polytope:
    return parse_polytope(load(path), str(path))


def load_family(path: str | Path):
    path = Path(path)
    return parse_family(load(path), path.parent, str(path))


# ---------------------------------------------------------------------------
# serialization


def fmt(x) -> str:
    return str(Fraction(x))


def fmt_vec(v) -> str:
    return "(" + ",".join(fmt(c) for c in v) + ")"


def body_to_obj(a: CoconvexBody) -> dict:
    return {
        "cone": {"generators": [[fmt(c) for c in g] for g in a.cone.generators]},
        "delta": {"basePoints": [[fmt(c) for c in p] for p in a.base_points]},
        "xi": [fmt(c) for c in a.xi.xi],
    }


def polytope_to_obj(p: Polytope) -> dict:
    return {"vertices": [[fmt(c) for c in v] for v in p.vertices]}


def family_to_obj(fam) -> dict:
    if isinstance(fam, WedgeFamily):
        return {"kind": "wedge", "normals": [list(u) for u in fam.normals], "wedge": list(fam.wedge)}
    if isinstance(fam, LinearFamilyCoconvex):
        bodies = [body_to_obj(b) for b in fam.bodies]
        kind = "coconvex"
    else:
        bodies = [polytope_to_obj(p) for p in fam.bodies]
        kind = "convex"
    return {"kind": kind, "bodies": bodies, "marked": [[fmt(c) for c in v] for v in fam.marked]}


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def dump_chain(chain) -> str:
    """One line per term: coefficient and vertex list."""
    lines = []
    for c, p in chain.terms:
        lines.append(f"{c:+d} conv " + " ".join(fmt_vec(v) for v in p.vertices))
    return "\n".join(lines)
