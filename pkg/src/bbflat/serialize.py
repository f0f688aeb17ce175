"""JSON file formats.

Lattice: {"label": str, "rank": int, "gram": [[str]]}; vectors
{"lattice": label, "coords": [str]}.  Integers are written as decimal strings
so files survive 64-bit readers; both strings and numbers are accepted on
input.  Periods carry each field scalar as (a_num, a_den, b_num, b_den).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .density import DensityCertificate
from .errors import InputError
from .lattice import IntLattice, LatticeVec
from .periods import Period, make_period
from .quadfield import QuadScalar


def _as_int(v) -> int:
    if isinstance(v, bool):
        raise InputError("expected an integer, got a boolean")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        return int(v.strip())
    raise InputError(f"expected an integer, got {v!r}")


def lattice_to_dict(L: IntLattice) -> dict:
    return {
        "label": L.label or "",
        "rank": L.rank,
        "gram": [[str(v) for v in row] for row in L.gram],
    }


def lattice_from_dict(d: dict) -> IntLattice:
    gram = tuple(tuple(_as_int(v) for v in row) for row in d["gram"])
    return IntLattice(_as_int(d["rank"]), gram, d.get("label") or None)


def vector_to_dict(v: LatticeVec) -> dict:
    return {
        "lattice": v.lattice.label or "",
        "coords": [str(c) for c in v.coords],
    }


def vector_from_dict(d: dict, L: IntLattice) -> LatticeVec:
    label = d.get("lattice")
    if label and L.label and label != L.label:
        raise InputError(
            f"vector belongs to lattice {label!r}, expected {L.label!r}")
    return L.vec([_as_int(c) for c in d["coords"]])


def _scalar_to_quad(entry, D: int) -> QuadScalar:
    a_num, a_den, b_num, b_den = (_as_int(v) for v in entry)
    return QuadScalar(Fraction(a_num, a_den), Fraction(b_num, b_den), D)


def _quad_to_scalar(q: QuadScalar) -> list[str]:
    return [str(q.a.numerator), str(q.a.denominator),
            str(q.b.numerator), str(q.b.denominator)]


def period_to_dict(p: Period) -> dict:
    return {
        "lattice": p.lattice.label or "",
        "D": p.D,
        "x": [_quad_to_scalar(v) for v in p.x],
        "y": [_quad_to_scalar(v) for v in p.y],
    }


def period_from_dict(d: dict, L: IntLattice) -> Period:
    label = d.get("lattice")
    if label and L.label and label != L.label:
        raise InputError(
            f"period belongs to lattice {label!r}, expected {L.label!r}")
    D = _as_int(d["D"])
    x = [_scalar_to_quad(e, D) for e in d["x"]]
    y = [_scalar_to_quad(e, D) for e in d["y"]]
    return make_period(L, x, y, D=D)


def certificate_to_dict(c: DensityCertificate) -> dict:
    return c.as_dict()


def dump(obj: dict, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=False)
        fh.write("\n")


def load(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)
