"""Coconvex Ehrhart polynomials and their reciprocity at ``(-1, ..., -1)``."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Sequence

import numpy as np

from . import geometry as geo
from .chains import ConvexChain, counting_valuation, inverse_chain, mink_product
from .coconvex import CoconvexBody, complement_bbox, linear_combination
from .errors import CapabilityError, ContractError
from .genfun import body_lattice_points
from .poly import Poly, interpolate, simplex_lattice

CHAIN_DIM_CAP = 3


def _check_family(bodies: Sequence[CoconvexBody]):
    if not bodies:
        raise ContractError("empty family")
    cone = bodies[0].cone
    for b in bodies:
        if not b.is_integer():
            raise ContractError("Ehrhart families need integer cones and integer base points")
        if b.cone != cone:
            raise ContractError("family bodies must share the cone")


def count_coconvex(a: CoconvexBody) -> int:
    """``#{x in Z^d : x in C, x not in Delta, x != 0}``."""
    return len(body_lattice_points(a))


@dataclass(frozen=True)
class EhrhartPoly:
    poly: Poly
    dim: int

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    def evaluate(self, m: Sequence[int]) -> Fraction:
        if len(m) != self.nvars:
            raise ContractError("wrong number of arguments")
        return self.poly(m)

    def __str__(self):
        return str(self.poly)


def evaluate(p: EhrhartPoly, m: Sequence[int]) -> Fraction:
    return p.evaluate(m)


def ehrhart_interpolate(bodies: Sequence[CoconvexBody], seed: int = 0) -> EhrhartPoly:
    """Interpolate ``m -> #(m_1 A_1 (+) ... (+) m_n A_n)`` (total degree <= d) from exact counts."""
    _check_family(bodies)
    n, d = len(bodies), bodies[0].dim
    rng = random.Random(seed)
    pts = simplex_lattice(n, d, (1,) * n, homogeneous=False)
    checks = [tuple(rng.randint(1, 3) for _ in range(n)) for _ in range(3)]
    poly = interpolate(
        lambda m: count_coconvex(linear_combination(bodies, m)),
        n,
        d,
        pts,
        homogeneous=False,
        check_points=checks,
    )
    return EhrhartPoly(poly, d)


def reflected_x_points(a: CoconvexBody) -> list[tuple[int, ...]]:
    """Integer ``z`` with ``-z in cl(A) cap int(C)``, where ``cl(A) = C minus int(Delta)``."""
    lo, hi = complement_bbox(a)
    X = geo.box_grid([floor(c) for c in lo], [ceil(c) for c in hi])
    ok = geo.halfspaces_grid(a.cone.facets, X, strict=True) & ~geo.halfspaces_grid(a.delta.hrep, X, strict=True)
    return [tuple(-int(c) for c in row) for row in X[ok]]


def reciprocity_rhs_n1(a: CoconvexBody) -> int:
    """``(-1)^d #(X cap Z^d) - 1`` with the origin's count hard-coded as 1."""
    if not a.is_integer():
        raise ContractError("reciprocity needs integer data")
    return (-1) ** a.dim * len(reflected_x_points(a)) - 1


def reciprocity_chain(bodies: Sequence[CoconvexBody]) -> ConvexChain:
    """Product of the inverses of ``-1_(A_i)``."""
    _check_family(bodies)
    if bodies[0].dim > CHAIN_DIM_CAP:
        raise CapabilityError(f"chain route is capped at d = {CHAIN_DIM_CAP}")
    out = inverse_chain(bodies[0])
    for b in bodies[1:]:
        out = mink_product(out, inverse_chain(b))
    return out


def reciprocity_rhs_chain(bodies: Sequence[CoconvexBody]) -> int:
    """``-mu(prod_i inverse(-1_(A_i)))``, which should equal ``E(-1, ..., -1)``."""
    return -counting_valuation(reciprocity_chain(bodies))


@dataclass
class ReciprocityResult:
    e_minus_one: Fraction
    rhs_chain: int
    rhs_direct: int | None

    @property
    def ok(self) -> bool:
        vals = {self.e_minus_one, Fraction(self.rhs_chain)}
        if self.rhs_direct is not None:
            vals.add(Fraction(self.rhs_direct))
        return len(vals) == 1


def check_reciprocity(bodies: Sequence[CoconvexBody], poly: EhrhartPoly | None = None, seed: int = 0) -> ReciprocityResult:
    poly = poly or ehrhart_interpolate(bodies, seed)
    e = poly.evaluate((-1,) * len(bodies))
    direct = reciprocity_rhs_n1(bodies[0]) if len(bodies) == 1 else None
    return ReciprocityResult(e, reciprocity_rhs_chain(bodies), direct)
