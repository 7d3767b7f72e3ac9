"""Convex chains: integer combinations of polytope indicators.

A chain is a function R^d -> Z given as a list of ``(coefficient, polytope)``
terms.  There is no canonical form; two chains are compared pointwise on
explicit finite point sets (see :func:`default_grid`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Sequence

import numpy as np

from . import geometry as geo
from .coconvex import CoconvexBody, oplus, truncate
from .errors import CapabilityError, ContractError
from .geometry import HalfSpace, Point, Polytope
from .linalg import dot, frac, vec

EXPANSION_CAP = 20_000


@dataclass(frozen=True)
class ConvexChain:
    terms: tuple[tuple[int, Polytope], ...]
    dim: int

    @classmethod
    def indicator(cls, p: Polytope, coeff: int = 1) -> "ConvexChain":
        return cls(((coeff, p),), p.ambient)

    @classmethod
    def point(cls, x: Sequence) -> "ConvexChain":
        return cls.indicator(geo.convex_hull([vec(x)]))

    @classmethod
    def origin(cls, d: int) -> "ConvexChain":
        return cls.point((0,) * d)

    @classmethod
    def zero(cls, d: int) -> "ConvexChain":
        return cls((), d)

    def __add__(self, other: "ConvexChain") -> "ConvexChain":
        _same_dim(self, other)
        return ConvexChain(self.terms + other.terms, self.dim).simplify()

    def __neg__(self) -> "ConvexChain":
        return ConvexChain(tuple((-c, p) for c, p in self.terms), self.dim)

    def __sub__(self, other: "ConvexChain") -> "ConvexChain":
        return self + (-other)

    def __rmul__(self, k: int) -> "ConvexChain":
        return ConvexChain(tuple((k * c, p) for c, p in self.terms), self.dim).simplify()

    def simplify(self) -> "ConvexChain":
        """Merge terms over equal polytopes and drop zero coefficients."""
        acc: dict[Polytope, int] = {}
        for c, p in self.terms:
            if p.is_empty:
                continue
            acc[p] = acc.get(p, 0) + c
        terms = tuple((c, p) for p, c in sorted(acc.items(), key=lambda kv: kv[0].vertices) if c)
        return ConvexChain(terms, self.dim)

    def eval(self, x: Sequence) -> int:
        x = vec(x)
        return sum(c for c, p in self.terms if p.contains(x))

    def eval_grid(self, X: np.ndarray, q: int = 1) -> np.ndarray:
        out = np.zeros(len(X), dtype=np.int64)
        for c, p in self.terms:
            out += c * p.contains_grid(X, q)
        return out

    def antipode(self) -> "ConvexChain":
        """Composition with ``x -> -x``."""
        return ConvexChain(tuple((c, p.negate()) for c, p in self.terms), self.dim)

    def polytopes(self) -> list[Polytope]:
        return [p for _, p in self.terms]

    def __len__(self):
        return len(self.terms)


def _same_dim(a: ConvexChain, b: ConvexChain):
    if a.dim != b.dim:
        raise ContractError(f"chains of dimension {a.dim} and {b.dim}")


def eval_chain(chain: ConvexChain, x: Sequence) -> int:
    return chain.eval(x)


def mink_product(a: ConvexChain, b: ConvexChain, cap: int | None = None) -> ConvexChain:
    """Bilinear extension of ``1_P * 1_Q = 1_{P+Q}``."""
    cap = EXPANSION_CAP if cap is None else cap
    _same_dim(a, b)
    if len(a) * len(b) > cap:
        raise CapabilityError(f"product expansion of {len(a) * len(b)} terms exceeds cap {cap}")
    terms = []
    sums: dict[tuple[Polytope, Polytope], Polytope] = {}
    for c, p in a.terms:
        for e, q in b.terms:
            key = (p, q)
            if key not in sums:
                sums[key] = geo.minkowski_sum(p, q)
            terms.append((c * e, sums[key]))
    return ConvexChain(tuple(terms), a.dim).simplify()


def star(chain: ConvexChain) -> ConvexChain:
    """Additive extension of ``1_P -> sum over faces F of (-1)^dim F 1_F``."""
    terms = []
    for c, p in chain.terms:
        for f in geo.faces(p):
            terms.append((c * (-1) ** f.dim, f.polytope))
    return ConvexChain(tuple(terms), chain.dim).simplify()


def invert_indicator(p: Polytope) -> ConvexChain:
    """The Minkowski-product inverse of ``1_P``: ``star(1_P)`` composed with ``x -> -x``."""
    return star(ConvexChain.indicator(p)).antipode()


# ---------------------------------------------------------------------------
# oracle for the product of two indicators


def fm_feasible(ineqs: list[tuple[tuple[Fraction, ...], Fraction]], eqs=()) -> bool:
    """Feasibility of ``{y : a.y >= b}`` (plus ``a.y = b`` equalities) by Fourier-Motzkin."""
    rows = [(tuple(map(frac, a)), frac(b)) for a, b in ineqs]
    eqs = [(tuple(map(frac, a)), frac(b)) for a, b in eqs]
    # substitute equalities away first
    while eqs:
        a, b = eqs.pop()
        j = next((i for i, c in enumerate(a) if c != 0), None)
        if j is None:
            if b != 0:
                return False
            continue

        def elim(row):
            r, s = row
            f = r[j] / a[j]
            return tuple(x - f * y for x, y in zip(r, a)), s - f * b

        rows = [elim(r) for r in rows]
        eqs = [elim(r) for r in eqs]
    n = len(rows[0][0]) if rows else 0
    for j in range(n):
        pos, neg, rest = [], [], []
        for a, b in rows:
            (pos if a[j] > 0 else neg if a[j] < 0 else rest).append((a, b))
        new = set()
        for r in rest:
            new.add(_norm_row(*r))
        for ap, bp in pos:
            for an, bn in neg:
                fp, fn = -an[j], ap[j]
                a = tuple(fp * x + fn * y for x, y in zip(ap, an))
                new.add(_norm_row(a, fp * bp + fn * bn))
        rows = list(new)
    return all(b <= 0 for _, b in rows)


def _norm_row(a, b):
    m = max((abs(x) for x in a), default=0)
    if m == 0:
        return a, b
    return tuple(x / m for x in a), b / m


def chi_convolution_oracle(p: Polytope, q: Polytope, x: Sequence) -> int:
    """``[P intersect (x - Q) is nonempty]``: the chi-convolution of two indicators at ``x``."""
    if p.is_empty or q.is_empty:
        return 0
    x = vec(x)
    ineqs = [(h.normal, h.offset) for h in p.facets]
    eqs = list(p.equations)
    # x - y in Q  <=>  <-n, y> >= b - <n, x>
    ineqs += [(tuple(-c for c in h.normal), h.offset - dot(h.normal, x)) for h in q.facets]
    eqs += [(tuple(-c for c in n), b - dot(n, x)) for n, b in q.equations]
    return int(fm_feasible(ineqs, eqs))


# ---------------------------------------------------------------------------
# coconvex bodies as chains


def coconvex_chain(a: CoconvexBody, t=None) -> ConvexChain:
    """``1_{Delta_t} - 1_{C_t} + 1_{0}``, which equals ``-1_A`` pointwise."""
    t = a.tstar if t is None else frac(t)
    dt, ct = truncate(a, t)
    return ConvexChain(((1, dt), (-1, ct)), a.dim).simplify() + ConvexChain.origin(a.dim)


def counting_valuation(chain: ConvexChain) -> int:
    """``sum c_i #(P_i intersect Z^d)``."""
    return sum(c * geo.count_lattice_points(p) for c, p in chain.terms)


def body_indicator_grid(a: CoconvexBody, X: np.ndarray, q: int = 1) -> np.ndarray:
    """``1_A`` on the points ``X / q``."""
    in_c = geo.halfspaces_grid(a.cone.facets, X, q)
    in_delta = geo.halfspaces_grid(a.delta.hrep, X, q)
    nonzero = np.any(X != 0, axis=1)
    return (in_c & ~in_delta & nonzero).astype(np.int64)


def inverse_candidate_grid(a: CoconvexBody, X: np.ndarray, q: int = 1) -> np.ndarray:
    """``(-1)^(d-1) [-x in cl(A) and int C] + [x = 0]`` on the points ``X / q``."""
    Y = -X
    in_c = geo.halfspaces_grid(a.cone.facets, Y, q)
    int_c = geo.halfspaces_grid(a.cone.facets, Y, q, strict=True)
    int_delta = geo.halfspaces_grid(a.delta.hrep, Y, q, strict=True)
    bullet = in_c & ~int_delta & int_c
    origin = np.all(X == 0, axis=1)
    return (-1) ** (a.dim - 1) * bullet.astype(np.int64) + origin.astype(np.int64)


# ---------------------------------------------------------------------------
# grids and reports


@dataclass
class PointSet:
    """Integer-scaled point set: the points are ``X / q``."""

    X: np.ndarray
    q: int

    def __len__(self):
        return len(self.X)

    def point(self, i: int) -> Point:
        return tuple(Fraction(int(c), self.q) for c in self.X[i])

    def concat(self, other: "PointSet") -> "PointSet":
        q = lcm(self.q, other.q)
        return PointSet(
            np.concatenate([self.X * (q // self.q), other.X * (q // other.q)]), q
        )


def default_grid(polys: Iterable[Polytope], step_denominator: int | None = None, cap=None) -> PointSet:
    """``(1/q) Z^d`` inside the joint bounding box enlarged by 1.

    ``q`` defaults to twice the lcm of all vertex denominators.
    """
    polys = [p for p in polys if not p.is_empty]
    if not polys:
        raise ContractError("grid needs at least one nonempty polytope")
    d = polys[0].ambient
    verts = [v for p in polys for v in p.vertices]
    if step_denominator is None:
        step_denominator = 2 * geo.denominator_lcm(c for v in verts for c in v)
    q = step_denominator
    lo = [min(v[i] for v in verts) - 1 for i in range(d)]
    hi = [max(v[i] for v in verts) + 1 for i in range(d)]
    import math

    lo_i = [math.floor(c * q) for c in lo]
    hi_i = [math.ceil(c * q) for c in hi]
    return PointSet(geo.box_grid(lo_i, hi_i, cap), q)


def face_samples(polys: Iterable[Polytope]) -> PointSet:
    """One relative-interior point (vertex average) of every face of every polytope."""
    pts = set()
    for p in polys:
        for f, _ in p.face_sets.items():
            k = len(f)
            pts.add(tuple(sum(p.vertices[i][j] for i in f) / k for j in range(p.ambient)))
    X, q = geo.scaled_points(sorted(pts))
    return PointSet(X, q)


def verification_points(chains: Sequence[ConvexChain], step_denominator: int | None = None) -> PointSet:
    polys = [p for ch in chains for p in ch.polytopes()]
    grid = default_grid(polys, step_denominator)
    return grid.concat(face_samples(polys))


@dataclass
class Report:
    name: str
    status: str = "pass"  # pass | fail | inconclusive
    witness: object = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def fail(self, witness=None, **details) -> "Report":
        self.status = "fail"
        self.witness = witness
        self.details.update(details)
        return self


def first_mismatch(lhs: np.ndarray, rhs: np.ndarray) -> int | None:
    bad = np.nonzero(lhs != rhs)[0]
    return int(bad[0]) if len(bad) else None


def check_pointwise(name: str, lhs, rhs, pts: PointSet, report: Report) -> bool:
    """Compare two chains (or precomputed value arrays) on ``pts``; record a witness on failure."""
    lv = lhs.eval_grid(pts.X, pts.q) if isinstance(lhs, ConvexChain) else lhs
    rv = rhs.eval_grid(pts.X, pts.q) if isinstance(rhs, ConvexChain) else rhs
    i = first_mismatch(lv, rv)
    report.details.setdefault("checks", []).append(name)
    report.details["points"] = report.details.get("points", 0) + len(pts)
    if i is not None:
        report.fail(pts.point(i), identity=name, lhs=int(lv[i]), rhs=int(rv[i]))
        return False
    return True


def verify_factorization(a: CoconvexBody, step_denominator=None, report: Report | None = None) -> Report:
    """``1_{Delta_t} * 1_{C_t}^{-1} = 1_{Delta_t} - 1_{C_t} + 1_0 = -1_A``."""
    report = report or Report("factorization")
    dt, ct = truncate(a, a.tstar)
    lhs = mink_product(ConvexChain.indicator(dt), invert_indicator(ct))
    rhs = coconvex_chain(a)
    pts = verification_points([lhs, rhs], step_denominator)
    if not check_pointwise("delta_t * inv(C_t) = chain", lhs, rhs, pts, report):
        return report
    check_pointwise("chain = -1_A", rhs, -body_indicator_grid(a, pts.X, pts.q), pts, report)
    if report.ok:
        # independence of t
        rhs2 = coconvex_chain(a, 2 * a.tstar)
        pts2 = verification_points([rhs2], step_denominator)
        check_pointwise("chain(t) = chain(2t)", rhs, rhs2, pts2, report)
    return report


def verify_theoremB(a: CoconvexBody, b: CoconvexBody, step_denominator=None) -> Report:
    """The truncation factorization for each body and the product rule ``-1_(A+B) = (-1_A) * (-1_B)``."""
    report = Report("theoremB")
    for body in (a, b):
        verify_factorization(body, step_denominator, report)
        if not report.ok:
            return report
    ab = oplus(a, b)
    lhs = coconvex_chain(ab)
    rhs = mink_product(coconvex_chain(a), coconvex_chain(b))
    pts = verification_points([lhs, rhs], step_denominator)
    check_pointwise("-1_(A+B) = (-1_A)*(-1_B)", lhs, rhs, pts, report)
    return report


def inverse_chain(a: CoconvexBody) -> ConvexChain:
    """Inverse of ``-1_A`` as a chain of closed polytopes: ``star(-1_A)`` composed with ``x -> -x``."""
    return star(coconvex_chain(a)).antipode()


def verify_inverse_formula(a: CoconvexBody, step_denominator=None) -> Report:
    """Check ``(-1)^(d-1) 1_{A*} o sigma + 1_0`` is the product inverse of ``-1_A``."""
    report = Report("inverse")
    cand = inverse_chain(a)
    chain = coconvex_chain(a)
    prod = mink_product(chain, cand)
    pts = verification_points([cand, chain, prod], step_denominator)
    if not check_pointwise(
        "star chain = predicate candidate", cand, inverse_candidate_grid(a, pts.X, pts.q), pts, report
    ):
        return report
    check_pointwise("chain * candidate = 1_0", prod, ConvexChain.origin(a.dim), pts, report)
    return report
