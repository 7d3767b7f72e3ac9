"""Cones, C-convex sets and coconvex bodies.

A coconvex body is stored through its generators: the cone ``C`` by its
ray generators and ``Delta = conv(base points) + C``.  The body itself is the
bounded set ``A = C minus (Delta union {0})``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import geometry as geo
from .errors import (
    BadFunctionalError,
    BodyValidationError,
    ContractError,
    DegenerateConeError,
    DeltaNotInConeError,
    NonPointedConeError,
    OriginInDeltaError,
    UnboundedComplementError,
)
from .geometry import HalfSpace, Point, Polytope
from .linalg import Vector, denominator_lcm, dot, frac, primitive, rank, vec

TSTAR_CAP = 2**40


@dataclass(frozen=True, eq=False)
class Cone:
    """Closed pointed full-dimensional cone spanned by ``generators``."""

    generators: tuple[Vector, ...]

    def __post_init__(self):
        gens = tuple(vec(g) for g in self.generators)
        if not gens:
            raise DegenerateConeError("cone needs generators")
        if any(not any(g) for g in gens):
            raise ContractError("cone generator must be nonzero")
        object.__setattr__(self, "generators", gens)
        if rank(gens) < len(gens[0]):
            raise DegenerateConeError("cone generators do not span the ambient space")
        if rank([h.normal for h in self.facets]) < self.dim:
            raise NonPointedConeError("cone contains a line")

    def __eq__(self, other):
        return isinstance(other, Cone) and set(self.extreme_rays) == set(other.extreme_rays)

    def __hash__(self):
        return hash(frozenset(self.extreme_rays))

    @property
    def dim(self) -> int:
        return len(self.generators[0])

    @cached_property
    def facets(self) -> tuple[HalfSpace, ...]:
        """Facet half-spaces ``<n, x> >= 0`` with primitive integer normals."""
        rows = [primitive(g) for g in self.generators]
        try:
            rays = geo.extreme_rays(rows, self.dim)
        except ContractError:
            # generators span, so this means the dual has lineality: never pointed
            raise NonPointedConeError("cone contains a line") from None
        return tuple(sorted((HalfSpace(r, 0) for r in rays), key=lambda h: h.normal))

    @cached_property
    def extreme_rays(self) -> tuple[tuple[int, ...], ...]:
        """Primitive integer generators of the extreme rays."""
        out = set()
        for g in self.generators:
            tight = [h.normal for h in self.facets if dot(h.normal, g) == 0]
            if rank(tight) == self.dim - 1:
                out.add(primitive(g))
        return tuple(sorted(out))

    def contains(self, x: Sequence) -> bool:
        return all(h.contains(x) for h in self.facets)

    def contains_interior(self, x: Sequence) -> bool:
        return all(h.value(x) > 0 for h in self.facets)

    def is_integer(self) -> bool:
        return all(c.denominator == 1 for g in self.generators for c in g)


@dataclass(frozen=True, eq=False)
class CConvexSet:
    """``Delta = conv(base_points) + cone``."""

    cone: Cone
    base_points: tuple[Point, ...]

    @cached_property
    def hrep(self) -> tuple[HalfSpace, ...]:
        """Irredundant half-spaces of Delta, by dualizing the homogenized cone.

        The homogenized cone in R^{d+1} is spanned by ``(p, 1)`` and ``(g, 0)``;
        a row ``(a, b)`` of its dual describes ``<a, x> >= -b`` on Delta.
        """
        d = self.cone.dim
        pts = self.base_points
        m = denominator_lcm(c for p in pts for c in p)
        rows = [tuple(int(c * m) for c in p) + (-1,) for p in pts]
        rows += [primitive(g) + (0,) for g in self.cone.generators]
        out = []
        for r in geo.extreme_rays(rows, d + 1):
            a, b = r[:d], r[d]
            if not any(a):
                continue
            out.append(HalfSpace(a, Fraction(b, m)).canonical())
        return tuple(sorted(out, key=lambda h: (h.normal, h.offset)))

    @cached_property
    def vertices(self) -> tuple[Point, ...]:
        d = self.cone.dim
        verts = set()
        for p in self.base_points:
            tight = [h.normal for h in self.hrep if h.value(p) == 0]
            if len(tight) >= d and rank(tight) == d:
                verts.add(p)
        return tuple(sorted(verts))

    def contains(self, x: Sequence) -> bool:
        return all(h.contains(x) for h in self.hrep)

    def contains_interior(self, x: Sequence) -> bool:
        return all(h.value(x) > 0 for h in self.hrep)


@dataclass(frozen=True)
class TruncationFunctional:
    xi: Vector
    tstar: Fraction

    def __call__(self, x: Sequence) -> Fraction:
        return dot(self.xi, x)


class Membership(enum.Enum):
    IN_A = "IN_A"
    IN_DELTA = "IN_DELTA"
    ORIGIN = "ORIGIN"
    OUTSIDE_C = "OUTSIDE_C"


@dataclass(frozen=True, eq=False)
class CoconvexBody:
    cone: Cone
    delta: CConvexSet
    xi: TruncationFunctional

    @property
    def dim(self) -> int:
        return self.cone.dim

    @property
    def tstar(self) -> Fraction:
        return self.xi.tstar

    @property
    def base_points(self) -> tuple[Point, ...]:
        return self.delta.vertices

    def vertex_set(self) -> tuple[Point, ...]:
        """``{0} union vertices(Delta)``."""
        return (tuple(Fraction(0) for _ in range(self.dim)),) + self.delta.vertices

    def is_integer(self) -> bool:
        return self.cone.is_integer() and all(
            c.denominator == 1 for p in self.delta.vertices for c in p
        )

    def __repr__(self):
        pts = ", ".join("(" + ",".join(str(c) for c in p) + ")" for p in self.base_points)
        return f"CoconvexBody(d={self.dim}, base=[{pts}], tstar={self.tstar})"


def _reduce_base_points(cone: Cone, points: Sequence[Point]) -> tuple[Point, ...]:
    return CConvexSet(cone, tuple(sorted(set(points)))).vertices


def _slice_vertices(cone: Cone, xi: Vector, t: Fraction) -> list[Point]:
    return [tuple(t * c / dot(xi, g) for c in g) for g in cone.extreme_rays]


def certify_tstar(cone: Cone, delta: CConvexSet, xi: Vector, cap: int = TSTAR_CAP) -> Fraction:
    """Smallest power of two ``t >= 1`` whose slice ``C cap {xi = t}`` lies in Delta."""
    t = Fraction(1)
    while t <= cap:
        if all(delta.contains(v) for v in _slice_vertices(cone, xi, t)):
            return t
        t *= 2
    raise UnboundedComplementError(f"C minus Delta is not contained in xi < {cap}")


def make_body(cone_generators, base_points, xi, tstar_cap: int = TSTAR_CAP) -> CoconvexBody:
    """Validate and build a coconvex body.

    Raises a distinct :class:`BodyValidationError` subclass for each failure.
    """
    cone = cone_generators if isinstance(cone_generators, Cone) else Cone(tuple(cone_generators))
    d = cone.dim
    pts = tuple(vec(p) for p in base_points)
    if not pts:
        raise BodyValidationError("Delta needs at least one base point")
    if any(len(p) != d for p in pts):
        raise BodyValidationError("base point dimension does not match the cone")
    xi = vec(xi)
    if len(xi) != d:
        raise BodyValidationError("xi dimension does not match the cone")
    if any(dot(xi, g) <= 0 for g in cone.generators):
        raise BadFunctionalError("xi must be positive on every cone generator")
    for p in pts:
        if not cone.contains(p):
            raise DeltaNotInConeError(f"base point {_fmt(p)} is not in C")
    zero = tuple(Fraction(0) for _ in range(d))
    if zero in pts:
        raise OriginInDeltaError("0 lies in Delta")
    delta = CConvexSet(cone, _reduce_base_points(cone, pts))
    # base points lie in C \ {0}; 0 in Delta would need 0 = p + c, impossible
    if delta.contains(zero):
        raise OriginInDeltaError("0 lies in Delta")
    tstar = certify_tstar(cone, delta, xi, tstar_cap)
    return CoconvexBody(cone, delta, TruncationFunctional(xi, tstar))


def _fmt(p) -> str:
    return "(" + ",".join(str(c) for c in p) + ")"


def truncate(body: CoconvexBody, t) -> tuple[Polytope, Polytope]:
    """``(Delta_t, C_t)`` as bounded polytopes."""
    t = frac(t)
    if t < body.tstar:
        raise ContractError(f"truncation level {t} below certified tstar {body.tstar}")
    cut = HalfSpace(tuple(-c for c in body.xi.xi), -t)
    delta_t = geo.polytope_from_hrep(list(body.delta.hrep) + [cut], body.dim)
    zero = tuple(Fraction(0) for _ in range(body.dim))
    cone_t = geo.convex_hull([zero] + _slice_vertices(body.cone, body.xi.xi, t))
    return delta_t, cone_t


def _same_frame(a: CoconvexBody, b: CoconvexBody):
    if a.cone != b.cone:
        raise ContractError("bodies live in different cones")


def oplus(a: CoconvexBody, b: CoconvexBody) -> CoconvexBody:
    """``C minus ((Delta_A + Delta_B) union {0})``."""
    _same_frame(a, b)
    sums = [tuple(x + y for x, y in zip(p, q)) for p in a.base_points for q in b.base_points]
    return make_body(a.cone, sums, a.xi.xi)


def oplus_many(bodies: Sequence[CoconvexBody]) -> CoconvexBody:
    out = bodies[0]
    for b in bodies[1:]:
        out = oplus(out, b)
    return out


def scale(a: CoconvexBody, lam) -> CoconvexBody:
    lam = frac(lam)
    if lam <= 0:
        raise ContractError("scale factor must be positive")
    return make_body(a.cone, [tuple(lam * c for c in p) for p in a.base_points], a.xi.xi)


def linear_combination(bodies: Sequence[CoconvexBody], coeffs: Sequence) -> CoconvexBody:
    """``c_1 A_1 (+) ... (+) c_n A_n`` for positive coefficients."""
    return oplus_many([scale(b, c) for b, c in zip(bodies, coeffs)])


def covolume(a: CoconvexBody, check: bool = True) -> Fraction:
    """``vol(C_t) - vol(Delta_t)`` at ``t = tstar`` (re-checked at ``2 tstar``)."""
    dt, ct = truncate(a, a.tstar)
    val = geo.volume(ct) - geo.volume(dt)
    if check:
        dt2, ct2 = truncate(a, 2 * a.tstar)
        val2 = geo.volume(ct2) - geo.volume(dt2)
        if val != val2:
            from .errors import InvariantViolation

            raise InvariantViolation(f"covolume depends on t: {val} vs {val2}")
    return val


def membership(a: CoconvexBody, x: Sequence) -> Membership:
    x = vec(x)
    if not a.cone.contains(x):
        return Membership.OUTSIDE_C
    if not any(x):
        return Membership.ORIGIN
    if a.delta.contains(x):
        return Membership.IN_DELTA
    return Membership.IN_A


def closure_membership(a: CoconvexBody, x: Sequence) -> bool:
    """``x in cl(A) = C minus int(Delta)``."""
    x = vec(x)
    return a.cone.contains(x) and not a.delta.contains_interior(x)


def interior_cone_membership(a: CoconvexBody, x: Sequence) -> bool:
    return a.cone.contains_interior(vec(x))


def complement_bbox(a: CoconvexBody, t=None) -> tuple[Point, Point]:
    """Bounding box of ``C_t`` (contains the closure of ``A``)."""
    t = a.tstar if t is None else frac(t)
    _, ct = truncate(a, t)
    return ct.bbox()
