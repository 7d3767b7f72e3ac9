"""Rational generating functions of lattice points in cones and polytopes.

A :class:`GenFun` is a formal sum of terms ``c x^a / prod_j (1 - x^(b_j))``;
terms without denominators form the polynomial part.  Representations are not
canonical, so equality is tested through univariate specializations
``x_i = t^(w_i)`` along seeded generic weights.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import ceil, floor
from typing import Iterable, Sequence

import numpy as np

from . import geometry as geo
from .coconvex import CConvexSet, CoconvexBody, complement_bbox, truncate
from .errors import (
    CapabilityError,
    ContractError,
    InfiniteSupportError,
    InvariantViolation,
    NongenericWeightError,
    NonPointedConeError,
)
from .geometry import Polytope
from .linalg import denominator_lcm, dot, frac, independent_columns, int_det, primitive, rank, solve, vec

PARALLELEPIPED_CAP = 200_000
EQUALITY_WEIGHTS = 5

IntVec = tuple[int, ...]


# ---------------------------------------------------------------------------
# generating functions


@dataclass(frozen=True)
class Term:
    coeff: int
    num: IntVec
    den: tuple[IntVec, ...] = ()

    def __str__(self):
        sign = "+" if self.coeff > 0 else "-"
        mag = abs(self.coeff)
        s = f"{sign} " + (f"{mag} " if mag != 1 else "") + _mono(self.num)
        if self.den:
            s += " / " + " ".join(f"(1-{_mono(b)})" for b in self.den)
        return s


def _mono(a) -> str:
    return "x^(" + ",".join(str(c) for c in a) + ")"


@dataclass(frozen=True)
class GenFun:
    dim: int
    terms: tuple[Term, ...] = ()

    def __post_init__(self):
        for t in self.terms:
            if len(t.num) != self.dim or any(len(b) != self.dim or not any(b) for b in t.den):
                raise ContractError(f"malformed term {t}")

    @classmethod
    def monomial(cls, a: Sequence[int], coeff: int = 1) -> "GenFun":
        return cls(len(a), (Term(coeff, tuple(int(c) for c in a)),))

    @classmethod
    def one(cls, d: int) -> "GenFun":
        return cls.monomial((0,) * d)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]], d: int) -> "GenFun":
        return cls(d, tuple(Term(1, tuple(int(c) for c in p)) for p in points))

    @property
    def polynomial_part(self) -> dict[IntVec, int]:
        out: dict[IntVec, int] = {}
        for t in self.terms:
            if not t.den:
                out[t.num] = out.get(t.num, 0) + t.coeff
        return {k: v for k, v in out.items() if v}

    def __add__(self, other: "GenFun") -> "GenFun":
        if other.dim != self.dim:
            raise ContractError("dimension mismatch")
        return GenFun(self.dim, self.terms + other.terms)

    def __neg__(self) -> "GenFun":
        return GenFun(self.dim, tuple(Term(-t.coeff, t.num, t.den) for t in self.terms))

    def __sub__(self, other: "GenFun") -> "GenFun":
        return self + (-other)

    def shift(self, a: Sequence[int]) -> "GenFun":
        """Multiply by ``x^a``."""
        a = tuple(int(c) for c in a)
        return GenFun(
            self.dim, tuple(Term(t.coeff, tuple(x + y for x, y in zip(t.num, a)), t.den) for t in self.terms)
        )

    def __str__(self) -> str:
        return "\n".join(str(t) for t in self.terms) if self.terms else "0"

    def series(self, xi: Sequence, cap) -> dict[IntVec, int]:
        """Truncated expansion: coefficients of monomials ``x^p`` with ``xi(p) <= cap``.

        Each denominator is expanded as a geometric series, which needs
        ``xi(b) > 0`` for every factor.
        """
        xi, cap = vec(xi), frac(cap)
        out: dict[IntVec, int] = {}
        for t in self.terms:
            steps = [dot(xi, b) for b in t.den]
            if any(s <= 0 for s in steps):
                raise ContractError("series expansion needs xi > 0 on every denominator")
            _expand(t, 0, t.num, dot(xi, t.num), steps, cap, out)
        return {k: v for k, v in out.items() if v}


def _expand(t: Term, j: int, point, level, steps, cap, out):
    if level > cap:
        return
    if j == len(t.den):
        out[point] = out.get(point, 0) + t.coeff
        return
    b = t.den[j]
    while level <= cap:
        _expand(t, j + 1, point, level, steps, cap, out)
        point = tuple(x + y for x, y in zip(point, b))
        level += steps[j]


# ---------------------------------------------------------------------------
# univariate specialization


def _lmul(p: dict[int, int], q: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for a, x in p.items():
        for b, y in q.items():
            out[a + b] = out.get(a + b, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _one_minus(k: int) -> dict[int, int]:
    return {0: 1, k: -1}


def _den_poly(den: dict[int, int]) -> dict[int, int]:
    out = {0: 1}
    for k, m in sorted(den.items()):
        for _ in range(m):
            out = _lmul(out, _one_minus(k))
    return out


@dataclass(frozen=True)
class RationalFunction:
    """``num(t) / prod_k (1 - t^k)^den[k]`` with ``num`` a Laurent polynomial and all ``k > 0``."""

    num: tuple[tuple[int, int], ...]
    den: tuple[tuple[int, int], ...]

    @property
    def num_dict(self) -> dict[int, int]:
        return dict(self.num)

    @property
    def den_dict(self) -> dict[int, int]:
        return dict(self.den)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        a, b = self.den_dict, other.den_dict
        top = {k: max(a.get(k, 0), b.get(k, 0)) for k in set(a) | set(b)}
        lhs = _lmul(self.num_dict, _den_poly({k: top[k] - a.get(k, 0) for k in top}))
        rhs = _lmul(other.num_dict, _den_poly({k: top[k] - b.get(k, 0) for k in top}))
        return lhs == rhs

    def __hash__(self):
        return hash(self.den)

    def __str__(self):
        num = " + ".join(f"{c}*t^{e}" for e, c in self.num) or "0"
        den = " ".join(f"(1-t^{k})^{m}" for k, m in self.den)
        return f"({num}) / ({den})" if den else num


def _idot(a, b) -> int:
    return sum(int(x) * int(y) for x, y in zip(a, b))


def _check_weight(f: GenFun, w: Sequence[int]):
    for t in f.terms:
        for b in t.den:
            if _idot(w, b) == 0:
                raise NongenericWeightError(f"weight {tuple(w)} is orthogonal to denominator {b}")


def specialize(f: GenFun, w: Sequence[int]) -> RationalFunction:
    """Substitute ``x_i = t^(w_i)`` and bring everything over one denominator."""
    w = tuple(int(c) for c in w)
    _check_weight(f, w)
    pieces = []
    for t in f.terms:
        e = _idot(w, t.num)
        c = t.coeff
        den: dict[int, int] = {}
        for b in t.den:
            k = _idot(w, b)
            if k < 0:
                # 1 / (1 - t^-m) = -t^m / (1 - t^m)
                c, e, k = -c, e - k, -k
            den[k] = den.get(k, 0) + 1
        pieces.append((c, e, den))
    top: dict[int, int] = {}
    for _, _, den in pieces:
        for k, m in den.items():
            top[k] = max(top.get(k, 0), m)
    num: dict[int, int] = {}
    for c, e, den in pieces:
        extra = _den_poly({k: top[k] - den.get(k, 0) for k in top})
        for a, x in extra.items():
            num[a + e] = num.get(a + e, 0) + c * x
    num = {k: v for k, v in num.items() if v}
    return RationalFunction(tuple(sorted(num.items())), tuple(sorted(top.items())))


def generic_weight(fs: Sequence[GenFun], rng: random.Random, spread: int = 97) -> tuple[int, ...]:
    """Draw weights from ``rng`` until none is orthogonal to a denominator factor."""
    d = fs[0].dim
    for _ in range(1000):
        w = tuple(rng.randint(-spread, spread) for _ in range(d))
        try:
            for f in fs:
                _check_weight(f, w)
        except NongenericWeightError:
            continue
        return w
    raise NongenericWeightError("no generic weight found")


def genfun_equal(f: GenFun, g: GenFun, seed: int = 0, rounds: int = EQUALITY_WEIGHTS) -> bool:
    """Randomized-complete equality: specializations agree for ``rounds`` seeded weights.

    A ``False`` verdict is certain; ``True`` holds with high confidence.
    """
    if f.dim != g.dim:
        return False
    rng = random.Random(seed)
    for _ in range(rounds):
        w = generic_weight([f, g], rng)
        if specialize(f, w) != specialize(g, w):
            return False
    return True


def count_points(f: GenFun, seed: int = 0) -> int:
    """Value at ``t = 1`` of a specialization, after cancelling every ``(1 - t)`` factor."""
    rf = specialize(f, generic_weight([f], random.Random(seed)))
    num = rf.num_dict
    if not num:
        return 0
    lo, hi = min(num), max(num)
    coeffs = [num.get(lo + i, 0) for i in range(hi - lo + 1)]
    poles = sum(m for _, m in rf.den)
    for _ in range(poles):
        if sum(coeffs) != 0:
            raise InfiniteSupportError("pole at t = 1 survives: the set is infinite")
        # c = (1 - t) q  <=>  q_i = c_0 + ... + c_i
        acc, q = 0, []
        for c in coeffs[:-1]:
            acc += c
            q.append(acc)
        coeffs = q or [0]
    value = Fraction(sum(coeffs))
    for k, m in rf.den:
        value /= k**m
    if value.denominator != 1:
        raise InvariantViolation(f"non-integral point count {value}")
    return int(value)


# ---------------------------------------------------------------------------
# cones


@dataclass(frozen=True, eq=False)
class IntegerCone:
    """Pointed cone spanned by integer generators (full-dimensional unless its rank says otherwise)."""

    generators: tuple[IntVec, ...]
    ambient: int

    def __post_init__(self):
        gens = tuple(primitive(g) for g in self.generators if any(g))
        if any(len(g) != self.ambient for g in gens):
            raise ContractError("generator dimension mismatch")
        object.__setattr__(self, "generators", tuple(dict.fromkeys(gens)))
        if self.rank and rank([n for n in self._facet_normals]) < self.rank:
            raise NonPointedConeError("cone contains a line")

    @cached_property
    def rank(self) -> int:
        return rank(self.generators) if self.generators else 0

    @cached_property
    def pivots(self) -> list[int]:
        return independent_columns(self.generators) if self.generators else []

    def project(self, x: Sequence) -> tuple:
        return tuple(x[i] for i in self.pivots)

    @cached_property
    def _facet_normals(self) -> list[IntVec]:
        """Inward facet normals in the projected coordinates."""
        if not self.rank:
            return []
        rows = [self.project(g) for g in self.generators]
        try:
            return geo.extreme_rays(rows, self.rank)
        except ContractError:
            raise NonPointedConeError("cone contains a line") from None

    @cached_property
    def rays(self) -> tuple[IntVec, ...]:
        out = []
        for g in self.generators:
            pg = self.project(g)
            tight = [n for n in self._facet_normals if dot(n, pg) == 0]
            if (rank(tight) if tight else 0) == self.rank - 1:
                out.append(g)
        return tuple(out)

    def contains(self, x: Sequence) -> bool:
        x = vec(x)
        if not self.rank:
            return not any(x)
        px = self.project(x)
        if any(dot(n, px) < 0 for n in self._facet_normals):
            return False
        return rank(list(self.generators) + [x]) == self.rank


@dataclass(frozen=True, eq=False)
class HalfOpenSimplicialCone:
    """``apex + {sum t_j g_j : t_j >= 0, and t_j > 0 for j in open_facets}``.

    Facet ``j`` is ``{t_j = 0}``.  The apex may be rational; the default is 0.
    """

    generators: tuple[IntVec, ...]
    open_facets: frozenset[int] = frozenset()
    apex: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        gens = tuple(tuple(int(c) for c in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "open_facets", frozenset(self.open_facets))
        if gens and rank(gens) < len(gens):
            raise ContractError("simplicial cone generators must be independent")
        if self.apex is not None:
            object.__setattr__(self, "apex", vec(self.apex))

    @property
    def k(self) -> int:
        return len(self.generators)

    def ambient_of(self, d: int | None = None) -> int:
        if self.generators:
            return len(self.generators[0])
        if self.apex is not None:
            return len(self.apex)
        if d is None:
            raise ContractError("ambient dimension unknown for the zero cone")
        return d

    @cached_property
    def _frame(self):
        """``(pivots, D, adj)`` with ``D t = adj (x - apex)_P`` and ``D > 0``."""
        if not self.generators:
            return [], 1, []
        piv = independent_columns(self.generators)
        gp = [[g[i] for i in piv] for g in self.generators]  # k x k, rows = generators
        # x_P = gp^T t  =>  t = (gp^T)^-1 x_P ; adj = D (gp^T)^-1
        d = int_det(gp)
        a = [[gp[j][i] for j in range(self.k)] for i in range(self.k)]  # gp^T
        cols = [solve(a, [Fraction(int(i == j)) for i in range(self.k)]) for j in range(self.k)]
        adj = [[int(d * cols[j][i]) for j in range(self.k)] for i in range(self.k)]
        if d < 0:
            d, adj = -d, [[-x for x in row] for row in adj]
        return piv, d, adj

    @property
    def index(self) -> int:
        return self._frame[1]

    def coordinates(self, x: Sequence) -> tuple[Fraction, ...] | None:
        """``t`` with ``x = apex + sum t_j g_j``, or None off the affine span."""
        x = vec(x)
        a = self.apex or tuple(Fraction(0) for _ in x)
        y = tuple(p - q for p, q in zip(x, a))
        if not self.generators:
            return () if not any(y) else None
        piv, d, adj = self._frame
        yp = [y[i] for i in piv]
        t = tuple(sum((Fraction(adj[i][j]) * yp[j] for j in range(self.k)), Fraction(0)) / d for i in range(self.k))
        recon = [sum((t[j] * self.generators[j][c] for j in range(self.k)), Fraction(0)) for c in range(len(y))]
        return t if list(y) == recon else None

    def contains(self, x: Sequence) -> bool:
        t = self.coordinates(x)
        if t is None:
            return False
        return all(tj > 0 if j in self.open_facets else tj >= 0 for j, tj in enumerate(t))

    def contains_grid(self, X: np.ndarray) -> np.ndarray:
        """Vectorized membership of integer points (rows of ``X``)."""
        T, m, ok = self._scaled_coordinates(X)
        for j in range(self.k):
            ok &= T[:, j] > 0 if j in self.open_facets else T[:, j] >= 0
        return ok

    def _scaled_coordinates(self, X: np.ndarray):
        """``(T, M, in_span)`` with ``T = M t`` an exact int64 array."""
        piv, d, adj = self._frame
        dim = X.shape[1]
        a = self.apex or tuple(Fraction(0) for _ in range(dim))
        m = denominator_lcm(a)
        ma = np.array([int(c * m) for c in a], dtype=np.int64)
        Y = m * X - ma  # m (x - apex), integral
        if not self.generators:
            return np.zeros((len(X), 0), np.int64), m * d, np.all(Y == 0, axis=1)
        adj_a = np.array(adj, dtype=np.int64)
        T = Y[:, piv] @ adj_a.T  # = m d t
        G = np.array(self.generators, dtype=np.int64)
        ok = np.all(d * Y == T @ G, axis=1)
        return T, m * d, ok

    def fundamental_parallelepiped(self, d: int | None = None, cap: int = PARALLELEPIPED_CAP) -> list[IntVec]:
        """Integer points ``apex + sum t_j g_j`` with ``t_j`` in ``[0, 1)`` (``(0, 1]`` if open)."""
        dim = self.ambient_of(d)
        a = self.apex or tuple(Fraction(0) for _ in range(dim))
        lo = [a[i] + sum(min(0, g[i]) for g in self.generators) for i in range(dim)]
        hi = [a[i] + sum(max(0, g[i]) for g in self.generators) for i in range(dim)]
        X = geo.box_grid([ceil(c) for c in lo], [floor(c) for c in hi], cap)
        if len(X) == 0:
            return []
        T, M, ok = self._scaled_coordinates(X)
        for j in range(self.k):
            if j in self.open_facets:
                ok &= (T[:, j] > 0) & (T[:, j] <= M)
            else:
                ok &= (T[:, j] >= 0) & (T[:, j] < M)
        pts = [tuple(int(c) for c in row) for row in X[ok]]
        if self.apex is None and len(self.generators) == dim and len(pts) != self.index:
            raise InvariantViolation(f"parallelepiped has {len(pts)} points, |det| = {self.index}")
        return pts


def fundamental_parallelepiped(c: HalfOpenSimplicialCone, d: int | None = None) -> list[IntVec]:
    return c.fundamental_parallelepiped(d)


def genfun_simplicial(c: HalfOpenSimplicialCone, d: int | None = None) -> GenFun:
    dim = c.ambient_of(d)
    return GenFun(dim, tuple(Term(1, p, c.generators) for p in c.fundamental_parallelepiped(dim)))


def _placing(vectors: Sequence[IntVec], order: Sequence[int]) -> list[tuple[int, ...]]:
    """Placing triangulation of the cone over ``vectors``, inserted in ``order``.

    A vector raising the rank is coned over every simplex; otherwise it is
    joined to each boundary facet it sees (negative coordinate opposite the facet).
    """
    tri: list[tuple[int, ...]] = []
    r = 0
    for i in order:
        v = vectors[i]
        if rank([vectors[j] for s in tri[:1] for j in s] + [v]) > r:
            tri = [s + (i,) for s in tri] if tri else [(i,)]
            r += 1
            continue
        count: dict[frozenset, int] = {}
        for s in tri:
            for j in range(r):
                f = frozenset(s[:j] + s[j + 1:])
                count[f] = count.get(f, 0) + 1
        new = []
        for s in tri:
            t = HalfOpenSimplicialCone(tuple(vectors[j] for j in s)).coordinates(v)
            for j in range(r):
                f = s[:j] + s[j + 1:]
                if t[j] < 0 and count[frozenset(f)] == 1:
                    new.append(f + (i,))
        tri.extend(new)
    return tri


def decompose_cone(
    cone: IntegerCone, order: Sequence[int] | None = None, seed: int = 0, apex=None
) -> list[HalfOpenSimplicialCone]:
    """Half-open simplicial pieces whose indicators sum exactly to the indicator of the cone.

    A generic interior reference vector ``q`` decides shared facets: facet
    ``j`` of a piece is open iff the ``j``-th coordinate of ``q`` is negative.
    """
    if cone.rank == 0:
        return [HalfOpenSimplicialCone((), frozenset(), apex if apex is not None else (0,) * cone.ambient)]
    rays = cone.generators
    order = list(range(len(rays))) if order is None else list(order)
    simplices = _placing(rays, order)
    rng = random.Random(seed)
    for _ in range(1000):
        cs = [rng.randint(1, 10**6) for _ in rays]
        q = tuple(sum(c * r[i] for c, r in zip(cs, rays)) for i in range(cone.ambient))
        pieces = []
        generic = True
        for s in simplices:
            gens = tuple(rays[i] for i in s)
            base = HalfOpenSimplicialCone(gens)
            t = base.coordinates(q)
            if t is None or any(c == 0 for c in t):
                generic = False
                break
            pieces.append(
                HalfOpenSimplicialCone(gens, frozenset(j for j, c in enumerate(t) if c < 0), apex)
            )
        if generic:
            return pieces
    raise NongenericWeightError("could not find a generic reference vector")


def genfun_cone(cone: IntegerCone, order=None, seed: int = 0, apex=None) -> GenFun:
    out = GenFun(cone.ambient)
    for piece in decompose_cone(cone, order, seed, apex):
        out = out + genfun_simplicial(piece, cone.ambient)
    return out


def check_decomposition(cone: IntegerCone, pieces: Sequence[HalfOpenSimplicialCone], radius: int = 5) -> IntVec | None:
    """First grid point where the pieces do not sum to the cone indicator, else None."""
    d = cone.ambient
    X = geo.box_grid([-radius] * d, [radius] * d)
    total = np.zeros(len(X), dtype=np.int64)
    for p in pieces:
        total += p.contains_grid(X)
    want = np.array([cone.contains(tuple(r)) for r in X.tolist()], dtype=np.int64)
    bad = np.nonzero(total != want)[0]
    return tuple(int(c) for c in X[bad[0]]) if len(bad) else None


# ---------------------------------------------------------------------------
# tangent cones, Brion and the coconvex vertex formula


@dataclass(frozen=True)
class TangentConeAt:
    vertex: tuple[Fraction, ...]
    cone: IntegerCone


def _edge_check(obj, a, rays, facets):
    """Each ray leaves ``a`` along an edge of ``obj``."""
    for r in rays:
        eps = Fraction(1)
        for h in facets:
            s, slope = h.value(a), dot(h.normal, r)
            if s > 0 and slope < 0:
                eps = min(eps, s / -slope)
        p = tuple(x + eps / 2 * y for x, y in zip(a, r))
        if not obj.contains(p):
            raise InvariantViolation(f"tangent ray {r} leaves the set at {a}")


def tangent_cone(obj: Polytope | CConvexSet, a: Sequence) -> TangentConeAt:
    a = vec(a)
    d = len(a)
    if isinstance(obj, Polytope):
        if a not in obj.vertices:
            raise ContractError(f"{a} is not a vertex")
        facets = obj.facets
        eqs = [primitive(n) for n, _ in obj.equations]
        rows = [primitive(h.normal) for h in facets if h.value(a) == 0]
        rows += eqs + [tuple(-c for c in n) for n in eqs]
    elif isinstance(obj, CConvexSet):
        if a not in obj.vertices:
            raise ContractError(f"{a} is not a vertex")
        facets = obj.hrep
        rows = [primitive(h.normal) for h in facets if h.value(a) == 0]
    else:
        raise ContractError("tangent cones need a Polytope or a C-convex set")
    rays = geo.extreme_rays(rows, d)
    _edge_check(obj, a, rays, facets)
    return TangentConeAt(a, IntegerCone(tuple(rays), d))


def _integral(p) -> IntVec:
    if any(c.denominator != 1 for c in p):
        raise ContractError(f"vertex {tuple(str(c) for c in p)} is not integral")
    return tuple(int(c) for c in p)


def brion_convex(p: Polytope, seed: int = 0, allow_rational: bool = False) -> GenFun:
    """``sum_v x^v G(C_v)``; rational vertices are allowed only on request."""
    if p.is_empty:
        return GenFun(p.ambient)
    out = GenFun(p.ambient)
    for v in p.vertices:
        tc = tangent_cone(p, v)
        if allow_rational:
            out = out + genfun_cone(tc.cone, seed=seed, apex=v)
        else:
            out = out + genfun_cone(tc.cone, seed=seed).shift(_integral(v))
    return out


def genfun_coconvex(a: CoconvexBody, seed: int = 0) -> GenFun:
    """``-sum_{v in vert(Delta)} x^v G(C'_v) + G(C) - 1``."""
    if not a.is_integer():
        raise ContractError("generating functions need an integer cone and integer base points")
    d = a.dim
    out = GenFun(d)
    for v in a.delta.vertices:
        tc = tangent_cone(a.delta, v)
        out = out - genfun_cone(tc.cone, seed=seed).shift(_integral(v))
    cone = IntegerCone(tuple(primitive(g) for g in a.cone.extreme_rays), d)
    return out + genfun_cone(cone, seed=seed) - GenFun.one(d)


def genfun_coconvex_truncated(a: CoconvexBody, t=None, seed: int = 0) -> GenFun:
    """``-G(Delta_t) + G(C_t) - 1`` through Brion on the two truncations."""
    if not a.is_integer():
        raise ContractError("generating functions need integer data")
    dt, ct = truncate(a, a.tstar if t is None else t)
    return -brion_convex(dt, seed, True) + brion_convex(ct, seed, True) - GenFun.one(a.dim)


def body_lattice_points(a: CoconvexBody) -> list[IntVec]:
    """Integer points of ``C minus (Delta union {0})``, lex ordered."""
    lo, hi = complement_bbox(a)
    X = geo.box_grid([floor(c) for c in lo], [ceil(c) for c in hi])
    ok = geo.halfspaces_grid(a.cone.facets, X) & ~geo.halfspaces_grid(a.delta.hrep, X)
    ok &= np.any(X != 0, axis=1)
    return [tuple(int(c) for c in row) for row in X[ok]]


def genfun_enumeration(a: CoconvexBody | Polytope) -> GenFun:
    if isinstance(a, Polytope):
        if a.is_empty:
            return GenFun(a.ambient)
        lo, hi = a.bbox()
        X = geo.box_grid([ceil(c) for c in lo], [floor(c) for c in hi])
        return GenFun.from_points((tuple(int(c) for c in r) for r in X[a.contains_grid(X)]), a.ambient)
    return GenFun.from_points(body_lattice_points(a), a.dim)


def series_oracle(obj, xi: Sequence, cap) -> dict[IntVec, int]:
    """Direct enumeration of the integer points with ``xi <= cap``."""
    xi, cap = vec(xi), frac(cap)
    if isinstance(obj, (IntegerCone, HalfOpenSimplicialCone)):
        gens = obj.rays if isinstance(obj, IntegerCone) else obj.generators
        d = obj.ambient if isinstance(obj, IntegerCone) else obj.ambient_of(len(xi))
        apex = getattr(obj, "apex", None) or tuple(Fraction(0) for _ in range(d))
        if any(dot(xi, g) <= 0 for g in gens):
            raise ContractError("xi must be positive on the cone")
        span = cap - dot(xi, apex)
        corners = [apex] + [tuple(p + span / dot(xi, g) * c for p, c in zip(apex, g)) for g in gens]
        lo = [min(c[i] for c in corners) for i in range(d)]
        hi = [max(c[i] for c in corners) for i in range(d)]
        X = geo.box_grid([ceil(c) for c in lo], [floor(c) for c in hi])
        if isinstance(obj, IntegerCone):
            inside = np.array([obj.contains(tuple(r)) for r in X.tolist()], dtype=bool)
        else:
            inside = obj.contains_grid(X)
    elif isinstance(obj, Polytope):
        lo, hi = obj.bbox()
        X = geo.box_grid([ceil(c) for c in lo], [floor(c) for c in hi])
        inside = obj.contains_grid(X)
    else:
        raise ContractError("series oracle supports cones and polytopes")
    xi_int = [int(c * denominator_lcm(xi)) for c in xi]
    lvl = X @ np.array(xi_int, dtype=np.int64) if len(X) else np.zeros(0, np.int64)
    inside &= lvl <= cap * denominator_lcm(xi)
    return {tuple(int(c) for c in r): 1 for r in X[inside]}
