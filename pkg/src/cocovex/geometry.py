"""Exact polyhedral primitives over the rationals.

Polytopes are stored with both representations: the sorted vertex tuple and
an irredundant list of closed half-spaces ``<normal, x> >= offset``.  Lower
dimensional polytopes additionally carry the equations of their affine hull;
their facet inequalities are then only meaningful together with those
equations.

H <-> V conversion goes through :func:`extreme_rays`, a double description
(Motzkin) routine on integer data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial, gcd
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import CapabilityError, ContractError
from .linalg import (
    Vector,
    denominator_lcm,
    det,
    dot,
    frac,
    independent_rows,
    lex_sign_normalize,
    nullspace,
    primitive,
    rank,
    rref,
    solve,
    sub,
    vec,
)

Point = Vector

MAX_DIM = 4
LATTICE_CAP = 2_000_000


# ---------------------------------------------------------------------------
# double description


def extreme_rays(rows: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{y in R^dim : row . y >= 0}``.

    Rays are returned as primitive integer vectors.  An empty list means the
    cone is ``{0}``.  Raises :class:`ContractError` if the cone has lineality
    (the rows do not span ``R^dim``).
    """
    rows = [tuple(int(x) for x in r) for r in rows]
    basis = independent_rows(rows)
    if len(basis) < dim:
        raise ContractError("cone is not pointed: constraint rows have rank < dim")
    basis = basis[:dim]
    bmat = [rows[i] for i in basis]
    rays: list[tuple[int, ...]] = []
    masks: list[int] = []
    for j in range(dim):
        e = [0] * dim
        e[j] = 1
        r = primitive(solve(bmat, e))
        rays.append(r)
        masks.append(sum(1 << basis[i] for i in range(dim) if i != j))
    done = set(basis)
    for i, a in enumerate(rows):
        if i in done:
            continue
        done.add(i)
        vals = [sum(x * y for x, y in zip(a, r)) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zero = [k for k, v in enumerate(vals) if v == 0]
        bit = 1 << i
        if not neg:
            for k in zero:
                masks[k] |= bit
            continue
        new_rays = [rays[k] for k in pos] + [rays[k] for k in zero]
        new_masks = [masks[k] for k in pos] + [masks[k] | bit for k in zero]
        for p in pos:
            for n in neg:
                common = masks[p] & masks[n]
                if common.bit_count() < dim - 2:
                    continue
                if any(
                    k != p and k != n and masks[k] & common == common
                    for k in range(len(rays))
                ):
                    continue
                vp, vn = vals[p], vals[n]
                r = tuple(vp * y - vn * x for x, y in zip(rays[p], rays[n]))
                new_rays.append(primitive(r))
                new_masks.append(common | bit)
        rays, masks = new_rays, new_masks
    # a degenerate input can leave duplicates; drop them
    seen: dict[tuple[int, ...], None] = {}
    for r in rays:
        if any(r):
            seen.setdefault(r, None)
    return list(seen)


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class HalfSpace:
    """``{x : <normal, x> >= offset}`` (``> offset`` when ``strict``)."""

    normal: Vector
    offset: Fraction
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "normal", vec(self.normal))
        object.__setattr__(self, "offset", frac(self.offset))
        if not any(self.normal):
            raise ContractError("half-space normal must be nonzero")

    def value(self, x: Sequence) -> Fraction:
        return dot(self.normal, x) - self.offset

    def contains(self, x: Sequence) -> bool:
        v = self.value(x)
        return v > 0 if self.strict else v >= 0

    def canonical(self) -> "HalfSpace":
        """Primitive integer normal, offset rescaled accordingly."""
        m = denominator_lcm(self.normal)
        ints = [int(c * m) for c in self.normal]
        g = 0
        for c in ints:
            g = gcd(g, c)
        s = Fraction(m, g)
        return HalfSpace(tuple(Fraction(c, g) for c in ints), self.offset * s, self.strict)


@dataclass(frozen=True, eq=False)
class Polytope:
    """A closed bounded polytope (possibly lower dimensional or empty).

    ``equations`` hold ``(normal, offset)`` pairs meaning ``<normal, x> = offset``.
    """

    vertices: tuple[Point, ...]
    facets: tuple[HalfSpace, ...]
    equations: tuple[tuple[Vector, Fraction], ...]
    dim: int
    ambient: int
    _int_rows: dict = field(default_factory=dict, repr=False, compare=False)

    # equality is vertex-set equality; the H-rep is derived data
    def __eq__(self, other):
        return isinstance(other, Polytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    @classmethod
    def empty(cls, ambient: int) -> "Polytope":
        return cls((), (), (), -1, ambient)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def has_interior(self) -> bool:
        return self.dim == self.ambient

    def contains(self, x: Sequence) -> bool:
        if self.is_empty:
            return False
        x = vec(x)
        return all(dot(n, x) == b for n, b in self.equations) and all(
            h.contains(x) for h in self.facets
        )

    def contains_relint(self, x: Sequence) -> bool:
        if self.is_empty:
            return False
        x = vec(x)
        if self.dim == 0:
            return x == self.vertices[0]
        return all(dot(n, x) == b for n, b in self.equations) and all(
            h.value(x) > 0 for h in self.facets
        )

    def relint_point(self) -> Point:
        k = len(self.vertices)
        return tuple(sum(c) / k for c in zip(*self.vertices))

    def bbox(self) -> tuple[Point, Point]:
        return (
            tuple(min(c) for c in zip(*self.vertices)),
            tuple(max(c) for c in zip(*self.vertices)),
        )

    # affine maps that preserve both representations -------------------------

    def translate(self, v: Sequence) -> "Polytope":
        v = vec(v)
        return Polytope(
            tuple(sorted(tuple(a + b for a, b in zip(p, v)) for p in self.vertices)),
            tuple(HalfSpace(h.normal, h.offset + dot(h.normal, v)) for h in self.facets),
            tuple((n, b + dot(n, v)) for n, b in self.equations),
            self.dim,
            self.ambient,
        )

    def scale(self, c) -> "Polytope":
        c = frac(c)
        if c <= 0:
            raise ContractError("scale factor must be positive")
        return Polytope(
            tuple(sorted(tuple(c * a for a in p) for p in self.vertices)),
            tuple(HalfSpace(h.normal, h.offset * c) for h in self.facets),
            tuple((n, b * c) for n, b in self.equations),
            self.dim,
            self.ambient,
        )

    def negate(self) -> "Polytope":
        return Polytope(
            tuple(sorted(tuple(-a for a in p) for p in self.vertices)),
            tuple(HalfSpace(tuple(-a for a in h.normal), h.offset) for h in self.facets),
            tuple((tuple(-a for a in n), b) for n, b in self.equations),
            self.dim,
            self.ambient,
        )

    # cached combinatorics ----------------------------------------------------

    @cached_property
    def facet_incidence(self) -> tuple[frozenset[int], ...]:
        return tuple(
            frozenset(i for i, v in enumerate(self.vertices) if h.value(v) == 0)
            for h in self.facets
        )

    @cached_property
    def face_sets(self) -> dict[frozenset[int], int]:
        """All nonempty faces as vertex-index sets mapped to their dimension."""
        if self.is_empty:
            return {}
        full = frozenset(range(len(self.vertices)))
        found = {full}
        frontier = set(self.facet_incidence) - {full}
        found |= frontier
        facets = set(self.facet_incidence)
        while frontier:
            nxt = set()
            for f in frontier:
                for g in facets:
                    h = f & g
                    if h and h not in found:
                        nxt.add(h)
            found |= nxt
            frontier = nxt
        return {f: _affine_dim([self.vertices[i] for i in f]) for f in found}

    def integer_rows(self, q: int = 1):
        """Integer form of the H-rep for testing points ``X / q`` with ``X`` integral.

        Returns ``(ineq_a, ineq_b, eq_a, eq_b)`` numpy object-free int arrays such
        that membership is ``ineq_a @ X >= ineq_b`` and ``eq_a @ X == eq_b``.
        """
        if q in self._int_rows:
            return self._int_rows[q]

        ia, ib = halfspace_rows([(h.normal, h.offset) for h in self.facets], self.ambient, q)
        ea, eb = halfspace_rows(self.equations, self.ambient, q)
        out = (ia, ib, ea, eb)
        self._int_rows[q] = out
        return out

    def contains_grid(self, X: np.ndarray, q: int = 1) -> np.ndarray:
        """Vectorized closed membership of the points ``X / q`` (``X`` int array, one row per point)."""
        if self.is_empty:
            return np.zeros(len(X), dtype=bool)
        ia, ib, ea, eb = self.integer_rows(q)
        _check_overflow(X, ia, ea)
        ok = np.ones(len(X), dtype=bool)
        if len(ib):
            ok &= np.all(X @ ia.T >= ib, axis=1)
        if len(eb):
            ok &= np.all(X @ ea.T == eb, axis=1)
        return ok


def halfspace_rows(pairs: Sequence[tuple[Sequence, Fraction]], ambient: int, q: int = 1):
    """Integer arrays ``(a, b)`` with ``<n, X/q> - offset`` having the sign of ``a @ X - b``."""
    a_rows, b_rows = [], []
    for n, b in pairs:
        m = denominator_lcm(list(n) + [b])
        a_rows.append([int(c * m) for c in n])
        b_rows.append(int(b * m * q))
    return (
        np.array(a_rows, dtype=np.int64).reshape(len(a_rows), ambient),
        np.array(b_rows, dtype=np.int64),
    )


def halfspaces_grid(hs: Sequence[HalfSpace], X: np.ndarray, q: int = 1, strict: bool = False) -> np.ndarray:
    """Vectorized test of ``X / q`` against all half-spaces (closed, or open when ``strict``)."""
    ok = np.ones(len(X), dtype=bool)
    if not hs:
        return ok
    a, b = halfspace_rows([(h.normal, h.offset) for h in hs], X.shape[1], q)
    _check_overflow(X, a)
    vals = X @ a.T - b
    return ok & (np.all(vals > 0, axis=1) if strict else np.all(vals >= 0, axis=1))


def scaled_points(points: Sequence[Sequence]) -> tuple[np.ndarray, int]:
    """Common-denominator integer form ``(X, q)`` of rational points."""
    pts = [vec(p) for p in points]
    q = denominator_lcm(c for p in pts for c in p)
    return np.array([[int(c * q) for c in p] for p in pts], dtype=object).astype(np.int64), q


def _check_overflow(X, *mats):
    if X.size == 0:
        return
    xm = int(np.abs(X).max())
    for m in mats:
        if m.size and xm * int(np.abs(m).max()) * X.shape[1] > 2**62:
            raise CapabilityError("coordinates too large for vectorized membership")


def _affine_dim(points: Sequence[Point]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([sub(p, p0) for p in points[1:]]) if len(points) > 1 else 0


# ---------------------------------------------------------------------------
# constructions


def convex_hull(points: Iterable[Sequence], max_dim: int = MAX_DIM) -> Polytope:
    """Convex hull with irredundant V- and H-representations."""
    pts = sorted(set(vec(p) for p in points))
    if not pts:
        raise ContractError("convex_hull needs at least one point")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise ContractError("points of mixed dimension")
    if d > max_dim:
        raise CapabilityError(f"ambient dimension {d} exceeds supported bound {max_dim}")
    p0 = pts[0]
    diffs = [sub(p, p0) for p in pts[1:]]
    _, cols = rref(diffs) if diffs else ([], [])
    k = len(cols)
    equations = []
    for n in nullspace(diffs, d) if diffs else nullspace([], d):
        pn = lex_sign_normalize(primitive(n))
        nf = tuple(Fraction(c) for c in pn)
        equations.append((nf, dot(nf, p0)))
    equations.sort()
    if k == 0:
        return Polytope((p0,), (), tuple(equations), 0, d)
    proj = [tuple(p[j] for j in cols) for p in pts]
    scale = denominator_lcm(c for q in proj for c in q)
    rows = [tuple(int(c * scale) for c in q) + (-1,) for q in proj]
    rays = [r for r in extreme_rays(rows, k + 1) if any(r[:k])]
    # tightness bitmask of every point, in exact integers
    qs = np.array([r[:k] for r in rows], dtype=object)
    ra = np.array([r[:k] for r in rays], dtype=object).reshape(len(rays), k)
    rb = np.array([r[k] for r in rays], dtype=object)
    tight = (qs @ ra.T) == rb if len(rays) else np.zeros((len(pts), 0), dtype=bool)
    masks = [sum(1 << j for j in np.nonzero(row)[0]) for row in tight]
    verts = [
        p for i, p in enumerate(pts)
        if not any(j != i and masks[j] & masks[i] == masks[i] for j in range(len(pts)))
    ]
    facets = []
    for r in rays:
        normal = [Fraction(0)] * d
        for j, c in zip(cols, r[:k]):
            normal[j] = Fraction(c)
        facets.append(HalfSpace(tuple(normal), Fraction(r[k], scale)).canonical())
    facets.sort(key=lambda h: (h.normal, h.offset))
    return Polytope(tuple(verts), tuple(facets), tuple(equations), k, d)


@dataclass(frozen=True)
class UnboundedPolyhedron:
    """Result of :func:`hrep_to_vrep` for unbounded feasible systems."""

    vertices: tuple[Point, ...]
    rays: tuple[tuple[int, ...], ...]
    lines: tuple[tuple[int, ...], ...] = ()


def hrep_to_vrep(halfspaces: Sequence[HalfSpace], ambient: int | None = None):
    """Vertices of ``{x : all half-spaces hold}``.

    Returns a :class:`Polytope` (possibly empty) when the system is bounded,
    otherwise an :class:`UnboundedPolyhedron` carrying recession generators.
    Strict half-spaces are replaced by their closures.
    """
    hs = list(halfspaces)
    if ambient is None:
        if not hs:
            raise ContractError("ambient dimension unknown for empty system")
        ambient = len(hs[0].normal)
    d = ambient
    pairs = [(h.normal, h.offset) for h in hs]
    lines = [lex_sign_normalize(primitive(v)) for v in nullspace([n for n, _ in pairs], d)]
    for line in lines:
        lf = tuple(Fraction(c) for c in line)
        pairs.append((lf, Fraction(0)))
        pairs.append((tuple(-c for c in lf), Fraction(0)))
    rows = []
    for n, b in pairs:
        m = denominator_lcm(list(n) + [b])
        rows.append(tuple(int(c * m) for c in n) + (-int(b * m),))
    rows.append((0,) * d + (1,))
    verts, rays = [], []
    for r in extreme_rays(rows, d + 1):
        x, s = r[:d], r[d]
        if s > 0:
            verts.append(tuple(Fraction(c, s) for c in x))
        else:
            rays.append(tuple(x))
    if not verts:
        return Polytope.empty(d)
    if rays or lines:
        return UnboundedPolyhedron(tuple(sorted(verts)), tuple(sorted(rays)), tuple(lines))
    return convex_hull(verts)


def polytope_from_hrep(halfspaces: Sequence[HalfSpace], ambient: int | None = None) -> Polytope:
    res = hrep_to_vrep(halfspaces, ambient)
    if isinstance(res, UnboundedPolyhedron):
        raise ContractError("half-space system is unbounded")
    return res


def minkowski_sum(p: Polytope, q: Polytope) -> Polytope:
    if p.ambient != q.ambient:
        raise ContractError("Minkowski sum of polytopes in different dimensions")
    if p.is_empty or q.is_empty:
        return Polytope.empty(p.ambient)
    if len(q.vertices) == 1:
        return p.translate(q.vertices[0])
    if len(p.vertices) == 1:
        return q.translate(p.vertices[0])
    return convex_hull(
        tuple(a + b for a, b in zip(u, v)) for u in p.vertices for v in q.vertices
    )


def minkowski_sum_many(polys: Sequence[Polytope]) -> Polytope:
    out = polys[0]
    for p in polys[1:]:
        out = minkowski_sum(out, p)
    return out


def triangulate(p: Polytope) -> list[tuple[int, ...]]:
    """Pulling triangulation: fan from the lexicographically smallest vertex.

    Returns simplices as vertex-index tuples of length ``p.dim + 1``.
    """
    if p.is_empty:
        return []
    inc = p.facet_incidence
    dims: dict[frozenset[int], int] = {}

    def fdim(s):
        if s not in dims:
            dims[s] = _affine_dim([p.vertices[i] for i in s])
        return dims[s]

    def tri(face: frozenset[int], k: int) -> list[tuple[int, ...]]:
        if k == 0:
            return [tuple(face)]
        v = min(face)
        subs = {face & f for f in inc}
        out = []
        for g in subs:
            if v in g or fdim(g) != k - 1:
                continue
            out.extend((v,) + s for s in tri(g, k - 1))
        return out

    return tri(frozenset(range(len(p.vertices))), p.dim)


def volume(p: Polytope) -> Fraction:
    """Exact d-volume; zero for lower-dimensional polytopes."""
    if p.is_empty or p.dim < p.ambient:
        return Fraction(0)
    d = p.ambient
    total = Fraction(0)
    for s in triangulate(p):
        base = p.vertices[s[0]]
        m = [sub(p.vertices[i], base) for i in s[1:]]
        total += abs(det(m))
    return total / factorial(d)


@dataclass(frozen=True)
class Face:
    dim: int
    vertex_ids: frozenset[int]
    polytope: Polytope


def faces(p: Polytope) -> list[Face]:
    """Every nonempty face once, ordered by dimension then vertex ids (includes ``p``)."""
    out = []
    for s, k in sorted(p.face_sets.items(), key=lambda kv: (kv[1], sorted(kv[0]))):
        sub_p = p if len(s) == len(p.vertices) else convex_hull(p.vertices[i] for i in s)
        out.append(Face(k, s, sub_p))
    return out


def simplex_volume_brute(points: Sequence[Point]) -> Fraction:
    m = [sub(q, points[0]) for q in points[1:]]
    return abs(det(m)) / factorial(len(m))


# ---------------------------------------------------------------------------
# lattice points


def lattice_points(
    membership: Callable[[Point], bool],
    lo: Sequence,
    hi: Sequence,
    cap: int | None = None,
) -> list[tuple[int, ...]]:
    """Integer points of the box ``[lo, hi]`` satisfying ``membership``, lex ordered."""
    import math

    cap = LATTICE_CAP if cap is None else cap
    los = [math.ceil(frac(a)) for a in lo]
    his = [math.floor(frac(b)) for b in hi]
    size = 1
    for a, b in zip(los, his):
        size *= max(0, b - a + 1)
    if size > cap:
        raise CapabilityError(f"bounding box holds {size} lattice points (cap {cap})")
    ranges = [range(a, b + 1) for a, b in zip(los, his)]
    return [x for x in itertools.product(*ranges) if membership(tuple(Fraction(c) for c in x))]


def box_grid(lo: Sequence[int], hi: Sequence[int], cap: int | None = None) -> np.ndarray:
    """All integer points of an integer box as an int64 array, lex ordered."""
    cap = LATTICE_CAP if cap is None else cap
    size = 1
    for a, b in zip(lo, hi):
        size *= max(0, b - a + 1)
    if size > cap:
        raise CapabilityError(f"bounding box holds {size} lattice points (cap {cap})")
    axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1) if axes else np.zeros((1, 0), np.int64)


def count_lattice_points(p: Polytope, cap: int | None = None) -> int:
    import math

    if p.is_empty:
        return 0
    lo, hi = p.bbox()
    grid = box_grid([math.ceil(a) for a in lo], [math.floor(b) for b in hi], cap)
    if len(grid) == 0:
        return 0
    return int(p.contains_grid(grid).sum())
