"""Coconvex polygons from edge normals and support numbers.

The wedge is ``C = cone((1, 0), w)`` with ``w_y > 0``.  Edge ``k`` lies on the
line ``a_k x + b_k y = h_k`` with ``a_k > 0`` and ``<u_k, w> > 0``; edges are
numbered from the x-axis towards ``w``, which means the slopes
``beta_k = b_k / a_k`` strictly decrease and ``beta_n > beta_{n+1} := -w_x / w_y``.

Dictionary with the angle picture: the horizontal base of triangle ``T_k``
is ``lambda_k = x_k - x_{k+1}``, with ``x_k = h_k / a_k`` the x-intercept of
line ``k`` (and ``x_{n+1} = 0``), and its apex height is
``lambda_k / (beta_k - beta_{k+1})``.  So ``area(T_k) = c_k lambda_k^2`` with
``c_k = 1 / (2 (beta_k - beta_{k+1}))``; the ``cot`` differences of the
angle picture become the rational slope differences ``beta_k - beta_{k+1}``.
For the last triangle the second intercept is 0, so ``lambda_n = x_n``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import geometry as geo
from .chains import Report
from .coconvex import CoconvexBody, covolume, make_body, oplus
from .errors import ContractError, ValidityError
from .linalg import frac, vec
from .mixed import LinearFamilyCoconvex, inertia, volume_polynomial_coconvex
from .poly import Poly


@dataclass(frozen=True)
class WedgeFamily:
    normals: tuple[tuple[int, int], ...]
    wedge: tuple[int, int]

    def __post_init__(self):
        normals = tuple(tuple(int(c) for c in u) for u in self.normals)
        w = tuple(int(c) for c in self.wedge)
        object.__setattr__(self, "normals", normals)
        object.__setattr__(self, "wedge", w)
        if not normals:
            raise ContractError("need at least one edge normal")
        if w[1] <= 0 or gcd(*w) != 1:
            raise ContractError("wedge generator must be primitive with positive y")
        for a, b in normals:
            if gcd(a, b) != 1:
                raise ContractError(f"normal {(a, b)} is not primitive")
            if a <= 0 or a * w[0] + b * w[1] <= 0:
                raise ContractError(f"normal {(a, b)} is not in the interior of the dual wedge")
        betas = self.betas
        if any(betas[k] <= betas[k + 1] for k in range(len(normals))):
            raise ContractError("normals must be ordered with strictly decreasing slope b/a")

    @property
    def n(self) -> int:
        return len(self.normals)

    @property
    def betas(self) -> list[Fraction]:
        """``beta_1 .. beta_n, beta_{n+1}`` (the last one belongs to the ray ``w``)."""
        w = self.wedge
        return [Fraction(b, a) for a, b in self.normals] + [Fraction(-w[0], w[1])]

    @property
    def cone_generators(self):
        return ((1, 0), self.wedge)

    @property
    def xi(self) -> tuple[int, int]:
        w = self.wedge
        return (w[1], abs(w[0]) + w[1])


def intercepts(fam: WedgeFamily, h: Sequence) -> list[Fraction]:
    """``x_1 .. x_n, x_{n+1} = 0``."""
    return [frac(hk) / a for hk, (a, _) in zip(h, fam.normals)] + [Fraction(0)]


def chain_vertices(fam: WedgeFamily, h: Sequence) -> list[tuple[Fraction, Fraction]]:
    """``p_0 .. p_n``: the x-axis endpoint, consecutive line crossings, the point on ``w``."""
    if len(h) != fam.n:
        raise ContractError("support vector has wrong length")
    x, beta = intercepts(fam, h), fam.betas
    pts = [(x[0], Fraction(0))]
    for k in range(fam.n):
        y = (x[k] - x[k + 1]) / (beta[k] - beta[k + 1])
        pts.append((x[k] - beta[k] * y, y))
    return pts


def validity_violation(fam: WedgeFamily, h: Sequence) -> str | None:
    """First violated chain condition, or None when ``h`` lies in the validity region."""
    pts = chain_vertices(fam, h)
    for k in range(1, len(pts)):
        if pts[k][1] <= pts[k - 1][1]:
            return f"edge {k} has non-positive length (chain vertex {k} not above vertex {k - 1})"
    return None


def in_omega(fam: WedgeFamily, h: Sequence) -> bool:
    return validity_violation(fam, h) is None


def _require(fam, h):
    msg = validity_violation(fam, h)
    if msg:
        raise ValidityError(f"support vector {tuple(str(c) for c in h)} outside the validity region: {msg}")


def build_polygon(fam: WedgeFamily, h: Sequence) -> CoconvexBody:
    h = vec(h)
    _require(fam, h)
    body = make_body(fam.cone_generators, chain_vertices(fam, h), fam.xi)
    # every prescribed edge line is a facet of Delta
    facets = set(body.delta.hrep)
    for u, hk in zip(fam.normals, h):
        if geo.HalfSpace(u, hk).canonical() not in facets:
            raise ValidityError(f"edge line {u}.x = {hk} is not a facet")
    return body


def additivity_check(fam: WedgeFamily, h: Sequence, h2: Sequence) -> Report:
    h, h2 = vec(h), vec(h2)
    hs = tuple(a + b for a, b in zip(h, h2))
    for v in (h, h2, hs):
        _require(fam, v)
    lhs = oplus(build_polygon(fam, h), build_polygon(fam, h2))
    rhs = build_polygon(fam, hs)
    rep = Report("additivity")
    if lhs.base_points != rhs.base_points:
        diff = sorted(set(lhs.base_points) ^ set(rhs.base_points))
        rep.fail(diff[0])
    return rep


@dataclass(frozen=True)
class TriangleDecomposition:
    family: WedgeFamily
    coeffs: tuple[Fraction, ...]  # c_k
    forms: tuple[tuple[Fraction, ...], ...]  # lambda_k as coefficient rows in h

    def lengths(self, h: Sequence) -> list[Fraction]:
        h = vec(h)
        return [sum((c * x for c, x in zip(row, h)), Fraction(0)) for row in self.forms]

    def triangles(self, h: Sequence) -> list[geo.Polytope]:
        pts = chain_vertices(self.family, h)
        x = intercepts(self.family, h)
        return [
            geo.convex_hull([(x[k], 0), (x[k + 1], 0), pts[k + 1]]) for k in range(self.family.n)
        ]

    def quadratic_form(self) -> Poly:
        n = self.family.n
        out = Poly.zero(n)
        for c, row in zip(self.coeffs, self.forms):
            lin = Poly.from_dict(n, {tuple(int(j == i) for j in range(n)): row[i] for i in range(n)})
            out = out + (lin * lin).scale(c)
        return out

    def __call__(self, h: Sequence) -> Fraction:
        return sum((c * l * l for c, l in zip(self.coeffs, self.lengths(h))), Fraction(0))


def sos_decomposition(fam: WedgeFamily) -> TriangleDecomposition:
    n, beta = fam.n, fam.betas
    coeffs = tuple(1 / (2 * (beta[k] - beta[k + 1])) for k in range(n))
    forms = []
    for k in range(n):
        row = [Fraction(0)] * n
        row[k] = Fraction(1, fam.normals[k][0])
        if k + 1 < n:
            row[k + 1] = Fraction(-1, fam.normals[k + 1][0])
        forms.append(tuple(row))
    return TriangleDecomposition(fam, coeffs, tuple(forms))


def interior_point(fam: WedgeFamily) -> tuple[Fraction, ...]:
    """An integer support vector in the validity region (apex heights 1, 2, ..., n)."""
    beta = fam.betas
    lam = [(k + 1) * (beta[k] - beta[k + 1]) for k in range(fam.n)]
    x = [sum(lam[k:], Fraction(0)) for k in range(fam.n)]
    h = [a * xk for (a, _), xk in zip(fam.normals, x)]
    m = 1
    for c in h:
        m = m * c.denominator // gcd(m, c.denominator)
    return tuple(c * m for c in h)


def basis_supports(fam: WedgeFamily) -> list[tuple[Fraction, ...]]:
    """``M h0 + e_i`` for the smallest power-of-two ``M`` keeping all of them valid."""
    h0 = interior_point(fam)
    m = 1
    while True:
        hs = [tuple(m * c + (1 if j == i else 0) for j, c in enumerate(h0)) for i in range(fam.n)]
        if all(in_omega(fam, v) for v in hs):
            return hs
        m *= 2


def verify_sos(fam: WedgeFamily, seed: int = 0) -> Report:
    """Coefficient-wise identity, inertia ``(n, 0, 0)``, tiling and triangle similarity."""
    rng = random.Random(seed)
    dec = sos_decomposition(fam)
    n = fam.n
    rep = Report("sos", details={"c": [str(c) for c in dec.coeffs]})
    if any(c <= 0 for c in dec.coeffs):
        return rep.fail(dec.coeffs, reason="non-positive coefficient")

    hs = basis_supports(fam)
    bodies = [build_polygon(fam, h) for h in hs]
    vp = volume_polynomial_coconvex(LinearFamilyCoconvex(bodies, []), seed)
    # Vol_beta(l) = Q(H l) with H the matrix whose columns are the basis supports
    hmat = [[hs[j][i] for j in range(n)] for i in range(n)]
    q = dec.quadratic_form()
    if q.substitute_linear(hmat) != vp.poly:
        return rep.fail(None, reason="coefficient mismatch", sos=str(q), interpolated=str(vp.poly))

    inr = inertia(q.quadratic_matrix())
    rep.details["inertia"] = inr.as_tuple()
    if inr.as_tuple() != (n, 0, 0):
        return rep.fail(inr.as_tuple(), reason="form is not positive definite")

    h = random_support(fam, rng)
    h2 = random_support(fam, rng)
    area = covolume(build_polygon(fam, h))
    tris = dec.triangles(h)
    if sum((geo.volume(t) for t in tris), Fraction(0)) != area or dec(h) != area:
        return rep.fail(h, reason="triangles do not tile the polygon")
    for k, (t1, t2) in enumerate(zip(tris, dec.triangles(h2))):
        if geo.volume(t1) != dec.coeffs[k] * dec.lengths(h)[k] ** 2:
            return rep.fail((h, k), reason="triangle area")
        if not _homothetic(t1, t2, dec.lengths(h)[k] / dec.lengths(h2)[k]):
            return rep.fail((h, h2, k), reason="triangles not homothetic")
    return rep


def _homothetic(p: geo.Polytope, q: geo.Polytope, r: Fraction) -> bool:
    # both triangles have their lowest-leftmost vertex on the x-axis
    a, b = min(p.vertices), min(q.vertices)
    mp = sorted(tuple(x - y for x, y in zip(v, a)) for v in p.vertices)
    mq = sorted(tuple(r * (x - y) for x, y in zip(v, b)) for v in q.vertices)
    return mp == mq


def random_support(fam: WedgeFamily, rng: random.Random) -> tuple[Fraction, ...]:
    """Random valid support vector: random apex heights, then solve for ``h``."""
    beta = fam.betas
    ys = sorted(rng.sample(range(1, 4 * fam.n + 4), fam.n))
    lam = [Fraction(ys[k]) * (beta[k] - beta[k + 1]) for k in range(fam.n)]
    x = [sum(lam[k:], Fraction(0)) for k in range(fam.n)]
    return tuple(a * xk for (a, _), xk in zip(fam.normals, x))


def reversed_af_d2(fam: WedgeFamily, h: Sequence, h2: Sequence) -> Report:
    """``B(h, h')^2 <= Vol(h) Vol(h')`` with equality exactly for proportional vectors."""
    h, h2 = vec(h), vec(h2)
    _require(fam, h)
    _require(fam, h2)
    dec = sos_decomposition(fam)
    l1, l2 = dec.lengths(h), dec.lengths(h2)
    b = sum((c * x * y for c, x, y in zip(dec.coeffs, l1, l2)), Fraction(0))
    lhs, rhs = b * b, dec(h) * dec(h2)
    proportional = all(h[0] * y == h2[0] * x for x, y in zip(h, h2))
    rep = Report("reversedAF2", details={"lhs": str(lhs), "rhs": str(rhs), "proportional": proportional})
    if lhs > rhs:
        rep.fail((h, h2), reason="inequality violated")
    elif (lhs == rhs) != proportional:
        rep.fail((h, h2), reason="equality case mismatch")
    return rep


WEDGES = ((0, 1), (1, 1), (-1, 1), (1, 2), (-1, 2), (2, 1))


def random_wedge_family(rng: random.Random, n: int) -> WedgeFamily:
    w = rng.choice(WEDGES)
    floor = Fraction(-w[0], w[1])
    slopes = set()
    for a in range(1, 4):
        for b in range(-4, 6):
            if gcd(a, b) == 1 and Fraction(b, a) > floor:
                slopes.add((a, b))
    chosen = rng.sample(sorted(slopes), n)
    chosen.sort(key=lambda u: Fraction(u[1], u[0]), reverse=True)
    return WedgeFamily(tuple(chosen), w)
