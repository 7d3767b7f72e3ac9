"""Volume polynomials, mixed volumes and Aleksandrov-Fenchel forms.

Normalization: the bilinear form is ``B(u1, u2) = (1/d!) L_u1 L_u2 L_v1 ... L_v(d-2) Vol``,
so the diagonal value ``B(u, u)`` with all marked points equal to ``u`` is
``Vol(u)``, and ``mixed_volume(P, ..., P) = vol(P)``.  With this
normalization ``Vol(l1 K1 + l2 K2) = sum_k binom(d, k) l1^k l2^(d-k) MV(K1[k], K2[d-k])``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from . import geometry as geo
from .chains import Report
from .coconvex import CoconvexBody, linear_combination, truncate
from .errors import ContractError
from .geometry import Polytope
from .linalg import frac, vec
from .poly import Poly, interpolate, simplex_lattice

ROOT_PRECISION_CAP = 256


@dataclass
class LinearFamilyConvex:
    """``lambda -> lambda_1 P_1 + ... + lambda_n P_n`` with ``d - 2`` marked coefficient vectors."""

    bodies: list[Polytope]
    marked: list[tuple[Fraction, ...]] = field(default_factory=list)

    def __post_init__(self):
        _check_marked(self.marked, len(self.bodies))

    @property
    def dim(self) -> int:
        return self.bodies[0].ambient

    def body(self, lam: Sequence) -> Polytope:
        return geo.minkowski_sum_many([p.scale(c) for p, c in zip(self.bodies, lam)])


@dataclass
class LinearFamilyCoconvex:
    """``lambda -> lambda_1 A_1 (+) ... (+) lambda_n A_n`` over a shared cone."""

    bodies: list[CoconvexBody]
    marked: list[tuple[Fraction, ...]] = field(default_factory=list)

    def __post_init__(self):
        _check_marked(self.marked, len(self.bodies))
        cone = self.bodies[0].cone
        if any(b.cone != cone for b in self.bodies):
            raise ContractError("coconvex family bodies must share the cone")

    @property
    def dim(self) -> int:
        return self.bodies[0].dim

    def body(self, lam: Sequence) -> CoconvexBody:
        return linear_combination(self.bodies, lam)


def _check_marked(marked, n):
    for v in marked:
        if len(v) != n:
            raise ContractError("marked point has wrong length")
        if any(frac(c) <= 0 for c in v):
            raise ContractError("marked points must be strictly positive")


@dataclass(frozen=True)
class VolumePolynomial:
    dim: int
    poly: Poly

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    def __call__(self, lam: Sequence) -> Fraction:
        return self.poly(lam)


def _check_points(n: int, rng: random.Random, k: int = 3) -> list[tuple[int, ...]]:
    return [tuple(rng.randint(1, 4) for _ in range(n)) for _ in range(k)]


def volume_polynomial_convex(fam: LinearFamilyConvex, seed: int = 0) -> VolumePolynomial:
    d, n = fam.dim, len(fam.bodies)
    pts = simplex_lattice(n, d, (1,) * n)
    poly = interpolate(
        lambda lam: geo.volume(fam.body(lam)), n, d, pts, check_points=_check_points(n, random.Random(seed))
    )
    return VolumePolynomial(d, poly)


def volume_polynomial_coconvex(fam: LinearFamilyCoconvex, seed: int = 0) -> VolumePolynomial:
    from .coconvex import covolume

    d, n = fam.dim, len(fam.bodies)
    pts = simplex_lattice(n, d, (1,) * n)
    poly = interpolate(
        lambda lam: covolume(fam.body(lam), check=False),
        n,
        d,
        pts,
        check_points=_check_points(n, random.Random(seed)),
    )
    return VolumePolynomial(d, poly)


def differentiate(p: VolumePolynomial | Poly, v: Sequence) -> Poly:
    poly = p.poly if isinstance(p, VolumePolynomial) else p
    if poly.degree < 1:
        raise ContractError("cannot differentiate a constant")
    return poly.differentiate(v)


@dataclass(frozen=True)
class AFForm:
    matrix: tuple[tuple[Fraction, ...], ...]
    kind: str  # "convex" | "coconvex"
    marked: tuple[tuple[Fraction, ...], ...]

    def bilinear(self, u: Sequence, v: Sequence) -> Fraction:
        u, v = vec(u), vec(v)
        return sum((u[i] * self.matrix[i][j] * v[j] for i in range(len(u)) for j in range(len(v))), Fraction(0))

    def quadratic(self, u: Sequence) -> Fraction:
        return self.bilinear(u, u)


def reduce_marked(vp: VolumePolynomial, marked: Sequence[Sequence]) -> Poly:
    """``L_v1 ... L_vk Vol``."""
    p = vp.poly
    for v in marked:
        p = p.differentiate(v)
    return p


def af_form(fam, vp: VolumePolynomial | None = None) -> AFForm:
    """Matrix ``(1/d!) L_ei L_ej L_v1 ... L_v(d-2) Vol``."""
    d, n = fam.dim, len(fam.bodies)
    if len(fam.marked) != d - 2:
        raise ContractError(f"need exactly {d - 2} marked points, got {len(fam.marked)}")
    kind = "coconvex" if isinstance(fam, LinearFamilyCoconvex) else "convex"
    if vp is None:
        vp = volume_polynomial_coconvex(fam) if kind == "coconvex" else volume_polynomial_convex(fam)
    q = reduce_marked(vp, fam.marked)
    m = []
    for i in range(n):
        row = []
        for j in range(n):
            e_i = [int(k == i) for k in range(n)]
            e_j = [int(k == j) for k in range(n)]
            row.append(q.differentiate(e_i).differentiate(e_j).constant() / factorial(d))
        m.append(tuple(row))
    if any(m[i][j] != m[j][i] for i in range(n) for j in range(n)):
        raise ContractError("AF form is not symmetric")
    return AFForm(tuple(m), kind, tuple(tuple(frac(c) for c in v) for v in fam.marked))


def mixed_volume(bodies: Sequence[Polytope]) -> Fraction:
    """Polarization ``(1/d!) sum_{S nonempty} (-1)^(d-|S|) vol(sum_S P_i)``."""
    d = bodies[0].ambient
    if len(bodies) != d:
        raise ContractError(f"mixed volume in dimension {d} needs {d} bodies, got {len(bodies)}")
    total = Fraction(0)
    for k in range(1, d + 1):
        for sub in itertools.combinations(range(d), k):
            total += (-1) ** (d - k) * geo.volume(geo.minkowski_sum_many([bodies[i] for i in sub]))
    return total / factorial(d)


@dataclass(frozen=True)
class Inertia:
    positive: int
    negative: int
    zero: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.positive, self.negative, self.zero)


def inertia(form: AFForm | Sequence[Sequence]) -> Inertia:
    """Exact inertia by symmetric congruence elimination over Q."""
    mat = form.matrix if isinstance(form, AFForm) else form
    a = [[frac(x) for x in row] for row in mat]
    n = len(a)
    if any(a[i][j] != a[j][i] for i in range(n) for j in range(n)):
        raise ContractError("inertia needs a symmetric matrix")
    pos = neg = 0
    while a:
        m = len(a)
        piv = next((i for i in range(m) if a[i][i] != 0), None)
        if piv is not None:
            p = a[piv][piv]
            if p > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in range(m) if i != piv]
            a = [[a[i][j] - a[i][piv] * a[piv][j] / p for j in rest] for i in rest]
            continue
        pair = next(((i, j) for i in range(m) for j in range(i + 1, m) if a[i][j] != 0), None)
        if pair is None:
            break
        # 2x2 block [[0, b], [b, 0]] contributes one positive and one negative square
        i, j = pair
        b = a[i][j]
        pos += 1
        neg += 1
        rest = [k for k in range(m) if k not in pair]
        # inverse of [[0, b], [b, 0]] is [[0, 1/b], [1/b, 0]]
        a = [
            [a[r][c] - (a[r][i] * a[j][c] + a[r][j] * a[i][c]) / b for c in rest]
            for r in rest
        ]
    return Inertia(pos, neg, n - pos - neg)


def random_rational_vector(rng: random.Random, n: int, lo: int = -10, hi: int = 10) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(lo, hi), rng.randint(1, 5)) for _ in range(n))


def check_theorem_a(fam: LinearFamilyCoconvex, rng: random.Random | None = None, pairs: int = 10) -> Report:
    """Non-negativity of the coconvex AF form plus Cauchy-Schwarz on random pairs."""
    rng = rng or random.Random(0)
    form = af_form(fam)
    inr = inertia(form)
    rep = Report("theoremA", details={"inertia": inr.as_tuple()})
    if inr.negative:
        return rep.fail(form.matrix, reason="negative square in coconvex AF form")
    n = len(fam.bodies)
    for _ in range(pairs):
        u1, u2 = random_rational_vector(rng, n), random_rational_vector(rng, n)
        lhs = form.bilinear(u1, u2) ** 2
        rhs = form.quadratic(u1) * form.quadratic(u2)
        if lhs > rhs:
            return rep.fail((u1, u2), reason="Cauchy-Schwarz violated", lhs=str(lhs), rhs=str(rhs))
    return rep


def check_af_convex(fam: LinearFamilyConvex) -> Report:
    """The convex AF form has exactly one positive square."""
    if not any(p.has_interior for p in fam.bodies):
        raise ContractError("family needs a full-dimensional body")
    inr = inertia(af_form(fam))
    rep = Report("convexAF", details={"inertia": inr.as_tuple()})
    if inr.positive != 1:
        rep.fail(inr.as_tuple(), reason="signature is not (1, l)")
    return rep


# ---------------------------------------------------------------------------
# d-th roots with certified rational bounds


def _iroot(n: int, d: int) -> int:
    """floor(n ** (1/d)) for n >= 0."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + d - 1) // d)
    while True:
        y = ((d - 1) * x + n // x ** (d - 1)) // d
        if y >= x:
            break
        x = y
    while x**d > n:
        x -= 1
    while (x + 1) ** d <= n:
        x += 1
    return x


def exact_root(x: Fraction, d: int) -> Fraction | None:
    """Rational d-th root of ``x >= 0`` if it exists."""
    p, q = x.numerator, x.denominator
    rp, rq = _iroot(p, d), _iroot(q, d)
    if rp**d == p and rq**d == q:
        return Fraction(rp, rq)
    return None


def root_bounds(x: Fraction, d: int, bits: int) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= x^(1/d) <= hi`` with ``hi - lo <= 2^-bits``."""
    r = exact_root(x, d)
    if r is not None:
        return r, r
    scaled = (x.numerator << (bits * d)) // x.denominator
    lo = _iroot(scaled, d)
    return Fraction(lo, 1 << bits), Fraction(lo + 1, 1 << bits)


def compare_convex_roots(c: Fraction, a: Fraction, b: Fraction, t: Fraction, d: int, cap: int | None = None) -> str:
    """Decide ``c^(1/d) <= t a^(1/d) + (1-t) b^(1/d)``: returns ``"le"``, ``"gt"`` or ``"undecided"``."""
    # common root: all three are rational multiples of one d-th root
    base = next((v for v in (b, a, c) if v > 0), None)
    if base is None:
        return "le"
    ratios = [exact_root(v / base, d) for v in (c, a, b)]
    if all(r is not None for r in ratios):
        rc, ra, rb = ratios
        return "le" if rc <= t * ra + (1 - t) * rb else "gt"
    cap = ROOT_PRECISION_CAP if cap is None else cap
    bits = 16
    while bits <= cap:
        cl, ch = root_bounds(c, d, bits)
        al, ah = root_bounds(a, d, bits)
        bl, bh = root_bounds(b, d, bits)
        if ch <= t * al + (1 - t) * bl:
            return "le"
        if cl > t * ah + (1 - t) * bh:
            return "gt"
        bits *= 2
    return "undecided"


def check_reversed_inequalities(
    fam: LinearFamilyCoconvex,
    u: Sequence,
    v: Sequence,
    vp: VolumePolynomial | None = None,
    cap: int | None = None,
) -> Report:
    """Reversed Minkowski (first and second) and reversed Brunn-Minkowski at ``t in {1/4, 1/2, 3/4}``.

    ``u`` and ``v`` are nonnegative and nonzero; coordinate vectors give the
    basis bodies themselves.
    """
    u, v = vec(u), vec(v)
    if any(c < 0 for c in u + v) or not any(u) or not any(v):
        raise ContractError("u and v must be nonnegative and nonzero")
    vp = vp or volume_polynomial_coconvex(fam)
    d = vp.dim
    rep = Report("reversedMinkowski")
    vol_u, vol_v = vp(u), vp(v)

    p = vp.poly.differentiate(u)
    for _ in range(d - 1):
        p = p.differentiate(v)
    mixed = p.constant() / factorial(d)
    lhs1, rhs1 = mixed**d, vol_u * vol_v ** (d - 1)
    rep.details["first"] = (str(lhs1), str(rhs1))
    if lhs1 > rhs1:
        return rep.fail((u, v), inequality="first reversed Minkowski")

    # second: all marked points equal to u
    q = vp.poly
    for _ in range(d - 2):
        q = q.differentiate(u)
    b_uv = q.differentiate(u).differentiate(v).constant() / factorial(d)
    b_vv = q.differentiate(v).differentiate(v).constant() / factorial(d)
    lhs2, rhs2 = b_uv**2, vol_u * b_vv
    rep.details["second"] = (str(lhs2), str(rhs2))
    if lhs2 > rhs2:
        return rep.fail((u, v), inequality="second reversed Minkowski")

    verdicts = {}
    for t in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
        w = tuple(t * a + (1 - t) * b for a, b in zip(u, v))
        verdict = compare_convex_roots(vp(w), vol_u, vol_v, t, d, cap)
        verdicts[str(t)] = verdict
        if verdict == "gt":
            rep.details["brunnMinkowski"] = verdicts
            return rep.fail((u, v, t), inequality="reversed Brunn-Minkowski")
        if verdict == "undecided":
            rep.status = "inconclusive"
    rep.details["brunnMinkowski"] = verdicts
    return rep


# ---------------------------------------------------------------------------
# the convex family of truncations and its relation to the coconvex one


def check_identities_vq(fam: LinearFamilyCoconvex, s: Sequence | None = None, seed: int = 0) -> Report:
    """Verify ``Vol_alpha(l, t) = c t^d - Vol_beta(l)`` and ``Q_alpha = c' t^2 - Q_beta``.

    ``Vol_alpha(l, t)`` is the volume of ``Delta(l)_t``, the closure of
    ``C_t minus g(l)``; it is interpolated independently from truncated
    volumes at points ``(l, t)`` with ``t`` above every certified threshold.
    ``s`` holds the t-components of the marked points (default all 1).
    """
    d, n = fam.dim, len(fam.bodies)
    rng = random.Random(seed)
    vb = volume_polynomial_coconvex(fam, seed)
    pts_l = simplex_lattice(n + 1, d, (1,) * (n + 1))
    checks = [tuple(rng.randint(1, 4) for _ in range(n)) for _ in range(3)]
    lam_set = {p[:n] for p in pts_l} | set(checks)
    bodies = {lam: fam.body(lam) for lam in lam_set}
    big = max(b.tstar for b in bodies.values())
    shift = int(big) + 1
    pts = [p[:n] + (p[n] - 1 + shift,) for p in pts_l]
    check_pts = [lam + (shift + rng.randint(0, 3),) for lam in checks]

    def vol_alpha(x):
        dt, _ = truncate(bodies[x[:n]], x[n])
        return geo.volume(dt)

    va = interpolate(vol_alpha, n + 1, d, pts, check_points=check_pts)
    cone_t1 = truncate(fam.bodies[0], fam.bodies[0].tstar)[1].scale(Fraction(1) / fam.bodies[0].tstar)
    c = geo.volume(cone_t1)
    rep = Report("identitiesVQ", details={"c": str(c)})
    tvar = Poly.from_dict(n + 1, {tuple(int(i == n) for i in range(n + 1)): 1})
    ct_d = Poly.from_dict(n + 1, {tuple(d if i == n else 0 for i in range(n + 1)): c})
    vb_lifted = Poly.from_dict(n + 1, {e + (0,): k for e, k in vb.poly.coeffs})
    if c <= 0:
        return rep.fail(None, reason="c must be positive")
    if va != ct_d - vb_lifted:
        return rep.fail(None, identity="V", lhs=str(va), rhs=str(ct_d - vb_lifted))

    s = [Fraction(1)] * (d - 2) if s is None else [frac(x) for x in s]
    marked = [tuple(v) + (sv,) for v, sv in zip(fam.marked, s)]
    qa = va
    for m in marked:
        qa = qa.differentiate(m)
    qa = qa.scale(Fraction(2, factorial(d)))
    qb = vb.poly
    for m in fam.marked:
        qb = qb.differentiate(m)
    qb = qb.scale(Fraction(2, factorial(d)))
    c_prime = c
    for sv in s:
        c_prime *= sv
    qb_lifted = Poly.from_dict(n + 1, {e + (0,): k for e, k in qb.coeffs})
    rhs = (tvar * tvar).scale(c_prime) - qb_lifted
    rep.details["c_prime"] = str(c_prime)
    if c_prime <= 0:
        return rep.fail(None, reason="c' must be positive")
    if qa != rhs:
        return rep.fail(None, identity="Q", lhs=str(qa), rhs=str(rhs))
    ia, ib = inertia(qa.quadratic_matrix()), inertia(qb.quadratic_matrix())
    rep.details["inertia_alpha"] = ia.as_tuple()
    rep.details["inertia_beta"] = ib.as_tuple()
    if ia.positive != 1 or ib.negative != 0 or ib.positive != ia.negative:
        return rep.fail(None, reason="signature bookkeeping")
    return rep


def cone_orthogonality(a: CoconvexBody, partners: Sequence[CoconvexBody] = (), t0=None) -> Report:
    """``MV(C_t, Delta_t, P...) - MV(C_t, C_t, P...) = 0`` with ``P`` the truncated partners."""
    d = a.dim
    if len(partners) != d - 2:
        raise ContractError(f"need {d - 2} partner bodies")
    if any(p.cone != a.cone for p in partners):
        raise ContractError("partners must share the cone")
    t0 = frac(t0) if t0 is not None else max([a.tstar] + [p.tstar for p in partners])
    dt, ct = truncate(a, t0)
    others = [truncate(p, t0)[0] for p in partners]
    val = mixed_volume([ct, dt] + others) - mixed_volume([ct, ct] + others)
    rep = Report("coneOrthogonality", details={"value": str(val), "t0": str(t0)})
    if val != 0:
        rep.fail(val)
    return rep
