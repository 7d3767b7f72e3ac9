import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cocovex import families as F
from cocovex import geometry as geo
from cocovex.coconvex import covolume, make_body
from cocovex.errors import ContractError
from cocovex.mixed import (
    LinearFamilyCoconvex,
    LinearFamilyConvex,
    af_form,
    check_af_convex,
    check_identities_vq,
    check_reversed_inequalities,
    check_theorem_a,
    compare_convex_roots,
    cone_orthogonality,
    differentiate,
    exact_root,
    inertia,
    mixed_volume,
    root_bounds,
    volume_polynomial_coconvex,
    volume_polynomial_convex,
)
from cocovex.poly import Poly

h = geo.convex_hull
SQUARE = h([(0, 0), (1, 0), (0, 1), (1, 1)])
TRI = h([(0, 0), (1, 0), (0, 1)])
SEG_X = h([(0, 0), (1, 0)])
SEG_Y = h([(0, 0), (0, 1)])


def P(n, d):
    return Poly.from_dict(n, d)


def pair():
    return LinearFamilyCoconvex([F.staircase(2), F.staircase(4)])


def test_convex_volume_polynomials():
    cube = h([(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)])
    assert volume_polynomial_convex(LinearFamilyConvex([cube], [(1,)])).poly == P(1, {(3,): 1})
    assert volume_polynomial_convex(LinearFamilyConvex([SEG_X, SEG_Y])).poly == P(2, {(1, 1): 1})
    tri = volume_polynomial_convex(LinearFamilyConvex([TRI, TRI])).poly
    assert tri == P(2, {(2, 0): Fraction(1, 2), (1, 1): 1, (0, 2): Fraction(1, 2)})


def test_coconvex_volume_polynomials():
    assert volume_polynomial_coconvex(pair()).poly == P(2, {(2, 0): 2, (1, 1): 8, (0, 2): 8})
    one = make_body([(1,)], [(5,)], (1,))
    assert volume_polynomial_coconvex(LinearFamilyCoconvex([one])).poly == P(1, {(1,): 5})
    oct3 = LinearFamilyCoconvex([F.staircase(3, d=3)], [(1,)])
    assert volume_polynomial_coconvex(oct3).poly == P(1, {(3,): Fraction(9, 2)})


def test_differentiate_examples():
    assert differentiate(P(2, {(1, 1): 1}), (1, 0)) == P(2, {(0, 1): 1})
    p = P(1, {(3,): 1})
    for _ in range(3):
        p = differentiate(p, (1,))
    assert p == P(1, {(0,): factorial(3)})
    q = differentiate(P(2, {(2, 0): 2, (1, 1): 8, (0, 2): 8}), (1, 1))
    assert q == P(2, {(1, 0): 12, (0, 1): 24})
    with pytest.raises(ContractError):
        differentiate(P(1, {(0,): 3}), (1,))


def test_af_form_examples():
    assert af_form(pair()).matrix == ((2, 4), (4, 8))
    half = Fraction(1, 2)
    assert af_form(LinearFamilyConvex([SEG_X, SEG_Y])).matrix == ((0, half), (half, 0))
    single = af_form(LinearFamilyConvex([TRI]))
    assert single.matrix == ((geo.volume(TRI),),)


def test_marked_count_enforced():
    with pytest.raises(ContractError):
        af_form(LinearFamilyCoconvex([F.staircase(2, d=3)]))
    with pytest.raises(ContractError):
        LinearFamilyCoconvex([F.staircase(2, d=3)], [(0,)])


def test_mixed_volume_examples():
    assert mixed_volume([TRI, TRI]) == geo.volume(TRI)
    assert mixed_volume([SEG_X, SEG_Y]) == Fraction(1, 2)
    assert mixed_volume([SQUARE, SQUARE]) == 1
    # vol(S + T) = 7/2 = vol(S) + 2 MV(S, T) + vol(T)
    assert mixed_volume([SQUARE, TRI]) == 1


def test_inertia_examples():
    assert inertia([[2, 4], [4, 8]]).as_tuple() == (1, 0, 1)
    assert inertia([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).as_tuple() == (3, 0, 0)
    assert inertia([[1, 0], [0, -1]]).as_tuple() == (1, 1, 0)
    assert inertia([[0, 1], [1, 0]]).as_tuple() == (1, 1, 0)
    assert inertia([[0, 0], [0, 0]]).as_tuple() == (0, 0, 2)


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_inertia_congruence_invariant(seed, n):
    rng = random.Random(seed)
    a = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
    sym = [[a[i][j] + a[j][i] for j in range(n)] for i in range(n)]
    # random invertible congruence: unit upper triangular times a nonzero diagonal
    t = [[Fraction(rng.randint(-3, 3)) if j > i else Fraction(int(i == j) * rng.choice([1, 2, -3])) for j in range(n)] for i in range(n)]
    tt = [[t[j][i] for j in range(n)] for i in range(n)]
    mul = lambda x, y: [[sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert inertia(mul(mul(tt, sym), t)) == inertia(sym)


def test_coconvex_af_examples():
    rep = check_theorem_a(pair())
    assert rep.ok and rep.details["inertia"] == (1, 0, 1)
    assert check_theorem_a(LinearFamilyCoconvex([F.staircase(2)])).ok
    rng = random.Random(3)
    for _ in range(3):
        assert check_theorem_a(F.random_coconvex_family(rng, 3, 3), rng).ok


def test_convex_af_examples():
    fam = LinearFamilyConvex([SEG_X, SEG_Y, SQUARE])
    rep = check_af_convex(fam)
    assert rep.ok and rep.details["inertia"][0] == 1
    homothetic = LinearFamilyConvex([TRI, TRI.scale(2)])
    assert inertia(af_form(homothetic)).as_tuple()[:2] == (1, 0)
    rng = random.Random(5)
    assert check_af_convex(F.random_convex_family(rng, 3, 3)).ok
    with pytest.raises(ContractError):
        check_af_convex(LinearFamilyConvex([SEG_X, SEG_Y]))


def test_reversed_inequalities_examples():
    rep = check_reversed_inequalities(pair(), (1, 0), (0, 1))
    assert rep.ok and rep.details["first"] == ("16", "16")
    rep = check_reversed_inequalities(pair(), (2, 3), (2, 3))
    lhs, rhs = rep.details["first"]
    assert lhs == rhs and rep.details["second"][0] == rep.details["second"][1]
    rng = random.Random(11)
    strict = 0
    for _ in range(4):
        fam = F.random_coconvex_family(rng, 3, 2)
        rep = check_reversed_inequalities(fam, (1, 0), (0, 1))
        assert rep.status != "fail"
        lhs, rhs = (Fraction(x) for x in rep.details["first"])
        strict += lhs < rhs
    assert strict > 0
    with pytest.raises(ContractError):
        check_reversed_inequalities(pair(), (0, 0), (1, 1))


def test_cone_orthogonality_examples():
    assert cone_orthogonality(F.staircase(2), t0=4).details["value"] == "0"
    oct_ = F.staircase(3, d=3)
    assert cone_orthogonality(oct_, [F.staircase(1, d=3)]).ok


def test_vq_identities_examples():
    rep = check_identities_vq(pair())
    assert rep.ok and Fraction(rep.details["c"]) > 0
    rng = random.Random(2)
    assert check_identities_vq(F.random_coconvex_family(rng, 3, 2), [2]).ok


def test_root_helpers():
    assert exact_root(Fraction(27, 8), 3) == Fraction(3, 2)
    assert exact_root(Fraction(2), 2) is None
    lo, hi = root_bounds(Fraction(2), 2, 32)
    assert lo * lo <= 2 <= hi * hi and hi - lo < Fraction(1, 2**20)
    # sqrt(8) = 2 sqrt(2) = (1/2) sqrt(2) + (1/2) 3 sqrt(2)... equality through the common root
    assert compare_convex_roots(Fraction(8), Fraction(2), Fraction(18), Fraction(1, 2), 2) == "le"
    assert compare_convex_roots(Fraction(9), Fraction(2), Fraction(3), Fraction(1, 2), 2) == "gt"
    assert compare_convex_roots(Fraction(3), Fraction(2), Fraction(5), Fraction(1, 2), 2) == "le"


# ---------------------------------------------------------------------------


@given(st.integers(0, 10**6))
def test_polarization_consistency_d2(seed):
    fam = F.random_convex_family(random.Random(seed), 2, 3)
    form = af_form(fam)
    for i in range(3):
        for j in range(3):
            assert form.matrix[i][j] == mixed_volume([fam.bodies[i], fam.bodies[j]])


@settings(max_examples=10)
@given(st.integers(0, 10**6))
def test_polarization_consistency_d3(seed):
    rng = random.Random(seed)
    fam = F.random_convex_family(rng, 3, 2)
    form = af_form(fam)
    marked = fam.body(fam.marked[0])
    for i in range(2):
        for j in range(i, 2):
            assert form.matrix[i][j] == mixed_volume([fam.bodies[i], fam.bodies[j], marked])


@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_diagonal_consistency(seed, d):
    rng = random.Random(seed)
    fam = F.random_coconvex_family(rng, d, 2)
    vp = volume_polynomial_coconvex(fam)
    for i, body in enumerate(fam.bodies):
        e = [int(k == i) for k in range(2)]
        assert vp(e) == covolume(body)
    form = af_form(fam, vp)
    u = (Fraction(rng.randint(-5, 5), rng.randint(1, 3)), Fraction(rng.randint(-5, 5), 1))
    assert form.quadratic(u) == form.bilinear(u, u)
    if d == 2:
        assert form.quadratic(u) == vp(u)


@given(st.integers(0, 10**6))
def test_coconvex_af_random_d2(seed):
    rng = random.Random(seed)
    assert check_theorem_a(F.random_coconvex_family(rng, 2, rng.randint(1, 4)), rng).ok


@settings(max_examples=8)
@given(st.integers(0, 10**6))
def test_vq_random(seed):
    rng = random.Random(seed)
    d = rng.choice([2, 3])
    fam = F.random_coconvex_family(rng, d, 2)
    assert check_identities_vq(fam, [rng.randint(1, 3)] * (d - 2), seed).ok
