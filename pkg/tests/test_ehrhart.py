import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cocovex import families as F
from cocovex import geometry as geo
from cocovex.coconvex import Membership, complement_bbox, linear_combination, make_body, membership, scale
from cocovex.ehrhart import (
    EhrhartPoly,
    check_reciprocity,
    count_coconvex,
    ehrhart_interpolate,
    evaluate,
    reciprocity_rhs_chain,
    reciprocity_rhs_n1,
)
from cocovex.errors import ContractError
from cocovex.poly import Poly


def brute_count(a):
    """Membership oracle over the complement's bounding box."""
    lo, hi = complement_bbox(a)
    return sum(1 for x in geo.lattice_points(lambda x: True, lo, hi) if membership(a, x) is Membership.IN_A)


def one(k):
    return make_body([(1,)], [(k,)], (1,))


def test_count_examples():
    assert count_coconvex(F.staircase(2)) == 2
    for k in range(1, 7):
        assert count_coconvex(one(k)) == k - 1
    assert count_coconvex(F.staircase(2, d=3)) == 3


def test_interpolation_examples():
    e = ehrhart_interpolate([F.staircase(2)])
    assert e.poly == Poly.from_dict(1, {(2,): 2, (1,): 1, (0,): -1})
    assert [count_coconvex(scale(F.staircase(2), m)) for m in (1, 2, 3)] == [2, 9, 20]
    for k in (1, 3, 5):
        assert ehrhart_interpolate([one(k)]).poly == Poly.from_dict(1, {(1,): k, (0,): -1})
    pair = ehrhart_interpolate([F.staircase(2), F.staircase(4)])
    s = Poly.from_dict(2, {(1, 0): 1, (0, 1): 2})
    assert pair.poly == (s * s).scale(2) + s - Poly.from_dict(2, {(0, 0): 1})


def test_reciprocity_examples():
    a = F.staircase(2)
    assert reciprocity_rhs_n1(a) == 0 == evaluate(ehrhart_interpolate([a]), (-1,))
    assert reciprocity_rhs_chain([a]) == 0
    for k in range(1, 7):
        assert reciprocity_rhs_n1(one(k)) == -k - 1 == ehrhart_interpolate([one(k)]).evaluate((-1,))
    assert reciprocity_rhs_chain([one(2)]) == -3
    pair = [F.staircase(2), F.staircase(4)]
    assert reciprocity_rhs_chain(pair) == 14 == ehrhart_interpolate(pair).evaluate((-1, -1))
    r = check_reciprocity([F.staircase(3, d=3)])
    assert r.ok and r.rhs_direct == r.rhs_chain == r.e_minus_one


def test_evaluate_examples():
    e = ehrhart_interpolate([F.staircase(2)])
    assert evaluate(e, (-1,)) == 0 and evaluate(e, (1,)) == 2
    assert EhrhartPoly(Poly.zero(1), 2).evaluate((5,)) == 0
    with pytest.raises(ContractError):
        e.evaluate((1, 1))


def test_rational_family_rejected():
    a = make_body([(1, 0), (0, 1)], [(Fraction(3, 2), 0), (0, 2)], (1, 1))
    with pytest.raises(ContractError):
        ehrhart_interpolate([a])


# ---------------------------------------------------------------------------


@given(st.integers(0, 10**6), st.integers(1, 3))
def test_count_matches_membership_oracle(seed, d):
    rng = random.Random(seed)
    a = F.random_body(rng, F.random_cone(rng, d), scale=2)
    assert count_coconvex(a) == brute_count(a)


@settings(max_examples=10)
@given(st.integers(0, 10**6), st.sampled_from([(1, 1), (2, 1), (2, 2), (3, 1)]))
def test_interpolation_consistency_and_degree(seed, dn):
    d, n = dn
    rng = random.Random(seed)
    cone = F.random_cone(rng, d)
    bodies = [F.random_body(rng, cone, scale=2) for _ in range(n)]
    e = ehrhart_interpolate(bodies, seed)
    assert e.poly.degree <= d
    for _ in range(2):
        m = tuple(rng.randint(1, 3) for _ in range(n))
        assert e.evaluate(m) == brute_count(linear_combination(bodies, m))


@settings(max_examples=10)
@given(st.integers(0, 10**6), st.sampled_from([(1, 1), (2, 1), (3, 1), (1, 2), (2, 2)]))
def test_reciprocity_random(seed, dn):
    d, n = dn
    rng = random.Random(seed)
    cone = F.random_cone(rng, d)
    bodies = [F.random_body(rng, cone, scale=2) for _ in range(n)]
    r = check_reciprocity(bodies, seed=seed)
    assert r.ok, r


@settings(max_examples=10)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_scaling_coherence(seed, m):
    rng = random.Random(seed)
    a = F.random_body(rng, F.random_cone(rng, 2), scale=2)
    e = ehrhart_interpolate([a])
    assert e.evaluate((m,)) == ehrhart_interpolate([scale(a, m)]).evaluate((1,))
