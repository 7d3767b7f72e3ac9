import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cocovex import families as F
from cocovex import geometry as geo
from cocovex.coconvex import (
    Membership,
    closure_membership,
    complement_bbox,
    covolume,
    interior_cone_membership,
    make_body,
    membership,
    oplus,
    scale,
    truncate,
)
from cocovex.errors import BodyValidationError, ContractError, UnboundedComplementError

from strategies import cone_bodies, pos_rational, staircase_bodies

QUADRANT = [(1, 0), (0, 1)]


def test_staircase_covolume_is_two():
    assert covolume(make_body(QUADRANT, [(2, 0), (0, 2)], (1, 1))) == 2


@pytest.mark.parametrize("k", range(1, 7))
def test_one_dimensional_length(k):
    a = make_body([(1,)], [(k,)], (1,))
    assert covolume(a) == k
    dt, ct = truncate(a, k + 3)
    assert dt == geo.convex_hull([(k,), (k + 3,)])


def test_unbounded_complement_rejected():
    with pytest.raises(UnboundedComplementError):
        make_body(QUADRANT, [(1, 1)], (1, 1))


def test_origin_in_delta_rejected():
    with pytest.raises(BodyValidationError):
        make_body(QUADRANT, [(0, 0)], (1, 1))


def test_base_point_outside_cone_rejected():
    with pytest.raises(BodyValidationError):
        make_body(QUADRANT, [(-1, 3), (3, 0)], (1, 1))


def test_truncation_examples():
    a = F.staircase(2)
    dt, ct = truncate(a, 4)
    assert ct == geo.convex_hull([(0, 0), (4, 0), (0, 4)])
    assert dt == geo.convex_hull([(2, 0), (0, 2), (4, 0), (0, 4)])
    with pytest.raises(ContractError):
        truncate(a, Fraction(1, 2))


def test_octant_covolume():
    assert covolume(F.staircase(3, d=3)) == Fraction(9, 2)


def test_oplus_staircases():
    c = oplus(F.staircase(2), F.staircase(4))
    assert set(c.base_points) == {(6, 0), (0, 6)}
    assert covolume(c) == 18


def test_oplus_with_itself_is_doubling():
    a = make_body(QUADRANT, [(3, 0), (1, 1), (0, 3)], (1, 1))
    assert set(oplus(a, scale(a, 1)).base_points) == set(scale(a, 2).base_points)


def test_oplus_one_dimensional():
    a = make_body([(1,)], [(2,)], (1,))
    b = make_body([(1,)], [(5,)], (1,))
    assert covolume(oplus(a, b)) == 7


def test_scale_examples():
    a = F.staircase(1)
    assert covolume(scale(a, 2)) == 4 * covolume(a)
    assert scale(a, 1).base_points == a.base_points
    b = F.staircase(1, d=3)
    assert covolume(scale(b, 3)) == 27 * covolume(b)


def test_membership_examples():
    a = F.staircase(2)
    assert membership(a, (1, 1)) is Membership.IN_DELTA
    assert membership(a, (1, 0)) is Membership.IN_A
    assert membership(a, (0, 0)) is Membership.ORIGIN
    assert membership(a, (-1, 0)) is Membership.OUTSIDE_C
    assert closure_membership(a, (1, 1))
    assert not interior_cone_membership(a, (0, 1))
    assert interior_cone_membership(a, (1, 1))


@given(cone_bodies(2), st.integers(0, 10**6))
def test_lemma_base_point_plus_cone_in_delta(a, seed):
    rng = random.Random(seed)
    for p in a.base_points:
        ks = [rng.randint(0, 5) for _ in a.cone.extreme_rays]
        combo = [sum(k * g[i] for k, g in zip(ks, a.cone.extreme_rays)) for i in range(a.dim)]
        assert a.delta.contains(tuple(p[i] + combo[i] for i in range(a.dim)))


@given(cone_bodies(2), pos_rational, pos_rational)
def test_truncation_slide(a, dt_extra, s):
    t = a.tstar + dt_extra
    d_t, _ = truncate(a, t)
    # C_s for any s > 0 is a dilate of C_tstar
    c_s = truncate(a, a.tstar)[1].scale(s / a.tstar)
    assert geo.minkowski_sum(d_t, c_s) == truncate(a, t + s)[0]


@given(cone_bodies(2))
def test_covolume_independent_of_level(a):
    vols = []
    for t in (a.tstar, 2 * a.tstar, 3 * a.tstar + 1):
        dt, ct = truncate(a, t)
        vols.append(geo.volume(ct) - geo.volume(dt))
    assert len(set(vols)) == 1


@given(cone_bodies(2), st.integers(0, 10**6))
def test_oplus_commutative_associative(a, seed):
    rng = random.Random(seed)
    b = F.random_body(rng, a.cone)
    c = F.random_body(rng, a.cone)
    assert set(oplus(a, b).base_points) == set(oplus(b, a).base_points)
    assert set(oplus(oplus(a, b), c).base_points) == set(oplus(a, oplus(b, c)).base_points)


@given(staircase_bodies(3, max_k=3), pos_rational)
def test_covolume_homogeneous(a, lam):
    assert covolume(scale(a, lam)) == lam**3 * covolume(a)


@given(cone_bodies(2))
def test_membership_partition(a):
    lo, hi = complement_bbox(a)
    classes = {m: 0 for m in Membership}
    for x in geo.lattice_points(lambda x: True, lo, hi):
        m = membership(a, x)
        assert isinstance(m, Membership)
        classes[m] += 1
        in_c = a.cone.contains(x)
        assert (m is Membership.OUTSIDE_C) == (not in_c)
        if m is Membership.IN_A:
            assert not a.delta.contains(x) and any(x)
    assert classes[Membership.ORIGIN] == 1


@given(cone_bodies(3))
def test_three_dimensional_bodies_validate(a):
    assert covolume(a) > 0
