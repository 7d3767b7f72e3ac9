import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cocovex import families as F
from cocovex import geometry as geo
from cocovex.coconvex import make_body, truncate
from cocovex.ehrhart import count_coconvex
from cocovex.errors import ContractError, InfiniteSupportError, NongenericWeightError
from cocovex.genfun import (
    GenFun,
    HalfOpenSimplicialCone,
    IntegerCone,
    RationalFunction,
    Term,
    brion_convex,
    check_decomposition,
    count_points,
    decompose_cone,
    fundamental_parallelepiped,
    genfun_cone,
    genfun_coconvex,
    genfun_coconvex_truncated,
    genfun_enumeration,
    genfun_equal,
    genfun_simplicial,
    series_oracle,
    specialize,
    tangent_cone,
)

h = geo.convex_hull


def gf(*terms, d=2):
    return GenFun(d, tuple(Term(c, tuple(n), tuple(tuple(b) for b in den)) for c, n, den in terms))


def rf(num, den):
    return RationalFunction(tuple(sorted(num.items())), tuple(sorted(den.items())))


def cone(*gens):
    return IntegerCone(gens, len(gens[0]))


def test_parallelepiped_examples():
    assert fundamental_parallelepiped(HalfOpenSimplicialCone(((1, 0), (0, 1)))) == [(0, 0)]
    c = HalfOpenSimplicialCone(((1, 0), (1, 2)))
    assert sorted(fundamental_parallelepiped(c)) == [(0, 0), (1, 1)]
    # facet {t_1 = 0} (0-based index 1) open: the shift t_1 in (0, 1]
    c1 = HalfOpenSimplicialCone(((1, 0), (1, 2)), {1})
    assert sorted(fundamental_parallelepiped(c1)) == [(1, 1), (1, 2)]
    c0 = HalfOpenSimplicialCone(((1, 0), (1, 2)), {0})
    assert sorted(fundamental_parallelepiped(c0)) == [(1, 0), (1, 1)]


def test_simplicial_genfun_examples():
    assert genfun_equal(genfun_simplicial(HalfOpenSimplicialCone(((1,),))), gf((1, (0,), [(1,)]), d=1))
    quad = gf((1, (0, 0), [(1, 0), (0, 1)]))
    assert genfun_equal(genfun_simplicial(HalfOpenSimplicialCone(((1, 0), (0, 1)))), quad)
    want = gf((1, (0, 0), [(1, 0), (1, 2)]), (1, (1, 1), [(1, 0), (1, 2)]))
    assert genfun_equal(genfun_simplicial(HalfOpenSimplicialCone(((1, 0), (1, 2)))), want)
    assert genfun_equal(genfun_cone(cone((1, 0), (1, 2))), want)
    assert genfun_equal(genfun_cone(cone((1, 0), (0, 1))), quad)


def test_decompose_examples():
    simplicial = decompose_cone(cone((1, 0), (1, 2)))
    assert len(simplicial) == 1 and not simplicial[0].open_facets
    c = cone((1, 0), (1, 1), (0, 1))
    pieces = decompose_cone(c)
    assert len(pieces) == 2 and check_decomposition(c, pieces, radius=6) is None
    sq = cone((1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1))
    pieces = decompose_cone(sq)
    assert len(pieces) == 2 and check_decomposition(sq, pieces) is None


def test_square_cone_inclusion_exclusion():
    sq = cone((1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1))
    s1 = HalfOpenSimplicialCone(((1, 0, 1), (0, 1, 1), (-1, 0, 1)))
    s2 = HalfOpenSimplicialCone(((1, 0, 1), (0, -1, 1), (-1, 0, 1)))
    shared = HalfOpenSimplicialCone(((1, 0, 1), (-1, 0, 1)))
    ie = genfun_simplicial(s1, 3) + genfun_simplicial(s2, 3) - genfun_simplicial(shared, 3)
    assert genfun_equal(genfun_cone(sq), ie)


def test_tangent_cone_examples():
    sq = h([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert set(tangent_cone(sq, (0, 0)).cone.rays) == {(1, 0), (0, 1)}
    a = F.staircase(2)
    assert set(tangent_cone(a.delta, (2, 0)).cone.rays) == {(1, 0), (-1, 1)}
    assert set(tangent_cone(h([(0,), (4,)]), (4,)).cone.rays) == {(-1,)}


def test_brion_examples():
    seg = brion_convex(h([(0,), (2,)]))
    assert genfun_equal(seg, gf((1, (0,), []), (1, (1,), []), (1, (2,), []), d=1))
    assert genfun_equal(seg, gf((1, (0,), [(1,)]), (1, (2,), [(-1,)]), d=1))
    sq = h([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert len(brion_convex(sq).terms) == 4
    assert genfun_equal(brion_convex(sq), GenFun.from_points([(0, 0), (1, 0), (0, 1), (1, 1)], 2))
    assert genfun_equal(brion_convex(h([(2, -1)])), GenFun.monomial((2, -1)))
    with pytest.raises(ContractError):
        brion_convex(h([(0, 0), (Fraction(1, 2), 0), (0, 1)]))


def test_coconvex_examples():
    assert genfun_equal(genfun_coconvex(F.staircase(2)), gf((1, (1, 0), []), (1, (0, 1), [])))
    for k in range(1, 7):
        a = make_body([(1,)], [(k,)], (1,))
        want = GenFun.from_points([(i,) for i in range(1, k)], 1)
        closed = gf((1, (0,), [(1,)]), (-1, (k,), [(1,)]), (-1, (0,), []), d=1)
        assert genfun_equal(genfun_coconvex(a), want) and genfun_equal(want, closed)


def test_rational_base_point_rejected():
    a = make_body([(1, 0), (0, 1)], [(Fraction(3, 2), 0), (0, 2)], (1, 1))
    with pytest.raises(ContractError):
        genfun_coconvex(a)


def test_specialize_examples():
    quad = gf((1, (0, 0), [(1, 0), (0, 1)]))
    assert specialize(quad, (1, 2)) == rf({0: 1}, {1: 1, 2: 1})
    assert specialize(GenFun.from_points([(1, 0), (0, 1)], 2), (1, 3)) == rf({1: 1, 3: 1}, {})
    seg = gf((1, (0,), [(1,)]), (1, (2,), [(-1,)]), d=1)
    assert specialize(seg, (1,)) == rf({0: 1, 1: 1, 2: 1}, {})
    with pytest.raises(NongenericWeightError):
        specialize(quad, (0, 1))


def test_count_examples():
    assert count_points(genfun_coconvex(F.staircase(2))) == 2
    assert count_points(brion_convex(h([(0,), (2,)]))) == 3
    with pytest.raises(InfiniteSupportError):
        count_points(gf((1, (0, 0), [(1, 0), (0, 1)])))


def test_equality_examples():
    sq = h([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert genfun_equal(brion_convex(sq), genfun_enumeration(sq))
    assert genfun_equal(gf((1, (0,), [(1,)]), d=1), gf((1, (0,), []), (1, (1,), [(1,)]), d=1))
    assert not genfun_equal(GenFun.monomial((1, 0)), GenFun.monomial((0, 1)))


def test_series_examples():
    got = series_oracle(cone((1, 0), (0, 1)), (1, 1), 2)
    assert got == {p: 1 for p in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]}
    c = cone((1, 0), (1, 2))
    assert genfun_cone(c).series((2, 1), 9) == series_oracle(c, (2, 1), 9)
    # the slice Delta_5 of staircase(3): each tangent cone against the oracle
    dt, _ = truncate(F.staircase(3), 5)
    for v in dt.vertices:
        tc = tangent_cone(dt, v).cone
        xi = [sum(col) for col in zip(*tc._facet_normals)]
        assert genfun_cone(tc).series(xi, 7) == series_oracle(tc, xi, 7)


# ---------------------------------------------------------------------------


@st.composite
def random_cones(draw):
    rng = random.Random(draw(st.integers(0, 10**6)))
    d = draw(st.sampled_from([2, 3]))
    return F.random_cone(rng, d), rng


def _icone(c):
    return IntegerCone(tuple(c.extreme_rays), c.dim)


@given(random_cones())
def test_decomposition_exact(args):
    c, _ = args
    ic = _icone(c)
    assert check_decomposition(ic, decompose_cone(ic)) is None


@given(random_cones(), st.integers(0, 100))
def test_triangulation_order_independent(args, seed):
    c, rng = args
    ic = _icone(c)
    order = list(range(len(ic.generators)))
    random.Random(seed).shuffle(order)
    assert genfun_equal(genfun_cone(ic), genfun_cone(ic, order=order, seed=seed))


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_brion_random_polytopes(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    p = F.random_polytope(rng, d, rng.randint(1, 8), box=3, full=False, max_vertices=8)
    assert genfun_equal(brion_convex(p), genfun_enumeration(p))


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_coconvex_series_three_routes(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    a = F.random_body(rng, F.random_cone(rng, d), scale=2)
    g = genfun_coconvex(a)
    assert genfun_equal(g, genfun_enumeration(a))
    assert genfun_equal(g, genfun_coconvex_truncated(a))
    assert count_points(g) == count_coconvex(a)
