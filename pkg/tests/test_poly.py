from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cocovex.errors import InvariantViolation
from cocovex.poly import Poly, interpolate, monomials, simplex_lattice


def test_monomial_counts():
    assert len(monomials(2, 2)) == 3
    assert len(monomials(3, 3)) == 10
    assert len(monomials(2, 2, homogeneous=False)) == 6


def test_interpolate_homogeneous():
    f = lambda x: (2 * x[0] + 3 * x[1]) ** 2
    p = interpolate(f, 2, 2, simplex_lattice(2, 2, (1, 1)))
    assert p == Poly.from_dict(2, {(2, 0): 4, (1, 1): 12, (0, 2): 9})


def test_interpolate_detects_wrong_degree():
    f = lambda x: x[0] ** 3
    with pytest.raises(InvariantViolation):
        interpolate(f, 1, 2, simplex_lattice(1, 2, (1,)), check_points=[(5,)])


def test_directional_derivative():
    p = Poly.from_dict(2, {(2, 0): 2, (1, 1): 8, (0, 2): 8})
    assert p.differentiate((1, 1)) == Poly.from_dict(2, {(1, 0): 12, (0, 1): 24})


def test_quadratic_matrix():
    p = Poly.from_dict(2, {(2, 0): 2, (1, 1): 8, (0, 2): 8})
    assert p.quadratic_matrix() == [[2, 4], [4, 8]]


coeffs = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-5, 5).map(Fraction), max_size=6
)


@given(coeffs, coeffs, st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
def test_ring_operations_evaluate_pointwise(a, b, x):
    p, q = Poly.from_dict(2, a), Poly.from_dict(2, b)
    assert (p + q)(x) == p(x) + q(x)
    assert (p * q)(x) == p(x) * q(x)
    assert (p - q)(x) == p(x) - q(x)


@given(coeffs, st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_substitute_linear(a, r0, r1):
    p = Poly.from_dict(2, a)
    m = [r0, r1]  # x_i -> sum_j m[i][j] y_j
    q = p.substitute_linear(m)
    y = (2, -1)
    x = tuple(sum(m[i][j] * y[j] for j in range(2)) for i in range(2))
    assert q(y) == p(x)
