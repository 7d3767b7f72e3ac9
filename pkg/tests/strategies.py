"""Hypothesis strategies for small exact inputs."""

from fractions import Fraction

from hypothesis import strategies as st

from cocovex import families as F
from cocovex.coconvex import make_body

small_int = st.integers(min_value=-4, max_value=4)
pos_rational = st.builds(Fraction, st.integers(1, 6), st.integers(1, 3))


def points(d, lo=-4, hi=4, min_size=1, max_size=8):
    return st.lists(st.tuples(*[st.integers(lo, hi)] * d), min_size=min_size, max_size=max_size)


@st.composite
def full_points(draw, d, max_size=8):
    """Point sets containing a simplex, so the hull is full dimensional."""
    pts = draw(points(d, max_size=max_size))
    base = [(0,) * d] + [tuple(2 * int(i == j) for j in range(d)) for i in range(d)]
    return base + pts


@st.composite
def staircase_bodies(draw, d=2, max_k=5):
    """Random integer coconvex bodies over the orthant."""
    k = draw(st.integers(1, max_k))
    gens = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    pts = [tuple(draw(st.integers(1, max_k)) * c for c in g) for g in gens]
    extra = draw(st.lists(st.tuples(*[st.integers(0, k)] * d), max_size=2))
    pts += [p for p in extra if any(p)]
    return make_body(gens, pts, (1,) * d)


@st.composite
def cone_bodies(draw, d=2):
    """Bodies over one of the fixed test cones, drawn from a seeded rng."""
    import random

    seed = draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    cone = F.random_cone(rng, d)
    return F.random_body(rng, cone)
