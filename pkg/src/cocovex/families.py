"""Seeded random cones, bodies, polytopes and families for the randomized suites."""

from __future__ import annotations

import random
from typing import Sequence

from . import geometry as geo
from .coconvex import Cone, CoconvexBody, make_body
from .linalg import primitive
from .mixed import LinearFamilyCoconvex, LinearFamilyConvex

CONES = {
    1: [((1,),)],
    2: [
        ((1, 0), (0, 1)),
        ((1, 0), (1, 2)),
        ((1, 0), (-1, 2)),
        ((2, 1), (1, 3)),
    ],
    3: [
        ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
        ((1, 0, 0), (0, 1, 0), (1, 1, 2)),
        ((1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)),
    ],
}


def default_xi(cone: Cone) -> tuple[int, ...]:
    """Sum of the primitive facet normals; positive on every nonzero point of the cone."""
    normals = [primitive(h.normal) for h in cone.facets]
    return primitive([sum(c) for c in zip(*normals)])


def random_cone(rng: random.Random, d: int, orthant_only: bool = False) -> Cone:
    gens = CONES[d][0] if orthant_only else rng.choice(CONES[d])
    return Cone(gens)


def random_body(rng: random.Random, cone: Cone, extra: int = 2, scale: int = 3) -> CoconvexBody:
    """One base point ``k g`` per extreme ray plus up to ``extra`` random lattice points of the cone."""
    rays = cone.extreme_rays
    pts = []
    for g in rays:
        k = rng.randint(1, scale)
        pts.append(tuple(k * c for c in g))
    for _ in range(rng.randint(0, extra)):
        coeffs = [rng.randint(0, 2) for _ in rays]
        if not any(coeffs):
            coeffs[0] = 1
        pts.append(tuple(sum(k * g[i] for k, g in zip(coeffs, rays)) for i in range(cone.dim)))
    return make_body(cone, pts, default_xi(cone))


def random_marked(rng: random.Random, n: int, d: int) -> list[tuple[int, ...]]:
    return [tuple(rng.randint(1, 3) for _ in range(n)) for _ in range(d - 2)]


def random_coconvex_family(rng: random.Random, d: int, n: int, orthant_only: bool = False) -> LinearFamilyCoconvex:
    cone = random_cone(rng, d, orthant_only)
    bodies = [random_body(rng, cone) for _ in range(n)]
    return LinearFamilyCoconvex(bodies, random_marked(rng, n, d))


def random_body_pair(rng: random.Random, d: int) -> tuple[CoconvexBody, CoconvexBody]:
    cone = random_cone(rng, d)
    return random_body(rng, cone), random_body(rng, cone)


def random_polytope(
    rng: random.Random, d: int, npts: int = 5, box: int = 3, full: bool = False, max_vertices: int | None = None
) -> geo.Polytope:
    while True:
        pts = [tuple(rng.randint(0, box) for _ in range(d)) for _ in range(npts)]
        p = geo.convex_hull(pts)
        if full and not p.has_interior:
            continue
        if max_vertices is not None and len(p.vertices) > max_vertices:
            continue
        return p


def random_convex_family(rng: random.Random, d: int, n: int) -> LinearFamilyConvex:
    bodies = [random_polytope(rng, d, rng.randint(d + 1, d + 3), full=(i == 0)) for i in range(n)]
    return LinearFamilyConvex(bodies, random_marked(rng, n, d))


def staircase(k: int, d: int = 2) -> CoconvexBody:
    """Orthant with ``Delta = {x_1 + ... + x_d >= k}``."""
    gens = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    return make_body(gens, [tuple(k * c for c in g) for g in gens], (1,) * d)


def shared_cone(bodies: Sequence[CoconvexBody]) -> bool:
    return all(b.cone == bodies[0].cone for b in bodies)
