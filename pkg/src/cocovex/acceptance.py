"""The ten acceptance criteria, shared by the test suite and ``cocovex suite``.

Every criterion draws its randomness from ``random.Random(f"{seed}:{number}")``
so criteria are reproducible one at a time.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from . import families as F
from .chains import verify_inverse_formula, verify_theoremB
from .coconvex import covolume, make_body
from .ehrhart import count_coconvex, ehrhart_interpolate, reciprocity_rhs_chain, reciprocity_rhs_n1
from .genfun import (
    GenFun,
    brion_convex,
    decompose_cone,
    genfun_coconvex,
    genfun_coconvex_truncated,
    genfun_enumeration,
    genfun_equal,
    genfun_simplicial,
    series_oracle,
    tangent_cone,
)
from .linalg import primitive
from .mixed import (
    LinearFamilyCoconvex,
    check_af_convex,
    check_identities_vq,
    check_reversed_inequalities,
    check_theorem_a,
    cone_orthogonality,
    volume_polynomial_coconvex,
)
from .poly import Poly
from . import polygon2d as P2


@dataclass
class CriterionResult:
    number: int
    title: str
    status: str = "pass"
    detail: str = ""
    seconds: float = 0.0
    budget: float | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def line(self) -> str:
        budget = f" budget={self.budget:g}s" if self.budget else ""
        return (
            f"criterion {self.number:2d} {self.status.upper():12s} {self.title}: "
            f"{self.detail} [{self.seconds:.2f}s{budget}]"
        )


class _Fail(Exception):
    pass


def _require(cond: bool, msg: str):
    if not cond:
        raise _Fail(msg)


def _rng(seed: int, n: int) -> random.Random:
    return random.Random(f"{seed}:{n}")


# ---------------------------------------------------------------------------


def criterion_1(seed: int) -> str:
    a = F.staircase(2)
    _require(covolume(a) == 2, f"covolume {covolume(a)} != 2")
    _require(count_coconvex(a) == 2, "lattice count != 2")
    target = GenFun.from_points([(1, 0), (0, 1)], 2)
    routes = {
        "vertex formula": genfun_coconvex(a, seed),
        "truncation": genfun_coconvex_truncated(a, seed=seed),
        "enumeration": genfun_enumeration(a),
    }
    for name, g in routes.items():
        _require(genfun_equal(g, target, seed), f"G(A) via {name} differs from x+y")
    e = ehrhart_interpolate([a], seed)
    want = Poly.from_dict(1, {(2,): 2, (1,): 1, (0,): -1})
    _require(e.poly == want, f"E(m) = {e} != 2m^2+m-1")
    em1 = e.evaluate((-1,))
    rhs = reciprocity_rhs_n1(a)
    _require(em1 == 0 == rhs == (-1) ** 2 * 1 - 1, f"E(-1)={em1}, rhs={rhs}")
    _require(reciprocity_rhs_chain([a]) == 0, "chain route disagrees")
    return "covolume=2 count=2 G(A)=x+y (3 routes) E(m)=2m^2+m-1 E(-1)=0=rhs"


def criterion_2(seed: int) -> str:
    for k in range(1, 7):
        a = make_body([(1,)], [(k,)], (1,))
        _require(covolume(a) == k, f"k={k}: covolume {covolume(a)}")
        target = GenFun.from_points([(i,) for i in range(1, k)], 1)
        _require(genfun_equal(genfun_coconvex(a, seed), target, seed), f"k={k}: vertex formula")
        _require(genfun_equal(genfun_enumeration(a), target, seed), f"k={k}: enumeration")
        e = ehrhart_interpolate([a], seed).evaluate((-1,))
        rhs, chain = reciprocity_rhs_n1(a), reciprocity_rhs_chain([a])
        _require(e == rhs == chain == -k - 1, f"k={k}: E(-1)={e} rhs={rhs} chain={chain}")
    return "k=1..6: covolume=k, G(A)=x+..+x^(k-1), E(-1)=-k-1=rhs"


@lru_cache(maxsize=4)
def coconvex_af_families(seed: int) -> tuple[LinearFamilyCoconvex, ...]:
    rng = _rng(seed, 3)
    out = []
    for d in (2, 3):
        for _ in range(20):
            out.append(F.random_coconvex_family(rng, d, rng.randint(1, 4)))
    return tuple(out)


def criterion_3(seed: int) -> str:
    rng = _rng(seed, 103)
    fams = coconvex_af_families(seed)
    worst = 0
    for i, fam in enumerate(fams):
        rep = check_theorem_a(fam, rng, pairs=10)
        _require(rep.ok, f"family {i}: {rep.details} witness={rep.witness}")
        worst = max(worst, rep.details["inertia"][1])
    return f"{len(fams)} families (20 per d in {{2,3}}), max negative squares={worst}, 10 CS pairs each"


def criterion_4(seed: int) -> str:
    rng = _rng(seed, 4)
    count = 0
    for d in (2, 3):
        for i in range(20):
            fam = F.random_convex_family(rng, d, rng.randint(2, 4))
            rep = check_af_convex(fam)
            _require(rep.ok, f"d={d} family {i}: inertia {rep.details['inertia']}")
            count += 1
    return f"{count} convex families, every inertia has exactly one positive square"


def criterion_5(seed: int) -> str:
    rng = _rng(seed, 5)
    for i in range(10):
        d = 2 + i % 2
        fam = F.random_coconvex_family(rng, d, rng.randint(1, 3))
        s = [rng.randint(1, 3) for _ in range(d - 2)]
        rep = check_identities_vq(fam, s, seed)
        _require(rep.ok, f"family {i}: {rep.details} witness={rep.witness}")
    return "10 families: Vol_alpha = c t^d - Vol_beta and Q_alpha = c' t^2 - Q_beta exactly, c, c' > 0"


def criterion_6(seed: int) -> str:
    rng = _rng(seed, 6)
    pts = 0
    for i in range(10):
        d = 1 + i % 3
        a, b = F.random_body_pair(rng, d)
        rep = verify_theoremB(a, b)
        _require(rep.ok, f"pair {i} (d={d}): {rep.details} witness={rep.witness}")
        pts += rep.details.get("points", 0)
        for body in (a, b):
            inv = verify_inverse_formula(body)
            _require(inv.ok, f"pair {i} (d={d}) inverse: {inv.details} witness={inv.witness}")
            pts += inv.details.get("points", 0)
    return f"10 pairs in d=1,2,3; {pts} point evaluations, all identities exact"


def _cone_xi(cone) -> tuple[int, ...]:
    return primitive([sum(c) for c in zip(*cone._facet_normals)])


def criterion_7(seed: int) -> str:
    rng = _rng(seed, 7)
    pieces = 0
    for i in range(10):
        d = 1 + i % 3
        p = F.random_polytope(rng, d, rng.randint(d + 1, 8), box=3, full=True, max_vertices=8)
        _require(genfun_equal(brion_convex(p, seed), genfun_enumeration(p), seed), f"polytope {i}: Brion sum")
        for v in p.vertices:
            cone = tangent_cone(p, v).cone
            xi = _cone_xi(cone)
            total: dict = {}
            for piece in decompose_cone(cone, seed=seed):
                got = genfun_simplicial(piece, d).series(xi, 6)
                _require(got == series_oracle(piece, xi, 6), f"polytope {i} vertex {v}: piece series")
                for k, c in got.items():
                    total[k] = total.get(k, 0) + c
                pieces += 1
            total = {k: c for k, c in total.items() if c}
            _require(total == series_oracle(cone, xi, 6), f"polytope {i} vertex {v}: cone series")
    return f"10 polytopes: Brion = enumeration; {pieces} half-open pieces match the series oracle to cap 6"


def criterion_8(seed: int) -> str:
    rng = _rng(seed, 8)
    for i in range(10):
        fam = P2.random_wedge_family(rng, 1 + i % 5)
        rep = P2.verify_sos(fam, seed)
        _require(rep.ok, f"family {i}: {rep.details} witness={rep.witness}")
        for _ in range(10):
            h, h2 = P2.random_support(fam, rng), P2.random_support(fam, rng)
            r = P2.reversed_af_d2(fam, h, h2)
            _require(r.ok, f"family {i}: {r.details}")
        r = P2.reversed_af_d2(fam, h, tuple(3 * c for c in h))
        _require(r.ok and r.details["lhs"] == r.details["rhs"], f"family {i}: proportional pair not equal")
    return "10 wedge families (n<=5): SOS identity exact, inertia (n,0,0), reversed AF with exact equality case"


def criterion_9(seed: int) -> str:
    rng = _rng(seed, 9)
    bm = {"le": 0, "undecided": 0}
    for i, fam in enumerate(coconvex_af_families(seed)):
        n = len(fam.bodies)
        vp = volume_polynomial_coconvex(fam, seed)
        u = tuple(Fraction(rng.randint(1, 9), rng.randint(1, 3)) for _ in range(n))
        v = tuple(Fraction(rng.randint(1, 9), rng.randint(1, 3)) for _ in range(n))
        rep = check_reversed_inequalities(fam, u, v, vp)
        _require(rep.status != "fail", f"family {i}: {rep.details} witness={rep.witness}")
        for verdict in rep.details["brunnMinkowski"].values():
            bm[verdict] += 1
    pair = LinearFamilyCoconvex([F.staircase(2), F.staircase(4)], [])
    rep = check_reversed_inequalities(pair, (1, 0), (0, 1))
    lhs, rhs = rep.details["first"]
    _require(rep.status != "fail" and lhs == rhs == "16", f"staircase pair: {lhs} vs {rhs}")
    return (
        f"first and second reversed Minkowski hold on {len(coconvex_af_families(seed))} families; "
        f"staircase pair equality 16 = 16; Brunn-Minkowski decided {bm['le']}, undecided {bm['undecided']}"
    )


def criterion_10(seed: int) -> str:
    rng = _rng(seed, 10)
    for i in range(10):
        d = 2 + i % 2
        cone = F.random_cone(rng, d)
        a = F.random_body(rng, cone)
        partners = [F.random_body(rng, cone) for _ in range(d - 2)]
        rep = cone_orthogonality(a, partners)
        _require(rep.ok, f"body {i}: value {rep.details['value']}")
    return "10 bodies in d=2,3: MV(C_t, Delta_t, ...) - MV(C_t, C_t, ...) = 0 exactly"


CRITERIA: dict[int, tuple[str, Callable[[int], str], float | None]] = {
    1: ("quadrant staircase", criterion_1, 1.0),
    2: ("1D toy model", criterion_2, 1.0),
    3: ("non-negativity of the coconvex AF form", criterion_3, 60.0),
    4: ("convex AF signature", criterion_4, 60.0),
    5: ("truncation identities", criterion_5, None),
    6: ("chain identities pointwise", criterion_6, 120.0),
    7: ("Brion identity and half-open pieces", criterion_7, None),
    8: ("d=2 sum of squares", criterion_8, None),
    9: ("reversed Minkowski suite", criterion_9, None),
    10: ("cone orthogonality", criterion_10, None),
}


def run_criterion(number: int, seed: int = 0, enforce_budget: bool = True) -> CriterionResult:
    title, fn, budget = CRITERIA[number]
    res = CriterionResult(number, title, budget=budget)
    start = time.perf_counter()
    try:
        res.detail = fn(seed)
    except _Fail as e:
        res.status, res.detail = "fail", str(e)
    res.seconds = time.perf_counter() - start
    if res.ok and enforce_budget and budget is not None and res.seconds > budget:
        res.status = "fail"
        res.detail += f" (over the {budget:g}s budget)"
    return res


def run_suite(seed: int = 0, only=None, enforce_budget: bool = True, jobs: int = 1) -> list[CriterionResult]:
    """Run the selected criteria; results come back in criterion order whatever ``jobs`` is."""
    numbers = sorted(only or CRITERIA)
    if jobs <= 1:
        return [run_criterion(n, seed, enforce_budget) for n in numbers]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(run_criterion, n, seed, enforce_budget) for n in numbers]
        return [f.result() for f in futures]
