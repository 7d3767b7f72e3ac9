"""Sparse multivariate polynomials with rational coefficients, plus exact interpolation."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import InvariantViolation
from .linalg import frac, solve

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class Poly:
    nvars: int
    coeffs: tuple[tuple[Exponent, Fraction], ...]

    @classmethod
    def from_dict(cls, nvars: int, d: dict) -> "Poly":
        items = tuple(sorted((tuple(e), frac(c)) for e, c in d.items() if c != 0))
        return cls(nvars, items)

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, ())

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Poly":
        return cls.from_dict(nvars, {tuple(int(j == i) for j in range(nvars)): 1})

    def as_dict(self) -> dict[Exponent, Fraction]:
        return dict(self.coeffs)

    def coeff(self, e: Sequence[int]) -> Fraction:
        return self.as_dict().get(tuple(e), Fraction(0))

    @property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.coeffs), default=-1)

    def is_homogeneous(self, k: int | None = None) -> bool:
        degs = {sum(e) for e, _ in self.coeffs}
        return len(degs) <= 1 and (k is None or not degs or degs == {k})

    def __call__(self, x: Sequence) -> Fraction:
        x = [frac(v) for v in x]
        total = Fraction(0)
        for e, c in self.coeffs:
            term = c
            for xi, k in zip(x, e):
                if k:
                    term *= xi**k
            total += term
        return total

    def __add__(self, other: "Poly") -> "Poly":
        d = self.as_dict()
        for e, c in other.coeffs:
            d[e] = d.get(e, 0) + c
        return Poly.from_dict(self.nvars, d)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, tuple((e, -c) for e, c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, k) -> "Poly":
        k = frac(k)
        return Poly.from_dict(self.nvars, {e: k * c for e, c in self.coeffs})

    def __mul__(self, other: "Poly") -> "Poly":
        d: dict = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return Poly.from_dict(self.nvars, d)

    def partial(self, i: int) -> "Poly":
        d: dict = {}
        for e, c in self.coeffs:
            if e[i]:
                f = list(e)
                f[i] -= 1
                d[tuple(f)] = d.get(tuple(f), 0) + c * e[i]
        return Poly.from_dict(self.nvars, d)

    def differentiate(self, v: Sequence) -> "Poly":
        """Directional derivative ``L_v``."""
        out = Poly.zero(self.nvars)
        for i, vi in enumerate(v):
            vi = frac(vi)
            if vi:
                out = out + self.partial(i).scale(vi)
        return out

    def constant(self) -> Fraction:
        if self.degree > 0:
            raise ValueError("polynomial is not constant")
        return self.coeff((0,) * self.nvars)

    def substitute_linear(self, m: Sequence[Sequence]) -> "Poly":
        """``p(M y)`` where ``M`` is ``nvars x k``."""
        k = len(m[0])
        lin = [
            Poly.from_dict(k, {tuple(int(j == c) for j in range(k)): m[r][c] for c in range(k)})
            for r in range(self.nvars)
        ]
        out = Poly.zero(k)
        for e, c in self.coeffs:
            term = Poly.from_dict(k, {(0,) * k: c})
            for r, power in enumerate(e):
                for _ in range(power):
                    term = term * lin[r]
            out = out + term
        return out

    def quadratic_matrix(self) -> list[list[Fraction]]:
        """Symmetric matrix ``M`` with ``p(x) = x^T M x`` for a quadratic form."""
        n = self.nvars
        m = [[Fraction(0)] * n for _ in range(n)]
        for e, c in self.coeffs:
            idx = [i for i, k in enumerate(e) for _ in range(k)]
            if len(idx) != 2:
                raise ValueError("not a quadratic form")
            i, j = idx
            if i == j:
                m[i][i] += c
            else:
                m[i][j] += c / 2
                m[j][i] += c / 2
        return m

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.coeffs:
            mon = "*".join(
                f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            parts.append(f"{c}" + (f"*{mon}" if mon else ""))
        return " + ".join(parts)


def monomials(nvars: int, degree: int, homogeneous: bool = True) -> list[Exponent]:
    degs = [degree] if homogeneous else range(degree + 1)
    out = []
    for k in degs:
        for e in itertools.product(range(k + 1), repeat=nvars):
            if sum(e) == k:
                out.append(e)
    return sorted(out)


def simplex_lattice(nvars: int, degree: int, shift: Sequence[int], homogeneous: bool = True) -> list[tuple[int, ...]]:
    """``{mu + shift : |mu| = degree}`` (or ``<= degree``), mu a nonnegative integer vector.

    These are unisolvent for homogeneous degree-``degree`` polynomials (resp.
    all polynomials of degree ``<= degree``) whenever the shift keeps the
    points off a hyperplane through the origin.
    """
    return [tuple(a + s for a, s in zip(e, shift)) for e in monomials(nvars, degree, homogeneous)]


def interpolate(
    f: Callable[[tuple[int, ...]], Fraction],
    nvars: int,
    degree: int,
    points: Sequence[Sequence],
    homogeneous: bool = True,
    check_points: Iterable[Sequence] = (),
) -> Poly:
    """Exact interpolation of ``f`` on ``points``, verified on ``check_points``."""
    mons = monomials(nvars, degree, homogeneous)
    if len(points) != len(mons):
        raise ValueError("interpolation grid size does not match monomial count")
    rows = []
    for p in points:
        row = []
        for e in mons:
            v = Fraction(1)
            for x, k in zip(p, e):
                v *= frac(x) ** k
            row.append(v)
        rows.append(row)
    vals = [frac(f(tuple(p))) for p in points]
    sol = solve(rows, vals)
    poly = Poly.from_dict(nvars, dict(zip(mons, sol)))
    for p in check_points:
        got, want = poly(p), frac(f(tuple(p)))
        if got != want:
            raise InvariantViolation(f"interpolant mismatch at {tuple(p)}: {got} != {want}")
    return poly
