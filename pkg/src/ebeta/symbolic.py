"""Subshifts X_A, X_B over {0, 1, B}, word counts and the dimension formulas."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction

from .core import Beta, DIGITS, gamma


class Digit(IntEnum):
    D0 = 0
    D1 = 1
    DB = 2

    @property
    def char(self) -> str:
        return DIGITS[self]

    @classmethod
    def from_char(cls, ch: str) -> Digit:
        return cls(DIGITS.index(ch))


class NoRootInBracket(ArithmeticError):
    pass


@dataclass(frozen=True)
class TransitionMatrix:
    """0/1 matrix indexed by (D0, D1, DB)."""

    rows: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if len(self.rows) != 3 or any(len(r) != 3 for r in self.rows):
            raise ValueError("transition matrix must be 3x3")
        if any(v not in (0, 1) for r in self.rows for v in r):
            raise ValueError("transition matrix entries must be 0 or 1")

    def entry(self, a: Digit | str, b: Digit | str) -> int:
        i = a if isinstance(a, int) else Digit.from_char(a)
        j = b if isinstance(b, int) else Digit.from_char(b)
        return self.rows[i][j]

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.rows)


def matrix_A() -> TransitionMatrix:
    """Only the block 0(beta+1) is forbidden."""
    return TransitionMatrix(((1, 1, 0), (1, 1, 1), (1, 1, 1)))


def matrix_B() -> TransitionMatrix:
    """Blocks 11 and 0(beta+1) are forbidden."""
    return TransitionMatrix(((1, 1, 0), (1, 0, 1), (1, 1, 1)))


def admissible(w: str, m: TransitionMatrix) -> bool:
    return all(m.entry(a, b) == 1 for a, b in zip(w, w[1:]))


def _matmul(x, y):
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def matrix_power(m: TransitionMatrix, n: int) -> tuple[tuple[int, ...], ...]:
    if n < 0:
        raise ValueError("n must be >= 0")
    result = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    base = m.rows
    while n:
        if n & 1:
            result = _matmul(result, base)
        base = _matmul(base, base)
        n >>= 1
    return result


def count_words(m: TransitionMatrix, n: int) -> int:
    """Number of admissible words of length n: the entry sum of m**(n-1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return sum(sum(r) for r in matrix_power(m, n - 1))


def admissible_words(m: TransitionMatrix, n: int) -> list[str]:
    return ["".join(w) for w in itertools.product(DIGITS, repeat=n) if admissible("".join(w), m)]


@dataclass(frozen=True)
class CubicPoly:
    """Monic cubic x^3 + c2 x^2 + c1 x + c0, coefficients stored leading first."""

    coeffs: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.coeffs) != 4 or self.coeffs[0] != 1:
            raise ValueError("CubicPoly must be monic of degree 3")

    def __call__(self, x):
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def derivative_at(self, x):
        _, c2, c1, _ = self.coeffs
        return 3 * x * x + 2 * c2 * x + c1

    def discriminant(self) -> int:
        a, b, c, d = self.coeffs
        return 18 * a * b * c * d - 4 * b**3 * d + b * b * c * c - 4 * a * c**3 - 27 * a * a * d * d

    def __str__(self) -> str:
        terms = []
        for power, c in zip((3, 2, 1, 0), self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            base = {3: "x^3", 2: "x^2", 1: "x", 0: ""}[power]
            body = base if (mag == 1 and power) else f"{mag}{base}"
            terms.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def char_poly(m: TransitionMatrix) -> CubicPoly:
    """det(xI - M) = x^3 - tr(M) x^2 + (sum of principal 2x2 minors) x - det(M)."""
    r = m.rows
    tr = r[0][0] + r[1][1] + r[2][2]
    minors = (
        r[0][0] * r[1][1] - r[0][1] * r[1][0]
        + r[0][0] * r[2][2] - r[0][2] * r[2][0]
        + r[1][1] * r[2][2] - r[1][2] * r[2][1]
    )
    det = (
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
        - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    )
    return CubicPoly((1, -tr, minors, -det))


@dataclass(frozen=True)
class Enclosure:
    """A float value with an absolute error bound; exact rational bracket when known."""

    value: float
    err: float
    lo: Fraction | None = None
    hi: Fraction | None = None

    def contains(self, x: float) -> bool:
        return abs(x - self.value) <= self.err

    def to_json(self) -> dict:
        return {"value": self.value, "err": self.err}


DEFAULT_TOL = Fraction(1, 10**12)
_BRACKET_TOP = 3 + Fraction(1, 1024)


def _bisect(p: CubicPoly, lo: Fraction, hi: Fraction, tol: Fraction) -> tuple[Fraction, Fraction]:
    rising = p(lo) < 0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        v = p(mid)
        if v == 0:
            return mid, mid
        if (v < 0) == rising:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _enclose(lo: Fraction, hi: Fraction) -> Enclosure:
    value = float((lo + hi) / 2)
    err = float(hi - lo) / 2 + 4 * math.ulp(value)
    if lo == hi:
        err = 0.0 if float(lo) == lo else math.ulp(value)
    return Enclosure(value, err, lo, hi)


def real_roots(p: CubicPoly, tol: Fraction = DEFAULT_TOL) -> list[Enclosure]:
    """All real roots of ``p`` in increasing order.

    Integer roots are found exactly; the others are isolated between the
    critical points and refined by exact bisection.
    """
    tol = Fraction(tol)
    bound = 1 + max(abs(c) for c in p.coeffs[1:])
    exact = [Fraction(k) for k in range(-bound, bound + 1) if p(k) == 0]
    _, c2, c1, _ = p.coeffs
    cuts = {Fraction(-bound), Fraction(bound), *exact}
    disc = 4 * c2 * c2 - 12 * c1
    if disc > 0:
        for sgn in (-1, 1):
            crit = (-2 * c2 + sgn * math.sqrt(disc)) / 6
            cuts.add(Fraction(crit).limit_denominator(10**12))
    cuts = sorted(cuts)
    roots = [_enclose(r, r) for r in exact]
    for a, b in zip(cuts, cuts[1:]):
        fa, fb = p(a), p(b)
        if fa != 0 and fb != 0 and (fa < 0) != (fb < 0):
            roots.append(_enclose(*_bisect(p, a, b, tol)))
    return sorted(roots, key=lambda e: e.value)


def spectral_radius(p: CubicPoly, tol: Fraction = DEFAULT_TOL) -> Enclosure:
    """Largest real root of ``p``, which must lie in (1, 3].

    The enclosure carries the exact bracket [lo, hi] with p(lo) <= 0 <= p(hi)
    and hi - lo <= tol.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not (p(Fraction(1)) < 0 < p(_BRACKET_TOP)):
        raise NoRootInBracket(f"{p} has no sign change on [1, 3+1/1024]")
    top = real_roots(p, tol)[-1]
    if not (1 < top.lo and top.hi <= _BRACKET_TOP):
        raise NoRootInBracket(f"largest root of {p} is not in (1, 3]")
    return top


def dimension(r: Enclosure, beta: Beta | float) -> Enclosure:
    """log(r)/log(beta) with the bracket of ``r`` pushed through both logs."""
    b = float(beta.value) if isinstance(beta, Beta) else float(beta)
    if r.value - r.err <= 1:
        raise ValueError("dimension needs r > 1")
    lb = math.log(b)
    lo = math.log(r.value - r.err) / lb
    hi = math.log(r.value + r.err) / lb
    value = math.log(r.value) / lb
    err = max(hi - value, value - lo) + 8 * math.ulp(value)
    return Enclosure(value, err)


def similarity_dimension_A(beta: Beta, tol: Fraction = DEFAULT_TOL) -> Enclosure:
    return dimension(spectral_radius(char_poly(matrix_A()), tol), beta)


def similarity_dimension_B(beta: Beta, tol: Fraction = DEFAULT_TOL) -> Enclosure:
    return dimension(spectral_radius(char_poly(matrix_B()), tol), beta)


def measure_upper_bound(beta: Beta, n: int, tol: Fraction = DEFAULT_TOL) -> Enclosure:
    """Upper bound for the s-dimensional Hausdorff measure of E.

    The cover sum count_words(A, n) * (gamma * beta**-n)**s over the level-n
    basic intervals.  It is not the measure itself.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    s = similarity_dimension_A(beta, tol)
    count = count_words(matrix_A(), n)
    diam = float(gamma(beta) / beta.value**n)
    ld = math.log(diam)
    value = count * diam**s.value
    # d/ds of diam**s is diam**s * log(diam)
    err = abs(value * ld) * s.err + 8 * math.ulp(value)
    return Enclosure(value, err)
