"""Minimum nonzero |sum d_i beta**i| with d_i in {0, +-1, +-beta, +-(beta+1)}.

Vectors are stored as tag tuples, index 0 being the constant term, so one
vector can be evaluated at any beta.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import Beta

# tag -> (a, b) meaning a + b*beta; tuple order is the tie-break order
TAGS = ("0", "+1", "-1", "+b", "-b", "+(b+1)", "-(b+1)")
_COEF = ((0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1))
_POSITIVE = (1, 3, 5)

ZERO, PLUS_ONE, MINUS_ONE, PLUS_BETA, MINUS_BETA, PLUS_BETA1, MINUS_BETA1 = range(7)


@dataclass(frozen=True)
class SpectrumDigitVector:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("digit vector must have length >= 1")
        if any(t not in range(7) for t in self.coeffs):
            raise ValueError("unknown digit tag")

    @classmethod
    def parse(cls, text: str) -> SpectrumDigitVector:
        """Whitespace-separated tags, constant term first, e.g. ``"-(b+1) +1"``."""
        return cls(tuple(TAGS.index(t) for t in text.split()))

    def __str__(self) -> str:
        return " ".join(TAGS[t] for t in self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)


def tag_value(beta: Beta, tag: int) -> Fraction:
    a, b = _COEF[tag]
    return a + b * beta.value


def eval_digit_vector(beta: Beta, v: SpectrumDigitVector) -> Fraction:
    acc = Fraction(0)
    for t in reversed(v.coeffs):
        acc = acc * beta.value + tag_value(beta, t)
    return acc


@dataclass(frozen=True)
class SpectrumResult:
    min_value: Fraction
    witness: SpectrumDigitVector
    length: int
    per_length: tuple[Fraction, ...]


def _tail_cap(beta: Beta, k: int) -> Fraction:
    # largest |sum_{i<k} d_i beta**i|
    bv = beta.value
    return (bv + 1) * (bv**k - 1) / (bv - 1)


def _search_length(beta: Beta, length: int, best: Fraction | None, stop_below: Fraction | None = None):
    """Depth-first search over vectors of exactly ``length`` with positive top digit.

    Yields improvements (value, tags) in visiting order.  Partial sums equal
    to zero are cut: their completions are vectors of smaller length.
    """
    bv = beta.value
    vals = [tag_value(beta, t) for t in range(7)]
    caps = [_tail_cap(beta, k) for k in range(length + 1)]
    powers = [bv**i for i in range(length)]
    tags = [0] * length

    def dfs(pos: int, partial: Fraction):
        nonlocal best
        if pos < 0:
            if partial != 0 and (best is None or abs(partial) < best):
                best = abs(partial)
                yield best, tuple(tags)
            return
        choices = _POSITIVE if pos == length - 1 else range(7)
        for t in choices:
            p = partial + vals[t] * powers[pos]
            if pos > 0:
                if p == 0:
                    continue
                if best is not None and abs(p) - caps[pos] >= best:
                    continue
            tags[pos] = t
            yield from dfs(pos - 1, p)
            if stop_below is not None and best is not None and best < stop_below:
                return

    yield from dfs(length - 1, Fraction(0))


def spectrum_search(beta: Beta, max_len: int) -> SpectrumResult:
    """Branch-and-bound minimum of nonzero |sum d_i beta**i| over lengths 1..max_len.

    ``per_length[k-1]`` is the minimum over all vectors of length <= k.  Ties
    go to the shorter vector, then to the first in tag order from the most
    significant digit down.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    best: Fraction | None = None
    witness: tuple[int, ...] = ()
    per_length = []
    for length in range(1, max_len + 1):
        for value, tags in _search_length(beta, length, best):
            best, witness = value, tags
        per_length.append(best)
    return SpectrumResult(best, SpectrumDigitVector(witness), len(witness), tuple(per_length))


def spectrum_brute_force(beta: Beta, max_len: int) -> Fraction:
    """Unpruned minimum over all 7**k vectors, k <= max_len."""
    vals = [tag_value(beta, t) for t in range(7)]
    bv = beta.value
    best: Fraction | None = None
    for length in range(1, max_len + 1):
        powers = [bv**i for i in range(length)]
        for combo in itertools.product(range(7), repeat=length):
            s = sum((vals[t] * p for t, p in zip(combo, powers)), Fraction(0))
            if s != 0 and (best is None or abs(s) < best):
                best = abs(s)
    return best


def verify_claim_induction(beta: Beta, max_len: int) -> bool | SpectrumDigitVector:
    """Check |sum_{i<=n} d_i beta**i| >= 1 for all nonzero sums with d_n != 0, n < max_len.

    Returns True, or the first vector with 0 < |value| < 1.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    one = Fraction(1)
    for length in range(1, max_len + 1):
        for value, tags in _search_length(beta, length, one, stop_below=one):
            if value < one:
                return SpectrumDigitVector(tags)
    return True
