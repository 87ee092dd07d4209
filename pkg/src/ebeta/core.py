"""Exact geometry of the attractor E_beta of x -> (x + d)/beta, d in {0, 1, beta+1}.

Every scalar is a :class:`fractions.Fraction`.  Words over the alphabet are
plain strings on ``"01B"`` where ``B`` stands for the digit beta+1.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Rat = Fraction

DIGITS = "01B"
DEFAULT_MEMBERSHIP_DEPTH = 40


class ValueBelowThree(ValueError):
    pass


class DomainError(ValueError):
    pass


_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or an integer ``p``.  Decimal notation is rejected."""
    m = _RAT_RE.match(str(text))
    if not m:
        raise ValueError(f"not a rational of the form p/q: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Beta:
    value: Fraction

    def __post_init__(self):
        if self.value < 3:
            raise ValueBelowThree(f"beta must be >= 3, got {format_rational(self.value)}")

    @property
    def is_integer(self) -> bool:
        return self.value.denominator == 1

    def __str__(self) -> str:
        return format_rational(self.value)


def make_beta(num: int, den: int = 1) -> Beta:
    if den == 0:
        raise ZeroDivisionError("den must be nonzero")
    return Beta(Fraction(num, den))


def parse_beta(text: str) -> Beta:
    return Beta(parse_rational(text))


def gamma(beta: Beta) -> Fraction:
    """Right endpoint (beta+1)/(beta-1) of the convex hull [0, gamma] of E."""
    b = beta.value
    return (b + 1) / (b - 1)


def digit_value(beta: Beta, d: str) -> Fraction:
    if d == "0":
        return Fraction(0)
    if d == "1":
        return Fraction(1)
    if d == "B":
        return beta.value + 1
    raise ValueError(f"not a digit: {d!r}")


def check_word(w: str) -> str:
    bad = set(w) - set(DIGITS)
    if bad:
        raise ValueError(f"word {w!r} has letters outside {{0, 1, B}}")
    return w


@dataclass(frozen=True)
class AffineMap:
    scale: Fraction
    offset: Fraction

    def __post_init__(self):
        if self.scale == 0:
            raise ValueError("affine map scale must be nonzero")

    def __call__(self, x: Fraction) -> Fraction:
        return self.scale * x + self.offset

    def compose(self, inner: AffineMap) -> AffineMap:
        """Return ``self o inner``."""
        return AffineMap(self.scale * inner.scale, self.scale * inner.offset + self.offset)

    def image(self, iv: Interval) -> Interval:
        a, b = self(iv.lo), self(iv.hi)
        if self.scale > 0:
            return Interval(a, b, iv.lo_open, iv.hi_open)
        return Interval(b, a, iv.hi_open, iv.lo_open)

    @staticmethod
    def identity() -> AffineMap:
        return AffineMap(Fraction(1), Fraction(0))


def map_for_digit(beta: Beta, d: str) -> AffineMap:
    return AffineMap(1 / beta.value, digit_value(beta, d) / beta.value)


def compose_word(beta: Beta, w: str) -> AffineMap:
    """The map f_w = f_{d1} o ... o f_{dn}; the empty word gives the identity."""
    scale = Fraction(1)
    offset = Fraction(0)
    for d in check_word(w):
        scale /= beta.value
        offset += digit_value(beta, d) * scale
    return AffineMap(scale, offset)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x: Fraction) -> bool:
        if x < self.lo or (self.lo_open and x == self.lo):
            return False
        if x > self.hi or (self.hi_open and x == self.hi):
            return False
        return True

    def contains_interval(self, other: Interval) -> bool:
        return other.lo in self and other.hi in self

    def __str__(self) -> str:
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open else "]"
        return f"{left}{format_rational(self.lo)}, {format_rational(self.hi)}{right}"


class IntervalSet:
    """Finite union of disjoint closed intervals, kept sorted and merged.

    Touching intervals such as [a, b] and [b, c] are merged into [a, c].
    """

    __slots__ = ("parts",)

    def __init__(self, intervals: Iterable[Interval] = ()):
        items = sorted(intervals, key=lambda iv: (iv.lo, iv.hi))
        merged: list[Interval] = []
        for iv in items:
            if iv.lo_open or iv.hi_open:
                raise ValueError("IntervalSet holds closed intervals only")
            if merged and iv.lo <= merged[-1].hi:
                if iv.hi > merged[-1].hi:
                    merged[-1] = Interval(merged[-1].lo, iv.hi)
            else:
                merged.append(iv)
        self.parts: tuple[Interval, ...] = tuple(merged)

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalSet) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return "IntervalSet(" + ", ".join(str(p) for p in self.parts) + ")"

    def __contains__(self, x: Fraction) -> bool:
        return any(x in p for p in self.parts)

    @property
    def total_length(self) -> Fraction:
        return sum((p.length for p in self.parts), Fraction(0))

    def issubset(self, other: IntervalSet) -> bool:
        return all(any(q.contains_interval(p) for q in other.parts) for p in self.parts)

    def intersection(self, other: IntervalSet) -> IntervalSet:
        out = []
        i = j = 0
        a, b = self.parts, other.parts
        while i < len(a) and j < len(b):
            lo = max(a[i].lo, b[j].lo)
            hi = min(a[i].hi, b[j].hi)
            if lo <= hi:
                out.append(Interval(lo, hi))
            if a[i].hi < b[j].hi:
                i += 1
            else:
                j += 1
        return IntervalSet(out)

    def image(self, g: AffineMap) -> IntervalSet:
        return IntervalSet(g.image(p) for p in self.parts)

    def gaps(self) -> list[Interval]:
        """Open intervals strictly between consecutive parts."""
        return [
            Interval(p.hi, q.lo, True, True)
            for p, q in zip(self.parts, self.parts[1:])
        ]


def level_offsets(beta: Beta, n: int) -> list[Fraction]:
    """Sorted distinct values f_w(0) over all words w of length n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    b = beta.value
    offsets = {Fraction(0)}
    vals = [digit_value(beta, d) for d in DIGITS]
    for _ in range(n):
        offsets = {(v + o) / b for o in offsets for v in vals}
    return sorted(offsets)


def delta_level(beta: Beta, n: int) -> IntervalSet:
    """Union of the level-n basic intervals f_w([0, gamma])."""
    width = gamma(beta) / beta.value ** n
    return IntervalSet(Interval(o, o + width) for o in level_offsets(beta, n))


def holes(beta: Beta, n: int) -> list[Interval]:
    if n < 1:
        raise ValueError("holes are defined for n >= 1")
    return delta_level(beta, n).gaps()


def main_hole(beta: Beta) -> Interval:
    """H = (f_1(gamma), f_{beta+1}(0))."""
    g = gamma(beta)
    return Interval((g + 1) / beta.value, (beta.value + 1) / beta.value, True, True)


def locate_hole(beta: Beta, x: Fraction, max_level: int) -> Interval | None:
    """Smallest-level hole of Delta_k (k <= max_level) that contains x, if any."""
    if not 0 <= x <= gamma(beta):
        return None
    for k in range(1, max_level + 1):
        for h in holes(beta, k):
            if x in h:
                return h
    return None


class Verdict(str, Enum):
    IN = "in"
    OUT = "out"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Membership:
    verdict: Verdict
    depth: int | None = None

    def __bool__(self) -> bool:
        return self.verdict is Verdict.IN


def _successors(b: Fraction, digit_vals: Sequence[Fraction], top: Fraction, x: Fraction):
    for v in digit_vals:
        y = b * x - v
        if 0 <= y <= top:
            yield y


def decide_membership(beta: Beta, x: Fraction, max_depth: int = DEFAULT_MEMBERSHIP_DEPTH) -> Membership:
    """Decide whether x lies in E by exploring the expanding branches x -> beta*x - d.

    For integer beta the reachable states share the denominator of x and stay
    in [0, gamma], so the graph is finite and the answer is exact: x is in E
    iff an infinite branch (a reachable cycle) survives.  For non-integer beta
    the search stops at ``max_depth`` and may answer UNKNOWN.  Points outside
    [0, gamma] are OUT.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    x = Fraction(x)
    top = gamma(beta)
    if not 0 <= x <= top:
        return Membership(Verdict.OUT)
    b = beta.value
    vals = [digit_value(beta, d) for d in DIGITS]
    if beta.is_integer:
        return _membership_finite(b, vals, top, x)
    return _membership_bounded(b, vals, top, x, max_depth)


def _membership_finite(b, vals, top, x) -> Membership:
    # iterative DFS; a state is dead once every successor is dead
    dead: set[Fraction] = set()
    on_path: set[Fraction] = set()
    stack = [(x, iter(list(_successors(b, vals, top, x))))]
    on_path.add(x)
    while stack:
        state, it = stack[-1]
        for nxt in it:
            if nxt in on_path:
                return Membership(Verdict.IN)
            if nxt in dead:
                continue
            on_path.add(nxt)
            stack.append((nxt, iter(list(_successors(b, vals, top, nxt)))))
            break
        else:
            stack.pop()
            on_path.discard(state)
            dead.add(state)
    return Membership(Verdict.OUT)


def _membership_bounded(b, vals, top, x, max_depth) -> Membership:
    dead: set[Fraction] = set()
    path: set[Fraction] = set()
    anchors = {Fraction(0), top}

    def explore(s: Fraction, left: int) -> Verdict:
        if s in anchors or s in path:
            return Verdict.IN
        if s in dead:
            return Verdict.OUT
        if left == 0:
            return Verdict.UNKNOWN
        path.add(s)
        unknown = False
        try:
            for nxt in _successors(b, vals, top, s):
                v = explore(nxt, left - 1)
                if v is Verdict.IN:
                    return v
                unknown = unknown or v is Verdict.UNKNOWN
        finally:
            path.discard(s)
        if unknown:
            return Verdict.UNKNOWN
        dead.add(s)
        return Verdict.OUT

    v = explore(x, max_depth)
    return Membership(v, max_depth if v is Verdict.UNKNOWN else None)
