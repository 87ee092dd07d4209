"""Reference computations used only by the tests.

Each one reaches its answer by a route different from the package code.
"""
from __future__ import annotations

from collections import deque
from fractions import Fraction

import mpmath

from ebeta.core import Beta, gamma

_VAL = {"0": lambda b: Fraction(0), "1": lambda b: Fraction(1), "B": lambda b: b + 1}


def value_of_prefix(beta: Beta, word: str) -> Fraction:
    b = beta.value
    return sum((_VAL[d](b) / b ** (i + 1) for i, d in enumerate(word)), Fraction(0))


def expansion_prefixes(beta: Beta, x: Fraction, depth: int) -> set[str]:
    """Length-``depth`` prefixes of all codings of x, by iterating x -> beta*x - d.

    Only valid for integer beta, where the remainders form a finite set; a
    remainder is kept when an infinite orbit continues from it.
    """
    assert beta.is_integer
    b, top = beta.value, gamma(beta)

    def step(r):
        for d in "01B":
            y = b * r - _VAL[d](b)
            if 0 <= y <= top:
                yield d, y

    seen = {x}
    queue = deque([x])
    while queue:
        r = queue.popleft()
        for _, y in step(r):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    alive = set(seen)
    while True:
        drop = {r for r in alive if not any(y in alive for _, y in step(r))}
        if not drop:
            break
        alive -= drop
    out = set()
    frontier = [("", x)] if x in alive else []
    while frontier:
        w, r = frontier.pop()
        if len(w) == depth:
            out.add(w)
            continue
        for d, y in step(r):
            if y in alive:
                frontier.append((w + d, y))
    return out


def rewrite_closure(word: str, limit: int = 5000) -> set[str]:
    """All words reachable from ``word`` by 11 <-> 0B substitutions."""
    seen = {word}
    queue = deque([word])
    while queue:
        w = queue.popleft()
        for i in range(len(w) - 1):
            blk = w[i:i + 2]
            if blk == "11":
                v = w[:i] + "0B" + w[i + 2:]
            elif blk == "0B":
                v = w[:i] + "11" + w[i + 2:]
            else:
                continue
            if v not in seen:
                seen.add(v)
                if len(seen) > limit:
                    raise OverflowError("closure too large")
                queue.append(v)
    return seen


def perron_root(rows) -> float:
    """Largest eigenvalue modulus of a 3x3 matrix at 50 digits."""
    mpmath.mp.dps = 50
    ev = mpmath.eig(mpmath.matrix([list(r) for r in rows]))[0]
    return float(max(abs(e) for e in ev))


def high_precision_dimension(rows, beta) -> float:
    mpmath.mp.dps = 50
    ev = mpmath.eig(mpmath.matrix([list(r) for r in rows]))[0]
    r = max(abs(e) for e in ev)
    return float(mpmath.log(r) / mpmath.log(mpmath.mpf(beta.numerator) / beta.denominator))
