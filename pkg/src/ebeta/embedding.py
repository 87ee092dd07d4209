"""Affine self-embeddings g(x) = mu*x + b of E: classification and refutation witnesses.

A map is reported Generating only with a word w such that f_w equals g
exactly, and Refuted only with a point of E whose image is provably
outside E.  Anything else is Undetermined.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator, Literal

from .codings import EPCoding, eval_coding, lambda_sample
from .core import (
    DIGITS,
    AffineMap,
    Beta,
    Interval,
    IntervalSet,
    Verdict,
    compose_word,
    decide_membership,
    delta_level,
    digit_value,
    gamma,
    locate_hole,
    main_hole,
    map_for_digit,
)

DEFAULT_CLASSIFY_DEPTH = 8


class InvalidMu(ValueError):
    pass


class VerificationFailure(AssertionError):
    """A checked identity did not hold; ``n`` is the offending level if any."""

    def __init__(self, message: str, n: int | None = None, report=None):
        super().__init__(message)
        self.n = n
        self.report = report


@dataclass(frozen=True)
class CandidateMap:
    mu: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "mu", Fraction(self.mu))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.mu == 0:
            raise InvalidMu("mu = 0 is degenerate")

    def __call__(self, x: Fraction) -> Fraction:
        return self.mu * x + self.b

    def as_affine(self) -> AffineMap:
        return AffineMap(self.mu, self.b)


@dataclass(frozen=True)
class ClassifyResult:
    verdict: Literal["generating", "refuted", "undetermined"]
    word: str | None = None
    witness: EPCoding | None = None
    image: Fraction | None = None
    hole: Interval | None = None
    depth: int | None = None
    reason: str | None = None

    @property
    def is_generating(self) -> bool:
        return self.verdict == "generating"

    @property
    def is_refuted(self) -> bool:
        return self.verdict == "refuted"


class BranchCase(str, Enum):
    SUB_F0 = "SubF0"
    SUB_F1 = "SubF1"
    SUB_FB = "SubFB"
    INCONCLUSIVE = "Inconclusive"


def digit_expand(beta: Beta, b: Fraction, n: int) -> str | None:
    """Lexicographically smallest w of length n with f_w(0) = b, or None."""
    if n < 0:
        raise ValueError("n must be >= 0")
    bv = beta.value
    g = gamma(beta)
    vals = [(d, digit_value(beta, d)) for d in DIGITS]
    # offsets of words of length k lie in [0, gamma * (1 - beta**-k)]
    caps = [g * (1 - bv ** -k) for k in range(n + 1)]

    def search(r: Fraction, k: int) -> str | None:
        if k == 0:
            return "" if r == 0 else None
        for d, v in vals:
            nxt = bv * r - v
            if 0 <= nxt <= caps[k - 1]:
                rest = search(nxt, k - 1)
                if rest is not None:
                    return d + rest
        return None

    b = Fraction(b)
    if not 0 <= b <= caps[n]:
        return None
    return search(b, n)


def _power_index(beta: Beta, mu: Fraction, max_n: int) -> int | None:
    p = Fraction(1)
    for n in range(max_n + 1):
        if p == mu:
            return n
        p /= beta.value
    return None


def witness_net(beta: Beta, max_level: int) -> Iterator[tuple[int, EPCoding]]:
    """Points of E in a fixed order: f_w(0), f_w(gamma) by level then word, then Lambda samples."""
    for k in range(max_level + 1):
        for letters in itertools.product(DIGITS, repeat=k):
            w = "".join(letters)
            yield k, EPCoding(w, "0")
            yield k, EPCoding(w, "B")
        if k >= 1:
            for m in range(3):
                yield k, lambda_sample(k, m)


def _refute(beta: Beta, g: CandidateMap, witness: EPCoding, depth: int, reason: str, max_level: int) -> ClassifyResult | None:
    image = g(eval_coding(beta, witness))
    if decide_membership(beta, image).verdict is not Verdict.OUT:
        return None
    return ClassifyResult(
        "refuted",
        witness=witness,
        image=image,
        hole=locate_hole(beta, image, max_level),
        depth=depth,
        reason=reason,
    )


def classify_generating(beta: Beta, g: CandidateMap, max_depth: int = DEFAULT_CLASSIFY_DEPTH) -> ClassifyResult:
    """Decide whether g(E) is contained in E, up to ``max_depth``.

    Generating(w) when g = f_w for a word of length <= max_depth; Refuted when
    some point of the witness net is sent outside E; Undetermined otherwise.
    Scales with |mu| > 1 are refuted by diameter: one of g(0), g(gamma) leaves
    [0, gamma].
    """
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    mu, b = g.mu, g.b
    top = gamma(beta)
    if abs(mu) > 1:
        for x in (EPCoding("", "0"), EPCoding("", "B")):
            res = _refute(beta, g, x, 0, "diameter", max_depth)
            if res is not None:
                return res
    if mu > 0:
        n = _power_index(beta, mu, max_depth)
        if n is not None:
            w = digit_expand(beta, b, n)
            if w is not None:
                return ClassifyResult("generating", word=w, depth=n)
    if mu == -1:
        wit = check_asymmetry(beta, b)
        return ClassifyResult(
            "refuted", witness=wit.witness, image=wit.image, hole=wit.hole, depth=0, reason="asymmetry"
        )
    seen: set[Fraction] = set()
    for k, x in witness_net(beta, max_depth):
        v = eval_coding(beta, x)
        if v in seen:
            continue
        seen.add(v)
        image = g(v)
        if 0 <= image <= top and image in seen:
            continue
        res = _refute(beta, g, x, k, "witness", max_depth)
        if res is not None:
            return res
    return ClassifyResult("undetermined", depth=max_depth)


def branch_classify(beta: Beta, g: CandidateMap) -> BranchCase:
    """Which first-level piece must contain mu*E + b, judged from its hull alone."""
    bv = beta.value
    top = gamma(beta)
    ends = (g.b, g.mu * top + g.b)
    lo, hi = min(ends), max(ends)
    if hi < 1 / bv:
        return BranchCase.SUB_F0
    if 2 / (bv * (bv - 1)) < lo < (bv + 1) / bv:
        return BranchCase.SUB_F1
    if lo > (top + 1) / bv:
        return BranchCase.SUB_FB
    return BranchCase.INCONCLUSIVE


@dataclass(frozen=True)
class AsymmetryWitness:
    c: Fraction
    witness: EPCoding
    image: Fraction
    hole: Interval | None


def check_asymmetry(beta: Beta, c: Fraction, max_depth: int = DEFAULT_CLASSIFY_DEPTH) -> AsymmetryWitness:
    """A point x of E with gamma-reflection image -x + c outside E.

    For c != gamma one endpoint of E is pushed out of [0, gamma]; for
    c = gamma the point f_{1B}(0) lands in the main hole.
    """
    c = Fraction(c)
    top = gamma(beta)
    if c < top:
        witness = EPCoding("", "B")
    elif c > top:
        witness = EPCoding("", "0")
    else:
        witness = EPCoding("1B", "0")
    image = c - eval_coding(beta, witness)
    if decide_membership(beta, image).verdict is not Verdict.OUT:
        raise VerificationFailure(f"asymmetry witness {witness} failed for c = {c}")
    hole = main_hole(beta) if image in main_hole(beta) else locate_hole(beta, image, max_depth)
    return AsymmetryWitness(c, witness, image, hole)


@dataclass
class OverlapReport:
    beta: Beta
    levels: int
    contained: list[bool] = field(default_factory=list)
    gaps: list[Fraction] = field(default_factory=list)
    same_level_gaps: list[Fraction | None] = field(default_factory=list)
    bound: Fraction = Fraction(0)

    @property
    def monotone(self) -> bool:
        return all(a >= b for a, b in zip(self.gaps, self.gaps[1:]))

    @property
    def within_bound(self) -> bool:
        return self.gaps[-1] <= self.bound

    @property
    def ok(self) -> bool:
        return all(self.contained) and self.monotone and self.within_bound


def overlap_identity_report(beta: Beta, levels: int) -> OverlapReport:
    """Compare L_n = f_0(D_n) & f_1(D_n) with R_n = f_11(D_n) for n = 0..levels.

    ``gaps`` holds len(L_n) - len(R_n).  ``same_level_gaps`` compares L_n
    with f_11(D_{n-1}), whose basic intervals have the same size as those
    of L_n.
    """
    if levels < 1:
        raise ValueError("levels must be >= 1")
    f0 = map_for_digit(beta, "0")
    f1 = map_for_digit(beta, "1")
    f11 = compose_word(beta, "11")
    rep = OverlapReport(beta, levels, bound=3 * gamma(beta) / beta.value ** (levels + 1))
    prev: IntervalSet | None = None
    for n in range(levels + 1):
        dn = delta_level(beta, n)
        left = dn.image(f0).intersection(dn.image(f1))
        right = dn.image(f11)
        rep.contained.append(right.issubset(left))
        rep.gaps.append(left.total_length - right.total_length)
        rep.same_level_gaps.append(
            None if prev is None else left.total_length - prev.image(f11).total_length
        )
        prev = dn
    return rep


def verify_overlap_identity(beta: Beta, levels: int) -> OverlapReport:
    rep = overlap_identity_report(beta, levels)
    for n, ok in enumerate(rep.contained):
        if not ok:
            raise VerificationFailure(f"f_11(D_{n}) is not inside f_0(D_{n}) & f_1(D_{n})", n, rep)
    for n in range(1, len(rep.gaps)):
        if rep.gaps[n] > rep.gaps[n - 1]:
            raise VerificationFailure(f"length gap increased at level {n}", n, rep)
    if not rep.within_bound:
        raise VerificationFailure(
            f"length gap {float(rep.gaps[-1]):.3e} at level {levels} exceeds "
            f"3*gamma*beta^-{levels + 1} = {float(rep.bound):.3e}",
            levels,
            rep,
        )
    return rep


@dataclass(frozen=True)
class SelfSimilarityWitness:
    point: Fraction
    coding: EPCoding
    hole_image: Interval


def not_totally_self_similar_witness(beta: Beta) -> SelfSimilarityWitness:
    """A point of f_10(E) inside H_0 = f_0(H), so H_0 is not a hole of E."""
    bv = beta.value
    top = gamma(beta)
    coding = EPCoding("1001", "0")
    x = eval_coding(beta, coding)
    h0 = Interval((top + 1) / bv**2, (bv + 1) / bv**2, True, True)
    if x != 1 / bv + bv**-4 or x not in h0:
        raise VerificationFailure(f"{x} is not inside H_0 = {h0}")
    return SelfSimilarityWitness(x, coding, h0)
