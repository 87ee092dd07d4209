"""Eventually periodic codings: evaluation, enumeration and counting.

A coding is written ``pre|per`` (digits ``0``, ``1``, ``B``), meaning
pre followed by per repeated forever, e.g. ``11|B`` or ``|0B``.

Two codings c, d of the same point are linked digit by digit through a
carry r_k = beta * r_{k-1} + (c_k - d_k) which must stay in [-gamma, gamma].
The carries form a finite set, so the codings of a point given by an
eventually periodic sequence are the infinite paths of a finite graph.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Literal, Union

import networkx as nx

from .core import DIGITS, Beta, check_word, compose_word, digit_value, gamma
from .symbolic import admissible, matrix_B

BRANCH_BLOCKS = ("11", "0B")

# digit -> (a, b) with value a + b*beta
_COEFFS = {"0": (0, 0), "1": (1, 0), "B": (1, 1)}


class CodingParseError(ValueError):
    pass


class InvalidPrefix(ValueError):
    pass


def _primitive_root(w: str) -> str:
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and w[:p] * (n // p) == w:
            return w[:p]
    return w


@dataclass(frozen=True)
class EPCoding:
    """The sequence ``preperiod + period + period + ...`` in canonical form.

    The period is primitive and the preperiod is as short as possible, so two
    EPCodings are equal iff they describe the same infinite sequence.
    """

    preperiod: str
    period: str

    def __post_init__(self):
        check_word(self.preperiod)
        check_word(self.period)
        if not self.period:
            raise ValueError("period must be nonempty")
        pre = self.preperiod
        per = _primitive_root(self.period)
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1] + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    def __str__(self) -> str:
        return f"{self.preperiod}|{self.period}"

    def __getitem__(self, i: int) -> str:
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    @property
    def n_states(self) -> int:
        return len(self.preperiod) + len(self.period)

    def state(self, i: int) -> int:
        """Index of position i in the finite automaton pre + per (with loop back)."""
        k = len(self.preperiod)
        return i if i < k else k + (i - k) % len(self.period)

    def next_state(self, s: int) -> int:
        return s + 1 if s + 1 < self.n_states else len(self.preperiod)

    def prefix(self, n: int) -> str:
        return "".join(self[i] for i in range(n))

    def shift(self, n: int) -> EPCoding:
        """The tail sequence after the first n digits."""
        k = len(self.preperiod)
        if n <= k:
            return EPCoding(self.preperiod[n:], self.period)
        r = (n - k) % len(self.period)
        return EPCoding("", self.period[r:] + self.period[:r])

    def with_prefix(self, n: int, word: str) -> EPCoding:
        """Replace the first n digits by ``word`` (of the same length)."""
        if len(word) != n:
            raise ValueError("replacement must have the same length")
        tail = self.shift(n)
        return EPCoding(word + tail.preperiod, tail.period)


def parse_coding(text: str) -> EPCoding:
    s = "".join(str(text).split())
    if s.count("|") != 1:
        raise CodingParseError(f"coding needs exactly one '|': {text!r}")
    pre, per = s.split("|")
    if not per:
        raise CodingParseError(f"coding period is empty: {text!r}")
    if set(pre + per) - set(DIGITS):
        raise CodingParseError(f"coding uses letters outside 0, 1, B: {text!r}")
    return EPCoding(pre, per)


def eval_coding(beta: Beta, c: EPCoding) -> Fraction:
    """Exact value sum d_i beta**-i, closing the periodic tail as a geometric series."""
    head = compose_word(beta, c.preperiod)
    cycle = compose_word(beta, c.period)
    tail = cycle.offset / (1 - cycle.scale)
    return head(tail)


@dataclass(frozen=True)
class CodingCount:
    """Either exactly 2**m codings (``m`` set) or a continuum (``m`` None)."""

    kind: Literal["finite", "continuum"]
    m: int | None = None

    @classmethod
    def finite(cls, m: int) -> CodingCount:
        return cls("finite", m)

    @classmethod
    def continuum(cls) -> CodingCount:
        return cls("continuum")

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def count(self) -> int | None:
        return 2**self.m if self.m is not None else None

    def __str__(self) -> str:
        return str(self.count) if self.is_finite else "continuum"


def _next_branch_block(c: EPCoding, start: int) -> int | None:
    # one full period of starting positions past the preperiod covers all cases
    stop = max(start, len(c.preperiod)) + len(c.period)
    for j in range(start, stop):
        if c[j] + c[j + 1] in BRANCH_BLOCKS:
            return j
    return None


def count_codings(c: EPCoding) -> CodingCount:
    """Sequential branch-block count.

    Scan for the first 11 or 0B, consume it, and continue after it; m is the
    number of blocks consumed.  If the scan returns to an automaton state it
    has already started from, it never stops and the answer is a continuum.

    This reproduces the classification argument for points; it does not see
    overlapping blocks (e.g. 111 or 10B), so it can differ from the true
    number of codings returned by :func:`count_all_codings`.
    """
    pos, m = 0, 0
    seen: set[int] = set()
    while True:
        st = c.state(pos)
        if st in seen:
            return CodingCount.continuum()
        seen.add(st)
        j = _next_branch_block(c, pos)
        if j is None:
            return CodingCount.finite(m)
        m += 1
        pos = j + 2


def is_unique(c: EPCoding) -> bool:
    """True iff the sequence avoids 11 and 0B (i.e. lies in X_B)."""
    return admissible(c.preperiod + c.period + c.period, matrix_B())


# -- carry transducer ------------------------------------------------------

Node = tuple[int, object]


class _CodingGraph:
    """Product of the coding automaton with the carry between two codings."""

    MAX_NODES = 200_000

    def __init__(self, c: EPCoding, beta: Beta | None):
        self.c = c
        self.beta = beta
        if beta is not None:
            self._vals = {d: digit_value(beta, d) for d in DIGITS}
            self._bound = gamma(beta)
        self.start: Node = (0, Fraction(0) if beta is not None else 0)
        self.edges: dict[Node, list[tuple[str, Node]]] = {}
        self._build()
        self.alive = self._alive()

    def _step(self, carry, cd: str, d: str):
        if self.beta is None:
            # exact for every beta > 3: carries stay in {-1, 0, 1}
            ac, bc = _COEFFS[cd]
            ad, bd = _COEFFS[d]
            if carry + bc - bd != 0:
                return None
            return ac - ad
        r = self.beta.value * carry + self._vals[cd] - self._vals[d]
        return r if abs(r) <= self._bound else None

    def _build(self) -> None:
        todo = [self.start]
        while todo:
            node = todo.pop()
            if node in self.edges:
                continue
            if len(self.edges) > self.MAX_NODES:
                raise RuntimeError("carry graph exceeded its size limit")
            st, carry = node
            out = []
            for d in DIGITS:
                r = self._step(carry, self.c[st], d)
                if r is not None:
                    nxt = (self.c.next_state(st), r)
                    out.append((d, nxt))
                    todo.append(nxt)
            self.edges[node] = out

    def _alive(self) -> set[Node]:
        alive = set(self.edges)
        changed = True
        while changed:
            changed = False
            for node in list(alive):
                if not any(n in alive for _, n in self.edges[node]):
                    alive.discard(node)
                    changed = True
        return alive

    def alive_edges(self, node: Node) -> Iterator[tuple[str, Node]]:
        for d, n in self.edges[node]:
            if n in self.alive:
                yield d, n

    def prefixes(self, depth: int) -> set[str]:
        out: set[str] = set()
        stack = [(self.start, "")]
        while stack:
            node, w = stack.pop()
            if len(w) == depth:
                out.add(w)
                continue
            for d, n in self.alive_edges(node):
                stack.append((n, w + d))
        return out

    def digraph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_node(self.start)
        for node in self.alive:
            for _, n in self.alive_edges(node):
                g.add_edge(node, n)
        return g


def enumerate_codings(c: EPCoding, depth: int, beta: Beta | None = None) -> set[str]:
    """Length-``depth`` prefixes of every coding of the point coded by ``c``.

    With ``beta`` omitted the result is the one valid for all beta > 3, which
    is generated by the substitution 11 <-> 0B.  Pass ``beta`` to include the
    extra coincidences that occur at beta = 3 (e.g. 10^inf = 01B^inf).
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    return _CodingGraph(c, beta).prefixes(depth)


Multiplicity = Union[int, Literal["countable", "continuum"]]


def count_all_codings(c: EPCoding, beta: Beta | None = None) -> Multiplicity:
    """Exact number of codings of the point coded by ``c``.

    Returns an int, ``"countable"`` (countably infinite) or ``"continuum"``.
    """
    graph = _CodingGraph(c, beta)
    g = graph.digraph()
    cond = nx.condensation(g)
    members = nx.get_node_attributes(cond, "members")

    def cyclic(s) -> bool:
        nodes = members[s]
        return len(nodes) > 1 or any(g.has_edge(v, v) for v in nodes)

    for s in cond.nodes:
        if not cyclic(s):
            continue
        inner = g.subgraph(members[s]).number_of_edges()
        if inner > len(members[s]):
            return "continuum"
    for s in cond.nodes:
        if cyclic(s) and cond.out_degree(s) > 0:
            return "countable"
    paths: dict[int, int] = {}
    for s in reversed(list(nx.topological_sort(cond))):
        paths[s] = 1 if cyclic(s) else sum(paths[t] for t in cond.successors(s))
    return paths[cond.graph["mapping"][graph.start]]


# -- samples -----------------------------------------------------------------


def lambda_sample(n: int, m: int, prefix: str | None = None) -> EPCoding:
    """The coding prefix (0B)^m B^inf with prefix a length-n X_B word ending in B.

    With ``prefix`` None the lexicographically smallest valid prefix
    (order 0 < 1 < B) is used.
    """
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    if prefix is None:
        for letters in itertools.product(DIGITS, repeat=n):
            w = "".join(letters)
            if w[-1] == "B" and admissible(w, matrix_B()):
                prefix = w
                break
    else:
        if len(prefix) != n or set(prefix) - set(DIGITS):
            raise InvalidPrefix(f"prefix must be a word of length {n} over 0, 1, B")
        if prefix[-1] != "B" or not admissible(prefix, matrix_B()):
            raise InvalidPrefix(f"prefix {prefix!r} must avoid 11 and 0B and end in B")
    return EPCoding(prefix + "0B" * m, "B")


def rewrite_at(word: str, i: int) -> str:
    """Apply 11 -> 0B or 0B -> 11 at position i."""
    block = word[i:i + 2]
    if block == "11":
        return word[:i] + "0B" + word[i + 2:]
    if block == "0B":
        return word[:i] + "11" + word[i + 2:]
    raise ValueError(f"no branch block at position {i} of {word!r}")
