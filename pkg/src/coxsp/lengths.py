"""Weighted word lengths, odd components and finite parabolic subgroups."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .coxeter import (
    INF,
    BallCapExceeded,
    CayleyBall,
    CoxeterError,
    CoxeterSystem,
    GroupElement,
    WordLike,
    _as_word,
    m_reduce,
)


class InvalidLengthSpec(ValueError):
    """Weights that do not define a length function on the given system."""


def _frac(x) -> Fraction:
    f = Fraction(x) if not isinstance(x, str) else Fraction(x.strip())
    if f < 0:
        raise InvalidLengthSpec(f"weights must be nonnegative, got {f}")
    return f


@dataclass(frozen=True)
class LengthSpec:
    """Per-generator weights; ``psi(w)`` sums them over a reduced word of w."""

    weights: tuple[Fraction, ...]
    kind: str = "weighted"
    support: frozenset[int] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(_frac(x) for x in self.weights))
        if self.kind not in ("standard", "weighted", "indicator"):
            raise ValueError(f"unknown kind {self.kind!r}")

    @classmethod
    def standard(cls, rank: int) -> "LengthSpec":
        return cls((Fraction(1),) * rank, "standard")

    @classmethod
    def weighted(cls, weights: Iterable) -> "LengthSpec":
        return cls(tuple(weights), "weighted")

    @classmethod
    def indicator(cls, rank: int, subset: Iterable[int]) -> "LengthSpec":
        sub = frozenset(int(i) for i in subset)
        if any(not 0 <= i < rank for i in sub):
            raise InvalidLengthSpec("indicator subset has out-of-range generators")
        return cls(tuple(Fraction(int(i in sub)) for i in range(rank)), "indicator", sub)

    @property
    def rank(self) -> int:
        return len(self.weights)

    @property
    def max_weight(self) -> Fraction:
        return max(self.weights)

    def scaled(self) -> tuple[np.ndarray, int]:
        """Integer weights and common denominator D with weights = ints / D."""
        den = math.lcm(*(w.denominator for w in self.weights))
        ints = np.array([int(w * den) for w in self.weights], dtype=np.int64)
        return ints, den

    def validate(self, system: CoxeterSystem) -> "LengthSpec":
        if self.rank != system.rank:
            raise InvalidLengthSpec(f"{self.rank} weights for rank {system.rank}")
        for comp in odd_components(system):
            vals = {self.weights[i] for i in comp}
            if len(vals) > 1:
                names = ", ".join(system.name(i) for i in sorted(comp))
                raise InvalidLengthSpec(f"weights differ across the odd component {{{names}}}")
        return self

    def describe(self, system: CoxeterSystem | None = None) -> str:
        if self.kind == "standard":
            return "word length"
        if self.kind == "indicator":
            gens = sorted(self.support or ())
            name = system.name if system else (lambda i: f"s{i + 1}")
            return "indicator length on {" + ", ".join(name(i) for i in gens) + "}"
        return "weights " + ",".join(str(w) for w in self.weights)


def parse_weights(text: str) -> LengthSpec:
    """Comma-separated nonnegative rationals, e.g. ``1,0,1/2``."""
    try:
        vals = [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidLengthSpec(f"bad weight list {text!r}: {exc}") from None
    if not vals:
        raise InvalidLengthSpec("empty weight list")
    return LengthSpec.weighted(vals)


def odd_components(system: CoxeterSystem) -> list[frozenset[int]]:
    """Components of the graph joining i, j whenever m_ij is odd; these are the conjugacy classes of generators."""
    n = system.rank
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in system.pairs():
        m = system.label(i, j)
        if m is not INF and m % 2 == 1:
            parent[find(i)] = find(j)
    comps: dict[int, set[int]] = {}
    for i in range(n):
        comps.setdefault(find(i), set()).add(i)
    return sorted((frozenset(c) for c in comps.values()), key=min)


def evaluate(spec: LengthSpec, w: WordLike, system: CoxeterSystem | None = None) -> Fraction:
    """psi(w). Raw words are reduced first when ``system`` is given."""
    if system is not None:
        spec.validate(system)
        if not isinstance(w, GroupElement):
            w = m_reduce(system, w)
    word = w.word if isinstance(w, GroupElement) else tuple(w)
    return sum((spec.weights[i] for i in word), Fraction(0))


def ball_values(spec: LengthSpec, ball: CayleyBall) -> tuple[np.ndarray, int]:
    """psi on every ball element as integers over a common denominator."""
    ints, den = spec.scaled()
    return ball.letter_counts() @ ints, den


# finite-type recognition ---------------------------------------------------

_EXCEPTIONAL_ORDERS = {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152, "H3": 120, "H4": 14400}


@dataclass(frozen=True)
class ComponentType:
    generators: tuple[int, ...]
    name: str | None  # None when the component is not of finite type
    order: int | None


def _components(system: CoxeterSystem, subset: Sequence[int]) -> list[list[int]]:
    left = set(subset)
    out = []
    while left:
        start = min(left)
        comp, stack = {start}, [start]
        while stack:
            i = stack.pop()
            for j in list(left):
                if j not in comp and system.label(i, j) != 2:
                    comp.add(j)
                    stack.append(j)
        left -= comp
        out.append(sorted(comp))
    return out


def _classify_irreducible(system: CoxeterSystem, comp: list[int]) -> tuple[str | None, int | None]:
    n = len(comp)
    if n == 1:
        return "A1", 2
    edges = {}
    for a in range(n):
        for b in range(a + 1, n):
            m = system.label(comp[a], comp[b])
            if m != 2:
                if m is INF:
                    return None, None
                edges[(a, b)] = m
    if n == 2:
        m = next(iter(edges.values()))
        return f"I2({m})", 2 * m
    if len(edges) != n - 1:
        return None, None  # connected with a cycle
    deg = [0] * n
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
        adj[a].append(b)
        adj[b].append(a)
    labels = sorted(edges.values())
    big = [m for m in labels if m != 3]
    fact = math.factorial
    if max(deg) <= 2:
        ends = [i for i in range(n) if deg[i] == 1]
        path = [ends[0]]
        while len(path) < n:
            nxt = [j for j in adj[path[-1]] if j not in path]
            path.append(nxt[0])
        seq = [edges[tuple(sorted((path[k], path[k + 1])))] for k in range(n - 1)]
        if not big:
            return f"A{n}", fact(n + 1)
        if len(big) > 1:
            return None, None
        m = big[0]
        at_end = seq[0] == m or seq[-1] == m
        if m == 4 and at_end:
            return f"B{n}", 2**n * fact(n)
        if m == 4 and n == 4:
            return "F4", _EXCEPTIONAL_ORDERS["F4"]
        if m == 5 and at_end and n in (3, 4):
            name = f"H{n}"
            return name, _EXCEPTIONAL_ORDERS[name]
        return None, None
    if big:
        return None, None
    branch = [i for i in range(n) if deg[i] >= 3]
    if len(branch) != 1 or deg[branch[0]] != 3:
        return None, None
    c = branch[0]
    arms = []
    for start in adj[c]:
        length, prev, cur = 1, c, start
        while deg[cur] == 2:
            nxt = [j for j in adj[cur] if j != prev][0]
            prev, cur = cur, nxt
            length += 1
        if deg[cur] != 1:
            return None, None
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}", 2 ** (n - 1) * fact(n)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        name = f"E{n}"
        return name, _EXCEPTIONAL_ORDERS[name]
    return None, None


def classify_parabolic(system: CoxeterSystem, subset: Iterable[int]) -> list[ComponentType]:
    """Irreducible components of the parabolic subgroup with their finite types."""
    sub = sorted(set(system.check_generator(i) for i in subset))
    out = []
    for comp in _components(system, sub):
        name, order = _classify_irreducible(system, comp)
        out.append(ComponentType(tuple(comp), name, order))
    return out


def is_finite_parabolic(system: CoxeterSystem, subset: Iterable[int]) -> bool:
    return all(c.name is not None for c in classify_parabolic(system, subset))


def parabolic_order(system: CoxeterSystem, subset: Iterable[int]) -> int | None:
    """Order of the parabolic subgroup from the catalogue; None if infinite."""
    comps = classify_parabolic(system, subset)
    if any(c.name is None for c in comps):
        return None
    return math.prod(c.order for c in comps)


def enumerate_parabolic(system: CoxeterSystem, subset: Iterable[int], cap: int = 10**5) -> int | None:
    """Order of the parabolic subgroup by exhaustive enumeration, None past ``cap``."""
    sub = sorted(set(subset))
    if not sub:
        return 1
    sub_system = system.restrict(sub)
    radius = 1
    while True:
        try:
            ball = CayleyBall(sub_system, radius, max_elements=cap)
        except BallCapExceeded:
            return None
        if ball.is_complete_group:
            return ball.size
        radius *= 2


@dataclass(frozen=True)
class ProperResult:
    proper: bool
    complement: tuple[int, ...]
    components: tuple[ComponentType, ...]
    order: int | None


def is_proper_indicator(system: CoxeterSystem, subset: Iterable[int]) -> ProperResult:
    """Whether psi_I is proper: the generators outside I span a finite group."""
    sub = frozenset(system.check_generator(i) for i in subset)
    for comp in odd_components(system):
        if comp & sub and not comp <= sub:
            raise CoxeterError("indicator set splits an odd component")
    rest = tuple(i for i in range(system.rank) if i not in sub)
    if not rest:
        return ProperResult(True, rest, (), 1)
    comps = tuple(classify_parabolic(system, rest))
    finite = all(c.name is not None for c in comps)
    order = math.prod(c.order for c in comps) if finite else None
    return ProperResult(finite, rest, comps, order)
