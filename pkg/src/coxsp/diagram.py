"""Labeled diagrams: parity paths, gradient-S_p decisions, hyperbolicity, cliques."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .coxeter import INF, CoxeterError, CoxeterSystem


class Verdict(enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"
    NA = "N/A"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class LabeledDiagram:
    """Edge classes of the Coxeter diagram: even finite labels and odd labels."""

    system: CoxeterSystem
    even: frozenset[tuple[int, int]]
    odd: frozenset[tuple[int, int]]

    @classmethod
    def of(cls, system: CoxeterSystem) -> "LabeledDiagram":
        even, odd = set(), set()
        for i, j in system.pairs():
            m = system.label(i, j)
            if m is INF:
                continue
            (even if m % 2 == 0 else odd).add((i, j))
        return cls(system, frozenset(even), frozenset(odd))

    def odd_neighbours(self, i: int) -> list[int]:
        return sorted(j for a, b in self.odd for j in ((b,) if a == i else (a,) if b == i else ()))


# parity paths ---------------------------------------------------------------


def block_length(system: CoxeterSystem, i: int, j: int) -> int:
    """floor(m_ij / 2)."""
    return system.label(i, j) // 2


def letter_a(system: CoxeterSystem, i: int, j: int) -> int:
    return i


def letter_b(system: CoxeterSystem, i: int, j: int) -> int:
    return i if system.label(i, j) % 2 == 0 else j


def letter_c(system: CoxeterSystem, i: int, j: int) -> int:
    return j


def letter_d(system: CoxeterSystem, i: int, j: int) -> int:
    """The generator a parity path must continue with after the pair (j, i)."""
    return j if system.label(i, j) % 2 == 0 else i


def block_word(system: CoxeterSystem, i: int, j: int) -> tuple[int, ...]:
    """Alternating block: s_i (s_j s_i)^(k-1) for even m, (s_i s_j)^k for odd m."""
    m = system.label(i, j)
    if m is INF:
        raise CoxeterError("block words need a finite label")
    k = m // 2
    if m % 2 == 0:
        return (i,) + (j, i) * (k - 1)
    return (i, j) * k


@dataclass(frozen=True)
class ParityPath:
    """Generators (j_1, i_1, ..., j_k, i_k), read as consecutive pairs (j_l, i_l)."""

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))
        if len(self.vertices) % 2:
            raise ValueError("a parity path has even length")

    @property
    def pairs(self) -> list[tuple[int, int]]:
        v = self.vertices
        return [(v[2 * l], v[2 * l + 1]) for l in range(len(v) // 2)]

    def doubled(self) -> "ParityPath":
        return ParityPath(self.vertices + self.vertices[:2])

    def chain_word(self, system: CoxeterSystem) -> tuple[int, ...]:
        """Concatenated blocks r_{i_1,j_1} ... r_{i_k,j_k}."""
        out: tuple[int, ...] = ()
        for j, i in self.pairs:
            out += block_word(system, i, j)
        return out

    def format(self, system: CoxeterSystem) -> str:
        return "(" + ",".join(system.name(v) for v in self.vertices) + ")"


@dataclass(frozen=True)
class PathCheck:
    ok: bool
    reason: str | None = None
    step: int | None = None  # 1-based pair index of the first violation

    def __bool__(self) -> bool:
        return self.ok


def is_parity_path(system: CoxeterSystem, path: ParityPath | Sequence[int]) -> PathCheck:
    if not isinstance(path, ParityPath):
        path = ParityPath(tuple(path))
    for v in path.vertices:
        system.check_generator(v)
    pairs = path.pairs
    if not pairs:
        return PathCheck(False, "empty path")
    for l, (j, i) in enumerate(pairs, start=1):
        if i == j:
            return PathCheck(False, f"pair {l} repeats a generator", l)
        if system.label(i, j) is INF:
            return PathCheck(False, f"pair {l} has an infinite label", l)
    for l in range(len(pairs) - 1):
        (j, i), (j2, i2) = pairs[l], pairs[l + 1]
        if j2 != letter_d(system, i, j):
            return PathCheck(False, f"pair {l + 2} does not start with the parity letter of pair {l + 1}", l + 2)
        if i2 in (i, j):
            return PathCheck(False, f"pair {l + 2} turns back onto pair {l + 1}", l + 2)
    return PathCheck(True)


def is_cyclic_parity_path(system: CoxeterSystem, path: ParityPath | Sequence[int]) -> bool:
    if not isinstance(path, ParityPath):
        path = ParityPath(tuple(path))
    return bool(is_parity_path(system, path)) and bool(is_parity_path(system, path.doubled()))


@dataclass(frozen=True)
class CyclicPathResult:
    exists: bool
    witness: ParityPath | None
    reason: str

    def __bool__(self) -> bool:
        return self.exists


def _tree_path(adj: dict[int, list[int]], a: int, b: int) -> list[int]:
    """Vertices of the unique path from a to b in a forest (BFS, smallest first)."""
    prev = {a: None}
    queue = [a]
    for v in queue:
        if v == b:
            break
        for u in adj[v]:
            if u not in prev:
                prev[u] = v
                queue.append(u)
    out = [b]
    while out[-1] != a:
        out.append(prev[out[-1]])
    return out[::-1]


def _find_cycle(n: int, adj: dict[int, list[int]]) -> list[int] | None:
    """A simple cycle of an undirected simple graph, searched from low indices."""
    colour = [0] * n
    parent = [-1] * n
    for root in range(n):
        if colour[root]:
            continue
        stack = [(root, iter(adj[root]))]
        colour[root] = 1
        while stack:
            v, it = stack[-1]
            for u in it:
                if u == parent[v]:
                    continue
                if colour[u] == 1:
                    cyc = [v]
                    while cyc[-1] != u:
                        cyc.append(parent[cyc[-1]])
                    return cyc[::-1]
                if colour[u] == 0:
                    colour[u] = 1
                    parent[u] = v
                    stack.append((u, iter(adj[u])))
                    break
            else:
                colour[v] = 2
                stack.pop()
    return None


def _walk_pairs(walk: Sequence[int]) -> list[int]:
    """(x0, x1, x1, x2, ..., x_{k-1}, x_k) for a walk x0..xk."""
    out: list[int] = []
    for a, b in zip(walk, walk[1:]):
        out += [a, b]
    return out


def has_cyclic_parity_path(system: CoxeterSystem) -> CyclicPathResult:
    """Structural test: the odd-label graph is a forest, each of its components
    has at most one outgoing even edge, and no even edge stays inside one.
    A witness path is built whenever a condition fails."""
    n = system.rank
    diag = LabeledDiagram.of(system)
    adj = {i: diag.odd_neighbours(i) for i in range(n)}

    cycle = _find_cycle(n, adj)
    if cycle is not None:
        verts = _walk_pairs(cycle + [cycle[0]])
        names = ",".join(system.name(v) for v in cycle)
        return CyclicPathResult(True, ParityPath(verts), f"odd-label cycle through {names}")

    comp_of = [-1] * n
    comps: list[list[int]] = []
    for v in range(n):
        if comp_of[v] < 0:
            members = sorted(_tree_component(adj, v))
            for u in members:
                comp_of[u] = len(comps)
            comps.append(members)

    for cid, members in enumerate(comps):
        outgoing = sorted(
            (t, r)
            for (a, b) in diag.even
            for t, r in ((a, b), (b, a))
            if comp_of[t] == cid and comp_of[r] != cid
        )
        if len(outgoing) >= 2:
            (t1, r1), (t2, r2) = outgoing[0], outgoing[1]
            return CyclicPathResult(
                True,
                _attachment_witness(adj, t1, r1, t2, r2),
                f"odd component {{{_names(system, members)}}} has two outgoing even edges "
                f"{system.name(t1)}-{system.name(r1)} and {system.name(t2)}-{system.name(r2)}",
            )
    for a, b in sorted(diag.even):
        if comp_of[a] == comp_of[b]:
            return CyclicPathResult(
                True,
                _attachment_witness(adj, a, b, b, a),
                f"even edge {system.name(a)}-{system.name(b)} lies inside an odd component",
            )
    return CyclicPathResult(False, None, "odd-label graph is a forest with at most one even attachment per component")


def _tree_component(adj: dict[int, list[int]], v: int) -> set[int]:
    seen, stack = {v}, [v]
    while stack:
        x = stack.pop()
        for u in adj[x]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def _names(system: CoxeterSystem, vs: Iterable[int]) -> str:
    return ",".join(system.name(v) for v in vs)


def _attachment_witness(adj: dict[int, list[int]], t1: int, r1: int, t2: int, r2: int) -> ParityPath:
    if t1 == t2:
        return ParityPath((t1, r1, t1, r2))
    there = _tree_path(adj, t1, t2)
    back = there[::-1]
    verts = _walk_pairs(there) + [t2, r2] + _walk_pairs(back) + [t1, r1]
    return ParityPath(tuple(verts))


def _search_cyclic(system: CoxeterSystem, avoid_two: bool) -> ParityPath | None:
    """Depth-first search for a directed cycle in the graph of allowed pairs."""
    n = system.rank

    def allowed(j: int, i: int) -> bool:
        m = system.label(i, j)
        return i != j and m is not INF and not (avoid_two and m == 2)

    def steps(state: tuple[int, int]) -> list[tuple[int, int]]:
        j, i = state
        j2 = letter_d(system, i, j)
        out = []
        for i2 in range(n):
            if i2 in (i, j) or not allowed(j2, i2):
                continue
            if avoid_two and (system.label(i, i2) == 2 or system.label(j, i2) == 2):
                continue
            out.append((j2, i2))
        return out

    states = [(j, i) for j in range(n) for i in range(n) if allowed(j, i)]
    colour = {s: 0 for s in states}
    for root in states:
        if colour[root]:
            continue
        stack = [root]
        iters = [iter(steps(root))]
        colour[root] = 1
        while stack:
            for nxt in iters[-1]:
                if colour[nxt] == 1:
                    cyc = stack[stack.index(nxt):]
                    return ParityPath(tuple(v for st in cyc for v in st))
                if colour[nxt] == 0:
                    colour[nxt] = 1
                    stack.append(nxt)
                    iters.append(iter(steps(nxt)))
                    break
            else:
                colour[stack.pop()] = 2
                iters.pop()
    return None


def find_cyclic_parity_path(system: CoxeterSystem, avoid_two: bool = False) -> ParityPath | None:
    """Search for a cyclic parity path; with ``avoid_two`` every label
    m(i_l, j_l), m(i_l, i_{l+1}), m(j_l, i_{l+1}) must differ from 2."""
    return _search_cyclic(system, avoid_two)


# decisions ------------------------------------------------------------------


@dataclass(frozen=True)
class Decision:
    verdict: Verdict
    rationale: str
    provenance: str
    witness: object = None
    details: dict = field(default_factory=dict)


def commuting_triple(system: CoxeterSystem) -> tuple[int, int, int] | None:
    """First (r, s, t) with m_rs = m_rt = 2 and m_st = inf."""
    n = system.rank
    for r in range(n):
        partners = [x for x in range(n) if x != r and system.label(r, x) == 2]
        for s, t in itertools.combinations(partners, 2):
            if system.label(s, t) is INF:
                return r, s, t
    return None


def decide_gradient_sp(system: CoxeterSystem) -> Decision:
    """Gradient-S_p for the word-length semigroup (uniform in p)."""
    if system.is_right_angled:
        triple = commuting_triple(system)
        if triple is None:
            return Decision(
                Verdict.YES,
                "no generator commutes with two generators that generate an infinite dihedral group",
                "right-angled triple criterion",
            )
        r, s, t = triple
        return Decision(
            Verdict.NO,
            f"{system.name(r)} commutes with {system.name(s)} and {system.name(t)}, "
            f"and m({system.name(s)},{system.name(t)}) = inf",
            "right-angled triple criterion",
            witness=triple,
        )
    cyc = has_cyclic_parity_path(system)
    if not cyc.exists:
        return Decision(Verdict.YES, f"no cyclic parity path ({cyc.reason})", "parity-path characterization")
    strict = find_cyclic_parity_path(system, avoid_two=True)
    if strict is not None:
        return Decision(
            Verdict.NO,
            f"cyclic parity path {strict.format(system)} avoids every label 2",
            "cyclic parity path without labels 2",
            witness=strict,
        )
    return Decision(
        Verdict.UNKNOWN,
        f"cyclic parity path {cyc.witness.format(system)} exists ({cyc.reason}) "
        "but every cyclic parity path meets a label 2",
        "mixed case: cyclic parity path through a label 2",
        witness=cyc.witness,
        details={"blocking": "label-2"},
    )


def is_small_at_infinity(system: CoxeterSystem) -> Decision:
    """Same verdict as :func:`decide_gradient_sp`, phrased through intertwiner sets."""
    d = decide_gradient_sp(system)
    if d.verdict is Verdict.YES:
        extra = "every set {v : u v = v w} with u, w generators is finite"
    elif d.verdict is Verdict.NO:
        extra = "some set {v : u v = v w} with u, w generators is infinite"
    else:
        extra = "finiteness of the sets {v : u v = v w} is undecided"
    return Decision(d.verdict, f"{d.rationale}; {extra}", d.provenance, d.witness, d.details)


def _require_right_angled(system: CoxeterSystem) -> None:
    if not system.is_right_angled:
        raise CoxeterError("system is not right-angled")


def is_hyperbolic_right_angled(system: CoxeterSystem) -> tuple[bool, tuple[int, int, int, int] | None]:
    """No s, t, u, v with m_st = m_uv = inf and all four cross labels 2."""
    _require_right_angled(system)
    free = [(a, b) for a, b in system.pairs() if system.label(a, b) is INF]
    for s, t in free:
        for u, v in free:
            if len({s, t, u, v}) < 4:
                continue
            if all(system.label(x, y) == 2 for x in (s, t) for y in (u, v)):
                return False, (s, t, u, v)
    return True, None


def cliques(system: CoxeterSystem, maximal: bool = False) -> list[frozenset[int]]:
    """Pairwise-commuting generator subsets, the empty set included."""
    _require_right_angled(system)
    n = system.rank
    out: list[frozenset[int]] = [frozenset()]
    frontier: list[tuple[int, ...]] = [()]
    while frontier:
        grown = []
        for c in frontier:
            start = c[-1] + 1 if c else 0
            for v in range(start, n):
                if all(system.label(v, x) == 2 for x in c):
                    grown.append(c + (v,))
        out.extend(frozenset(c) for c in grown)
        frontier = grown
    if maximal:
        out = [c for c in out if not any(c < d for d in out)]
    return sorted(out, key=lambda c: (len(c), sorted(c)))


def hecke_interface_set(system: CoxeterSystem) -> tuple[frozenset[int], bool]:
    """Generators commuting with two generators of infinite-order product,
    and whether they pairwise commute."""
    n = system.rank
    found = set()
    for r in range(n):
        partners = [x for x in range(n) if x != r and system.label(r, x) == 2]
        if any(system.label(s, t) is INF for s, t in itertools.combinations(partners, 2)):
            found.add(r)
    interface = frozenset(found)
    clique = all(system.label(a, b) == 2 for a, b in itertools.combinations(sorted(interface), 2))
    return interface, clique


# DOT export -------------------------------------------------------------------

_EDGE_STYLE = {
    "odd": 'color="blue", penwidth=2',
    "even": 'color="darkorange", penwidth=2',
    "inf": 'color="gray50", style="dashed"',
}


def to_dot(system: CoxeterSystem, name: str = "coxeter") -> str:
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for i in range(system.rank):
        lines.append(f'  {i + 1} [label="{system.name(i)}"];')
    for i, j in system.pairs():
        m = system.label(i, j)
        kind = "inf" if m is INF else ("odd" if m % 2 else "even")
        lab = "∞" if m is INF else str(m)
        lines.append(f'  {i + 1} -- {j + 1} [label="{lab}", {_EDGE_STYLE[kind]}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
