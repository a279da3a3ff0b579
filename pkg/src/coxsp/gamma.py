"""The second-order difference gamma_{u,w}(v) of a length function, and its tables."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .coxeter import (
    CayleyBall,
    CoxeterError,
    CoxeterSystem,
    GroupElement,
    WordLike,
    _as_word,
    cayley_ball,
    inverse,
    m_reduce,
    multiply,
)
from .diagram import cliques
from .lengths import LengthSpec, ball_values, evaluate


def _elem(system: CoxeterSystem, x: WordLike) -> GroupElement:
    return x if isinstance(x, GroupElement) else m_reduce(system, x)


def gamma(system: CoxeterSystem, spec: LengthSpec, u: WordLike, w: WordLike, v: WordLike) -> Fraction:
    """psi(u v w) + psi(v) - psi(u v) - psi(v w), exactly."""
    spec.validate(system)
    u, w, v = _elem(system, u), _elem(system, w), _elem(system, v)
    uv = multiply(system, u, v)
    vw = multiply(system, v, w)
    uvw = multiply(system, uv, w)
    psi = lambda x: evaluate(spec, x)
    return psi(uvw) + psi(v) - psi(uv) - psi(vw)


@dataclass
class GammaTable:
    """Nonzero gamma values on the ball of the given radius, in ball order."""

    system: CoxeterSystem
    spec: LengthSpec | None  # None for clique products
    u: GroupElement
    w: GroupElement
    radius: int
    entries: dict[GroupElement, Fraction] = field(default_factory=dict)

    @property
    def support(self) -> list[GroupElement]:
        return list(self.entries)

    @property
    def support_complete(self) -> bool:
        """No support point in the outermost shell."""
        return all(v.length < self.radius for v in self.entries)

    def values(self) -> list[Fraction]:
        return list(self.entries.values())

    def __len__(self) -> int:
        return len(self.entries)

    def to_text(self) -> str:
        lines = []
        for v, val in self.entries.items():
            word = " ".join(self.system.name(i) for i in v.word) or "e"
            lines.append(f"{word}\t{val}")
        return "\n".join(lines) + ("\n" if lines else "")


def _ball_for(system: CoxeterSystem, radius: int, extra: int, max_elements: int | None) -> CayleyBall:
    return cayley_ball(system, radius + extra, max_elements)


def _gamma_ids(ball: CayleyBall, ids: np.ndarray, u: tuple[int, ...], w: tuple[int, ...]):
    uv = ball.left_translate(u, ids)
    vw = ball.right_translate(ids, w)
    uvw = ball.right_translate(uv, w)
    if (uv < 0).any() or (vw < 0).any() or (uvw < 0).any():
        raise AssertionError("translation left the enlarged ball")
    return uv, vw, uvw


def gamma_table(
    system: CoxeterSystem,
    spec: LengthSpec,
    u: WordLike,
    w: WordLike,
    radius: int,
    max_elements: int | None = None,
) -> GammaTable:
    spec.validate(system)
    ue, we = _elem(system, u), _elem(system, w)
    ball = _ball_for(system, radius, ue.length + we.length, max_elements)
    ids = np.arange(ball.count_upto(radius))
    psi, den = ball_values(spec, ball)
    uv, vw, uvw = _gamma_ids(ball, ids, ue.word, we.word)
    vals = psi[uvw] + psi[ids] - psi[uv] - psi[vw]
    nz = np.nonzero(vals)[0]
    entries = {ball.element(int(x)): Fraction(int(vals[x]), den) for x in nz}
    return GammaTable(system, spec, ue, we, radius, entries)


def intertwiner_set(
    system: CoxeterSystem, u: WordLike, w: WordLike, radius: int, max_elements: int | None = None
) -> list[GroupElement]:
    """Ball elements v with u v = v w, in ball order."""
    ue, we = _elem(system, u), _elem(system, w)
    if ue.length == 1 and we.length == 1:
        return _generator_intertwiners(system, ue.word[0], we.word[0], radius, max_elements)
    ball = _ball_for(system, radius, max(ue.length, we.length), max_elements)
    ids = np.arange(ball.count_upto(radius))
    uv = ball.left_translate(ue.word, ids)
    vw = ball.right_translate(ids, we.word)
    hits = np.nonzero(uv == vw)[0]
    return [ball.element(int(x)) for x in hits]


def _generator_intertwiners(
    system: CoxeterSystem, u: int, w: int, radius: int, max_elements: int | None
) -> list[GroupElement]:
    """Same set using only the radius-``radius`` ball.

    Below the top shell both products stay inside the ball. On the top shell,
    when u and w both lengthen v, u v = v w holds iff v^-1(alpha_u) = +-alpha_w
    in the geometric representation; float hits are confirmed exactly.
    """
    ball = cayley_ball(system, radius, max_elements)
    n = ball.count_upto(radius)
    ids = np.arange(n)
    uv, vw = ball.left[u, :n], ball.right[w, :n]
    found = (uv >= 0) & (uv == vw)
    top = ball.shell(radius)
    cand = np.array([x for x in top if uv[x] < 0 and vw[x] < 0], dtype=np.int64) if len(top) else ids[:0]
    if cand.size:
        bform = np.asarray(system.bilinear_form)
        vec = np.zeros((cand.size, system.rank))
        vec[:, u] = 1.0
        cur = cand.copy()
        rows = np.arange(cand.size)
        # v = s_{f_1} ... s_{f_k}; apply s_{f_1} first to reach v^-1(alpha_u)
        for _ in range(radius):
            s = ball.first[cur]
            vec[rows, s] -= 2.0 * np.einsum("ij,ij->i", bform[s], vec)
            cur = ball.tail[cur]
        target = np.zeros(system.rank)
        target[w] = 1.0
        close = np.minimum(np.abs(vec - target).max(axis=1), np.abs(vec + target).max(axis=1)) < 1e-6
        for x in cand[close]:
            v = ball.element(int(x))
            if multiply(system, (u,), v) == multiply(system, v, (w,)):
                found[x] = True
    return [ball.element(int(x)) for x in np.nonzero(found)[0]]


@dataclass
class ShiftingReport:
    checked: int
    support_size: int
    intertwiner_size: int
    counterexamples: list[tuple[GroupElement, Fraction, Fraction]]

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def check_shifting_identity(
    system: CoxeterSystem, spec: LengthSpec, u: WordLike, w: WordLike, radius: int
) -> ShiftingReport:
    """Compare |gamma(v)| with 2 psi(u) 1(uv = vw) and 2 psi(w) 1(uv = vw) on the ball."""
    ue, we = _elem(system, u), _elem(system, w)
    table = gamma_table(system, spec, ue, we, radius)
    inter = set(intertwiner_set(system, ue, we, radius))
    two_u, two_w = 2 * evaluate(spec, ue), 2 * evaluate(spec, we)
    bad = []
    for v in ball_elements(system, radius):
        g = abs(table.entries.get(v, Fraction(0)))
        hit = v in inter
        expect_u = two_u if hit else Fraction(0)
        expect_w = two_w if hit else Fraction(0)
        if g != expect_u or g != expect_w:
            bad.append((v, g, expect_u))
    n = cayley_ball(system, radius + ue.length + we.length).count_upto(radius)
    return ShiftingReport(n, len(table), len(inter), bad)


def ball_elements(system: CoxeterSystem, radius: int) -> list[GroupElement]:
    return cayley_ball(system, radius).elements()


def gamma_lp_norm(table: GammaTable | Iterable[Fraction], p) -> float:
    """l_p norm of the table values (p = inf gives the maximum)."""
    vals = table.values() if isinstance(table, GammaTable) else list(table)
    p = math.inf if isinstance(p, str) and p.lower() in ("inf", "infinity") else float(p)
    if not vals:
        return 0.0
    if p == math.inf:
        return float(max(abs(x) for x in vals))
    if p <= 0:
        raise ValueError("p must be positive")
    if p.is_integer():
        total = sum((abs(x) ** int(p) for x in vals), Fraction(0))
        return float(total) ** (1.0 / p)
    return float(sum(float(abs(x)) ** p for x in vals)) ** (1.0 / p)


def tilde_gamma_table(
    system: CoxeterSystem, u: WordLike, w: WordLike, radius: int, max_elements: int | None = None
) -> GammaTable:
    """Pointwise product over all cliques I of gamma for the indicator length of S minus I."""
    if not system.is_right_angled:
        raise CoxeterError("clique products need a right-angled system")
    ue, we = _elem(system, u), _elem(system, w)
    ball = _ball_for(system, radius, ue.length + we.length, max_elements)
    ids = np.arange(ball.count_upto(radius))
    uv, vw, uvw = _gamma_ids(ball, ids, ue.word, we.word)
    counts = ball.letter_counts()
    n = system.rank
    factors = []
    alive = np.ones(ids.size, dtype=bool)
    for clique in cliques(system):
        weights = np.array([0 if i in clique else 1 for i in range(n)], dtype=np.int64)
        psi = counts @ weights
        vals = psi[uvw] + psi[ids] - psi[uv] - psi[vw]
        alive &= vals != 0
        factors.append(vals)
    entries = {}
    for x in np.nonzero(alive)[0]:
        prod = 1
        for f in factors:
            prod *= int(f[x])
        entries[ball.element(int(x))] = Fraction(prod)
    return GammaTable(system, None, ue, we, radius, entries)


def product_support_bound(system: CoxeterSystem, u: WordLike, w: WordLike) -> int:
    """Length beyond which clique products vanish on hyperbolic right-angled systems."""
    ue, we = _elem(system, u), _elem(system, w)
    return ue.length + we.length + system.rank + 2
