"""Exact arithmetic in the Hecke algebra on the T-basis and its Psi operators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .coxeter import (
    CoxeterSystem,
    GroupElement,
    WordLike,
    cayley_ball,
    inverse,
    m_reduce,
    multiply,
)
from .gamma import gamma
from .lengths import LengthSpec, ball_values, evaluate, odd_components
from .spectral import TruncatedOperator
from .surds import Surd


class InvalidHeckeParams(ValueError):
    pass


@dataclass(frozen=True)
class HeckeParams:
    """One positive rational q per generator, equal on conjugate generators."""

    system: CoxeterSystem
    q: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        q = tuple(Fraction(x) for x in self.q)
        object.__setattr__(self, "q", q)
        if len(q) != self.system.rank:
            raise InvalidHeckeParams(f"{len(q)} parameters for rank {self.system.rank}")
        if any(x <= 0 for x in q):
            raise InvalidHeckeParams("parameters must be positive")
        for comp in odd_components(self.system):
            if len({q[i] for i in comp}) > 1:
                names = ",".join(self.system.name(i) for i in sorted(comp))
                raise InvalidHeckeParams(f"conjugate generators {{{names}}} need equal parameters")

    @classmethod
    def trivial(cls, system: CoxeterSystem) -> "HeckeParams":
        return cls(system, (Fraction(1),) * system.rank)

    @classmethod
    def parse(cls, system: CoxeterSystem, text: str) -> "HeckeParams":
        try:
            vals = [Fraction(t.strip()) for t in text.split(",") if t.strip()]
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidHeckeParams(f"bad parameter list {text!r}: {exc}") from None
        return cls(system, tuple(vals))

    @cached_property
    def p(self) -> tuple[Surd, ...]:
        """(q_s - 1) / sqrt(q_s) for each generator."""
        return tuple(Surd.sqrt(q) * ((q - 1) / q) for q in self.q)

    @property
    def is_group_algebra(self) -> bool:
        return all(x == 1 for x in self.q)


class HeckeElement:
    """Finite linear combination of basis vectors T_w with exact coefficients."""

    __slots__ = ("system", "_terms")

    def __init__(self, system: CoxeterSystem, terms: Mapping[GroupElement, Surd | Fraction | int] | None = None):
        self.system = system
        clean: dict[GroupElement, Surd] = {}
        for w, c in (terms or {}).items():
            c = c if isinstance(c, Surd) else Surd(c)
            if c:
                clean[w] = c
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def basis(cls, system: CoxeterSystem, w: WordLike) -> "HeckeElement":
        w = w if isinstance(w, GroupElement) else m_reduce(system, w)
        return cls(system, {w: Surd(1)})

    @classmethod
    def one(cls, system: CoxeterSystem) -> "HeckeElement":
        return cls(system, {GroupElement(): Surd(1)})

    @property
    def terms(self) -> dict[GroupElement, Surd]:
        return dict(self._terms)

    def coefficient(self, w: GroupElement) -> Surd:
        return self._terms.get(w, Surd())

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, Surd()) + c
        return HeckeElement(self.system, out)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement(self.system, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def scale(self, c) -> "HeckeElement":
        c = c if isinstance(c, Surd) else Surd(c)
        return HeckeElement(self.system, {w: c * x for w, x in self._terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, HeckeElement) and self._terms == other._terms

    def __repr__(self) -> str:
        return f"HeckeElement({self.format()})"

    def format(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w, c in self._terms.items():
            word = "".join(self.system.name(i) for i in w.word) or "e"
            parts.append(f"({c}) T[{word}]")
        return " + ".join(parts)


def _left_generator(params: HeckeParams, s: int, x: HeckeElement) -> HeckeElement:
    """T_s x, from T_s T_w = T_{sw} + p_s T_w when |sw| < |w|."""
    system = params.system
    out: dict[GroupElement, Surd] = {}
    ps = params.p[s]
    for w, c in x:
        sw = multiply(system, (s,), w)
        out[sw] = out.get(sw, Surd()) + c
        if sw.length < w.length and ps:
            out[w] = out.get(w, Surd()) + ps * c
    return HeckeElement(system, out)


def hecke_multiply(params: HeckeParams, a: HeckeElement, b: HeckeElement) -> HeckeElement:
    total = HeckeElement(params.system)
    for x, cx in a:
        # T_x = T_{x_1} ... T_{x_k} for the reduced word of x
        acc = b
        for s in reversed(x.word):
            acc = _left_generator(params, s, acc)
        total = total + acc.scale(cx)
    return total


def hecke_adjoint(a: HeckeElement) -> HeckeElement:
    """T_w -> T_{w^-1}; coefficients are real."""
    return HeckeElement(a.system, {inverse(a.system, w): c for w, c in a})


def hecke_trace(a: HeckeElement) -> Surd:
    return a.coefficient(GroupElement())


def hecke_operator_matrix(params: HeckeParams, a: HeckeElement, radius: int) -> TruncatedOperator:
    """Left multiplication by ``a`` on the basis of the radius-``radius`` ball."""
    system = params.system
    ball = cayley_ball(system, radius)
    n = ball.count_upto(radius)
    spread = max((w.length for w, _ in a), default=0)
    mat = np.zeros((n, n))
    for col in range(n):
        img = hecke_multiply(params, a, HeckeElement.basis(system, ball.element(col)))
        for w, c in img:
            row = ball.index(w)
            if 0 <= row < n:
                mat[row, col] = float(c)
    return TruncatedOperator(ball, radius, mat, radius - spread)


def delta_psi(spec: LengthSpec, x: HeckeElement) -> HeckeElement:
    """The diagonal generator T_w -> psi(w) T_w."""
    return HeckeElement(x.system, {w: c * evaluate(spec, w) for w, c in x})


def psi_hecke(params: HeckeParams, spec: LengthSpec, u: int, w: int, v: WordLike) -> HeckeElement:
    """Psi^{T_u, T_w}(T_v) = gamma(v) T_{uvw} + 1/2 gamma_S(v) (psi(uv) - psi(v)) p_w T_{uv}."""
    system = params.system
    spec.validate(system)
    u, w = system.check_generator(u), system.check_generator(w)
    v = v if isinstance(v, GroupElement) else m_reduce(system, v)
    g = gamma(system, spec, u, w, v)
    g_std = gamma(system, LengthSpec.standard(system.rank), u, w, v)
    uv = multiply(system, (u,), v)
    uvw = multiply(system, uv, (w,))
    out = {uvw: Surd(g)}
    second = params.p[w] * (g_std * (evaluate(spec, uv) - evaluate(spec, v)) / 2)
    if second:
        out[uv] = out.get(uv, Surd()) + second
    return HeckeElement(system, out)


def psi_hecke_definition(params: HeckeParams, spec: LengthSpec, u: WordLike, w: WordLike, v: WordLike) -> HeckeElement:
    """Delta(T_u T_v T_w) + T_u Delta(T_v) T_w - Delta(T_u T_v) T_w - T_u Delta(T_v T_w)."""
    system = params.system
    spec.validate(system)
    Tu, Tw, Tv = HeckeElement.basis(system, u), HeckeElement.basis(system, w), HeckeElement.basis(system, v)
    mul = lambda x, y: hecke_multiply(params, x, y)
    D = lambda x: delta_psi(spec, x)
    uv = mul(Tu, Tv)
    vw = mul(Tv, Tw)
    return D(mul(uv, Tw)) + mul(mul(Tu, D(Tv)), Tw) - mul(D(uv), Tw) - mul(Tu, D(vw))


@dataclass
class HeckeS2Result:
    exact_sum: Surd
    bound: Surd
    support: int
    support_complete: bool

    @property
    def within_bound(self) -> bool:
        return self.exact_sum <= self.bound


def hecke_s2_norm(params: HeckeParams, spec: LengthSpec, u: int, w: int, radius: int) -> HeckeS2Result:
    """Squared S_2 norm of Psi^{T_u,T_w} summed over the ball, and its upper bound
    ||gamma||^2 + 1/4 psi(u)^2 p_u^2 ||gamma_S||^2."""
    system = params.system
    spec.validate(system)
    u, w = system.check_generator(u), system.check_generator(w)
    ball = cayley_ball(system, radius + 2)
    n = ball.count_upto(radius)
    ids = np.arange(n)
    psi, den = ball_values(spec, ball)
    length = ball.lengths
    uv = ball.left_translate((u,), ids)
    vw = ball.right_translate(ids, (w,))
    uvw = ball.right_translate(uv, (w,))
    g = psi[uvw] + psi[ids] - psi[uv] - psi[vw]
    gs = length[uvw] + length[ids] - length[uv] - length[vw]
    shift = psi[uv] - psi[ids]
    p2 = (params.p[u] * params.p[u]).rational()
    first = Fraction(int(np.sum(g.astype(object) ** 2)), den * den)
    second = Fraction(int(np.sum((gs.astype(object) * shift.astype(object)) ** 2)), den * den)
    norm_std = Fraction(int(np.sum(gs.astype(object) ** 2)))
    psi_u = evaluate(spec, (u,))
    exact = first + p2 * second / 4
    bound = first + psi_u * psi_u * p2 * norm_std / 4
    nz = np.nonzero((g != 0) | (gs != 0))[0]
    complete = bool(np.all(length[nz] < radius))
    return HeckeS2Result(Surd(exact), Surd(bound), int(nz.size), complete)


def psi_hecke_matrix(params: HeckeParams, spec: LengthSpec, u: int, w: int, radius: int) -> TruncatedOperator:
    """Matrix of Psi^{T_u,T_w} on the ball, assembled column by column from the
    closed formula; columns of length <= radius - 2 are interior."""
    system = params.system
    ball = cayley_ball(system, radius + 2)
    n = ball.count_upto(radius)
    mat = np.zeros((n, n))
    for col in range(n):
        img = psi_hecke(params, spec, u, w, ball.element(col))
        for x, c in img:
            row = ball.index(x)
            if 0 <= row < n:
                mat[row, col] = float(c)
    return TruncatedOperator(ball, radius, mat, radius - 2)
