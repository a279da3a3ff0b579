"""Exact arithmetic in Q adjoined square roots of rationals.

A number is a finite sum of c_d * sqrt(d) with rational c_d and distinct
square-free integers d >= 1. Square roots of distinct square-free integers are
linearly independent over Q, so equality and zero tests are exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Union[int, Fraction]


@lru_cache(maxsize=4096)
def _squarefree_split(n: int) -> tuple[int, int]:
    """n = k^2 * d with d square-free; returns (k, d)."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    k, d, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            k *= p
        if n % p == 0:
            n //= p
            d *= p
        p += 1
    return k, d * n


class Surd:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict[int, Fraction] | Rational | None = None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = {1: Fraction(terms)}
        self._terms = {d: Fraction(c) for d, c in terms.items() if c != 0}
        self._hash = None

    @classmethod
    def sqrt(cls, q: Rational) -> "Surd":
        """Exact square root of a nonnegative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative number")
        if q == 0:
            return cls()
        # sqrt(a/b) = sqrt(a b) / b
        k, d = _squarefree_split(q.numerator * q.denominator)
        return cls({d: Fraction(k, q.denominator)})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_rational(self) -> bool:
        return set(self._terms) <= {1}

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._terms.get(1, Fraction(0))

    def _coerce(self, other) -> "Surd":
        if isinstance(other, Surd):
            return other
        if isinstance(other, (int, Fraction)):
            return Surd(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for d, c in other._terms.items():
            out[d] = out.get(d, 0) + c
        return Surd(out)

    __radd__ = __add__

    def __neg__(self) -> "Surd":
        return Surd({d: -c for d, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, Fraction] = {}
        for d1, c1 in self._terms.items():
            for d2, c2 in other._terms.items():
                g = math.gcd(d1, d2)
                d = (d1 // g) * (d2 // g)
                out[d] = out.get(d, 0) + c1 * c2 * g
        return Surd(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Surd({d: c / other for d, c in self._terms.items()})
        if isinstance(other, Surd) and other.is_rational():
            return self / other.rational()
        if isinstance(other, Surd) and len(other._terms) == 1:
            # 1 / (c sqrt d) = sqrt d / (c d)
            (d, c), = other._terms.items()
            return self * Surd({d: 1 / (c * d)})
        return NotImplemented

    def __pow__(self, n: int) -> "Surd":
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Surd(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.rational())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __float__(self) -> float:
        return float(sum(float(c) * math.sqrt(d) for d, c in self._terms.items()))

    def sign(self) -> int:
        """Sign, decided in floating point; exact for rationals."""
        if not self._terms:
            return 0
        if self.is_rational():
            return 1 if self.rational() > 0 else -1
        v = float(self)
        if v == 0:
            raise ArithmeticError("cannot decide the sign in binary64")
        return 1 if v > 0 else -1

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def __repr__(self) -> str:
        return f"Surd({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for d in sorted(self._terms):
            c = self._terms[d]
            if d == 1:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"sqrt({d})")
            else:
                parts.append(f"{c}*sqrt({d})")
        return " + ".join(parts).replace("+ -", "- ")
