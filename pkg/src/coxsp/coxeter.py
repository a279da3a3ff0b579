"""Coxeter systems, the word problem, normal forms and Cayley balls."""

from __future__ import annotations

import math
import os
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache, total_ordering
from typing import Iterable, Sequence, Union

import numpy as np


@total_ordering
class _Infinity:
    """The label of a pair of generators whose product has infinite order.

    Compares greater than every integer and refuses arithmetic.
    """

    _instance: "_Infinity | None" = None

    def __new__(cls) -> "_Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        return False

    def __hash__(self) -> int:
        return hash("coxsp.INF")

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
Label = Union[int, _Infinity]


def is_finite(label: Label) -> bool:
    return label is not INF


def _coerce_label(value) -> Label:
    if value is INF:
        return INF
    if isinstance(value, str):
        if value.strip().lower() in ("inf", "infinity", "oo", "∞"):
            return INF
        return int(value)
    if isinstance(value, float):
        if math.isinf(value) and value > 0:
            return INF
        if value.is_integer():
            return int(value)
        raise CoxeterError(f"non-integer label {value!r}")
    return int(value)


class CoxeterError(ValueError):
    """Invalid Coxeter data: bad matrix, bad generator index, bad subset."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class BallCapExceeded(RuntimeError):
    """Raised when a Cayley ball would exceed the configured element cap."""


DEFAULT_MAX_ELEMENTS = 10**6


def default_max_elements() -> int:
    env = os.environ.get("COXSP_MAX_ELEMENTS")
    if env:
        return int(env)
    return DEFAULT_MAX_ELEMENTS


@dataclass(frozen=True)
class CoxeterSystem:
    """A Coxeter matrix together with optional generator names.

    Generators are indexed from 0 internally; names default to s1, s2, ...
    """

    matrix: tuple[tuple[Label, ...], ...]
    names: tuple[str, ...] | None = None
    defaulted: tuple[tuple[int, int], ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self) -> None:
        rows = tuple(tuple(_coerce_label(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)
        n = len(rows)
        if n == 0:
            raise CoxeterError("rank must be positive")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise CoxeterError(f"row {i + 1} has {len(row)} entries, expected {n}")
            if row[i] != 1:
                raise CoxeterError(f"diagonal entry m[{i + 1},{i + 1}] must be 1")
            for j, m in enumerate(row):
                if i == j:
                    continue
                if m != rows[j][i]:
                    raise CoxeterError(f"matrix is not symmetric at ({i + 1},{j + 1})")
                if m is not INF and m < 2:
                    raise CoxeterError(f"off-diagonal label m[{i + 1},{j + 1}] = {m} < 2")
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != n:
                raise CoxeterError(f"{len(names)} names given for rank {n}")
            if len(set(names)) != n:
                raise CoxeterError("generator names must be distinct")
            object.__setattr__(self, "names", names)

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.matrix, self.names))

    @classmethod
    def from_pairs(
        cls,
        rank: int,
        labels: dict[tuple[int, int], Label] | None = None,
        default: Label = INF,
        names: Sequence[str] | None = None,
    ) -> "CoxeterSystem":
        """Build from 0-based pair labels; unlisted pairs get ``default``."""
        m = [[1 if i == j else default for j in range(rank)] for i in range(rank)]
        for (i, j), lab in (labels or {}).items():
            if i == j:
                raise CoxeterError("pair labels must be off-diagonal")
            m[i][j] = m[j][i] = lab
        return cls(tuple(map(tuple, m)), tuple(names) if names else None)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def label(self, i: int, j: int) -> Label:
        return self.matrix[i][j]

    @cached_property
    def is_right_angled(self) -> bool:
        return all(
            self.matrix[i][j] in (2, INF)
            for i in range(self.rank)
            for j in range(i + 1, self.rank)
        )

    def name(self, i: int) -> str:
        return self.names[i] if self.names else f"s{i + 1}"

    def format_word(self, word: Iterable[int]) -> str:
        letters = [self.name(i) for i in word]
        return " ".join(letters) if letters else "e"

    def check_generator(self, i: int) -> int:
        if not isinstance(i, (int, np.integer)) or not 0 <= i < self.rank:
            raise CoxeterError(f"generator index {i!r} out of range for rank {self.rank}")
        return int(i)

    def restrict(self, subset: Iterable[int]) -> "CoxeterSystem":
        """The standard parabolic subsystem on ``subset`` (sorted)."""
        idx = sorted(set(self.check_generator(i) for i in subset))
        if not idx:
            raise CoxeterError("empty generator subset")
        mat = tuple(tuple(self.matrix[i][j] for j in idx) for i in idx)
        names = tuple(self.name(i) for i in idx)
        return CoxeterSystem(mat, names)

    @cached_property
    def bilinear_form(self) -> np.ndarray:
        """Gram matrix of the Tits geometric representation."""
        n = self.rank
        b = np.empty((n, n))
        for i in range(n):
            for j in range(n):
                m = self.matrix[i][j]
                b[i, j] = -1.0 if m is INF else -math.cos(math.pi / m)
        b.flags.writeable = False
        return b

    def pairs(self) -> list[tuple[int, int]]:
        n = self.rank
        return [(i, j) for i in range(n) for j in range(i + 1, n)]

    def to_coxdef(self) -> str:
        lines = [f"rank {self.rank}"]
        if self.names:
            lines.append("names " + " ".join(self.names))
        for i, j in self.pairs():
            lines.append(f"m {i + 1} {j + 1} {self.matrix[i][j]}")
        return "\n".join(lines) + "\n"


_TOKEN = re.compile(r"\S+")


def parse_system(text: str) -> CoxeterSystem:
    """Parse the coxdef text format.

    ``rank <n>`` first, then optionally ``names ...``, then ``m <i> <j> <label>``
    lines (1-based indices, label an integer >= 2 or ``inf``). A full matrix may
    instead be given as ``row <label> ...`` lines. Unmentioned pairs default to
    ``inf``; they are listed in ``system.defaulted``.
    """
    rank: int | None = None
    names: tuple[str, ...] | None = None
    entries: dict[tuple[int, int], tuple[Label, int, int]] = {}
    rows: list[tuple[list[Label], int]] = []

    def parse_int(tok: re.Match, lineno: int, what: str) -> int:
        try:
            return int(tok.group())
        except ValueError:
            raise ParseError(f"expected integer {what}, got {tok.group()!r}", lineno, tok.start() + 1)

    def parse_label(tok: re.Match, lineno: int) -> Label:
        try:
            return _coerce_label(tok.group())
        except ValueError:
            raise ParseError(f"bad label {tok.group()!r}", lineno, tok.start() + 1)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = list(_TOKEN.finditer(line))
        if not toks:
            continue
        key = toks[0].group().lower()
        if rank is None and key != "rank":
            raise ParseError("first directive must be 'rank <n>'", lineno, toks[0].start() + 1)
        if key == "rank":
            if rank is not None:
                raise ParseError("duplicate rank directive", lineno, toks[0].start() + 1)
            if len(toks) != 2:
                raise ParseError("usage: rank <n>", lineno, toks[0].start() + 1)
            rank = parse_int(toks[1], lineno, "rank")
            if rank <= 0:
                raise ParseError("rank must be positive", lineno, toks[1].start() + 1)
        elif key == "names":
            if len(toks) - 1 != rank:
                raise ParseError(
                    f"rank mismatch: {len(toks) - 1} names for rank {rank}", lineno, toks[0].start() + 1
                )
            names = tuple(t.group() for t in toks[1:])
            if len(set(names)) != len(names):
                raise ParseError("generator names must be distinct", lineno, toks[1].start() + 1)
        elif key == "m":
            if len(toks) != 4:
                raise ParseError("usage: m <i> <j> <label>", lineno, toks[0].start() + 1)
            i = parse_int(toks[1], lineno, "index")
            j = parse_int(toks[2], lineno, "index")
            for tok, v in ((toks[1], i), (toks[2], j)):
                if not 1 <= v <= rank:
                    raise ParseError(f"rank mismatch: index {v} not in 1..{rank}", lineno, tok.start() + 1)
            lab = parse_label(toks[3], lineno)
            col = toks[3].start() + 1
            if i == j:
                if lab != 1:
                    raise ParseError(f"diagonal label m {i} {i} must be 1", lineno, col)
                continue
            if lab is not INF and lab < 2:
                raise ParseError(f"off-diagonal label must be >= 2, got {lab}", lineno, col)
            pair = (min(i, j) - 1, max(i, j) - 1)
            if pair in entries and entries[pair][0] != lab:
                raise ParseError(
                    f"asymmetric matrix: pair ({i},{j}) already has label {entries[pair][0]}", lineno, col
                )
            entries[pair] = (lab, lineno, col)
        elif key == "row":
            labels = [parse_label(t, lineno) for t in toks[1:]]
            if len(labels) != rank:
                raise ParseError(
                    f"rank mismatch: row has {len(labels)} entries, expected {rank}", lineno, toks[0].start() + 1
                )
            rows.append((labels, lineno))
        else:
            raise ParseError(f"unknown directive {toks[0].group()!r}", lineno, toks[0].start() + 1)

    if rank is None:
        raise ParseError("missing 'rank <n>' directive", 1, 1)
    n = rank
    if rows:
        if entries:
            raise ParseError("cannot mix 'row' and 'm' directives", rows[0][1], 1)
        if len(rows) != n:
            raise ParseError(f"rank mismatch: {len(rows)} rows for rank {n}", rows[-1][1], 1)
        mat = [r for r, _ in rows]
        for i in range(n):
            if mat[i][i] != 1:
                raise ParseError(f"diagonal entry {i + 1} must be 1", rows[i][1], 1)
            for j in range(n):
                if i != j and mat[i][j] != mat[j][i]:
                    raise ParseError(f"asymmetric matrix at ({i + 1},{j + 1})", rows[i][1], 1)
                if i != j and mat[i][j] is not INF and mat[i][j] < 2:
                    raise ParseError(f"off-diagonal label < 2 at ({i + 1},{j + 1})", rows[i][1], 1)
        return CoxeterSystem(tuple(map(tuple, mat)), names)

    labels = {pair: lab for pair, (lab, _, _) in entries.items()}
    defaulted = tuple(p for p in ((i, j) for i in range(n) for j in range(i + 1, n)) if p not in labels)
    system = CoxeterSystem.from_pairs(n, labels, names=names)
    object.__setattr__(system, "defaulted", defaulted)
    return system


@total_ordering
@dataclass(frozen=True, eq=True)
class GroupElement:
    """An element stored as its ShortLex-least reduced word."""

    word: tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __lt__(self, other: "GroupElement") -> bool:
        return (len(self.word), self.word) < (len(other.word), other.word)

    def __iter__(self):
        return iter(self.word)


IDENTITY = GroupElement(())

WordLike = Union[GroupElement, Sequence[int], int]


def _as_word(system: CoxeterSystem, x: WordLike) -> tuple[int, ...]:
    if isinstance(x, GroupElement):
        return x.word
    if isinstance(x, (int, np.integer)):
        return (system.check_generator(x),)
    return tuple(system.check_generator(i) for i in x)


def _braid_moves(system: CoxeterSystem, w: tuple[int, ...]):
    n = len(w)
    mat = system.matrix
    for i in range(n - 1):
        a, b = w[i], w[i + 1]
        if a == b:
            continue
        m = mat[a][b]
        if m is INF or i + m > n:
            continue
        if all(w[i + k] == (a if k % 2 == 0 else b) for k in range(2, m)):
            alt = tuple(b if k % 2 == 0 else a for k in range(m))
            yield w[:i] + alt + w[i + m :]


def _explore(system: CoxeterSystem, w: tuple[int, ...]) -> tuple[tuple[int, ...] | None, set]:
    """Breadth-first closure of ``w`` under braid moves.

    Stops at the first word containing ``ss`` and returns it with the pair
    deleted; otherwise returns ``None`` and the whole braid class.
    """
    seen = {w}
    queue = deque([w])
    while queue:
        cur = queue.popleft()
        for i in range(len(cur) - 1):
            if cur[i] == cur[i + 1]:
                return cur[:i] + cur[i + 2 :], seen
        for nxt in _braid_moves(system, cur):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return None, seen


@lru_cache(maxsize=1 << 18)
def _canonical_reduced(system: CoxeterSystem, w: tuple[int, ...]) -> tuple[int, ...]:
    shorter, cls = _explore(system, w)
    if shorter is not None:
        raise AssertionError(f"word {w} expected to be reduced")
    return min(cls)


@lru_cache(maxsize=1 << 18)
def _append(system: CoxeterSystem, canon: tuple[int, ...], s: int) -> tuple[int, ...]:
    shorter, cls = _explore(system, canon + (s,))
    if shorter is not None:
        # |ws| = |w| - 1, so the shortened word is already reduced
        return _canonical_reduced(system, shorter)
    return min(cls)


def m_reduce(system: CoxeterSystem, word: WordLike) -> GroupElement:
    """Normal form of ``word``: reduced and ShortLex-least in its class."""
    w = _as_word(system, word)
    cur: tuple[int, ...] = ()
    for s in w:
        cur = _append(system, cur, s)
    return GroupElement(cur)


def multiply(system: CoxeterSystem, a: WordLike, b: WordLike) -> GroupElement:
    aw = _as_word(system, a)
    if not isinstance(a, GroupElement):
        aw = m_reduce(system, aw).word
    cur = aw
    for s in _as_word(system, b):
        cur = _append(system, cur, s)
    return GroupElement(cur)


def inverse(system: CoxeterSystem, a: WordLike) -> GroupElement:
    return m_reduce(system, tuple(reversed(_as_word(system, a))))


def element(system: CoxeterSystem, word: WordLike) -> GroupElement:
    """Shorthand for :func:`m_reduce` accepting generators, words or elements."""
    return m_reduce(system, word)


class CayleyBall:
    """All elements of length at most ``radius``, with Cayley tables.

    Elements are numbered in (length, ShortLex) order. ``right[s, x]`` is the
    id of ``x s`` and ``left[s, x]`` the id of ``s x``, or -1 when that product
    falls outside the ball.

    Descents are read off the Tits geometric representation: ``s`` is a left
    descent of ``x`` iff ``x^{-1}(alpha_s)`` is a negative root. Only the
    matrices of inverses are carried, one shell at a time.
    """

    def __init__(self, system: CoxeterSystem, radius: int, max_elements: int | None = None):
        if radius < 0:
            raise ValueError("radius must be nonnegative")
        self.system = system
        self.radius = int(radius)
        self.max_elements = default_max_elements() if max_elements is None else int(max_elements)
        self._build()

    def _build(self) -> None:
        sys_ = self.system
        n = sys_.rank
        bform = np.asarray(sys_.bilinear_form)
        cap = self.max_elements

        minv = np.eye(n)[None, :, :]
        ldesc = np.zeros((1, n), dtype=bool)
        rdesc = np.zeros((1, n), dtype=bool)
        firsts = [np.array([-1], dtype=np.int64)]
        tails = [np.array([-1], dtype=np.int64)]
        rights = [np.full((n, 1), -1, dtype=np.int64)]
        lefts = [np.full((n, 1), -1, dtype=np.int64)]
        offsets = [0, 1]

        for shell in range(self.radius):
            base = offsets[-2]
            k = offsets[-1] - base
            right_cur, left_cur = rights[-1], lefts[-1]
            cw, cs = [], []
            for s in range(n):
                idx = np.nonzero(~rdesc[:, s])[0]
                cw.append(idx)
                cs.append(np.full(idx.size, s, dtype=np.int64))
            W = np.concatenate(cw)
            S = np.concatenate(cs)
            if W.size == 0:
                break

            x_minv = _act_left(minv, W, S, bform)
            x_ldesc = _negative_columns(x_minv)
            s0 = np.argmax(x_ldesc, axis=1)
            # y = s0 * x lies in the current shell
            in_w = ldesc[W, s0]
            y = base + W
            if in_w.any():
                prev_base = offsets[-3] if len(offsets) >= 3 else 0
                t_w = left_cur[s0[in_w], W[in_w]]
                y_alt = rights[-2][S[in_w], t_w - prev_base]
                y = y.copy()
                y[in_w] = y_alt
            keys = s0.astype(np.int64) * k + (y - base)
            uniq, rep, inv = np.unique(keys, return_index=True, return_inverse=True)
            knew = uniq.size
            if offsets[-1] + knew > cap:
                raise BallCapExceeded(
                    f"ball of radius {self.radius} exceeds {cap} elements (shell {shell + 1})"
                )
            new_base = offsets[-1]
            new_ids = new_base + inv

            right_cur[S, W] = new_ids
            right_new = np.full((n, knew), -1, dtype=np.int64)
            right_new[S, inv] = base + W
            rdesc_new = np.zeros((knew, n), dtype=bool)
            rdesc_new[inv, S] = True

            ldesc_new = x_ldesc[rep]
            w_rep, s_rep = W[rep], S[rep]
            left_new = np.full((n, knew), -1, dtype=np.int64)
            prev_base = offsets[-3] if len(offsets) >= 3 else 0
            for t in range(n):
                mask = ldesc_new[:, t]
                if not mask.any():
                    continue
                both = mask & ldesc[w_rep, t]
                only = mask & ~ldesc[w_rep, t]
                if both.any():
                    tw = left_cur[t, w_rep[both]]
                    left_new[t, both] = rights[-2][s_rep[both], tw - prev_base]
                left_new[t, only] = base + w_rep[only]
                targets = left_new[t, mask] - base
                left_cur[t, targets] = new_base + np.nonzero(mask)[0]

            minv = x_minv[rep]
            ldesc, rdesc = ldesc_new, rdesc_new
            firsts.append(uniq // k)
            tails.append(base + (uniq % k))
            rights.append(right_new)
            lefts.append(left_new)
            offsets.append(new_base + knew)

        self.size = offsets[-1]
        self.offsets = offsets
        self.first = np.concatenate(firsts)
        self.tail = np.concatenate(tails)
        self.right = np.concatenate(rights, axis=1)
        self.left = np.concatenate(lefts, axis=1)
        self.lengths = np.concatenate(
            [np.full(offsets[i + 1] - offsets[i], i, dtype=np.int64) for i in range(len(offsets) - 1)]
        )
        # ran out of elements before the requested radius: the group is finite
        self.is_complete_group = len(offsets) - 2 < self.radius or (
            offsets[-1] > offsets[-2] and not self._has_up_moves()
        )
        for arr in (self.first, self.tail, self.right, self.left, self.lengths):
            arr.flags.writeable = False

    def _has_up_moves(self) -> bool:
        last = slice(self.offsets[-2], self.offsets[-1])
        # an element of the top shell with a non-descent has a longer neighbour
        down = self.right[:, last] >= 0
        return not down.all()

    def count_upto(self, radius: int) -> int:
        """Number of ball elements of length at most ``radius``."""
        radius = min(radius, len(self.offsets) - 2)
        return self.offsets[radius + 1]

    def shell(self, length: int) -> range:
        if length + 1 >= len(self.offsets):
            return range(0)
        return range(self.offsets[length], self.offsets[length + 1])

    @cached_property
    def words(self) -> list[tuple[int, ...]]:
        out: list[tuple[int, ...]] = [()]
        first, tail = self.first.tolist(), self.tail.tolist()
        for x in range(1, self.size):
            out.append((first[x],) + out[tail[x]])
        return out

    def element(self, x: int) -> GroupElement:
        return GroupElement(self.words[x])

    def elements(self, radius: int | None = None) -> list[GroupElement]:
        n = self.size if radius is None else self.count_upto(radius)
        return [GroupElement(w) for w in self.words[:n]]

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {w: i for i, w in enumerate(self.words)}

    def index(self, x: WordLike) -> int:
        """Id of an element given as a GroupElement, word or generator; -1 if outside."""
        if isinstance(x, GroupElement):
            return self._index.get(x.word, -1)
        word = _as_word(self.system, x)
        cur = 0
        for s in word:
            cur = int(self.right[s, cur])
            if cur < 0:
                return self._index.get(m_reduce(self.system, word).word, -1)
        return cur

    def left_translate(self, g: WordLike, ids: np.ndarray) -> np.ndarray:
        """Ids of ``g x`` for each id ``x`` (-1 propagates)."""
        out = np.asarray(ids, dtype=np.int64).copy()
        for s in reversed(_as_word(self.system, g)):
            ok = out >= 0
            out[ok] = self.left[s, out[ok]]
        return out

    def right_translate(self, ids: np.ndarray, g: WordLike) -> np.ndarray:
        """Ids of ``x g`` for each id ``x`` (-1 propagates)."""
        out = np.asarray(ids, dtype=np.int64).copy()
        for s in _as_word(self.system, g):
            ok = out >= 0
            out[ok] = self.right[s, out[ok]]
        return out

    @cached_property
    def inverse_ids(self) -> np.ndarray:
        inv = np.zeros(self.size, dtype=np.int64)
        for r in range(1, len(self.offsets) - 1):
            sl = slice(self.offsets[r], self.offsets[r + 1])
            # (s y)^{-1} = y^{-1} s
            inv[sl] = self.right[self.first[sl], inv[self.tail[sl]]]
        inv.flags.writeable = False
        return inv

    def letter_counts(self) -> np.ndarray:
        """``counts[x, i]`` = occurrences of generator i in the normal form of x."""
        return self._letter_counts

    @cached_property
    def _letter_counts(self) -> np.ndarray:
        n = self.system.rank
        counts = np.zeros((self.size, n), dtype=np.int64)
        for r in range(1, len(self.offsets) - 1):
            sl = slice(self.offsets[r], self.offsets[r + 1])
            counts[sl] = counts[self.tail[sl]]
            counts[np.arange(sl.start, sl.stop), self.first[sl]] += 1
        counts.flags.writeable = False
        return counts


def _act_left(minv: np.ndarray, W: np.ndarray, S: np.ndarray, bform: np.ndarray) -> np.ndarray:
    """Inverse matrices of ``w s``: apply the reflection in ``alpha_s`` on the left."""
    out = minv[W].copy()
    rows = np.arange(W.size)
    combo = np.einsum("kj,kjc->kc", bform[S], out)
    out[rows, S, :] -= 2.0 * combo
    return out


def _negative_columns(mats: np.ndarray) -> np.ndarray:
    """Sign of each column (a root) read off its largest-magnitude coordinate."""
    mag = np.abs(mats)
    idx = np.argmax(mag, axis=1)
    peak = np.take_along_axis(mats, idx[:, None, :], axis=1)[:, 0, :]
    if mats.size and np.min(np.abs(peak)) < 0.5:
        raise ArithmeticError("root coordinates lost precision during ball enumeration")
    return peak < 0


@lru_cache(maxsize=8)
def _cached_ball(system: CoxeterSystem, radius: int, cap: int) -> CayleyBall:
    return CayleyBall(system, radius, cap)


def cayley_ball(system: CoxeterSystem, radius: int, max_elements: int | None = None) -> CayleyBall:
    cap = default_max_elements() if max_elements is None else int(max_elements)
    return _cached_ball(system, int(radius), cap)


def ball_enumerate(
    system: CoxeterSystem, radius: int, max_elements: int | None = None
) -> list[GroupElement]:
    """Elements of length <= radius in (length, ShortLex) order."""
    return cayley_ball(system, radius, max_elements).elements()
