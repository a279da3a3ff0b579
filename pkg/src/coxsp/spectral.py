"""Operators on Cayley-ball truncations of l2(W): Schatten norms, coefficient
matrices, carre du champ Gram matrices and related sanity checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .coxeter import (
    CayleyBall,
    CoxeterSystem,
    GroupElement,
    WordLike,
    cayley_ball,
    inverse,
    m_reduce,
    multiply,
)
from .lengths import LengthSpec, ball_values, evaluate

MAX_DIMENSION = 4000


@dataclass
class TruncatedOperator:
    """Matrix indexed by the elements of length <= ``radius`` of ``ball``.

    Columns of length <= ``interior_radius`` are exact: their images do not
    leak past the truncation.
    """

    ball: CayleyBall
    radius: int
    matrix: np.ndarray
    interior_radius: int

    def __post_init__(self) -> None:
        n = self.dimension
        if self.matrix.shape != (n, n):
            raise ValueError(f"matrix shape {self.matrix.shape} does not match ball size {n}")

    @property
    def dimension(self) -> int:
        return self.ball.count_upto(self.radius)

    @property
    def interior_mask(self) -> np.ndarray:
        return self.ball.lengths[: self.dimension] <= self.interior_radius

    def interior(self) -> np.ndarray:
        """The matrix with non-interior columns zeroed."""
        out = self.matrix.copy()
        out[:, ~self.interior_mask] = 0.0
        return out

    def elements(self) -> list[GroupElement]:
        return self.ball.elements(self.radius)

    def to_triplets(self, tol: float = 0.0) -> str:
        sys_ = self.ball.system
        words = self.ball.words
        fmt = lambda x: ".".join(sys_.name(i) for i in words[x]) or "e"
        rows, cols = np.nonzero(np.abs(self.matrix) > tol)
        order = np.lexsort((rows, cols))
        return "".join(f"{fmt(rows[k])} {fmt(cols[k])} {self.matrix[rows[k], cols[k]]:.17g}\n" for k in order)


def _check_size(mat: np.ndarray) -> None:
    if max(mat.shape) > MAX_DIMENSION:
        raise ValueError(f"matrix of size {mat.shape} exceeds the {MAX_DIMENSION} cap")


def singular_values(op: TruncatedOperator | np.ndarray, interior: bool = False) -> np.ndarray:
    if isinstance(op, TruncatedOperator):
        # dropping the non-interior columns leaves the nonzero singular values unchanged
        mat = op.matrix[:, op.interior_mask] if interior else op.matrix
    else:
        mat = np.asarray(op, dtype=float)
    _check_size(mat)
    if mat.size == 0:
        return np.zeros(0)
    return np.linalg.svd(mat, compute_uv=False)


def schatten_norm(op: TruncatedOperator | np.ndarray, p, interior: bool = False) -> float:
    """p-norm of the singular values; p = inf gives the operator norm."""
    sv = singular_values(op, interior)
    p = math.inf if isinstance(p, str) and p.lower() in ("inf", "infinity") else float(p)
    if sv.size == 0:
        return 0.0
    if p == math.inf:
        return float(sv.max())
    if p <= 0:
        raise ValueError("p must be positive")
    return float(np.sum(sv**p) ** (1.0 / p))


def _element(system: CoxeterSystem, x: WordLike) -> GroupElement:
    return x if isinstance(x, GroupElement) else m_reduce(system, x)


def psi_group_matrix(
    system: CoxeterSystem,
    spec: LengthSpec,
    u: WordLike,
    w: WordLike,
    radius: int,
    max_elements: int | None = None,
) -> TruncatedOperator:
    """Entry gamma(v) at (u v w, v) for every ball element v."""
    spec.validate(system)
    ue, we = _element(system, u), _element(system, w)
    ball = cayley_ball(system, radius + ue.length + we.length, max_elements)
    n = ball.count_upto(radius)
    ids = np.arange(n)
    psi, den = ball_values(spec, ball)
    uv = ball.left_translate(ue.word, ids)
    vw = ball.right_translate(ids, we.word)
    uvw = ball.right_translate(uv, we.word)
    vals = (psi[uvw] + psi[ids] - psi[uv] - psi[vw]) / den
    mat = np.zeros((n, n))
    keep = (uvw < n) & (vals != 0)
    mat[uvw[keep], ids[keep]] = vals[keep]
    return TruncatedOperator(ball, radius, mat, radius - ue.length - we.length)


def coefficient_column(
    system: CoxeterSystem, spec: LengthSpec, a: WordLike, b: WordLike, c: WordLike, d: WordLike, v: WordLike
) -> tuple[GroupElement, Fraction]:
    """Image of delta_v under the coefficient at (lambda_a (x) lambda_c, lambda_b (x) lambda_d).

    It is -1/2 gamma_{b^-1, a}(v) delta_{d^-1 b^-1 v a c}; computed with plain
    group arithmetic.
    """
    a, b, c, d, v = (_element(system, x) for x in (a, b, c, d, v))
    binv, dinv = inverse(system, b), inverse(system, d)
    bv = multiply(system, binv, v)
    va = multiply(system, v, a)
    bva = multiply(system, bv, a)
    psi = lambda x: evaluate(spec, x)
    g = psi(bva) + psi(v) - psi(bv) - psi(va)
    row = multiply(system, multiply(system, dinv, bva), c)
    return row, -g / 2


def coefficient_matrix(
    system: CoxeterSystem,
    spec: LengthSpec,
    a: WordLike,
    b: WordLike,
    c: WordLike,
    d: WordLike,
    radius: int,
    max_elements: int | None = None,
) -> TruncatedOperator:
    """Truncated coefficient x -> -1/2 lambda_{d^-1} Psi^{lambda_{b^-1}, lambda_a}(x) lambda_c."""
    spec.validate(system)
    a, b, c, d = (_element(system, x) for x in (a, b, c, d))
    spread = a.length + b.length + c.length + d.length
    if radius - spread < 0:
        raise ValueError(f"radius {radius} too small: translations need at least {spread}")
    ball = cayley_ball(system, radius + spread, max_elements)
    n = ball.count_upto(radius)
    ids = np.arange(n)
    psi, den = ball_values(spec, ball)
    binv = inverse(system, b).word
    bv = ball.left_translate(binv, ids)
    va = ball.right_translate(ids, a.word)
    bva = ball.right_translate(bv, a.word)
    rows = ball.right_translate(ball.left_translate(inverse(system, d).word, bva), c.word)
    vals = -(psi[bva] + psi[ids] - psi[bv] - psi[va]) / (2.0 * den)
    mat = np.zeros((n, n))
    keep = (rows < n) & (vals != 0)
    mat[rows[keep], ids[keep]] = vals[keep]
    return TruncatedOperator(ball, radius, mat, radius - spread)


def carre_du_champ(
    system: CoxeterSystem, spec: LengthSpec, a: WordLike, b: WordLike
) -> tuple[GroupElement, Fraction]:
    """Gamma(lambda_a, lambda_b) = k lambda_{b^-1 a} with k = (psi(a) + psi(b) - psi(b^-1 a)) / 2."""
    a, b = _element(system, a), _element(system, b)
    ba = multiply(system, inverse(system, b), a)
    psi = lambda x: evaluate(spec, x)
    return ba, (psi(a) + psi(b) - psi(ba)) / 2


def gradient_inner(
    system: CoxeterSystem,
    spec: LengthSpec,
    a: WordLike,
    g: WordLike,
    b: WordLike,
    h: WordLike,
) -> Fraction:
    """<lambda_a (x) delta_g, lambda_b (x) delta_h> = <Gamma(lambda_a, lambda_b) delta_g, delta_h>."""
    ba, k = carre_du_champ(system, spec, a, b)
    target = multiply(system, ba, _element(system, g))
    return k if target == _element(system, h) else Fraction(0)


@dataclass
class GramResult:
    exact: list[list[Fraction]]
    matrix: np.ndarray
    min_eigenvalue: float

    def is_psd(self, tol: float = 1e-9) -> bool:
        return self.min_eigenvalue >= -tol


def carre_du_champ_gram(
    system: CoxeterSystem,
    spec: LengthSpec,
    spanning: Sequence[tuple[WordLike, WordLike]],
    radius: int | None = None,
) -> GramResult:
    """Gram matrix of the vectors lambda_a (x) delta_g in the gradient bimodule."""
    spec.validate(system)
    vecs = [(_element(system, a), _element(system, g)) for a, g in spanning]
    if radius is not None:
        for a, g in vecs:
            if a.length > radius or g.length > radius:
                raise ValueError("spanning vector outside the ball")
    n = len(vecs)
    exact = [[Fraction(0)] * n for _ in range(n)]
    for i, (a, g) in enumerate(vecs):
        for j, (b, h) in enumerate(vecs):
            exact[i][j] = gradient_inner(system, spec, a, g, b, h)
    mat = np.array([[float(x) for x in row] for row in exact]).reshape(n, n)
    eig = float(np.linalg.eigvalsh(mat).min()) if n else 0.0
    return GramResult(exact, mat, eig)


@dataclass
class RieszReport:
    checked: int
    failures: list[GroupElement]
    kernel: list[GroupElement]
    kernel_by_shell: list[int]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def kernel_dimension(self) -> int:
        return len(self.kernel)

    @property
    def kernel_growing(self) -> bool:
        """Kernel still meets the outermost shell, so it may be infinite."""
        return bool(self.kernel_by_shell) and self.kernel_by_shell[-1] > 0


def riesz_isometry_check(system: CoxeterSystem, spec: LengthSpec, radius: int) -> RieszReport:
    """<Gamma(lambda_v, lambda_v) delta_e, delta_e> = psi(v) on the ball, i.e.
    the Riesz transform is isometric off the kernel {v : psi(v) = 0}."""
    spec.validate(system)
    ball = cayley_ball(system, radius)
    failures, kernel = [], []
    by_shell = [0] * (radius + 1)
    e = GroupElement()
    for v in ball.elements(radius):
        psi_v = evaluate(spec, v)
        if psi_v == 0:
            kernel.append(v)
            by_shell[v.length] += 1
            continue
        if gradient_inner(system, spec, v, e, v, e) != psi_v:
            failures.append(v)
    return RieszReport(ball.count_upto(radius), failures, kernel, by_shell)


def hadamard_tensor(A, B):
    """Entrywise product: the truncated coefficient of a tensor product bimodule."""
    if isinstance(A, TruncatedOperator) and isinstance(B, TruncatedOperator):
        if A.ball is not B.ball and A.ball.system != B.ball.system:
            raise ValueError("operators live on different systems")
        if A.matrix.shape != B.matrix.shape:
            raise ValueError("dimension mismatch")
        return TruncatedOperator(A.ball, A.radius, A.matrix * B.matrix, min(A.interior_radius, B.interior_radius))
    a, b = np.asarray(A, dtype=float), np.asarray(B, dtype=float)
    if a.shape != b.shape:
        raise ValueError("dimension mismatch")
    return a * b


def comultiplication(n: int) -> np.ndarray:
    """Isometry delta_g -> delta_g (x) delta_g from C^n into C^n (x) C^n."""
    out = np.zeros((n * n, n))
    out[np.arange(n) * (n + 1), np.arange(n)] = 1.0
    return out


def tensor_coefficient(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Compression of A (x) B by the comultiplication, computed literally."""
    A, B = np.asarray(A), np.asarray(B)
    delta = comultiplication(A.shape[0])
    return delta.T @ np.kron(A, B) @ delta


@dataclass
class KernelReport:
    kernel_dimension: int
    expected: int
    isometric_on_complement: bool
    kernel_is_span: bool

    @property
    def passed(self) -> bool:
        return self.kernel_dimension == self.expected and self.isometric_on_complement and self.kernel_is_span


def convolution_kernel_check(
    system: CoxeterSystem,
    kernel1: Iterable[WordLike],
    kernel2: Iterable[WordLike],
    radius: int,
    seed: int | None = 0,
    tol: float = 1e-9,
) -> KernelReport:
    """Compose two partial isometries (random orthogonal maps after 0/1 masks)
    through the comultiplication and inspect the kernel of the result."""
    ball = cayley_ball(system, radius)
    n = ball.count_upto(radius)
    rng = np.random.default_rng(seed)

    def partial_isometry(kernel) -> np.ndarray:
        mask = np.ones(n)
        for x in kernel:
            idx = ball.index(_element(system, x))
            if idx < 0 or idx >= n:
                raise ValueError("kernel element outside the ball")
            mask[idx] = 0.0
        q, _ = np.linalg.qr(rng.standard_normal((n, n)))
        return q @ np.diag(mask)

    k1, k2 = list(kernel1), list(kernel2)
    v1, v2 = partial_isometry(k1), partial_isometry(k2)
    conv = np.kron(v1, v2) @ comultiplication(n)
    _check_size(conv[:n])
    sv = np.linalg.svd(conv, compute_uv=False)
    kdim = int(np.sum(sv < tol))
    iso = bool(np.all(np.abs(sv[sv >= tol] - 1.0) < 1e-8))
    expected_idx = {ball.index(_element(system, x)) for x in k1 + k2}
    # kernel vectors are exactly the basis vectors of the union
    zero_cols = {j for j in range(n) if np.linalg.norm(conv[:, j]) < tol}
    return KernelReport(kdim, len(expected_idx), iso, zero_cols == expected_idx)


@dataclass
class GapReport:
    values: list[Fraction]
    max_weight: Fraction
    checked_below: Fraction | None  # gaps are verified from every value below this
    violations: list[tuple[Fraction, Fraction]]
    finite_group: bool

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def ratios(self) -> list[float]:
        v = self.values
        return [float(v[k + 1] / v[k]) for k in range(len(v) - 1) if v[k] > 0]


def spectral_gap_check(system: CoxeterSystem, spec: LengthSpec, radius: int) -> GapReport:
    """Distinct psi values on the ball; consecutive ones may differ by at most
    the largest generator weight. Values reached only in the outer shell are
    not trusted as successors, so gaps are checked from values strictly below
    the smallest psi on the outermost shell."""
    spec.validate(system)
    ball = cayley_ball(system, radius)
    n = ball.count_upto(radius)
    psi, den = ball_values(spec, ball)
    psi = psi[:n]
    finite = ball.is_complete_group
    vals = sorted(set(int(x) for x in psi))
    top = ball.shell(min(radius, len(ball.offsets) - 2))
    if finite or len(top) == 0:
        cutoff = None
    else:
        cutoff = int(psi[top.start : top.stop].min())
    K = spec.max_weight
    violations = []
    for lo, hi in zip(vals, vals[1:]):
        if cutoff is not None and lo >= cutoff:
            break
        if Fraction(hi - lo, den) > K:
            violations.append((Fraction(lo, den), Fraction(hi, den)))
    return GapReport(
        [Fraction(v, den) for v in vals],
        K,
        None if cutoff is None else Fraction(cutoff, den),
        violations,
        finite,
    )


def conditional_negativity_check(
    system: CoxeterSystem,
    spec: LengthSpec,
    sample: Sequence[WordLike],
    trials: int = 20,
    seed: int | None = 0,
) -> float:
    """Largest value of sum c_i c_j psi(g_j^-1 g_i) over random zero-sum unit vectors c.
    Nonpositive (up to rounding) for conditionally negative psi."""
    elems = [_element(system, g) for g in sample]
    n = len(elems)
    kernel = np.array(
        [[float(evaluate(spec, multiply(system, inverse(system, gj), gi))) for gj in elems] for gi in elems]
    )
    rng = np.random.default_rng(seed)
    worst = -math.inf
    for _ in range(trials):
        c = rng.standard_normal(n)
        c -= c.mean()
        c /= np.linalg.norm(c) or 1.0
        worst = max(worst, float(c @ kernel @ c))
    return worst


@dataclass
class PairingReport:
    samples: int
    max_error: float

    def passed(self, tol: float = 1e-12) -> bool:
        return self.max_error <= tol


def coefficient_pairing_check(
    system: CoxeterSystem,
    spec: LengthSpec,
    a: WordLike,
    b: WordLike,
    c: WordLike,
    d: WordLike,
    radius: int,
    samples: int = 50,
    seed: int | None = 0,
) -> PairingReport:
    """tau(T(x) y) read off the coefficient matrix against <x xi y, eta> from
    carre du champ inner products, for random interior x = lambda_v, y = lambda_y.

    With xi = lambda_a (x) delta_c and eta = lambda_b (x) delta_d (delta_c = lambda_c delta_e),
    x xi y = lambda_{va} (x) delta_{cy} - lambda_v (x) delta_{acy}.
    """
    op = coefficient_matrix(system, spec, a, b, c, d, radius)
    ball = op.ball
    n = op.dimension
    interior = np.nonzero(op.interior_mask)[0]
    rng = np.random.default_rng(seed)
    a, b, c, d = (_element(system, x) for x in (a, b, c, d))
    worst = 0.0
    for _ in range(samples):
        vid = int(rng.choice(interior))
        # bias half of the samples towards pairs with a nonzero pairing
        if rng.random() < 0.5:
            row = int(np.argmax(np.abs(op.matrix[:, vid]))) if op.matrix[:, vid].any() else int(rng.integers(n))
        else:
            row = int(rng.integers(n))
        v = ball.element(vid)
        y = inverse(system, ball.element(row))
        lhs = op.matrix[row, vid]
        va = multiply(system, v, a)
        cy = multiply(system, c, y)
        acy = multiply(system, a, cy)
        rhs = gradient_inner(system, spec, va, cy, b, d) - gradient_inner(system, spec, v, acy, b, d)
        worst = max(worst, abs(lhs - float(rhs)))
    return PairingReport(samples, worst)
