"""Matrix-free Hamiltonian operators on the hypercube.

H = U + Gamma * T acts on vectors indexed by vertex; T is the hopping
operator (T x)(v) = -sum_j x(v with bit j flipped). Nothing here ever
materializes a 2**n x 2**n matrix except the explicitly dense helpers,
which are gated by size guards.
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .bits import dimension_of, popcount_array
from .configurations import SpinConfiguration
from .disorder import DisorderField
from .errors import ConvergenceError, ResourceLimitError

DENSE_CAP_DIMENSION = 13
DENSE_RESTRICTED_CAP = 4096
NORM_TOL_DEFAULT = 1e-8
NORM_MAX_ITER_DEFAULT = 5000


@dataclass(frozen=True, eq=False)
class VertexSet:
    """A subset of the 2**n vertices, kept as sorted unique indices."""

    n: int
    indices: np.ndarray

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64)
        if idx.ndim != 1:
            raise ValueError("indices must be one-dimensional")
        if idx.size and (idx[0] < 0 or idx[-1] >= (1 << self.n)):
            raise ValueError(f"indices out of range for n={self.n}")
        if idx.size > 1 and np.any(np.diff(idx) <= 0):
            raise ValueError("indices must be strictly increasing")
        object.__setattr__(self, "indices", idx)
        idx.setflags(write=False)

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "VertexSet":
        mask = np.asarray(mask, dtype=bool)
        n = dimension_of(mask.size)
        return cls(n=n, indices=np.flatnonzero(mask).astype(np.int64))

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(1 << self.n, dtype=bool)
        m[self.indices] = True
        m.setflags(write=False)
        return m

    @property
    def size(self) -> int:
        return int(self.indices.size)

    def complement(self) -> "VertexSet":
        return VertexSet.from_mask(~self.mask)

    def members(self) -> list:
        return [SpinConfiguration(int(v), self.n) for v in self.indices]


def apply_transverse(x: np.ndarray) -> np.ndarray:
    """(T x)(v) = -sum_j x(flip(v, j)); length infers the dimension."""
    x = np.asarray(x, dtype=np.float64)
    n = dimension_of(x.shape[0])
    y = np.zeros_like(x)
    for j in range(n):
        xr = x.reshape(-1, 2, 1 << j)
        yr = y.reshape(-1, 2, 1 << j)
        yr[:, 0, :] -= xr[:, 1, :]
        yr[:, 1, :] -= xr[:, 0, :]
    return y


@dataclass(frozen=True, eq=False)
class HamiltonianOperator:
    """H = diag(U) + gamma * T for one disorder realization."""

    field: DisorderField
    gamma: float

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")

    @property
    def n(self) -> int:
        return self.field.n

    @property
    def dim(self) -> int:
        return 1 << self.field.n

    def apply(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        y = self.field.values * x
        if self.gamma != 0.0:
            y += self.gamma * apply_transverse(x)
        return y


def apply_restricted(op: HamiltonianOperator, region: VertexSet, x: np.ndarray) -> np.ndarray:
    """P H P x for the coordinate projector P onto `region`."""
    if region.n != op.n:
        raise ValueError("region dimension does not match operator")
    m = region.mask
    y = op.apply(np.where(m, x, 0.0))
    return np.where(m, y, 0.0)


def apply_boundary(region: VertexSet, x: np.ndarray) -> np.ndarray:
    """Edge-boundary coupling A of `region`: A = P S + S P - P S P with S = -T.

    A picks out exactly the hopping matrix elements with at least one
    endpoint in the region; for the full vertex set A = S = -T.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape[0] != (1 << region.n):
        raise ValueError("vector length does not match region dimension")
    m = region.mask
    sx = -apply_transverse(x)
    smx = -apply_transverse(np.where(m, x, 0.0))
    return np.where(m, sx - smx, 0.0) + smx


def decomposition_residual(op: HamiltonianOperator, eps: float, x: np.ndarray) -> float:
    """Relative error of H x against the deviation-set split of H.

    With L = {v: U(v) < -eps n}, the split is
    H = U|_L + P_{L^c} H P_{L^c} - gamma A_L, which is an exact identity;
    the residual only measures floating-point noise.
    """
    x = np.asarray(x, dtype=np.float64)
    norm = float(np.linalg.norm(x))
    if norm == 0.0:
        raise ValueError("test vector must be nonzero")
    low = VertexSet.from_mask(op.field.values < -eps * op.n)
    assembled = np.where(low.mask, op.field.values * x, 0.0)
    assembled += apply_restricted(op, low.complement(), x)
    assembled -= op.gamma * apply_boundary(low, x)
    return float(np.linalg.norm(op.apply(x) - assembled)) / norm


def ball(center: SpinConfiguration, radius: int) -> VertexSet:
    """All vertices within Hamming distance `radius` of `center`."""
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    idx = np.arange(1 << center.n, dtype=np.int64)
    return VertexSet.from_mask(popcount_array(idx ^ center.bits) <= radius)


def transverse_ball_norm_bound(radius: int, n: int) -> float:
    """Bound 2 sqrt(r (n - r + 1)) on ||T restricted to a radius-r ball||.

    Valid for 1 <= r <= ceil(n / 2); larger balls are rejected because the
    bound's derivation does not cover them.
    """
    if not 1 <= radius <= math.ceil(n / 2):
        raise ValueError(
            f"bound requires 1 <= r <= ceil(n/2) = {math.ceil(n / 2)}, got r={radius}"
        )
    return 2.0 * math.sqrt(radius * (n - radius + 1))


def operator_norm_estimate(
    apply_fn,
    dim: int,
    tol: float = NORM_TOL_DEFAULT,
    max_iter: int = NORM_MAX_ITER_DEFAULT,
    seed: int = 2024,
) -> float:
    """Operator norm of a symmetric operator via Lanczos iteration.

    Runs Lanczos with full reorthogonalization from a random start vector
    and returns the largest absolute Ritz value once its residual bound
    drops below tol * estimate. The returned value is a lower bound on the
    true norm up to roundoff (it is a Rayleigh quotient of the operator).

    Raises ConvergenceError (with `best` attached) at the step cap; exact
    invariant-subspace termination returns early.
    """
    from scipy.linalg import eigh_tridiagonal

    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = np.random.default_rng(np.random.SeedSequence([771, int(seed)]))
    v = rng.standard_normal(dim)
    nv = np.linalg.norm(v)
    v /= nv
    basis = [v]
    alphas, betas = [], []
    best = 0.0
    steps = min(max_iter, dim)
    for k in range(steps):
        w = np.asarray(apply_fn(basis[-1]), dtype=np.float64)
        alpha = float(basis[-1] @ w)
        alphas.append(alpha)
        w -= alpha * basis[-1]
        if betas:
            w -= betas[-1] * basis[-2]
        # full reorthogonalization, second pass if cancellation was severe
        q = np.stack(basis, axis=1)
        before = np.linalg.norm(w)
        w -= q @ (q.T @ w)
        if np.linalg.norm(w) < 0.7071 * before:
            w -= q @ (q.T @ w)
        beta = float(np.linalg.norm(w))
        theta, vecs = eigh_tridiagonal(
            np.asarray(alphas), np.asarray(betas), select="a"
        )
        pick = int(np.argmax(np.abs(theta)))
        best = float(abs(theta[pick]))
        scale = max(best, np.finfo(float).tiny)
        if beta * abs(vecs[-1, pick]) <= tol * scale:
            return best
        if beta <= 1e-14 * scale or k + 1 == dim:
            # Krylov space became invariant; the Ritz values are exact
            return best
        betas.append(beta)
        basis.append(w / beta)
    raise ConvergenceError(
        f"operator norm did not reach tol={tol} within {steps} Lanczos steps",
        best=best,
    )


def dense_hamiltonian(field: DisorderField, gamma: float) -> np.ndarray:
    """Explicit 2**n x 2**n matrix of H; gated at n <= 13."""
    n = field.n
    if n > DENSE_CAP_DIMENSION:
        raise ResourceLimitError(
            f"dense matrices are capped at n={DENSE_CAP_DIMENSION}, got {n}"
        )
    dim = 1 << n
    h = np.zeros((dim, dim))
    np.fill_diagonal(h, field.values)
    if gamma != 0.0:
        idx = np.arange(dim)
        for j in range(n):
            h[idx, idx ^ (1 << j)] -= gamma
    return h


def dense_restricted(op: HamiltonianOperator, region: VertexSet) -> np.ndarray:
    """Compact matrix of P H P on the region's members, in index order."""
    if region.n != op.n:
        raise ValueError("region dimension does not match operator")
    s = region.size
    if s > DENSE_RESTRICTED_CAP:
        raise ResourceLimitError(
            f"restricted dense matrices are capped at {DENSE_RESTRICTED_CAP} vertices, got {s}"
        )
    idx = region.indices
    h = np.zeros((s, s))
    np.fill_diagonal(h, op.field.values[idx])
    if op.gamma != 0.0:
        for j in range(op.n):
            partner = idx ^ (1 << j)
            pos = np.searchsorted(idx, partner)
            pos = np.clip(pos, 0, s - 1)
            hit = idx[pos] == partner
            rows = np.flatnonzero(hit)
            h[rows, pos[hit]] -= op.gamma
    return h
