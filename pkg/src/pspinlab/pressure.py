"""Quenched pressure estimators for a single disorder realization.

Three routes, used at different sizes:
  * exact:     dense eigendecomposition, n <= 13;
  * classical: gamma = 0 closed form over the diagonal;
  * slq:       stochastic Lanczos quadrature with Rademacher probes.

All of them compute Phi = (1/n) ln( 2**-n Tr exp(-beta H) ).

The SLQ tridiagonalizations depend only on (field, gamma, probes, steps,
seed), not on beta, so `slq_quadratures` is exposed separately and a beta
sweep can reuse one set of probe runs via `pressure_from_quadratures`.
"""

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.linalg import eigh_tridiagonal, eigvalsh
from scipy.special import logsumexp

from .disorder import DisorderField
from .errors import ConvergenceError, ResourceLimitError
from .operators import DENSE_CAP_DIMENSION, HamiltonianOperator, dense_hamiltonian

SLQ_CAP_DIMENSION = 26
SLQ_PROBES_DEFAULT = 32
SLQ_STEPS_DEFAULT = 80


class PressureMethod(Enum):
    EXACT = "exact"
    CLASSICAL = "classical"
    SLQ = "slq"


@dataclass(frozen=True)
class PressureEstimate:
    value: float
    method: PressureMethod
    std_error: float = 0.0
    probes: int = None
    lanczos_steps: int = None

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"pressure must be finite, got {self.value}")
        if self.std_error < 0:
            raise ValueError("std_error must be >= 0")


def dense_spectrum(field: DisorderField, gamma: float) -> np.ndarray:
    """All eigenvalues of H = diag(U) + gamma T, ascending; n <= 13."""
    h = dense_hamiltonian(field, gamma)
    return eigvalsh(h, overwrite_a=True, check_finite=False, driver="evd")


def pressure_from_spectrum(eigenvalues: np.ndarray, beta: float, n: int) -> float:
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    return float(logsumexp(-beta * np.asarray(eigenvalues)) - n * math.log(2)) / n


def pressure_exact(field: DisorderField, beta: float, gamma: float) -> PressureEstimate:
    """Pressure from the full spectrum; errors above the dense cap."""
    if field.n > DENSE_CAP_DIMENSION:
        raise ResourceLimitError(
            f"exact pressure is capped at n={DENSE_CAP_DIMENSION}; use pressure_slq"
        )
    eigs = dense_spectrum(field, gamma)
    return PressureEstimate(
        value=pressure_from_spectrum(eigs, beta, field.n), method=PressureMethod.EXACT
    )


def pressure_classical(field: DisorderField, beta: float) -> PressureEstimate:
    """Gamma = 0 pressure, directly from the diagonal field values."""
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    n = field.n
    value = float(logsumexp(-beta * field.values) - n * math.log(2)) / n
    return PressureEstimate(value=value, method=PressureMethod.CLASSICAL)


def _lanczos_tridiag(apply_fn, v0: np.ndarray, steps: int):
    """Lanczos with full reorthogonalization; returns (alphas, betas).

    Stops early if the Krylov space becomes invariant, in which case the
    truncated quadrature is exact on that subspace.
    """
    dim = v0.size
    steps = min(steps, dim)
    q = np.empty((steps, dim))
    alphas = np.empty(steps)
    betas = np.empty(max(steps - 1, 0))
    q[0] = v0 / np.linalg.norm(v0)
    m = steps
    for k in range(steps):
        w = np.asarray(apply_fn(q[k]), dtype=np.float64)
        alphas[k] = q[k] @ w
        w -= alphas[k] * q[k]
        if k:
            w -= betas[k - 1] * q[k - 1]
        qa = q[: k + 1]
        before = np.linalg.norm(w)
        w -= qa.T @ (qa @ w)
        if np.linalg.norm(w) < 0.7071 * before:
            w -= qa.T @ (qa @ w)
        if k + 1 == steps:
            break
        beta = np.linalg.norm(w)
        if beta <= 1e-12 * max(np.max(np.abs(alphas[: k + 1])), 1e-300):
            m = k + 1
            break
        betas[k] = beta
        q[k + 1] = w / beta
    return alphas[:m], betas[: max(m - 1, 0)]


@dataclass(frozen=True, eq=False)
class SlqQuadratures:
    """Per-probe Ritz nodes and weights, plus the shared spectral shift."""

    n: int
    probes: int
    steps: int
    nodes: tuple
    weights: tuple
    shift: float


def slq_quadratures(
    field: DisorderField,
    gamma: float,
    probes: int = SLQ_PROBES_DEFAULT,
    steps: int = SLQ_STEPS_DEFAULT,
    seed: int = 0,
) -> SlqQuadratures:
    """Run the probe tridiagonalizations once; valid for every beta.

    Probe r uses a Rademacher vector drawn from a stream derived from
    (seed, r), so individual probes are reproducible in isolation.
    The shift is the smallest Ritz value over all probes; factoring it
    out keeps the later exponentials from overflowing at large beta.
    """
    if field.n > SLQ_CAP_DIMENSION:
        raise ResourceLimitError(
            f"SLQ is capped at n={SLQ_CAP_DIMENSION}, got {field.n}"
        )
    if probes < 2:
        raise ValueError(f"need at least 2 probes, got {probes}")
    if steps < 2:
        raise ValueError(f"need at least 2 Lanczos steps, got {steps}")
    op = HamiltonianOperator(field=field, gamma=gamma)
    dim = op.dim
    nodes, weights = [], []
    for r in range(probes):
        rng = np.random.default_rng(np.random.SeedSequence([551, int(seed), r]))
        v = rng.integers(0, 2, size=dim).astype(np.float64) * 2.0 - 1.0
        alphas, betas = _lanczos_tridiag(op.apply, v, steps)
        theta, vecs = eigh_tridiagonal(alphas, betas)
        nodes.append(theta)
        weights.append(vecs[0, :] ** 2)
    shift = min(float(th[0]) for th in nodes)
    return SlqQuadratures(
        n=field.n,
        probes=probes,
        steps=steps,
        nodes=tuple(nodes),
        weights=tuple(weights),
        shift=shift,
    )


def pressure_from_quadratures(quads: SlqQuadratures, beta: float) -> PressureEstimate:
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    n = quads.n
    dim = 1 << n
    taus = np.array(
        [
            dim * float(w @ np.exp(-beta * (th - quads.shift)))
            for th, w in zip(quads.nodes, quads.weights)
        ]
    )
    mean = float(np.mean(taus))
    sd = float(np.std(taus, ddof=1))
    value = (-beta * quads.shift + math.log(mean) - n * math.log(2)) / n
    std_error = sd / (mean * math.sqrt(quads.probes) * n)
    return PressureEstimate(
        value=value,
        method=PressureMethod.SLQ,
        std_error=std_error,
        probes=quads.probes,
        lanczos_steps=quads.steps,
    )


def pressure_slq(
    field: DisorderField,
    beta: float,
    gamma: float,
    probes: int = SLQ_PROBES_DEFAULT,
    steps: int = SLQ_STEPS_DEFAULT,
    seed: int = 0,
    check_bias: bool = False,
) -> PressureEstimate:
    """Stochastic Lanczos quadrature estimate of the pressure.

    std_error covers Monte Carlo probe variance only; quadrature bias is
    separately checked when check_bias is set, by doubling the step count
    and warning if the estimate moves by more than half a standard error.
    """
    quads = slq_quadratures(field, gamma, probes=probes, steps=steps, seed=seed)
    est = pressure_from_quadratures(quads, beta)
    if check_bias:
        refined = pressure_from_quadratures(
            slq_quadratures(field, gamma, probes=probes, steps=2 * steps, seed=seed),
            beta,
        )
        tol = max(est.std_error / 2, 1e-12)
        if abs(refined.value - est.value) > tol:
            warnings.warn(
                f"SLQ quadrature bias {abs(refined.value - est.value):.3e} exceeds "
                f"half a standard error ({est.std_error:.3e}); increase steps",
                stacklevel=2,
            )
    return est


def ground_energy(
    field: DisorderField,
    gamma: float,
    tol: float = 1e-8,
    max_steps: int = 600,
    seed: int = 0,
) -> float:
    """Smallest eigenvalue of H; exact diagonal minimum when gamma = 0."""
    if gamma == 0.0:
        return float(field.values.min())
    op = HamiltonianOperator(field=field, gamma=gamma)
    rng = np.random.default_rng(np.random.SeedSequence([552, int(seed)]))
    v = rng.standard_normal(op.dim)
    v /= np.linalg.norm(v)
    basis = [v]
    alphas, betas = [], []
    best = None
    steps = min(max_steps, op.dim)
    for k in range(steps):
        w = op.apply(basis[-1])
        alpha = float(basis[-1] @ w)
        alphas.append(alpha)
        w -= alpha * basis[-1]
        if betas:
            w -= betas[-1] * basis[-2]
        q = np.stack(basis, axis=1)
        before = np.linalg.norm(w)
        w -= q @ (q.T @ w)
        if np.linalg.norm(w) < 0.7071 * before:
            w -= q @ (q.T @ w)
        beta = float(np.linalg.norm(w))
        theta, vecs = eigh_tridiagonal(np.asarray(alphas), np.asarray(betas))
        best = float(theta[0])
        scale = max(abs(best), 1.0)
        if beta * abs(vecs[-1, 0]) <= tol * scale or beta <= 1e-14 * scale:
            return best
        if k + 1 == op.dim:
            return best
        betas.append(beta)
        basis.append(w / beta)
    raise ConvergenceError(
        f"ground energy did not reach tol={tol} within {steps} Lanczos steps",
        best=best,
    )
