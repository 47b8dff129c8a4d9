"""Closed-form pressures, rigorous bound evaluators, and tail estimates.

Everything in here is a deterministic formula: the limiting REM pressure,
the transverse-field paramagnet pressure, their max (the infinite-order
limit of the quenched pressure), the finite-N sandwich bounds around the
true pressure, and the log-scale large-deviation bounds used by the
cluster geometry analysis.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .configurations import ModelKind, ModelParameters
from .disorder import DisorderField, covariance_profile
from .errors import ContractViolationError
from .pressure import pressure_classical

BETA_CRITICAL = math.sqrt(2.0 * math.log(2.0))

PHASE_TIE_TOLERANCE = 1e-14


class Phase(Enum):
    REM_FROZEN = "rem_frozen"
    REM_PARAMAGNET = "rem_paramagnet"
    QUANTUM_PARAMAGNET = "quantum_paramagnet"


@dataclass(frozen=True)
class PhasePoint:
    beta: float
    gamma: float
    rem: float
    par: float
    qrem: float
    phase: Phase


def rem_pressure(beta: float) -> float:
    """Limiting REM pressure: beta**2/2 below freezing, linear above."""
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    if beta <= BETA_CRITICAL:
        return 0.5 * beta * beta
    return beta * BETA_CRITICAL - math.log(2.0)


def par_pressure(x: float) -> float:
    """ln cosh(x), overflow-safe for large |x|."""
    ax = abs(x)
    if ax > 30.0:
        return ax - math.log(2.0) + math.log1p(math.exp(-2.0 * ax))
    return math.log(math.cosh(ax))


def qrem_pressure(beta: float, gamma: float) -> PhasePoint:
    """Limiting pressure max(REM branch, paramagnet branch) with its phase.

    Ties (within 1e-14) go to the paramagnet; on the REM side the phase is
    frozen exactly when beta >= the critical inverse temperature.
    """
    if beta < 0 or gamma < 0:
        raise ValueError("beta and gamma must be >= 0")
    rem = rem_pressure(beta)
    par = par_pressure(beta * gamma)
    qrem = max(rem, par)
    if par >= rem - PHASE_TIE_TOLERANCE:
        phase = Phase.QUANTUM_PARAMAGNET
    elif beta >= BETA_CRITICAL:
        phase = Phase.REM_FROZEN
    else:
        phase = Phase.REM_PARAMAGNET
    return PhasePoint(beta=beta, gamma=gamma, rem=rem, par=par, qrem=qrem, phase=phase)


def critical_field(beta: float) -> float:
    """Field strength where the paramagnet branch overtakes the REM branch.

    Solves ln cosh(beta gamma) = REM pressure; tends to 1 as beta -> 0,
    and for large beta uses arccosh(y) ~ ln(2y) to avoid overflow.
    """
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    if beta == 0.0:
        return 1.0
    phi = rem_pressure(beta)
    if phi <= 30.0:
        # arccosh(e^phi) via expm1/log1p; the direct form loses all
        # precision for small beta, where e^phi rounds to 1
        u = math.expm1(phi)
        return math.log1p(u + math.sqrt(u * (u + 2.0))) / beta
    return (phi + math.log(2.0)) / beta


def gibbs_lower_bound(field: DisorderField, beta: float, gamma: float) -> float:
    """Variational lower bound on the pressure at one realization.

    Classical product states give the classical pressure; the transverse
    eigenbasis gives the paramagnet pressure shifted by the field mean.
    """
    if beta < 0 or gamma < 0:
        raise ValueError("beta and gamma must be >= 0")
    n = field.n
    classical = pressure_classical(field, beta).value
    paramagnet = par_pressure(beta * gamma) - beta * float(np.mean(field.values)) / n
    return max(classical, paramagnet)


def golden_thompson_upper_bound(
    phi_classical: float,
    eps: float,
    norm_a: float,
    beta: float,
    gamma: float,
    n: int,
) -> float:
    """Upper bound on the pressure from the deviation-set decomposition.

    `norm_a` is the operator norm of the edge-boundary coupling of the
    deviation set L_eps; the bound costs (beta gamma ||A|| + ln 2)/n on top
    of the larger of the classical pressure and the paramagnet pressure
    raised by beta * eps.
    """
    if eps <= 0:
        raise ValueError(f"eps must be > 0, got {eps}")
    if norm_a < 0:
        raise ValueError("norm_a must be >= 0")
    if beta < 0 or gamma < 0:
        raise ValueError("beta and gamma must be >= 0")
    main = max(phi_classical, par_pressure(beta * gamma) + beta * eps)
    return main + (beta * gamma * norm_a + math.log(2.0)) / n


def h_function(x: float) -> float:
    """h(x) = x / (1 - exp(-x)), with the limit value 1 at x = 0."""
    if x == 0.0:
        return 1.0
    return x / -math.expm1(-x)


def gaussian_min_bound(count: int, delta: float, row_cov_max: float) -> float:
    """Log of the bound exp(-count delta^2 / (2 c)) on a joint lower tail.

    Bounds ln P(g_i <= -delta for all i) for centered jointly Gaussian
    g_1..g_count whose covariance matrix has row sums at most row_cov_max.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    if row_cov_max <= 0:
        raise ValueError(f"row_cov_max must be > 0, got {row_cov_max}")
    return -count * delta * delta / (2.0 * row_cov_max)


@dataclass(frozen=True)
class RayCovariance:
    """Covariance row-sum summary along a ray of vertices.

    `exact` is the largest signed covariance row sum; `cap` the always
    valid bound 2n / (1 - exp(-2p/n)); `h_bound` the sharper h(1) n^2 / p
    form, present only in its validity range 2p <= n.
    """

    exact: float
    cap: float
    h_bound: float


def ray_covariance_cap(n: int, p: int) -> float:
    """Bound 2n / (1 - exp(-2p/n)) on ray covariance row sums; any p >= 1."""
    if n < 1 or p < 1:
        raise ValueError("need n >= 1 and p >= 1")
    return 2.0 * n / -math.expm1(-2.0 * p / n)


def ray_covariance_sum(ray, params: ModelParameters) -> RayCovariance:
    """Exact max covariance row sum over a ray's vertices, with its bounds.

    The ray must pass the straightness test; the exact value exceeding the
    cap would contradict the bound's derivation and raises an internal
    contract error.
    """
    from .geometry import is_edge_connected_ray

    if params.kind is not ModelKind.SK:
        raise ValueError("ray covariance sums are defined for the SK kind")
    if not is_edge_connected_ray(ray):
        raise ValueError("vertex list is not an edge-connected ray")
    n, p = params.n, params.order
    profile = covariance_profile(params)
    bits = np.array([v.bits for v in ray], dtype=np.int64)
    dist = np.bitwise_count(bits[:, None] ^ bits[None, :]).astype(np.int64)
    exact = float(np.max(np.sum(profile[dist], axis=1)))
    cap = ray_covariance_cap(n, p)
    if exact > cap * (1.0 + 1e-12):
        raise ContractViolationError(
            f"ray covariance row sum {exact} exceeds its cap {cap}"
        )
    h_bound = h_function(1.0) * n * n / p if 2 * p <= n else None
    return RayCovariance(exact=exact, cap=cap, h_bound=h_bound)


def ray_count_bound(length: int, n: int) -> float:
    """Log of the count bound 2**n n**(2 length) on rays of a given length."""
    if length < 1 or n < 1:
        raise ValueError("need length >= 1 and n >= 1")
    return n * math.log(2.0) + 2.0 * length * math.log(n)


def ray_event_bound(length: int, n: int, p: int, eps: float) -> float:
    """Log of the union bound on any ray of given length lying in L_eps.

    Combines the ray count bound with the Gaussian tail bound through the
    h(1) covariance cap; only valid for 2p <= n, where that cap applies.
    """
    if eps <= 0:
        raise ValueError(f"eps must be > 0, got {eps}")
    if 2 * p > n:
        raise ValueError(f"bound requires 2p <= n, got p={p}, n={n}")
    tail = gaussian_min_bound(length, eps * n, h_function(1.0) * n * n / p)
    return ray_count_bound(length, n) + tail


def cluster_failure_bound(k_factor: float, n: int, p: int, eps: float) -> float:
    """Log bound on some deviation cluster exceeding diameter k n / p.

    Evaluates n (2 + k ln(n)/p - k eps^2 / (4 h(1))) + (k+1) ln(n). The
    probability interpretation needs 2p <= n; the formula itself is also
    useful for sign analysis outside that range and is not gated.
    """
    if k_factor < 1:
        raise ValueError(f"k_factor must be >= 1, got {k_factor}")
    if eps <= 0:
        raise ValueError(f"eps must be > 0, got {eps}")
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    h1 = h_function(1.0)
    return n * (
        2.0 + k_factor * math.log(n) / p - k_factor * eps * eps / (4.0 * h1)
    ) + (k_factor + 1.0) * math.log(n)
