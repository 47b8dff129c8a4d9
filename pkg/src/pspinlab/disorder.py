"""Disorder sampling: exact stationary Gaussian fields on the hypercube.

The SK-type field with covariance N xi(a, b)**p is stationary under the
hypercube's translation group, so it diagonalizes in the Walsh basis.
`walsh_spectrum` computes the eigenvalue per character weight exactly
with integer arithmetic, and `sample_field` draws fields whose finite-N
covariance is exact (not asymptotic) for every sampler.

Reproducibility contract: a field is a pure function of
(params, seed, sampler). Two WALSH_SPECTRAL fields with the same (n, seed)
share the underlying white noise across different p, which downstream
disorder averages over p-grids exploit as common random numbers.
"""

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .bits import fwht, popcount, popcount_array
from .configurations import (
    INFINITE_ORDER,
    ModelKind,
    ModelParameters,
    SpinConfiguration,
    hamming_distance,
)
from .errors import ResourceLimitError

MAX_SAMPLING_DIMENSION = 26
MAX_SPECTRUM_ORDER = 512
NAIVE_BUDGET = 10**8


class SamplerKind(Enum):
    WALSH_SPECTRAL = "walsh_spectral"
    NAIVE_MONOMIAL = "naive_monomial"
    SPHERICAL_DIRECT = "spherical_direct"
    IID_REM = "iid_rem"


_SAMPLER_STREAM = {
    SamplerKind.WALSH_SPECTRAL: 101,
    SamplerKind.NAIVE_MONOMIAL: 102,
    SamplerKind.SPHERICAL_DIRECT: 103,
    SamplerKind.IID_REM: 104,
}

_DEFAULT_SAMPLER = {
    ModelKind.SK: SamplerKind.WALSH_SPECTRAL,
    ModelKind.SPHERICAL: SamplerKind.SPHERICAL_DIRECT,
    ModelKind.REM: SamplerKind.IID_REM,
}

_COMPATIBLE = {
    SamplerKind.WALSH_SPECTRAL: (ModelKind.SK,),
    SamplerKind.NAIVE_MONOMIAL: (ModelKind.SK,),
    SamplerKind.SPHERICAL_DIRECT: (ModelKind.SPHERICAL,),
    SamplerKind.IID_REM: (ModelKind.REM,),
}


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    """Covariance eigenvalue per character weight k = 0..n."""

    n: int
    p: int
    lambda_by_weight: np.ndarray

    def __post_init__(self):
        self.lambda_by_weight.setflags(write=False)


@dataclass(frozen=True, eq=False)
class DisorderField:
    """A realized disorder field: values[v] = U(v) over all 2**n vertices."""

    values: np.ndarray
    params: ModelParameters
    seed: int
    sampler: SamplerKind

    def __post_init__(self):
        self.values.setflags(write=False)
        if self.values.shape != (1 << self.params.n,):
            raise ValueError(
                f"field length {self.values.shape} does not match n={self.params.n}"
            )

    @property
    def n(self) -> int:
        return self.params.n


def _odd_support_counts(n: int, p: int) -> list:
    """counts[k] = number of index p-tuples from {1..n} whose multiset hits
    exactly k coordinates an odd number of times. Exact integers.

    Appending one more index to a tuple with odd set size k either cancels
    one of the k odd coordinates or adds one of the n - k others, which
    gives the two-term recursion below.
    """
    counts = [0] * (n + 1)
    counts[0] = 1
    for _ in range(p):
        nxt = [0] * (n + 1)
        for k in range(n + 1):
            if k + 1 <= n:
                nxt[k] += (k + 1) * counts[k + 1]
            if k - 1 >= 0:
                nxt[k] += (n - k + 1) * counts[k - 1]
        counts = nxt
    return counts


def walsh_spectrum(n: int, p: int) -> WalshSpectrum:
    """Exact Walsh eigenvalues of the covariance N xi**p.

    lambda_k = counts[k] / (C(n, k) * n**(p-1)); the sum rule
    sum_k C(n, k) lambda_k = n holds exactly because sum_k counts[k] = n**p.
    """
    if not (1 <= n):
        raise ValueError(f"n must be >= 1, got {n}")
    if not (1 <= p):
        raise ValueError(f"p must be >= 1, got {p}")
    if p > MAX_SPECTRUM_ORDER:
        raise ResourceLimitError(
            f"p={p} exceeds the spectrum cap {MAX_SPECTRUM_ORDER}; "
            "use the REM model for effectively infinite order"
        )
    counts = _odd_support_counts(n, p)
    if sum(counts) != n**p:
        raise AssertionError("odd-support counts violate the n**p sum rule")
    denom = n ** (p - 1)
    lam = np.array(
        [float(Fraction(counts[k], math.comb(n, k) * denom)) for k in range(n + 1)]
    )
    return WalshSpectrum(n=n, p=p, lambda_by_weight=lam)


def spectral_field_values(n: int, p, white_noise: np.ndarray) -> np.ndarray:
    """Map a white-noise vector of length 2**n to field values.

    For finite p the Walsh coefficients are scaled by sqrt(lambda_k); for
    p = INFINITE_ORDER a flat spectrum n * 2**-n is used, which makes the
    output exactly i.i.d. N(0, n) (an orthogonal mix of i.i.d. Gaussians
    with scalar covariance is again i.i.d.).
    """
    white_noise = np.asarray(white_noise, dtype=np.float64)
    if white_noise.shape != (1 << n,):
        raise ValueError(f"white noise length must be 2**{n}")
    if p == INFINITE_ORDER:
        scale = np.full(1 << n, math.sqrt(n * 2.0**-n))
    else:
        spectrum = walsh_spectrum(n, int(p))
        weights = popcount_array(np.arange(1 << n, dtype=np.int64))
        scale = np.sqrt(spectrum.lambda_by_weight[weights])
    return fwht(scale * white_noise)


def _rng_for(sampler: SamplerKind, seed: int) -> np.random.Generator:
    if seed < 0:
        raise ValueError(f"seed must be >= 0, got {seed}")
    return np.random.default_rng(
        np.random.SeedSequence([_SAMPLER_STREAM[sampler], int(seed)])
    )


def _sample_walsh(params: ModelParameters, seed: int) -> np.ndarray:
    rng = _rng_for(SamplerKind.WALSH_SPECTRAL, seed)
    g = rng.standard_normal(1 << params.n)
    return spectral_field_values(params.n, params.order, g)


def _sample_naive(params: ModelParameters, seed: int) -> np.ndarray:
    n, p = params.n, params.order
    if (1 << n) * n ** (p - 1) > NAIVE_BUDGET or n**p > NAIVE_BUDGET:
        raise ResourceLimitError(
            f"naive monomial sampling needs ~n**p = {n}**{p} coefficients; "
            "use WALSH_SPECTRAL instead"
        )
    rng = _rng_for(SamplerKind.NAIVE_MONOMIAL, seed)
    g = rng.standard_normal((n,) * p)
    idx = np.arange(1 << n, dtype=np.int64)
    spins = np.where((idx[:, None] >> np.arange(n)) & 1, 1.0, -1.0)
    # contract one tensor index at a time against each vertex's spin vector
    acc = spins @ g.reshape(n, -1)
    for _ in range(p - 1):
        acc = np.einsum("si,sij->sj", spins, acc.reshape(1 << n, n, -1))
    return acc.reshape(1 << n) * n ** (-(p - 1) / 2)


def _sample_spherical(params: ModelParameters, seed: int) -> np.ndarray:
    n, p = params.n, params.order
    combos = list(itertools.combinations(range(n), p))
    if (1 << n) * len(combos) > NAIVE_BUDGET:
        raise ResourceLimitError(
            f"spherical sampling needs 2**{n} x C({n},{p}) character columns"
        )
    rng = _rng_for(SamplerKind.SPHERICAL_DIRECT, seed)
    g = rng.standard_normal(len(combos))
    idx = np.arange(1 << n, dtype=np.int64)
    values = np.zeros(1 << n)
    for c, combo in enumerate(combos):
        mask = 0
        for j in combo:
            mask |= 1 << j
        parity = (p - popcount_array(idx & mask)) & 1
        values += g[c] * np.where(parity, -1.0, 1.0)
    return values * math.sqrt(math.factorial(p) / n ** (p - 1))


def _sample_rem(params: ModelParameters, seed: int) -> np.ndarray:
    rng = _rng_for(SamplerKind.IID_REM, seed)
    return math.sqrt(params.n) * rng.standard_normal(1 << params.n)


_SAMPLER_FN = {
    SamplerKind.WALSH_SPECTRAL: _sample_walsh,
    SamplerKind.NAIVE_MONOMIAL: _sample_naive,
    SamplerKind.SPHERICAL_DIRECT: _sample_spherical,
    SamplerKind.IID_REM: _sample_rem,
}


def default_sampler(kind: ModelKind) -> SamplerKind:
    return _DEFAULT_SAMPLER[kind]


def sample_field(
    params: ModelParameters, seed: int, sampler: SamplerKind = None
) -> DisorderField:
    """Draw one disorder realization; bit-exact given (params, seed, sampler)."""
    if params.n > MAX_SAMPLING_DIMENSION:
        raise ResourceLimitError(
            f"field sampling is capped at n={MAX_SAMPLING_DIMENSION}, got {params.n}"
        )
    if sampler is None:
        sampler = _DEFAULT_SAMPLER[params.kind]
    if params.kind not in _COMPATIBLE[sampler]:
        raise ValueError(f"sampler {sampler.value} does not support kind {params.kind.value}")
    values = _SAMPLER_FN[sampler](params, seed)
    return DisorderField(values=values, params=params, seed=int(seed), sampler=sampler)


def _elementary_symmetric(n: int, d: int, p: int) -> Fraction:
    """e_p of the multiset with n-d entries +1 and d entries -1, exactly.

    Newton's identities close on the power sums, which are n - 2d for odd
    exponents and n for even ones.
    """
    e = [Fraction(1)]
    for m in range(1, p + 1):
        total = Fraction(0)
        for i in range(1, m + 1):
            s_i = n - 2 * d if i % 2 else n
            total += (-1) ** (i - 1) * e[m - i] * s_i
        e.append(total / m)
    return e[p]


def covariance_profile(params: ModelParameters) -> np.ndarray:
    """Exact covariance as a function of Hamming distance d = 0..n."""
    n = params.n
    d = np.arange(n + 1)
    if params.kind is ModelKind.REM:
        out = np.zeros(n + 1)
        out[0] = float(n)
        return out
    if params.kind is ModelKind.SK:
        xi = (n - 2 * d) / n
        return n * xi ** params.order
    p = params.order
    scale = Fraction(math.factorial(p), n ** (p - 1))
    return np.array(
        [float(scale * _elementary_symmetric(n, int(dd), p)) for dd in d]
    )


def exact_covariance(
    a: SpinConfiguration, b: SpinConfiguration, params: ModelParameters
) -> float:
    """E[U(a) U(b)] for the given model, exact at finite n."""
    if a.n != params.n or b.n != params.n:
        raise ValueError("configuration dimension does not match params")
    d = hamming_distance(a, b)
    n = params.n
    if params.kind is ModelKind.REM:
        return float(n) if d == 0 else 0.0
    if params.kind is ModelKind.SK:
        return n * ((n - 2 * d) / n) ** params.order
    p = params.order
    return float(
        Fraction(math.factorial(p), n ** (p - 1)) * _elementary_symmetric(n, d, p)
    )


def spherical_delta_exact(n: int, p: int) -> float:
    """Exact relative self-covariance deficit 1 - p! C(n,p) / n**p."""
    if not 1 <= p <= n:
        raise ValueError(f"need 1 <= p <= n, got p={p}, n={n}")
    return float(1 - Fraction(math.factorial(p) * math.comb(n, p), n**p))


def spherical_delta_bound(n: int, p: int) -> float:
    """Upper bound min(1, p(p-1)/(2n)) on the spherical self-covariance deficit."""
    if not 1 <= p <= n:
        raise ValueError(f"need 1 <= p <= n, got p={p}, n={n}")
    return min(1.0, p * (p - 1) / (2 * n))
