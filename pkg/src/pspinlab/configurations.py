"""Core domain types: spin configurations and model parameter bundles."""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bits import MAX_DIMENSION, popcount

INFINITE_ORDER = math.inf


class ModelKind(Enum):
    SK = "sk"
    SPHERICAL = "spherical"
    REM = "rem"


@dataclass(frozen=True)
class SpinConfiguration:
    """One vertex of the hypercube Q_N.

    `bits` is the N-bit vertex index; bit j set means spin j is +1,
    clear means -1.
    """

    bits: int
    n: int

    def __post_init__(self):
        if not (1 <= self.n <= MAX_DIMENSION):
            raise ValueError(f"dimension must be in [1, {MAX_DIMENSION}], got {self.n}")
        if not (0 <= self.bits < (1 << self.n)):
            raise ValueError(f"bits {self.bits} out of range for n={self.n}")

    def spin(self, j: int) -> int:
        """Spin value at coordinate j, +1 or -1."""
        if not (0 <= j < self.n):
            raise ValueError(f"coordinate {j} out of range for n={self.n}")
        return 1 if (self.bits >> j) & 1 else -1

    def flip(self, j: int) -> "SpinConfiguration":
        """Configuration with coordinate j negated."""
        if not (0 <= j < self.n):
            raise ValueError(f"coordinate {j} out of range for n={self.n}")
        return SpinConfiguration(self.bits ^ (1 << j), self.n)

    def to_spins(self) -> np.ndarray:
        """Coordinates as an int array of +-1, index j at position j."""
        idx = np.arange(self.n)
        return np.where((self.bits >> idx) & 1, 1, -1).astype(np.int64)

    @classmethod
    def from_spins(cls, spins) -> "SpinConfiguration":
        spins = np.asarray(spins)
        if spins.ndim != 1 or not np.all(np.abs(spins) == 1):
            raise ValueError("spins must be a 1-D array of +-1")
        bits = int(np.sum((spins > 0).astype(np.int64) << np.arange(spins.size)))
        return cls(bits, spins.size)

    def __str__(self):
        return "".join("+" if (self.bits >> j) & 1 else "-" for j in range(self.n))


def hamming_distance(a: SpinConfiguration, b: SpinConfiguration) -> int:
    """Number of coordinates where a and b differ."""
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    return popcount(a.bits ^ b.bits)


def overlap(a: SpinConfiguration, b: SpinConfiguration) -> float:
    """Normalized inner product xi(a, b) = 1 - 2 d(a, b)/N, in [-1, 1]."""
    d = hamming_distance(a, b)
    return (a.n - 2 * d) / a.n


def flip(a: SpinConfiguration, j: int) -> SpinConfiguration:
    return a.flip(j)


def enumerate_configurations(n: int):
    """Yield all 2**n configurations in vertex-index order."""
    if not (1 <= n <= MAX_DIMENSION):
        raise ValueError(f"dimension must be in [1, {MAX_DIMENSION}], got {n}")
    for bits in range(1 << n):
        yield SpinConfiguration(bits, n)


@dataclass(frozen=True)
class ModelParameters:
    """Model definition: dimension, interaction order, field, temperature.

    `p` is a positive integer for SK and spherical models and must be
    INFINITE_ORDER exactly when `kind` is REM.
    """

    n: int
    p: float
    kind: ModelKind
    gamma: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if not (1 <= self.n <= MAX_DIMENSION):
            raise ValueError(f"dimension must be in [1, {MAX_DIMENSION}], got {self.n}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.beta < 0:
            raise ValueError(f"beta must be >= 0, got {self.beta}")
        if self.kind is ModelKind.REM:
            if self.p != INFINITE_ORDER:
                raise ValueError("kind REM requires p = INFINITE_ORDER")
            return
        if self.p == INFINITE_ORDER:
            raise ValueError(f"p = INFINITE_ORDER requires kind REM, got {self.kind}")
        if self.p != int(self.p) or self.p < 1:
            raise ValueError(f"p must be a positive integer, got {self.p}")
        if self.kind is ModelKind.SPHERICAL and self.p > self.n:
            raise ValueError(f"spherical model needs p <= n, got p={self.p}, n={self.n}")

    @property
    def order(self) -> int:
        """p as a plain int; only valid for finite orders."""
        if self.p == INFINITE_ORDER:
            raise ValueError("order is infinite")
        return int(self.p)

    @classmethod
    def sk(cls, n: int, p: int, gamma: float = 0.0, beta: float = 0.0):
        return cls(n=n, p=p, kind=ModelKind.SK, gamma=gamma, beta=beta)

    @classmethod
    def spherical(cls, n: int, p: int, gamma: float = 0.0, beta: float = 0.0):
        return cls(n=n, p=p, kind=ModelKind.SPHERICAL, gamma=gamma, beta=beta)

    @classmethod
    def rem(cls, n: int, gamma: float = 0.0, beta: float = 0.0):
        return cls(n=n, p=INFINITE_ORDER, kind=ModelKind.REM, gamma=gamma, beta=beta)
