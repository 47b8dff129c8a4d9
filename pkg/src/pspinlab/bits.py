"""Bit-level helpers for vertex indexing on the hypercube.

Vertices of Q_N are encoded as N-bit integers; bit j holds coordinate j
(set bit means spin +1). Everything downstream indexes arrays of length
2**N in this vertex order.
"""

import numpy as np

MAX_DIMENSION = 30


def popcount(x: int) -> int:
    """Number of set bits of a nonnegative Python int."""
    return x.bit_count()


def popcount_array(x) -> np.ndarray:
    """Elementwise popcount of an integer array, as int64."""
    return np.bitwise_count(np.asarray(x)).astype(np.int64)


def dimension_of(size: int) -> int:
    """Recover N from an array length 2**N, validating the power of two."""
    if size <= 0:
        raise ValueError(f"array length must be positive, got {size}")
    n = size.bit_length() - 1
    if (1 << n) != size:
        raise ValueError(f"array length {size} is not a power of two")
    if n > MAX_DIMENSION:
        raise ValueError(f"dimension {n} exceeds the cap of {MAX_DIMENSION}")
    return n


def fwht(a: np.ndarray) -> np.ndarray:
    """Unnormalized fast Walsh-Hadamard transform along the last axis.

    Applies the +-1 matrix H[x, y] = (-1)^popcount(x & y); H @ H = 2**N I.
    Leading axes are treated as a batch. Always returns a float64 copy.
    """
    v = np.array(a, dtype=np.float64, copy=True)
    size = v.shape[-1]
    n = dimension_of(size)
    flat = v.reshape(-1, size)
    h = 1
    for _ in range(n):
        w = flat.reshape(flat.shape[0], -1, 2, h)
        lo = w[:, :, 0, :].copy()
        hi = w[:, :, 1, :].copy()
        w[:, :, 0, :] = lo + hi
        w[:, :, 1, :] = lo - hi
        h *= 2
    return flat.reshape(v.shape)
