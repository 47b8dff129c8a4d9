"""Count straight chains on the cube and bound their joint tails.

An edge-connected ray is a chain of configurations with steps of
Hamming size 1 or 2 whose pairwise distances add up along the chain.
Rays index the union bound behind the cluster statements: their count
grows like 2^n n^{2L}, while the summed covariance along any ray stays
O(n^2 / p), so a joint Gaussian lower-tail bound beats the entropy.
"""

import math

import numpy as np

from pspinlab import (
    ModelParameters,
    SpinConfiguration,
    cluster_failure_bound,
    count_rays,
    enumerate_rays,
    gaussian_min_bound,
    h_function,
    is_edge_connected_ray,
    ray_count_bound,
    ray_covariance_cap,
    ray_covariance_sum,
)

print("ray counts D(L, n) against the bound 2^n n^{2L}")
print(f"  {'n':>3} {'L':>2} {'count':>9} {'ln count':>9} {'ln bound':>9}")
for n, L in [(3, 2), (4, 2), (6, 2), (4, 3), (5, 3), (6, 3)]:
    d = count_rays(n, L)
    print(f"  {n:>3} {L:>2} {d:>9} {math.log(d):>9.3f} "
          f"{ray_count_bound(L, n):>9.3f}")

print("\nevery enumerated ray is straight (distances add along the chain)")
n = 5
total = 0
for L in (1, 2, 3):
    for ray in enumerate_rays(n, L):
        assert is_edge_connected_ray([SpinConfiguration(v, n) for v in ray])
        total += 1
print(f"  checked {total} rays in dimension {n}")

print("\nsummed covariance along rays, n=8: exact vs the two caps")
n = 8
rays = [next(iter(enumerate_rays(n, L))) for L in (1, 2, 3)]
for p in (1, 2, 4):
    params = ModelParameters.sk(n, p)
    cap = ray_covariance_cap(n, p)
    for ray in rays:
        rc = ray_covariance_sum([SpinConfiguration(v, n) for v in ray], params)
        hb = f"{rc.h_bound:.2f}" if rc.h_bound is not None else "  (2p > n)"
        print(f"  p={p} |ray|={len(ray)}: exact={rc.exact:7.2f}  "
              f"cap={cap:7.2f}  h(1) n^2/p={hb}")

print("\njoint lower tail of positively correlated Gaussians")
rng = np.random.default_rng(5)
mix = np.abs(rng.normal(size=(6, 6)))
cov = mix @ mix.T
row_max = float(cov.sum(axis=1).max())
samples = rng.standard_normal((200000, 6)) @ mix.T
for delta in (0.5, 1.0):
    p_hat = float(np.mean(np.all(samples < -delta, axis=1)))
    bound = math.exp(gaussian_min_bound(6, delta, row_max))
    print(f"  delta={delta}: empirical {p_hat:.5f} <= bound {bound:.5f}")

print("\ncluster failure exponent (log of the union bound) at p = n:")
print("negative means stray components are exponentially unlikely;")
print(f"the crossover needs eps^2 > 2 * 4 h(1) / k, h(1) = {h_function(1.0):.4f}")
for n in (64, 1024, 4096):
    row = "  ".join(
        f"eps={eps}: {cluster_failure_bound(4.0, n, n, eps):>9.1f}"
        for eps in (1.0, 2.0)
    )
    print(f"  n={n:>5}  {row}")
