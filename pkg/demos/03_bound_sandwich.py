"""Sandwich the exact pressure between its two computable bounds.

The lower bound comes from the Gibbs variational principle with two
trial states (classical Gibbs and transversal product state). The upper
bound splits the cube into a deviation set and its complement and pays
Golden-Thompson plus a boundary-norm term. Both are per-realization
statements, so we can audit them on any sampled field.
"""

from pspinlab import (
    ModelParameters,
    apply_boundary,
    deviation_set,
    gibbs_lower_bound,
    golden_thompson_upper_bound,
    operator_norm_estimate,
    pressure_classical,
    pressure_exact,
    sample_field,
)

n = 10
field = sample_field(ModelParameters.sk(n, 3), seed=21)
eps = 0.2
region = deviation_set(field, eps)
norm_a = (
    operator_norm_estimate(lambda x: apply_boundary(region, x), 1 << n)
    if region.size
    else 0.0
)
print(f"n={n}, p=3, eps={eps}: deviation set has {region.size} of {1 << n} "
      f"vertices, boundary norm {norm_a:.3f}")

print(f"\n  {'beta':>4} {'gamma':>5} {'lower':>9} {'exact':>9} {'upper':>9}")
for beta in (0.5, 1.0, 2.0):
    phi_cl = pressure_classical(field, beta).value
    for gamma in (0.5, 1.0, 2.0):
        exact = pressure_exact(field, beta, gamma).value
        lower = gibbs_lower_bound(field, beta, gamma)
        upper = golden_thompson_upper_bound(phi_cl, eps, norm_a, beta, gamma, n)
        tick = "ok" if lower <= exact <= upper else "VIOLATION"
        print(f"  {beta:>4} {gamma:>5} {lower:>9.4f} {exact:>9.4f} "
              f"{upper:>9.4f}  {tick}")
