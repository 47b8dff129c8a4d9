"""Watch the low-energy configurations organize into tiny clusters.

At large interaction order the configurations with energy below -eps*n
form a sparse random subset of the cube. Members at Hamming distance
<= 2 merge into edge-connected components; each component should then
sit inside a small Hamming ball. We draw realizations at p = n (the
iid-like regime) and tabulate the component geometry.
"""

import numpy as np

from pspinlab import (
    ModelParameters,
    cluster_report,
    deviation_set,
    edge_connected_components,
    sample_field,
)

n, p, eps = 14, 14, 0.9
print(f"n={n}, p={p}, threshold -{eps}*n = {-eps * n}")
print(f"\n  {'seed':>4} {'|L|':>4} {'comps':>5} {'sizes':>12} "
      f"{'max diam':>8} {'radius':>6} {'cap':>4} {'inside':>6}")
for seed in range(12):
    field = sample_field(ModelParameters.sk(n, p), seed)
    rep = cluster_report(field, eps, k_factor=4.0)
    sizes = sorted((c.size for c in rep.components), reverse=True)
    print(f"  {seed:>4} {rep.set_size:>4} {len(rep.components):>5} "
          f"{str(sizes[:4]):>12} {rep.max_component_diameter:>8} "
          f"{rep.contained_in_radius:>6} {rep.radius_cap:>4} "
          f"{str(rep.all_contained):>6}")

# one realization in detail: list the members of each component
field = sample_field(ModelParameters.sk(n, p), 3)
region = deviation_set(field, eps)
print(f"\nrealization seed=3: deviation set {list(map(int, region.indices))}")
for comp in edge_connected_components(region):
    members = [format(int(v), f"0{n}b") for v in comp.indices]
    print(f"  component of size {comp.size}: {members}")
