"""Large-deviation set geometry: clusters, balls, and rays.

The deviation set L_eps collects vertices whose field value sits below
-eps n. Its structure is summarized through edge-connected components
(vertices merge when their Hamming distance is at most 2), minimal
enclosing balls, and straight edge-connected rays, which witness large
cluster diameters.
"""

import math
from dataclasses import dataclass

import numpy as np

from .bits import popcount, popcount_array
from .configurations import INFINITE_ORDER, SpinConfiguration
from .disorder import DisorderField
from .errors import ContractViolationError, ResourceLimitError
from .operators import VertexSet

MERGE_RADIUS = 2
COMPONENT_GUARD = 10**6
CROSS_CHECK_LIMIT = 2000
DIAMETER_GUARD = 10**4
RAY_BUDGET = 10**7


def deviation_set(field: DisorderField, eps: float) -> VertexSet:
    """Vertices v with U(v) < -eps n; eps must be positive."""
    if eps <= 0:
        raise ValueError(f"eps must be > 0, got {eps}")
    return VertexSet.from_mask(field.values < -eps * field.n)


def _pair_masks(n: int) -> list:
    masks = [1 << j for j in range(n)]
    masks += [(1 << i) | (1 << j) for j in range(n) for i in range(j)]
    return sorted(masks)


def edge_connected_components(vertices: VertexSet) -> list:
    """Partition into components under the distance <= 2 merge rule.

    Union-find over the member list; neighbors are probed by XOR against
    every 1-bit and 2-bit mask and located with binary search. Components
    come back ordered by their smallest vertex index. For small inputs the
    partition is cross-checked: distinct components must be at Hamming
    distance >= 3 from each other.
    """
    idx = vertices.indices
    s = idx.size
    if s > COMPONENT_GUARD:
        raise ResourceLimitError(
            f"component analysis is capped at {COMPONENT_GUARD} vertices, got {s}"
        )
    if s == 0:
        return []
    parent = np.arange(s, dtype=np.int64)

    def find(a: int) -> int:
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    for mask in _pair_masks(vertices.n):
        partner = idx ^ mask
        keep = partner > idx
        pos = np.searchsorted(idx, partner)
        pos[pos >= s] = s - 1
        hit = keep & (idx[pos] == partner)
        for a in np.flatnonzero(hit):
            ra, rb = find(int(a)), find(int(pos[a]))
            if ra != rb:
                parent[rb] = ra
    roots = np.array([find(int(a)) for a in range(s)])
    components = []
    for root in np.unique(roots):
        members = idx[roots == root]
        components.append(VertexSet(n=vertices.n, indices=members))
    components.sort(key=lambda c: int(c.indices[0]))
    merged = np.sort(np.concatenate([c.indices for c in components]))
    if not np.array_equal(merged, idx):
        raise ContractViolationError("components do not partition the vertex set")
    if s <= CROSS_CHECK_LIMIT and len(components) > 1:
        labels = np.empty(s, dtype=np.int64)
        for ci, comp in enumerate(components):
            labels[np.searchsorted(idx, comp.indices)] = ci
        dist = popcount_array(idx[:, None] ^ idx[None, :])
        cross = labels[:, None] != labels[None, :]
        if np.min(dist[cross]) <= MERGE_RADIUS:
            raise ContractViolationError(
                "distinct components closer than the merge radius"
            )
    return components


def component_diameter(component: VertexSet) -> int:
    """Largest pairwise Hamming distance within the component."""
    s = component.size
    if s == 0:
        raise ValueError("component must be nonempty")
    if s > DIAMETER_GUARD:
        raise ResourceLimitError(
            f"diameter computation is quadratic, capped at {DIAMETER_GUARD} vertices"
        )
    idx = component.indices
    dist = popcount_array(idx[:, None] ^ idx[None, :])
    return int(dist.max())


def enclosing_ball(component: VertexSet):
    """Small enclosing ball (center, radius) of a component.

    Candidate centers are the members themselves, the coordinatewise
    majority vertex (ties toward 0), and the midpoint of a diametral pair,
    which flips the lower-indexed half of the differing coordinates. The
    midpoint candidate guarantees radius ceil(d/2) for a pair at distance
    d, which the first two candidate families alone do not.
    """
    s = component.size
    if s == 0:
        raise ValueError("component must be nonempty")
    if s > DIAMETER_GUARD:
        raise ResourceLimitError(
            f"enclosing ball computation is capped at {DIAMETER_GUARD} vertices"
        )
    n = component.n
    idx = component.indices
    bit_counts = ((idx[:, None] >> np.arange(n)) & 1).sum(axis=0)
    majority = int(np.sum((bit_counts * 2 > s).astype(np.int64) << np.arange(n)))
    dist = popcount_array(idx[:, None] ^ idx[None, :])
    u_pos, v_pos = np.unravel_index(int(np.argmax(dist)), dist.shape)
    u, v = int(idx[u_pos]), int(idx[v_pos])
    diff = u ^ v
    midpoint = u
    for _ in range(popcount(diff) // 2):
        low = diff & -diff
        midpoint ^= low
        diff ^= low
    candidates = list(int(c) for c in idx) + [majority, midpoint]
    best_center, best_radius = None, None
    for center in candidates:
        radius = int(popcount_array(idx ^ center).max())
        if best_radius is None or radius < best_radius:
            best_center, best_radius = center, radius
    return SpinConfiguration(best_center, n), best_radius


@dataclass(frozen=True)
class Ray:
    """A straight edge-connected vertex path.

    Consecutive steps have size 1 or 2 and distances add up exactly, so
    the distance from the first vertex grows by the step size each hop.
    """

    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if not is_edge_connected_ray(self.vertices):
            raise ValueError("vertex list is not an edge-connected ray")

    @property
    def length(self) -> int:
        return len(self.vertices)


def is_edge_connected_ray(vertices) -> bool:
    """True when the vertex list is a straight ray with steps of size 1 or 2."""
    vertices = list(vertices)
    if not vertices:
        return False
    n = vertices[0].n
    if any(v.n != n for v in vertices):
        return False
    cum = 0
    first = vertices[0].bits
    for prev, cur in zip(vertices, vertices[1:]):
        step = popcount(prev.bits ^ cur.bits)
        if step not in (1, 2):
            return False
        cum += step
        if popcount(first ^ cur.bits) != cum:
            return False
    return True


def _ray_budget(n: int, length: int) -> int:
    return (1 << n) * (n + n * (n - 1) // 2) ** (length - 1)


def enumerate_rays(n: int, length: int):
    """Yield every ray of the given length as a tuple of vertex indices."""
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    if _ray_budget(n, length) > RAY_BUDGET:
        raise ResourceLimitError(
            f"ray enumeration budget {_ray_budget(n, length)} exceeds {RAY_BUDGET}"
        )
    masks = _pair_masks(n)

    def extend(path, cum):
        if len(path) == length:
            yield tuple(path)
            return
        last = path[-1]
        for mask in masks:
            nxt = last ^ mask
            if popcount(path[0] ^ nxt) == cum + popcount(mask):
                path.append(nxt)
                yield from extend(path, cum + popcount(mask))
                path.pop()

    for start in range(1 << n):
        yield from extend([start], 0)


def count_rays(n: int, length: int) -> int:
    """Exact number of rays of the given length in Q_n."""
    return sum(1 for _ in enumerate_rays(n, length))


@dataclass(frozen=True, eq=False)
class ClusterComponent:
    vertices: VertexSet
    size: int
    diameter: int
    enclosing_radius: int
    center: SpinConfiguration
    contained: bool


@dataclass(frozen=True, eq=False)
class ClusterReport:
    """Geometry summary of the deviation set at one (field, eps)."""

    eps: float
    k_factor: float
    set_size: int
    components: tuple
    max_component_diameter: int
    contained_in_radius: int
    radius_cap: float
    all_contained: bool


def cluster_report(field: DisorderField, eps: float, k_factor: float = 4.0) -> ClusterReport:
    """Component-by-component geometry of L_eps with the containment verdict.

    The containment radius is k_factor * ceil(n / p); for the REM kind the
    ceiling is taken to be 1, so the cap is k_factor itself.
    """
    if k_factor < 1:
        raise ValueError(f"k_factor must be >= 1, got {k_factor}")
    n = field.n
    if field.params.p == INFINITE_ORDER:
        cells = 1
    else:
        cells = math.ceil(n / field.params.order)
    radius_cap = k_factor * cells
    dev = deviation_set(field, eps)
    parts = []
    for comp in edge_connected_components(dev):
        center, radius = enclosing_ball(comp)
        parts.append(
            ClusterComponent(
                vertices=comp,
                size=comp.size,
                diameter=component_diameter(comp),
                enclosing_radius=radius,
                center=center,
                contained=radius <= radius_cap,
            )
        )
    return ClusterReport(
        eps=eps,
        k_factor=k_factor,
        set_size=dev.size,
        components=tuple(parts),
        max_component_diameter=max((c.diameter for c in parts), default=0),
        contained_in_radius=max((c.enclosing_radius for c in parts), default=0),
        radius_cap=radius_cap,
        all_contained=all(c.contained for c in parts),
    )
