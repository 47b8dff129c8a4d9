"""Shared helpers for the test suite."""

from collections import defaultdict, deque

import numpy as np

from pspinlab import ModelParameters, SamplerKind
from pspinlab.disorder import DisorderField

# one line per acceptance check, replayed after the run so the verdicts
# survive pytest's fd-level capture
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.line(line)


def zero_field(n, p=2):
    """A disorder field with U identically zero, for operator-only checks."""
    return DisorderField(
        values=np.zeros(1 << n),
        params=ModelParameters.sk(n, p),
        seed=0,
        sampler=SamplerKind.WALSH_SPECTRAL,
    )


def planted_field(n, low_indices, depth=2.0, p=2):
    """A field whose deviation vertices at eps=1 are exactly `low_indices`."""
    values = np.zeros(1 << n)
    values[list(low_indices)] = -depth * n
    return DisorderField(
        values=values,
        params=ModelParameters.sk(n, p),
        seed=0,
        sampler=SamplerKind.WALSH_SPECTRAL,
    )


def bfs_components(n, members):
    """Reference clustering from scratch over the touching-edge graph.

    Edges are all hypercube edges with at least one endpoint among the
    members; two members join when an edge path (consecutive edges sharing
    a vertex) connects them. Returns sorted lists of sorted members.
    """
    member_set = set(int(m) for m in members)
    edges = set()
    for u in member_set:
        for j in range(n):
            v = u ^ (1 << j)
            edges.add((min(u, v), max(u, v)))
    by_vertex = defaultdict(list)
    for e in edges:
        by_vertex[e[0]].append(e)
        by_vertex[e[1]].append(e)
    comp_of = {}
    groups = []
    for start in sorted(member_set):
        if start in comp_of:
            continue
        group = [start]
        comp_of[start] = len(groups)
        queue = deque(by_vertex[start])
        seen = set(by_vertex[start])
        while queue:
            edge = queue.popleft()
            for v in edge:
                if v in member_set and v not in comp_of:
                    comp_of[v] = len(groups)
                    group.append(v)
                for nxt in by_vertex[v]:
                    if nxt not in seen:
                        seen.add(nxt)
                        queue.append(nxt)
        groups.append(sorted(group))
    return sorted(groups)
