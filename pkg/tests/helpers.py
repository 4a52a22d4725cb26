"""Shared random generators and independent oracles for the test suite.

Oracles here deliberately avoid the library code paths they check: component
counting uses a local breadth-first search, kernel dimensions come from rank
computations on independently assembled matrices, and dim-0 bars are rebuilt
from connected components recomputed at every critical value.
"""

from collections import Counter, deque

import numpy as np

from sheafharmonics import (
    CellularSheaf,
    Cochain0,
    EdgeResiduals,
    ElementSet,
    Graph,
    build_graph,
    sublevel_set,
)


def random_graph(rng, max_nodes=10, min_nodes=1, p=None) -> Graph:
    n = int(rng.integers(min_nodes, max_nodes + 1))
    nodes = [f"n{i:02d}" for i in range(n)]
    if p is None:
        p = float(rng.uniform(0.05, 0.6))
    pairs = [
        (nodes[i], nodes[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    ]
    return build_graph(nodes, pairs)


def random_sheaf(rng, g: Graph, max_dim=3) -> CellularSheaf:
    node_dims = {v: int(rng.integers(1, max_dim + 1)) for v in g.nodes}
    edge_dims = {e: int(rng.integers(1, max_dim + 1)) for e in g.edges}
    restrictions = {
        (v, e): rng.standard_normal((edge_dims[e], node_dims[v]))
        for e in g.edges
        for v in e
    }
    return CellularSheaf(g, node_dims, edge_dims, restrictions)


def random_cochain(rng, sh: CellularSheaf) -> Cochain0:
    return Cochain0({v: rng.standard_normal(sh.node_stalk_dim[v]) for v in sh.host.nodes})


def random_residuals(rng, g: Graph, tie_prob=0.5) -> EdgeResiduals:
    """Random nonnegative residuals; ties are injected deliberately."""
    levels = rng.uniform(0.0, 2.0, size=4)
    norms = {}
    for e in g.edges:
        if rng.random() < tie_prob:
            norms[e] = float(levels[rng.integers(0, len(levels))])
        else:
            norms[e] = float(rng.uniform(0.0, 2.0))
    return EdgeResiduals(g, norms)


def bfs_components(nodes, edges) -> list[frozenset]:
    """Connected components of an (node set, edge set) pair, by plain BFS."""
    adjacency = {v: set() for v in nodes}
    for lo, hi in edges:
        adjacency[lo].add(hi)
        adjacency[hi].add(lo)
    seen, components = set(), []
    for start in sorted(nodes):
        if start in seen:
            continue
        comp, queue = set(), deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            comp.add(v)
            for w in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        components.append(frozenset(comp))
    return components


def component_count(g: Graph) -> int:
    return len(bfs_components(g.nodes, g.edges))


def cycle_rank(nodes, edges) -> int:
    return len(edges) - len(nodes) + len(bfs_components(nodes, edges))


def difference_constraint_nullity(g: Graph, d: int) -> int:
    """Kernel dimension of the per-edge agreement system, assembled directly."""
    n = len(g.nodes) * d
    if not g.edges:
        return n
    rows = []
    for lo, hi in g.edges:
        for k in range(d):
            row = np.zeros(n)
            row[g.node_index[lo] * d + k] = -1.0
            row[g.node_index[hi] * d + k] = 1.0
            rows.append(row)
    return n - int(np.linalg.matrix_rank(np.array(rows)))


def snapshot_h0_bars(f) -> Counter:
    """Dim-0 (birth, death) multiset rebuilt from components at every
    critical value; zero-length bars are invisible at this granularity."""
    live: list[tuple[float, frozenset]] = []
    bars: list[tuple[float, float]] = []
    for value in f.critical_values:
        sub: ElementSet = sublevel_set(f, value)
        next_live = []
        for comp in bfs_components(sub.nodes, sub.edges):
            previous = [entry for entry in live if entry[1] & comp]
            if not previous:
                next_live.append((value, comp))
                continue
            eldest = min(birth for birth, _ in previous)
            survived = False
            for birth, _ in sorted(previous, key=lambda entry: (entry[0], sorted(entry[1]))):
                if birth == eldest and not survived:
                    survived = True
                    continue
                bars.append((birth, value))
            next_live.append((eldest, comp))
        live = next_live
    bars.extend((birth, np.inf) for birth, _ in live)
    return Counter(bars)
