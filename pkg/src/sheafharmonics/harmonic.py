"""Harmonic substructure extraction for a node signal under a cellular sheaf.

An edge is harmonic for a signal when the two transferred endpoint values
agree (residual norm below a threshold); a node is harmonic when it has
degree zero or lies on a harmonic edge.  The epsilon variants relax the
agreement to a residual-norm bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnknownElementError
from .graph import (
    EdgeKey,
    ElementSet,
    Graph,
    NodeId,
    is_closed,
    is_open,
    is_union_of_components,
)
from .sheaf import CellularSheaf, Cochain0, apply_coboundary

DEFAULT_ETA = 1e-9


@dataclass(frozen=True)
class EdgeResiduals:
    """Euclidean norm of each edge block of the coboundary image of a signal."""

    host: Graph
    norms: dict[EdgeKey, float]


@dataclass(frozen=True)
class HarmonicSet:
    """Harmonic nodes and edges at a fixed residual threshold (a subgraph)."""

    epsilon: float
    nodes: frozenset[NodeId]
    edges: frozenset[EdgeKey]

    def as_element_set(self) -> ElementSet:
        return ElementSet(self.nodes, self.edges)


@dataclass(frozen=True)
class HarmonicSetClassification:
    is_subgraph: bool
    is_open: bool
    is_full: bool
    is_empty: bool
    is_component_union: bool


def edge_residuals(sh: CellularSheaf, s: Cochain0) -> EdgeResiduals:
    """Residual norm per edge: how far the two transferred values disagree."""
    image = apply_coboundary(sh, s)
    return EdgeResiduals(
        sh.host, {e: float(np.linalg.norm(image.blocks[e])) for e in sh.host.edges}
    )


def epsilon_harmonic_set(r: EdgeResiduals, epsilon: float) -> HarmonicSet:
    """Edges with residual <= epsilon, plus degree-0 nodes and edge endpoints."""
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    edges = frozenset(e for e, norm in r.norms.items() if norm <= epsilon)
    nodes = {v for v in r.host.nodes if r.host.degree(v) == 0}
    nodes.update(v for e in edges for v in e)
    return HarmonicSet(epsilon, frozenset(nodes), edges)


def harmonic_set(sh: CellularSheaf, s: Cochain0, eta: float = DEFAULT_ETA) -> HarmonicSet:
    """Exact harmonic set, with eta as the numerical zero threshold."""
    return epsilon_harmonic_set(edge_residuals(sh, s), eta)


def is_global_section(sh: CellularSheaf, s: Cochain0, eta: float = DEFAULT_ETA) -> bool:
    """True iff every edge residual is <= eta (the harmonic set covers G)."""
    residuals = edge_residuals(sh, s)
    return all(norm <= eta for norm in residuals.norms.values())


def classify_harmonic_set(g: Graph, h: HarmonicSet) -> HarmonicSetClassification:
    """Topological flags of a harmonic set within its host graph."""
    s = h.as_element_set()
    for v in h.nodes:
        if v not in g.node_set:
            raise UnknownElementError(v)
    for e in h.edges:
        if e not in g.edge_set:
            raise UnknownElementError(e)
    return HarmonicSetClassification(
        is_subgraph=is_closed(g, s),
        is_open=is_open(g, s),
        is_full=(h.nodes == g.node_set and h.edges == g.edge_set),
        is_empty=s.is_empty,
        is_component_union=is_union_of_components(g, s),
    )
