"""Finite simple undirected graphs viewed as posets under the face relation.

A graph is the union of its node and edge sets, ordered so that each node
precedes the edges it bounds.  Open sets of the induced Alexandrov topology
are the upward-closed subsets; the closed sets are exactly the subgraphs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Union

from .errors import (
    DuplicateNodeError,
    GraphError,
    SelfLoopError,
    UnknownElementError,
    UnknownEndpointError,
)

NodeId = str
EdgeKey = tuple[str, str]
Element = Union[NodeId, EdgeKey]


def edge_key(a: NodeId, b: NodeId) -> EdgeKey:
    """Normalize an unordered node pair to the canonical (lo, hi) edge key."""
    if a == b:
        raise SelfLoopError(a)
    return (a, b) if a < b else (b, a)


def _check_node_id(node) -> None:
    if not isinstance(node, str) or not node or any(ch.isspace() for ch in node):
        raise GraphError(f"node id must be a nonempty token without whitespace, got {node!r}")


@dataclass(frozen=True)
class Graph:
    """Immutable graph with canonically ordered nodes, edges, and adjacency."""

    nodes: tuple[NodeId, ...]
    edges: tuple[EdgeKey, ...]
    adjacency: dict[NodeId, tuple[EdgeKey, ...]]

    def __post_init__(self):
        node_set = set(self.nodes)
        if len(node_set) != len(self.nodes):
            raise GraphError("duplicate entries in node tuple")
        if list(self.nodes) != sorted(self.nodes):
            raise GraphError("nodes must be in canonical lexicographic order")
        if list(self.edges) != sorted(set(self.edges)):
            raise GraphError("edges must be unique and in canonical order")
        for lo, hi in self.edges:
            if not lo < hi:
                raise GraphError(f"edge {(lo, hi)!r} is not in (lo, hi) form")
            if lo not in node_set:
                raise UnknownEndpointError(lo)
            if hi not in node_set:
                raise UnknownEndpointError(hi)
        expected = {v: tuple(sorted(e for e in self.edges if v in e)) for v in self.nodes}
        if self.adjacency != expected:
            raise GraphError("adjacency map is inconsistent with the edge set")

    @cached_property
    def node_set(self) -> frozenset[NodeId]:
        return frozenset(self.nodes)

    @cached_property
    def edge_set(self) -> frozenset[EdgeKey]:
        return frozenset(self.edges)

    @cached_property
    def node_index(self) -> dict[NodeId, int]:
        return {v: i for i, v in enumerate(self.nodes)}

    @cached_property
    def edge_index(self) -> dict[EdgeKey, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def incident_edges(self, node: NodeId) -> tuple[EdgeKey, ...]:
        try:
            return self.adjacency[node]
        except KeyError:
            raise UnknownElementError(node) from None

    def degree(self, node: NodeId) -> int:
        return len(self.incident_edges(node))

    def neighbors(self, node: NodeId) -> tuple[NodeId, ...]:
        return tuple(hi if lo == node else lo for lo, hi in self.incident_edges(node))

    def __contains__(self, element: Element) -> bool:
        if isinstance(element, str):
            return element in self.node_set
        return element in self.edge_set


@dataclass(frozen=True)
class ElementSet:
    """A plain subset of a graph's nodes and edges (validated at use sites)."""

    nodes: frozenset[NodeId] = field(default_factory=frozenset)
    edges: frozenset[EdgeKey] = field(default_factory=frozenset)

    @classmethod
    def of(cls, nodes: Iterable[NodeId] = (), edges: Iterable[EdgeKey] = ()) -> "ElementSet":
        return cls(frozenset(nodes), frozenset(edges))

    @classmethod
    def from_graph(cls, g: Graph) -> "ElementSet":
        return cls(g.node_set, g.edge_set)

    @property
    def is_empty(self) -> bool:
        return not self.nodes and not self.edges

    def __len__(self) -> int:
        return len(self.nodes) + len(self.edges)

    def __le__(self, other: "ElementSet") -> bool:
        return self.nodes <= other.nodes and self.edges <= other.edges

    def union(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.nodes | other.nodes, self.edges | other.edges)


def build_graph(
    node_ids: Iterable[NodeId], edge_pairs: Iterable[tuple[NodeId, NodeId]]
) -> Graph:
    """Build a canonical graph; pairs are normalized and duplicates collapsed."""
    nodes: list[NodeId] = []
    seen: set[NodeId] = set()
    for node in node_ids:
        _check_node_id(node)
        if node in seen:
            raise DuplicateNodeError(node)
        seen.add(node)
        nodes.append(node)
    nodes.sort()

    edges: set[EdgeKey] = set()
    for a, b in edge_pairs:
        key = edge_key(a, b)
        for endpoint in key:
            if endpoint not in seen:
                raise UnknownEndpointError(endpoint)
        edges.add(key)
    ordered_edges = tuple(sorted(edges))
    adjacency = {v: tuple(sorted(e for e in ordered_edges if v in e)) for v in nodes}
    return Graph(tuple(nodes), ordered_edges, adjacency)


def _require_member(g: Graph, element: Element) -> None:
    if element not in g:
        raise UnknownElementError(element)


def _require_subset(g: Graph, s: ElementSet) -> None:
    for v in s.nodes:
        if v not in g.node_set:
            raise UnknownElementError(v)
    for e in s.edges:
        if e not in g.edge_set:
            raise UnknownElementError(e)


def star_open_set(g: Graph, element: Element) -> ElementSet:
    """Minimal open neighborhood: an edge alone, or a node with its incident edges."""
    _require_member(g, element)
    if isinstance(element, str):
        return ElementSet(frozenset({element}), frozenset(g.incident_edges(element)))
    return ElementSet(frozenset(), frozenset({element}))


def closure(g: Graph, s: ElementSet) -> ElementSet:
    """Smallest closed superset: add both endpoints of every member edge."""
    _require_subset(g, s)
    endpoint_nodes = {v for e in s.edges for v in e}
    return ElementSet(s.nodes | endpoint_nodes, s.edges)


def is_open(g: Graph, s: ElementSet) -> bool:
    """True iff every member node brings all of its incident edges along."""
    _require_subset(g, s)
    return all(set(g.incident_edges(v)) <= s.edges for v in s.nodes)


def is_closed(g: Graph, s: ElementSet) -> bool:
    """True iff both endpoints of every member edge are members (a subgraph)."""
    _require_subset(g, s)
    return all(lo in s.nodes and hi in s.nodes for lo, hi in s.edges)


def complement(g: Graph, s: ElementSet) -> ElementSet:
    _require_subset(g, s)
    return ElementSet(g.node_set - s.nodes, g.edge_set - s.edges)


def connected_components(g: Graph) -> list[ElementSet]:
    """Maximal connected subgraphs, ordered by their smallest node id."""
    components: list[ElementSet] = []
    visited: set[NodeId] = set()
    for start in g.nodes:
        if start in visited:
            continue
        comp_nodes: set[NodeId] = set()
        comp_edges: set[EdgeKey] = set()
        queue = deque([start])
        visited.add(start)
        while queue:
            v = queue.popleft()
            comp_nodes.add(v)
            for e in g.incident_edges(v):
                comp_edges.add(e)
                w = e[1] if e[0] == v else e[0]
                if w not in visited:
                    visited.add(w)
                    queue.append(w)
        components.append(ElementSet(frozenset(comp_nodes), frozenset(comp_edges)))
    return components


def is_union_of_components(g: Graph, s: ElementSet) -> bool:
    """True iff s is exactly the union of a (possibly empty) family of components."""
    _require_subset(g, s)
    selected = [
        comp
        for comp in connected_components(g)
        if comp.nodes & s.nodes or comp.edges & s.edges
    ]
    union_nodes = frozenset().union(*(c.nodes for c in selected)) if selected else frozenset()
    union_edges = frozenset().union(*(c.edges for c in selected)) if selected else frozenset()
    return s.nodes == union_nodes and s.edges == union_edges
