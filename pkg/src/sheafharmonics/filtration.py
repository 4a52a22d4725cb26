"""Multiscale filtrations of harmonic subgraphs and persistence barcodes.

Edge residuals induce nested subgraphs indexed by the residual threshold.
Dimension-0 bars track connected components under the elder rule; dimension-1
bars are cycle births and never die because graphs carry no 2-cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import MissingResidualError, NonMonotoneFiltrationError
from .graph import Element, ElementSet, Graph, NodeId
from .harmonic import EdgeResiduals

MODES = ("full", "edge_closure", "nodes_only")


@dataclass(frozen=True)
class Filtration:
    """Birth value per element; elements without a birth never enter."""

    host: Graph
    mode: str
    birth: dict[Element, float]
    critical_values: tuple[float, ...]


@dataclass(frozen=True)
class Bar:
    dim: int
    birth: float
    death: float  # math.inf when the feature never dies
    representative: Optional[Element] = None

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.death)

    @property
    def is_zero_length(self) -> bool:
        return self.death == self.birth


@dataclass(frozen=True)
class Barcode:
    bars: tuple[Bar, ...]

    def __len__(self) -> int:
        return len(self.bars)


def build_filtration(g: Graph, r: EdgeResiduals, mode: str) -> Filtration:
    """Assign births from edge residuals.

    full: edges at their residual; nodes at 0 if isolated, else at the
    smallest incident residual.  edge_closure: same, but isolated nodes never
    enter.  nodes_only: node births as in full, no edges.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    for e in g.edges:
        if e not in r.norms:
            raise MissingResidualError(e)

    birth: dict[Element, float] = {}
    if mode in ("full", "edge_closure"):
        for e in g.edges:
            birth[e] = r.norms[e]
    for v in g.nodes:
        incident = g.incident_edges(v)
        if incident:
            birth[v] = min(r.norms[e] for e in incident)
        elif mode != "edge_closure":
            birth[v] = 0.0
    return Filtration(g, mode, birth, tuple(sorted(set(birth.values()))))


def sublevel_set(f: Filtration, epsilon: float) -> ElementSet:
    """Elements whose birth is at most epsilon."""
    nodes = frozenset(x for x, b in f.birth.items() if isinstance(x, str) and b <= epsilon)
    edges = frozenset(x for x, b in f.birth.items() if isinstance(x, tuple) and b <= epsilon)
    return ElementSet(nodes, edges)


class _DisjointSet:
    """Union-find over node ids with per-root (birth, representative) metadata."""

    def __init__(self):
        self.parent: dict[NodeId, NodeId] = {}
        self.meta: dict[NodeId, tuple[float, NodeId]] = {}

    def add(self, v: NodeId, birth: float) -> None:
        self.parent[v] = v
        self.meta[v] = (birth, v)

    def find(self, v: NodeId) -> NodeId:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a: NodeId, b: NodeId) -> tuple[tuple[float, NodeId], tuple[float, NodeId]]:
        """Merge the roots of a and b; returns (elder, younger) metadata."""
        ra, rb = self.find(a), self.find(b)
        elder_meta, younger_meta = sorted((self.meta[ra], self.meta[rb]))
        if self.meta[ra] == younger_meta:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.meta[ra] = elder_meta
        del self.meta[rb]
        return elder_meta, younger_meta


def _element_order(f: Filtration) -> list[Element]:
    def key(item):
        element, birth = item
        if isinstance(element, str):
            return (birth, 0, (element,))
        return (birth, 1, element)

    return [element for element, _ in sorted(f.birth.items(), key=key)]


def _persistence_sweep(f: Filtration) -> tuple[list[Bar], list[Bar]]:
    """Single elder-rule sweep producing dim-0 bars (zero-length included)
    and dim-1 bars.

    Components entering at the same critical value as the edge joining them
    were never distinct at any scale and fuse without a bar.
    """
    ds = _DisjointSet()
    h0: list[Bar] = []
    h1: list[Bar] = []
    for element in _element_order(f):
        value = f.birth[element]
        if isinstance(element, str):
            ds.add(element, value)
            continue
        lo, hi = element
        for v in element:
            if f.birth.get(v, math.inf) > value:
                raise NonMonotoneFiltrationError(
                    f"edge {element!r} enters at {value!r} before node {v!r}"
                )
        if ds.find(lo) == ds.find(hi):
            h1.append(Bar(1, value, math.inf, element))
            continue
        elder, younger = ds.union(lo, hi)
        if elder[0] == value:
            continue
        h0.append(Bar(0, younger[0], value, younger[1]))
    for birth, representative in ds.meta.values():
        h0.append(Bar(0, birth, math.inf, representative))
    return _sorted_bars(h0), _sorted_bars(h1)


def _sorted_bars(bars: list[Bar]) -> list[Bar]:
    def key(bar: Bar):
        rep = bar.representative
        rep_key = (rep,) if isinstance(rep, str) else rep if rep is not None else ()
        return (bar.dim, bar.birth, bar.death, rep_key)

    return sorted(bars, key=key)


def persistence_h0(f: Filtration, include_zero_bars: bool = False) -> list[Bar]:
    """Dimension-0 bars under the elder rule; zero-length bars are kept only
    on request."""
    h0, _ = _persistence_sweep(f)
    if include_zero_bars:
        return h0
    return [bar for bar in h0 if not bar.is_zero_length]


def persistence_h1(f: Filtration) -> list[Bar]:
    """Dimension-1 bars: one immortal bar per cycle-creating edge."""
    _, h1 = _persistence_sweep(f)
    return h1


def barcode(f: Filtration, include_zero_bars: bool = False) -> Barcode:
    """All bars, sorted by (dimension, birth, death)."""
    bars = persistence_h0(f, include_zero_bars) + persistence_h1(f)
    return Barcode(tuple(_sorted_bars(bars)))
