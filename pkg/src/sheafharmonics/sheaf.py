"""Cellular sheaves on graphs: coboundary and Laplacian operators, section
spaces, and the sheaf induced by a graph-attention weight matrix.

A cellular sheaf attaches a real vector space (stalk) to every node and edge
and a linear restriction map from each node stalk into each incident edge
stalk.  Restriction maps for non-incident pairs are zero by convention and
are not stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidDimensionError,
    NonzeroDiagonalError,
    NotOpenError,
    WeightOffEdgeError,
)
from .graph import EdgeKey, Element, ElementSet, Graph, NodeId, edge_key, is_open
from .graph import _require_subset

DEFAULT_TOL = 1e-10

# Sign-incidence convention: each edge (lo, hi) reads hi minus lo.
SIGN_LO = -1.0
SIGN_HI = 1.0


@dataclass(frozen=True)
class CellularSheaf:
    """Stalk dimensions plus one restriction matrix per incident (node, edge) pair.

    restrictions[(v, e)] has shape (edge_stalk_dim[e], node_stalk_dim[v]) and
    exists exactly when v is an endpoint of e.
    """

    host: Graph
    node_stalk_dim: dict[NodeId, int]
    edge_stalk_dim: dict[EdgeKey, int]
    restrictions: dict[tuple[NodeId, EdgeKey], np.ndarray]

    def __post_init__(self):
        if set(self.node_stalk_dim) != self.host.node_set:
            raise DimensionMismatchError("node stalk dimensions must cover exactly the nodes")
        if set(self.edge_stalk_dim) != self.host.edge_set:
            raise DimensionMismatchError("edge stalk dimensions must cover exactly the edges")
        for dim in list(self.node_stalk_dim.values()) + list(self.edge_stalk_dim.values()):
            if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
                raise InvalidDimensionError(f"stalk dimension must be a positive integer, got {dim!r}")
        expected = {(v, e) for e in self.host.edges for v in e}
        if set(self.restrictions) != expected:
            raise DimensionMismatchError(
                "restriction maps must exist exactly for incident (node, edge) pairs"
            )
        for (v, e), mat in self.restrictions.items():
            arr = np.asarray(mat, dtype=float)
            shape = (self.edge_stalk_dim[e], self.node_stalk_dim[v])
            if arr.shape != shape:
                raise DimensionMismatchError(
                    f"restriction for {(v, e)!r} has shape {arr.shape}, expected {shape}"
                )
            self.restrictions[v, e] = arr

    @cached_property
    def node_offsets(self) -> dict[NodeId, int]:
        offsets, pos = {}, 0
        for v in self.host.nodes:
            offsets[v] = pos
            pos += self.node_stalk_dim[v]
        return offsets

    @cached_property
    def edge_offsets(self) -> dict[EdgeKey, int]:
        offsets, pos = {}, 0
        for e in self.host.edges:
            offsets[e] = pos
            pos += self.edge_stalk_dim[e]
        return offsets

    @property
    def total_node_dim(self) -> int:
        return sum(self.node_stalk_dim[v] for v in self.host.nodes)

    @property
    def total_edge_dim(self) -> int:
        return sum(self.edge_stalk_dim[e] for e in self.host.edges)

    @cached_property
    def _coboundary(self) -> np.ndarray:
        mat = np.zeros((self.total_edge_dim, self.total_node_dim))
        for e in self.host.edges:
            lo, hi = e
            r0, r1 = self.edge_offsets[e], self.edge_offsets[e] + self.edge_stalk_dim[e]
            for v, sign in ((lo, SIGN_LO), (hi, SIGN_HI)):
                c0 = self.node_offsets[v]
                mat[r0:r1, c0 : c0 + self.node_stalk_dim[v]] = sign * self.restrictions[v, e]
        return mat


@dataclass(frozen=True)
class Cochain0:
    """One stalk vector per node (a node-indexed block vector)."""

    blocks: dict[NodeId, np.ndarray]

    @classmethod
    def of(cls, blocks: dict[NodeId, object]) -> "Cochain0":
        return cls({v: np.atleast_1d(np.asarray(b, dtype=float)) for v, b in blocks.items()})

    @classmethod
    def zero(cls, sh: CellularSheaf) -> "Cochain0":
        return cls({v: np.zeros(sh.node_stalk_dim[v]) for v in sh.host.nodes})

    @classmethod
    def from_flat(cls, sh: CellularSheaf, vec: np.ndarray) -> "Cochain0":
        vec = np.asarray(vec, dtype=float)
        if vec.shape != (sh.total_node_dim,):
            raise DimensionMismatchError(
                f"flat vector has shape {vec.shape}, expected ({sh.total_node_dim},)"
            )
        return cls(
            {
                v: vec[sh.node_offsets[v] : sh.node_offsets[v] + sh.node_stalk_dim[v]].copy()
                for v in sh.host.nodes
            }
        )

    def to_flat(self, sh: CellularSheaf) -> np.ndarray:
        _check_cochain0(sh, self)
        return np.concatenate([self.blocks[v] for v in sh.host.nodes]) if sh.host.nodes else np.zeros(0)


@dataclass(frozen=True)
class Cochain1:
    """One stalk vector per edge (an edge-indexed block vector)."""

    blocks: dict[EdgeKey, np.ndarray]

    @classmethod
    def from_flat(cls, sh: CellularSheaf, vec: np.ndarray) -> "Cochain1":
        vec = np.asarray(vec, dtype=float)
        if vec.shape != (sh.total_edge_dim,):
            raise DimensionMismatchError(
                f"flat vector has shape {vec.shape}, expected ({sh.total_edge_dim},)"
            )
        return cls(
            {
                e: vec[sh.edge_offsets[e] : sh.edge_offsets[e] + sh.edge_stalk_dim[e]].copy()
                for e in sh.host.edges
            }
        )

    def to_flat(self, sh: CellularSheaf) -> np.ndarray:
        if set(self.blocks) != sh.host.edge_set:
            raise DimensionMismatchError("cochain keys must be exactly the host edges")
        return np.concatenate([self.blocks[e] for e in sh.host.edges]) if sh.host.edges else np.zeros(0)


def _check_cochain0(sh: CellularSheaf, s: Cochain0) -> None:
    if set(s.blocks) != sh.host.node_set:
        raise DimensionMismatchError("cochain keys must be exactly the host nodes")
    for v, block in s.blocks.items():
        if np.asarray(block).shape != (sh.node_stalk_dim[v],):
            raise DimensionMismatchError(
                f"block for node {v!r} has shape {np.asarray(block).shape}, "
                f"expected ({sh.node_stalk_dim[v]},)"
            )


@dataclass(frozen=True)
class GatTriple:
    """A graph, node feature vectors, and directional attention weights.

    weights[(i, j)] is the weight from node i to node j; pairs off the edge
    set and self-weights are invalid, and absent entries mean zero.
    """

    graph: Graph
    feature_dim: int
    features: Cochain0
    weights: dict[tuple[NodeId, NodeId], float]

    def weight(self, src: NodeId, dst: NodeId) -> float:
        return self.weights.get((src, dst), 0.0)


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" or "warning"
    code: str
    message: str
    subject: object = None

    @property
    def is_error(self) -> bool:
        return self.severity == "error"


@dataclass(frozen=True)
class SectionBasis:
    """Orthonormal basis of node cochains spanning a global section space."""

    vectors: list[Cochain0]
    tolerance: float

    @property
    def dimension(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class LocalSectionBasis:
    """Orthonormal basis of tuples over an open set (node and edge blocks)."""

    open_set: ElementSet
    elements: tuple[Element, ...]
    vectors: list[dict[Element, np.ndarray]]
    tolerance: float

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def flatten(self, vector: dict[Element, np.ndarray]) -> np.ndarray:
        parts = [vector[p] for p in self.elements]
        return np.concatenate(parts) if parts else np.zeros(0)


def constant_sheaf(g: Graph, d: int) -> CellularSheaf:
    """All stalks R^d with identity restriction maps."""
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise InvalidDimensionError(f"constant sheaf dimension must be >= 1, got {d!r}")
    eye = np.eye(d)
    return CellularSheaf(
        host=g,
        node_stalk_dim={v: d for v in g.nodes},
        edge_stalk_dim={e: d for e in g.edges},
        restrictions={(v, e): eye.copy() for e in g.edges for v in e},
    )


def gat_sheaf(t: GatTriple) -> CellularSheaf:
    """Sheaf induced by attention weights: node i restricts into edge {i, j}
    by scalar multiplication with the weight from i to j (absent means zero)."""
    g = t.graph
    for (src, dst), value in t.weights.items():
        if src == dst:
            raise NonzeroDiagonalError(src, value)
        if edge_key(src, dst) not in g.edge_set:
            raise WeightOffEdgeError((src, dst))
    d = t.feature_dim
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise InvalidDimensionError(f"feature dimension must be >= 1, got {d!r}")
    eye = np.eye(d)
    restrictions = {}
    for e in g.edges:
        lo, hi = e
        restrictions[lo, e] = t.weight(lo, hi) * eye
        restrictions[hi, e] = t.weight(hi, lo) * eye
    return CellularSheaf(
        host=g,
        node_stalk_dim={v: d for v in g.nodes},
        edge_stalk_dim={e: d for e in g.edges},
        restrictions=restrictions,
    )


NORMALIZATION_ATOL = 1e-6


def validate_triple(t: GatTriple) -> list[Diagnostic]:
    """Check weight placement (errors) and normalization conventions (warnings).

    Incoming weights at each node of positive degree are expected to sum to 1,
    and individual weights to lie in [0, 1]; violations are warnings only.
    """
    g = t.graph
    out: list[Diagnostic] = []
    for (src, dst), value in sorted(t.weights.items()):
        if src == dst:
            out.append(
                Diagnostic(
                    "error",
                    "diagonal-weight",
                    f"diagonal weight entry {src!r}->{dst!r} (= {value!r}); "
                    "self-weights must be omitted",
                    (src, dst),
                )
            )
        elif (src not in g.node_set) or (dst not in g.node_set) or (
            edge_key(src, dst) not in g.edge_set
        ):
            out.append(
                Diagnostic(
                    "error",
                    "weight-off-edge",
                    f"weight entry {src!r}->{dst!r} does not lie on an edge",
                    (src, dst),
                )
            )
        elif not 0.0 <= value <= 1.0:
            out.append(
                Diagnostic(
                    "warning",
                    "weight-range",
                    f"weight {src!r}->{dst!r} = {value!r} lies outside [0, 1]",
                    (src, dst),
                )
            )
    for v in g.nodes:
        block = t.features.blocks.get(v)
        if block is None:
            out.append(
                Diagnostic("error", "feature-shape", f"missing feature block for node {v!r}", v)
            )
        elif np.asarray(block).shape != (t.feature_dim,):
            out.append(
                Diagnostic(
                    "error",
                    "feature-shape",
                    f"feature block for node {v!r} has length {np.asarray(block).size}, "
                    f"expected {t.feature_dim}",
                    v,
                )
            )
    for v in sorted(set(t.features.blocks) - g.node_set):
        out.append(
            Diagnostic("error", "feature-shape", f"feature block for unknown node {v!r}", v)
        )
    if not any(d.is_error for d in out):
        for v in g.nodes:
            if g.degree(v) == 0:
                continue
            incoming = sum(t.weight(w, v) for w in g.neighbors(v))
            if abs(incoming - 1.0) > NORMALIZATION_ATOL:
                out.append(
                    Diagnostic(
                        "warning",
                        "normalization",
                        f"incoming weights at node {v!r} sum to {incoming!r}, expected 1",
                        (v, incoming),
                    )
                )
    return out


def coboundary(sh: CellularSheaf) -> np.ndarray:
    """Block matrix sending node signals to signed transfer differences per edge.

    Rows are grouped by edges and columns by nodes, both in canonical order;
    the block for edge e = (lo, hi) and node v is -restriction(lo, e) at lo,
    +restriction(hi, e) at hi, and zero elsewhere.
    """
    return sh._coboundary.copy()


def apply_coboundary(sh: CellularSheaf, s: Cochain0) -> Cochain1:
    """Per edge (lo, hi): restriction(hi)·s_hi - restriction(lo)·s_lo.

    Computed through the assembled coboundary matrix so the result agrees
    with the explicit matrix-vector product bit for bit.
    """
    flat = s.to_flat(sh)
    return Cochain1.from_flat(sh, sh._coboundary @ flat)


def sheaf_laplacian(sh: CellularSheaf) -> np.ndarray:
    """Symmetric positive semi-definite operator C^T C on node signals."""
    c = sh._coboundary
    return c.T @ c


def laplacian_spectrum(sh: CellularSheaf) -> np.ndarray:
    """All eigenvalues of the sheaf Laplacian, ascending."""
    if sh.total_node_dim == 0:
        return np.zeros(0)
    return np.linalg.eigvalsh(sheaf_laplacian(sh))


def _kernel_rows(mat: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal kernel basis as rows; singular values below tol * s_max
    count as zero."""
    n = mat.shape[1]
    if mat.shape[0] == 0 or n == 0:
        return np.eye(n)
    _, svals, vh = np.linalg.svd(mat, full_matrices=True)
    smax = svals[0] if svals.size else 0.0
    rank = int(np.count_nonzero(svals >= tol * smax)) if smax > 0 else 0
    return vh[rank:, :]


def global_sections(sh: CellularSheaf, tol: float = DEFAULT_TOL) -> SectionBasis:
    """Orthonormal basis of the kernel of the coboundary matrix."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    rows = _kernel_rows(sh._coboundary, tol)
    return SectionBasis([Cochain0.from_flat(sh, row) for row in rows], tol)


def local_section_space(
    sh: CellularSheaf, u: ElementSet, tol: float = DEFAULT_TOL
) -> LocalSectionBasis:
    """Orthonormal basis of local sections over an Alexandrov-open set.

    A local section assigns a block to every node and edge of u; each member
    edge must carry the transferred value of each of its member endpoints,
    so edges with both endpoints present enforce agreement, edges with one
    endpoint carry its image, and edges with no endpoint present are free.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    g = sh.host
    _require_subset(g, u)
    if not is_open(g, u):
        raise NotOpenError(f"element set with {len(u.nodes)} nodes, {len(u.edges)} edges is not open")

    nodes = sorted(u.nodes)
    edges = sorted(u.edges)
    elements: tuple[Element, ...] = tuple(nodes) + tuple(edges)
    dims = {p: (sh.node_stalk_dim[p] if isinstance(p, str) else sh.edge_stalk_dim[p]) for p in elements}
    offsets, pos = {}, 0
    for p in elements:
        offsets[p] = pos
        pos += dims[p]
    total = pos

    constraint_rows = sum(sh.edge_stalk_dim[e] for e in edges for v in e if v in u.nodes)
    mat = np.zeros((constraint_rows, total))
    row = 0
    for e in edges:
        de = sh.edge_stalk_dim[e]
        for v in e:
            if v not in u.nodes:
                continue
            mat[row : row + de, offsets[v] : offsets[v] + dims[v]] = sh.restrictions[v, e]
            mat[row : row + de, offsets[e] : offsets[e] + de] = -np.eye(de)
            row += de

    vectors = []
    for flat in _kernel_rows(mat, tol):
        vectors.append({p: flat[offsets[p] : offsets[p] + dims[p]].copy() for p in elements})
    return LocalSectionBasis(u, elements, vectors, tol)


def sheaf_norm(sh: CellularSheaf, s: Cochain0) -> float:
    """Euclidean norm of the coboundary image; a seminorm on node signals."""
    return float(np.linalg.norm(apply_coboundary(sh, s).to_flat(sh)))


def attention_aggregate(t: GatTriple, sh: Optional[CellularSheaf] = None) -> Cochain0:
    """Aggregate neighbor features with incoming weights.

    Block at node i is the sum over neighbors j of w(j -> i) · R_j · s_j,
    where R_j is the identity when no sheaf is given, and otherwise the
    sheaf's restriction of node j into the edge {i, j}.
    """
    g = t.graph
    d = t.feature_dim
    for v in g.nodes:
        block = t.features.blocks.get(v)
        if block is None or np.asarray(block).shape != (d,):
            raise DimensionMismatchError(f"feature block for node {v!r} must have length {d}")
    if sh is not None:
        if sh.host is not g and sh.host != g:
            raise DimensionMismatchError("sheaf host differs from the triple's graph")
        uniform = all(sh.node_stalk_dim[v] == d for v in g.nodes) and all(
            sh.edge_stalk_dim[e] == d for e in g.edges
        )
        if not uniform:
            raise DimensionMismatchError(
                f"aggregation needs uniform stalk dimension {d} on all nodes and edges"
            )
    out = {}
    for v in g.nodes:
        acc = np.zeros(d)
        for w in g.neighbors(v):
            feat = t.features.blocks[w]
            if sh is not None:
                feat = sh.restrictions[w, edge_key(v, w)] @ feat
            acc = acc + t.weight(w, v) * feat
        out[v] = acc
    return Cochain0(out)
