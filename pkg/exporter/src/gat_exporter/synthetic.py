"""Synthetic triple documents: random connected graph, random features, and
incoming-normalized random attention weights."""

from __future__ import annotations

import numpy as np

from .config import ExportConfig, InvalidConfig
from .document import build_document, node_name, random_connected_edges


def export_synthetic(cfg: ExportConfig) -> dict:
    """Deterministic under cfg.seed; incoming weights at every node of
    positive degree sum to exactly one normalized draw."""
    if cfg.source != "synthetic":
        raise InvalidConfig(f"export_synthetic needs source 'synthetic', got {cfg.source!r}")
    rng = np.random.default_rng(cfg.seed)
    nodes = [node_name(i) for i in range(cfg.n)]
    edges = random_connected_edges(rng, nodes)

    features = {v: rng.uniform(-1.0, 1.0, size=cfg.d) for v in nodes}

    neighbors: dict[str, list[str]] = {v: [] for v in nodes}
    for lo, hi in sorted(edges):
        neighbors[lo].append(hi)
        neighbors[hi].append(lo)

    weights: dict[tuple[str, str], float] = {}
    for v in nodes:
        incoming = sorted(neighbors[v])
        if not incoming:
            continue
        raw = rng.uniform(0.1, 1.0, size=len(incoming))
        raw /= raw.sum()
        for src, w in zip(incoming, raw):
            weights[src, v] = float(w)

    return build_document(nodes, edges, cfg.d, features, weights)
