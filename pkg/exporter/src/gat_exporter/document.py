"""Triple-document assembly for the sheafharmonics JSON schema (version 1).

The document layout is the consumer's wire format: exact top-level keys
schema_version, nodes, edges, feature_dim, features, weights, with weights
as directed {from, to, w} records on edges and no self-entries.
"""

from __future__ import annotations

import json

SCHEMA_VERSION = "1"


def node_name(i: int) -> str:
    return f"v{i:03d}"


def build_document(nodes, edges, feature_dim, features, weights) -> dict:
    """Assemble a canonical document; features keyed by node, weights by
    directed pair."""
    return {
        "schema_version": SCHEMA_VERSION,
        "nodes": sorted(nodes),
        "edges": [list(e) for e in sorted(edges)],
        "feature_dim": int(feature_dim),
        "features": {v: [float(x) for x in features[v]] for v in sorted(nodes)},
        "weights": [
            {"from": src, "to": dst, "w": float(w)}
            for (src, dst), w in sorted(weights.items())
        ],
    }


def document_bytes(doc: dict) -> bytes:
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def random_connected_edges(rng, nodes: list[str], extra_prob: float = 0.15) -> set:
    """Random spanning tree plus independently sampled extra edges."""
    edges = set()
    for i in range(1, len(nodes)):
        j = int(rng.integers(0, i))
        edges.add((min(nodes[j], nodes[i]), max(nodes[j], nodes[i])))
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            if rng.random() < extra_prob:
                edges.add((nodes[i], nodes[j]))
    return edges
