"""Toy single-layer graph-attention training on a two-community node
classification task, with per-snapshot triple-document extraction.

The layer aggregates transformed neighbor features with softmax-normalized
attention over incoming edges (no self-loops); snapshots export the
post-softmax coefficients as directed weights and the current layer output
as node embeddings.  Everything runs in double precision so the exported
incoming sums stay at 1 to machine accuracy.
"""

from __future__ import annotations

import math

import numpy as np
import torch
import torch.nn.functional as F

from .config import ExportConfig, InvalidConfig, TrainingFailure
from .document import build_document, node_name, random_connected_edges

LEARNING_RATE = 0.01
LEAKY_SLOPE = 0.2


class ToyAttentionLayer(torch.nn.Module):
    """One attention head mapping d-dim inputs to d-dim embeddings."""

    def __init__(self, dim: int):
        super().__init__()
        self.transform = torch.nn.Linear(dim, dim, bias=False)
        self.att_src = torch.nn.Parameter(torch.randn(dim) / math.sqrt(dim))
        self.att_dst = torch.nn.Parameter(torch.randn(dim) / math.sqrt(dim))

    def forward(self, x, in_neighbors):
        """in_neighbors[i] lists the source indices feeding node i."""
        z = self.transform(x)
        embeddings = []
        coefficients = {}
        for i, sources in enumerate(in_neighbors):
            if not sources:
                embeddings.append(torch.zeros_like(z[0]))
                continue
            src = torch.tensor(sources, dtype=torch.long)
            scores = F.leaky_relu(
                z[src] @ self.att_src + z[i] @ self.att_dst, negative_slope=LEAKY_SLOPE
            )
            alpha = torch.softmax(scores, dim=0)
            embeddings.append(alpha @ z[src])
            for j, a in zip(sources, alpha):
                coefficients[j, i] = a
        return torch.stack(embeddings), coefficients


class ToyGatModel(torch.nn.Module):
    def __init__(self, dim: int, classes: int = 2):
        super().__init__()
        self.layer = ToyAttentionLayer(dim)
        self.readout = torch.nn.Linear(dim, classes)

    def forward(self, x, in_neighbors):
        h, coefficients = self.layer(x, in_neighbors)
        return self.readout(F.elu(h)), h, coefficients


def _community_task(rng, n: int, d: int):
    """Connected graph with two feature-separated communities."""
    nodes = [node_name(i) for i in range(n)]
    edges = random_connected_edges(rng, nodes, extra_prob=0.1)
    labels = np.array([0 if i < n / 2 else 1 for i in range(n)])
    signs = np.where(labels == 0, 1.0, -1.0)
    x = signs[:, None] + 0.5 * rng.standard_normal((n, d))
    return nodes, edges, x, labels


def _snapshot_epochs(cfg: ExportConfig) -> list[int]:
    epochs = sorted(
        {e for e in range(cfg.snapshot_every, cfg.epochs + 1, cfg.snapshot_every)}
        | {cfg.epochs}
    )
    return epochs


def export_trained(cfg: ExportConfig) -> list[dict]:
    """One triple document per snapshot epoch, in epoch order."""
    if cfg.source != "toy_train":
        raise InvalidConfig(f"export_trained needs source 'toy_train', got {cfg.source!r}")
    rng = np.random.default_rng(cfg.seed)
    torch.manual_seed(cfg.seed)

    nodes, edges, x_np, labels_np = _community_task(rng, cfg.n, cfg.d)
    index = {v: i for i, v in enumerate(nodes)}
    in_neighbors: list[list[int]] = [[] for _ in nodes]
    for lo, hi in sorted(edges):
        in_neighbors[index[hi]].append(index[lo])
        in_neighbors[index[lo]].append(index[hi])

    x = torch.tensor(x_np, dtype=torch.float64)
    labels = torch.tensor(labels_np, dtype=torch.long)
    model = ToyGatModel(cfg.d).double()
    optimizer = torch.optim.Adam(model.parameters(), lr=LEARNING_RATE)

    snapshots = _snapshot_epochs(cfg)
    documents = []
    for epoch in range(1, cfg.epochs + 1):
        optimizer.zero_grad()
        logits, embeddings, coefficients = model(x, in_neighbors)
        loss = F.cross_entropy(logits, labels)
        if not torch.isfinite(loss):
            raise TrainingFailure(f"non-finite loss at epoch {epoch}")
        loss.backward()
        optimizer.step()
        if epoch in snapshots:
            with torch.no_grad():
                _, embeddings, coefficients = model(x, in_neighbors)
            features = {v: embeddings[index[v]].numpy() for v in nodes}
            weights = {
                (nodes[j], nodes[i]): float(a) for (j, i), a in coefficients.items()
            }
            documents.append(build_document(nodes, edges, cfg.d, features, weights))
    return documents
