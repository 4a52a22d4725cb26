"""JSON wire formats: attention-triple documents, barcodes, analysis reports.

A triple document is a JSON object with exactly the keys schema_version,
nodes, edges, feature_dim, features, and weights.  Weights are stored as a
sparse list of directed records; infinite bar deaths serialize as null in
JSON and "inf" in text.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    GraphError,
    ParseError,
    SchemaError,
    SelfLoopError,
    UnknownEndpointError,
    ValidationError,
)
from .filtration import Bar, Barcode, _sorted_bars, barcode as build_barcode, build_filtration
from .graph import EdgeKey, NodeId, build_graph
from .harmonic import (
    HarmonicSet,
    HarmonicSetClassification,
    classify_harmonic_set,
    edge_residuals,
    epsilon_harmonic_set,
)
from .sheaf import (
    Cochain0,
    GatTriple,
    gat_sheaf,
    global_sections,
    laplacian_spectrum,
    validate_triple,
)

SCHEMA_VERSION = "1"
_TOP_LEVEL_KEYS = ("schema_version", "nodes", "edges", "feature_dim", "features", "weights")
_WEIGHT_KEYS = ("from", "to", "w")

# dict is the wire shape itself; no richer type is warranted.
TripleDocument = dict


def _as_float(value, field):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(field, f"expected a number, got {value!r}")
    return float(value)


def parse_triple(data: bytes | str) -> GatTriple:
    """Parse and validate a triple document; see module docstring for schema."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return document_to_triple(doc)


def document_to_triple(doc: TripleDocument) -> GatTriple:
    if not isinstance(doc, dict):
        raise SchemaError("$", "top level must be a JSON object")
    for key in doc:
        if key not in _TOP_LEVEL_KEYS:
            raise SchemaError(key, "unknown top-level key")
    for key in _TOP_LEVEL_KEYS:
        if key not in doc:
            raise SchemaError(key, "missing required key")
    if doc["schema_version"] != SCHEMA_VERSION:
        raise SchemaError("schema_version", f"expected {SCHEMA_VERSION!r}, got {doc['schema_version']!r}")

    nodes = doc["nodes"]
    if not isinstance(nodes, list) or not all(isinstance(v, str) for v in nodes):
        raise SchemaError("nodes", "must be a list of node id strings")
    edges = doc["edges"]
    if not isinstance(edges, list):
        raise SchemaError("edges", "must be a list of 2-element node id lists")
    pairs = []
    for i, pair in enumerate(edges):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, str) for v in pair)
        ):
            raise SchemaError(f"edges[{i}]", "must be a 2-element node id list")
        pairs.append((pair[0], pair[1]))
    try:
        graph = build_graph(nodes, pairs)
    except (SelfLoopError, UnknownEndpointError) as exc:
        raise SchemaError("edges", str(exc)) from exc
    except GraphError as exc:
        raise SchemaError("nodes", str(exc)) from exc

    feature_dim = doc["feature_dim"]
    if isinstance(feature_dim, bool) or not isinstance(feature_dim, int) or feature_dim < 1:
        raise SchemaError("feature_dim", f"must be a positive integer, got {feature_dim!r}")

    features_doc = doc["features"]
    if not isinstance(features_doc, dict):
        raise SchemaError("features", "must map node ids to number lists")
    blocks: dict[NodeId, np.ndarray] = {}
    for v in graph.nodes:
        if v not in features_doc:
            raise SchemaError(f"features.{v}", "missing feature vector")
        vec = features_doc[v]
        if not isinstance(vec, list) or len(vec) != feature_dim:
            raise SchemaError(f"features.{v}", f"must be a list of {feature_dim} numbers")
        blocks[v] = np.array([_as_float(x, f"features.{v}") for x in vec])
    for v in features_doc:
        if v not in graph.node_set:
            raise SchemaError(f"features.{v}", "feature vector for unknown node")

    weights_doc = doc["weights"]
    if not isinstance(weights_doc, list):
        raise SchemaError("weights", "must be a list of {from, to, w} records")
    weights: dict[tuple[NodeId, NodeId], float] = {}
    for i, record in enumerate(weights_doc):
        if not isinstance(record, dict) or set(record) != set(_WEIGHT_KEYS):
            raise SchemaError(f"weights[{i}]", "must be a record with exactly from, to, w")
        src, dst = record["from"], record["to"]
        if not isinstance(src, str) or not isinstance(dst, str):
            raise SchemaError(f"weights[{i}]", "from and to must be node id strings")
        if (src, dst) in weights:
            raise SchemaError(f"weights[{i}]", f"duplicate weight entry {src!r}->{dst!r}")
        weights[src, dst] = _as_float(record["w"], f"weights[{i}].w")

    triple = GatTriple(graph, feature_dim, Cochain0(blocks), weights)
    errors = [d for d in validate_triple(triple) if d.is_error]
    if errors:
        raise ValidationError(errors)
    return triple


def triple_to_document(t: GatTriple) -> TripleDocument:
    return {
        "schema_version": SCHEMA_VERSION,
        "nodes": list(t.graph.nodes),
        "edges": [list(e) for e in t.graph.edges],
        "feature_dim": t.feature_dim,
        "features": {v: [float(x) for x in t.features.blocks[v]] for v in t.graph.nodes},
        "weights": [
            {"from": src, "to": dst, "w": float(w)}
            for (src, dst), w in sorted(t.weights.items())
        ],
    }


def write_triple(t: GatTriple) -> bytes:
    return (json.dumps(triple_to_document(t), indent=2) + "\n").encode("utf-8")


def _bar_to_dict(bar: Bar) -> dict:
    out = {
        "dim": bar.dim,
        "birth": float(bar.birth),
        "death": None if math.isinf(bar.death) else float(bar.death),
    }
    if bar.representative is not None:
        rep = bar.representative
        out["representative"] = rep if isinstance(rep, str) else list(rep)
    return out


def _format_value(x: float) -> str:
    return "inf" if math.isinf(x) else f"{x:g}"


def write_barcode(b: Barcode, format: str = "json") -> bytes:
    """Serialize a barcode in (dimension, birth, death) order; json uses null
    for infinite deaths, text "inf"."""
    bars = _sorted_bars(list(b.bars))
    if format == "json":
        return json.dumps([_bar_to_dict(bar) for bar in bars], separators=(",", ":")).encode()
    if format == "text":
        lines = [
            f"H{bar.dim} [{_format_value(bar.birth)}, {_format_value(bar.death)})"
            for bar in bars
        ]
        return "\n".join(lines).encode()
    raise ValueError(f"format must be 'json' or 'text', got {format!r}")


@dataclass(frozen=True)
class HarmonicSummary:
    epsilon: float
    harmonic: HarmonicSet
    classification: HarmonicSetClassification


@dataclass(frozen=True)
class AnalysisReport:
    """Aggregated analysis of one triple under its induced sheaf."""

    global_section_dim: int
    spectrum: tuple[float, ...]
    residuals: dict[EdgeKey, float]
    harmonic: tuple[HarmonicSummary, ...]
    barcode: Barcode


def build_report(
    t: GatTriple,
    epsilons: tuple[float, ...],
    tol: float = 1e-10,
    mode: str = "full",
    include_zero_bars: bool = False,
) -> AnalysisReport:
    sh = gat_sheaf(t)
    residuals = edge_residuals(sh, t.features)
    summaries = []
    for eps in epsilons:
        hset = epsilon_harmonic_set(residuals, eps)
        summaries.append(HarmonicSummary(eps, hset, classify_harmonic_set(t.graph, hset)))
    filt = build_filtration(t.graph, residuals, mode)
    return AnalysisReport(
        global_section_dim=global_sections(sh, tol).dimension,
        spectrum=tuple(float(x) for x in laplacian_spectrum(sh)),
        residuals=dict(residuals.norms),
        harmonic=tuple(summaries),
        barcode=build_barcode(filt, include_zero_bars),
    )


def report_to_dict(report: AnalysisReport) -> dict:
    return {
        "global_section_dim": report.global_section_dim,
        "spectrum": list(report.spectrum),
        "residuals": [
            {"edge": list(e), "norm": norm} for e, norm in sorted(report.residuals.items())
        ],
        "harmonic": [
            {
                "epsilon": summary.epsilon,
                "nodes": sorted(summary.harmonic.nodes),
                "edges": [list(e) for e in sorted(summary.harmonic.edges)],
                "classification": {
                    "is_subgraph": summary.classification.is_subgraph,
                    "is_open": summary.classification.is_open,
                    "is_full": summary.classification.is_full,
                    "is_empty": summary.classification.is_empty,
                    "is_component_union": summary.classification.is_component_union,
                },
            }
            for summary in report.harmonic
        ],
        "barcode": [_bar_to_dict(bar) for bar in report.barcode.bars],
    }
