"""Command-line interface.

Exit codes: 0 success, 1 validation or analysis error, 2 IO or parse error.
Results go to stdout, diagnostics to stderr, and identical inputs always
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ParseError, SchemaError, SheafHarmonicsError, ValidationError
from .filtration import barcode as build_barcode, build_filtration
from .graph import build_graph
from .harmonic import edge_residuals
from .io import build_report, parse_triple, report_to_dict, write_barcode, write_triple
from .sheaf import (
    Cochain0,
    GatTriple,
    constant_sheaf,
    gat_sheaf,
    global_sections,
    laplacian_spectrum,
    validate_triple,
)

DEFAULT_TOL = 1e-10
DEFAULT_ETA = 1e-9

_MODE_BY_FLAG = {"full": "full", "edge-closure": "edge_closure", "nodes": "nodes_only"}


def fig4_triple() -> GatTriple:
    """The bundled demo: a 4-leaf star whose leaves attend to the center with
    weight 1 and receive weight 0.25 back, with one non-harmonic leaf signal."""
    center, leaves = "u", ("v", "w", "x", "y")
    g = build_graph([center, *leaves], [(center, leaf) for leaf in leaves])
    features = Cochain0.of({"u": [1.0], "v": [4.0], "w": [4.0], "x": [4.0], "y": [8.0]})
    weights = {}
    for leaf in leaves:
        weights[center, leaf] = 1.0
        weights[leaf, center] = 0.25
    return GatTriple(g, 1, features, weights)


def _read_triple(path: str) -> GatTriple:
    with open(path, "rb") as handle:
        return parse_triple(handle.read())


def _build_sheaf(t: GatTriple, kind: str, dim: int | None):
    if kind == "constant":
        return constant_sheaf(t.graph, dim if dim is not None else t.feature_dim)
    if dim is not None:
        print("warning: --dim is only used with --sheaf constant; ignored", file=sys.stderr)
    return gat_sheaf(t)


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)


def _dump(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _cmd_validate(args) -> int:
    triple = _read_triple(args.input)
    diagnostics = validate_triple(triple)
    for diag in diagnostics:
        print(f"{diag.severity}: {diag.code}: {diag.message}", file=sys.stderr)
    errors = [d for d in diagnostics if d.is_error]
    summary = {
        "ok": not errors,
        "nodes": len(triple.graph.nodes),
        "edges": len(triple.graph.edges),
        "feature_dim": triple.feature_dim,
        "errors": len(errors),
        "warnings": len(diagnostics) - len(errors),
    }
    sys.stdout.write(_dump(summary))
    return 1 if errors else 0


def _cmd_sections(args) -> int:
    triple = _read_triple(args.input)
    sheaf = _build_sheaf(triple, args.sheaf, args.dim)
    basis = global_sections(sheaf, args.tol)
    payload = {
        "sheaf": args.sheaf,
        "tolerance": args.tol,
        "global_section_dim": basis.dimension,
        "basis": [
            {v: [float(x) for x in vec.blocks[v]] for v in sheaf.host.nodes}
            for vec in basis.vectors
        ],
    }
    sys.stdout.write(_dump(payload))
    return 0


def _cmd_spectrum(args) -> int:
    triple = _read_triple(args.input)
    sheaf = _build_sheaf(triple, args.sheaf, None)
    payload = {
        "sheaf": args.sheaf,
        "spectrum": [float(x) for x in laplacian_spectrum(sheaf)],
    }
    sys.stdout.write(_dump(payload))
    return 0


def _cmd_harmonic(args) -> int:
    triple = _read_triple(args.input)
    report = build_report(triple, epsilons=(args.epsilon,), tol=DEFAULT_TOL)
    payload = report_to_dict(report)
    payload["epsilon"] = args.epsilon
    payload["eta"] = args.eta
    payload["is_global_section"] = all(n <= args.eta for n in report.residuals.values())
    sys.stdout.write(_dump(payload))
    return 0


def _cmd_barcode(args) -> int:
    triple = _read_triple(args.input)
    sheaf = gat_sheaf(triple)
    residuals = edge_residuals(sheaf, triple.features)
    filtration = build_filtration(triple.graph, residuals, _MODE_BY_FLAG[args.mode])
    code = build_barcode(filtration, include_zero_bars=args.zero_bars)
    _emit(write_barcode(code, args.format).decode() + "\n", args.output)
    return 0


def _cmd_demo(args) -> int:
    if args.name != "fig4":
        print(f"error: unknown demo {args.name!r}", file=sys.stderr)
        return 1
    _emit(write_triple(fig4_triple()).decode(), args.output)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sheafharmonics",
        description="Analyze attention triples through their induced cellular sheaf.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("--input", required=True, help="path to a triple JSON document")

    p = sub.add_parser("validate", help="check a triple document")
    add_input(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("sections", help="global section space of the induced sheaf")
    add_input(p)
    p.add_argument("--sheaf", choices=("gat", "constant"), default="gat")
    p.add_argument("--dim", type=int, default=None, help="stalk dimension for the constant sheaf")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative rank cutoff")
    p.set_defaults(func=_cmd_sections)

    p = sub.add_parser("spectrum", help="eigenvalues of the sheaf Laplacian")
    add_input(p)
    p.add_argument("--sheaf", choices=("gat", "constant"), default="gat")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("harmonic", help="harmonic substructure report")
    add_input(p)
    p.add_argument("--epsilon", type=float, required=True, help="residual threshold")
    p.add_argument("--eta", type=float, default=DEFAULT_ETA, help="exactness threshold")
    p.set_defaults(func=_cmd_harmonic)

    p = sub.add_parser("barcode", help="persistence barcode of the residual filtration")
    add_input(p)
    p.add_argument("--mode", choices=tuple(_MODE_BY_FLAG), default="full")
    p.add_argument("--zero-bars", action="store_true", dest="zero_bars")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", default=None, help="write to a file instead of stdout")
    p.set_defaults(func=_cmd_barcode)

    p = sub.add_parser("demo", help="emit a bundled example document")
    p.add_argument("name", choices=("fig4",))
    p.add_argument("--output", default=None, help="write to a file instead of stdout")
    p.set_defaults(func=_cmd_demo)

    return parser


def run_command(argv) -> int:
    """Run one CLI invocation; returns the process exit code."""
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        for diag in exc.diagnostics:
            print(f"error: {diag.code}: {diag.message}", file=sys.stderr)
        return 1
    except SheafHarmonicsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
