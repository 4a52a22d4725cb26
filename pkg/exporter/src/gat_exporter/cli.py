"""gat-export: write triple documents for the sheafharmonics toolchain.

Exit codes: 0 success, 1 invalid configuration or training failure,
2 output IO error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ExportConfig, ExporterError
from .document import document_bytes
from .synthetic import export_synthetic
from .training import export_trained


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gat-export", description="Emit attention-triple JSON documents."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int, required=True, help="node count")
        p.add_argument("--d", type=int, required=True, help="feature dimension")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", required=True, help="output directory")

    p = sub.add_parser("synthetic", help="random graph with normalized random weights")
    common(p)

    p = sub.add_parser("train", help="snapshots from a toy attention model")
    common(p)
    p.add_argument("--epochs", type=int, default=50)
    p.add_argument("--snapshot-every", type=int, default=25, dest="snapshot_every")

    return parser


def run_command(argv) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "synthetic":
            cfg = ExportConfig("synthetic", args.n, args.d, args.seed)
            named_docs = [(f"synthetic_n{cfg.n}_d{cfg.d}_seed{cfg.seed}.json", export_synthetic(cfg))]
        else:
            cfg = ExportConfig(
                "toy_train", args.n, args.d, args.seed,
                epochs=args.epochs, snapshot_every=args.snapshot_every,
            )
            epochs = sorted(
                {e for e in range(cfg.snapshot_every, cfg.epochs + 1, cfg.snapshot_every)}
                | {cfg.epochs}
            )
            named_docs = [
                (f"trained_n{cfg.n}_d{cfg.d}_seed{cfg.seed}_epoch{epoch:04d}.json", doc)
                for epoch, doc in zip(epochs, export_trained(cfg))
            ]
    except ExporterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    try:
        out_dir = Path(args.output)
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, doc in named_docs:
            path = out_dir / name
            path.write_bytes(document_bytes(doc))
            print(path)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
