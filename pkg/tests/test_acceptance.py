"""Acceptance gate: one test per top-level criterion, each printing a
pass/fail line.  Tolerances are pinned here and nowhere else."""

import json
import math
import subprocess
import sys
from collections import Counter

import numpy as np

from sheafharmonics import (
    Cochain0,
    build_filtration,
    classify_harmonic_set,
    coboundary,
    connected_components,
    constant_sheaf,
    gat_sheaf,
    global_sections,
    harmonic_set,
    is_global_section,
    parse_triple,
    persistence_h0,
    persistence_h1,
    sheaf_laplacian,
    sheaf_norm,
    sublevel_set,
    write_triple,
)
from sheafharmonics.cli import fig4_triple, run_command

from helpers import (
    bfs_components,
    cycle_rank,
    difference_constraint_nullity,
    random_cochain,
    random_graph,
    random_residuals,
    random_sheaf,
    snapshot_h0_bars,
)

KERNEL_TOL = 1e-10
ETA = 1e-9


def record(name: str, ok: bool) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}")
    assert ok, name


def test_constant_sheaf_laplacian_identity():
    """sheaf Laplacian of the 1-dim constant sheaf == D - A, entrywise exact."""
    rng = np.random.default_rng(1001)
    ok = True
    for _ in range(100):
        g = random_graph(rng, max_nodes=50, min_nodes=1, p=float(rng.uniform(0.02, 0.5)))
        lap = sheaf_laplacian(constant_sheaf(g, 1))
        n = len(g.nodes)
        expected = np.zeros((n, n))
        for v in g.nodes:
            expected[g.node_index[v], g.node_index[v]] = g.degree(v)
        for lo, hi in g.edges:
            expected[g.node_index[lo], g.node_index[hi]] = -1.0
            expected[g.node_index[hi], g.node_index[lo]] = -1.0
        ok = ok and np.array_equal(lap, expected)
    record("constant-sheaf Laplacian equals D - A on 100 random graphs", ok)


def _laplacian_kernel_dim(lap: np.ndarray, tol: float) -> int:
    if lap.size == 0:
        return lap.shape[0]
    evals = np.linalg.eigvalsh(lap)
    lmax = float(evals[-1])
    if lmax <= 0.0:
        return len(evals)
    return int(np.count_nonzero(evals < tol * lmax))


def test_hodge_kernel_identity():
    """dim ker(L) == dim ker(C) at tol 1e-10 and L annihilates the section basis."""
    rng = np.random.default_rng(1002)
    ok = True
    for _ in range(50):
        g = random_graph(rng, max_nodes=10)
        sh = random_sheaf(rng, g, max_dim=3)
        basis = global_sections(sh, KERNEL_TOL)
        lap = sheaf_laplacian(sh)
        ok = ok and basis.dimension == _laplacian_kernel_dim(lap, KERNEL_TOL)
        scale = float(np.linalg.norm(lap, np.inf)) if lap.size else 0.0
        for vec in basis.vectors:
            residual = float(np.linalg.norm(lap @ vec.to_flat(sh), np.inf))
            ok = ok and residual <= 1e-8 * scale
    record("Hodge kernel identity on 50 random sheaves", ok)


def test_global_section_dimension():
    """dim of the constant-sheaf section space == d * #components == nullspace oracle."""
    rng = np.random.default_rng(1003)
    ok = True
    for d in (1, 2, 3):
        for _ in range(25):
            g = random_graph(rng, max_nodes=12, p=float(rng.uniform(0.05, 0.5)))
            dim = global_sections(constant_sheaf(g, d), KERNEL_TOL).dimension
            components = len(bfs_components(g.nodes, g.edges))
            ok = ok and dim == d * components
            ok = ok and dim == difference_constraint_nullity(g, d)
    record("constant-sheaf section dimension equals d x components (oracle-checked)", ok)


def test_fig4_end_to_end(tmp_path, capsys):
    """demo fig4 -> parse -> induced sheaf -> one section along (1,4,4,4,4)."""
    out_path = tmp_path / "fig4.json"
    assert run_command(["demo", "fig4", "--output", str(out_path)]) == 0
    capsys.readouterr()
    triple = parse_triple(out_path.read_bytes())
    sh = gat_sheaf(triple)
    basis = global_sections(sh, KERNEL_TOL)

    # independent oracle: kernel of the hand-assembled 4x5 coboundary
    oracle_mat = np.array(
        [
            [-1.0, 0.25, 0.0, 0.0, 0.0],
            [-1.0, 0.0, 0.25, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.25, 0.0],
            [-1.0, 0.0, 0.0, 0.0, 0.25],
        ]
    )
    _, svals, vh = np.linalg.svd(oracle_mat)
    oracle_kernel = vh[np.count_nonzero(svals >= KERNEL_TOL * svals[0]):]

    ok = basis.dimension == 1 and oracle_kernel.shape[0] == 1
    if ok:
        vec = basis.vectors[0].to_flat(sh)
        target = np.array([1.0, 4.0, 4.0, 4.0, 4.0])
        cos_target = abs(float(vec @ target)) / float(np.linalg.norm(target))
        cos_oracle = abs(float(vec @ oracle_kernel[0]))
        ok = cos_target >= 1.0 - 1e-9 and cos_oracle >= 1.0 - 1e-9
    record("fig4 end-to-end section space is one-dimensional along (1,4,4,4,4)", ok)


def _corrupted_section(rng, sh):
    basis = global_sections(sh, KERNEL_TOL).vectors
    if basis and rng.random() < 0.5:
        coeffs = rng.standard_normal(len(basis))
        blocks = {
            v: sum(c * vec.blocks[v] for c, vec in zip(coeffs, basis))
            for v in sh.host.nodes
        }
    else:
        blocks = {v: np.zeros(sh.node_stalk_dim[v]) for v in sh.host.nodes}
    for v in sh.host.nodes:
        if rng.random() < 0.4:
            blocks[v] = blocks[v] + rng.standard_normal(sh.node_stalk_dim[v])
    return Cochain0(blocks)


def test_harmonic_set_properties():
    """Cover-iff-section, closedness, open-iff-component-union, and the
    connected-graph dichotomy on 500 random instances."""
    rng = np.random.default_rng(1004)
    failures = 0
    for _ in range(500):
        g = random_graph(rng, max_nodes=10, p=float(rng.uniform(0.05, 0.6)))
        sh = random_sheaf(rng, g, max_dim=3)
        s = _corrupted_section(rng, sh) if rng.random() < 0.7 else random_cochain(rng, sh)
        h = harmonic_set(sh, s, ETA)
        flags = classify_harmonic_set(g, h)

        covers = h.nodes == g.node_set and h.edges == g.edge_set
        if covers != is_global_section(sh, s, ETA):
            failures += 1
        if not flags.is_subgraph:
            failures += 1
        if flags.is_open != flags.is_component_union:
            failures += 1
        if len(connected_components(g)) == 1:
            if flags.is_open != (flags.is_empty or flags.is_full):
                failures += 1
    record("harmonic-set cover/closure/open-set properties on 500 random instances", failures == 0)


def test_filtration_monotonicity():
    """Sublevel inclusion for every epsilon pair, in all three modes."""
    rng = np.random.default_rng(1005)
    violations = 0
    for _ in range(200):
        g = random_graph(rng, max_nodes=10)
        res = random_residuals(rng, g)
        filtrations = [build_filtration(g, res, mode) for mode in ("full", "edge_closure", "nodes_only")]
        for _ in range(10):
            e1, e2 = sorted(rng.uniform(-0.5, 2.5, size=2))
            for f in filtrations:
                if not sublevel_set(f, float(e1)) <= sublevel_set(f, float(e2)):
                    violations += 1
    record("sublevel monotonicity on 200 residual maps x 10 epsilon pairs x 3 modes", violations == 0)


def test_barcode_oracle():
    """Union-find dim-0 bars == per-critical-value component reconstruction;
    dim-1 bar count == cycle rank of the final subgraph."""
    rng = np.random.default_rng(1006)
    ok = True
    modes = ("full", "edge_closure", "nodes_only")
    for trial in range(100):
        g = random_graph(rng, max_nodes=10)
        res = random_residuals(rng, g)
        f = build_filtration(g, res, modes[trial % 3])
        mine = Counter((bar.birth, bar.death) for bar in persistence_h0(f))
        ok = ok and mine == snapshot_h0_bars(f)
        final = sublevel_set(f, math.inf)
        ok = ok and len(persistence_h1(f)) == cycle_rank(final.nodes, final.edges)
    record("barcode union-find agrees with component-recomputation oracle", ok)


def test_seminorm_properties():
    """Nonnegativity, homogeneity, triangle inequality; norm iff injective."""
    rng = np.random.default_rng(1007)
    ok = True
    sheaves = [random_sheaf(rng, random_graph(rng, max_nodes=8)) for _ in range(20)]
    for i in range(1000):
        sh = sheaves[i % len(sheaves)]
        s = random_cochain(rng, sh)
        t = random_cochain(rng, sh)
        ns, nt = sheaf_norm(sh, s), sheaf_norm(sh, t)
        ok = ok and ns >= 0.0 and nt >= 0.0

        lam = float(rng.uniform(0.1, 10.0)) * (1 if rng.random() < 0.5 else -1)
        scaled = Cochain0({v: lam * b for v, b in s.blocks.items()})
        reference = abs(lam) * ns
        if reference == 0.0:
            ok = ok and sheaf_norm(sh, scaled) == 0.0
        else:
            ok = ok and abs(sheaf_norm(sh, scaled) - reference) <= 1e-12 * reference

        total = Cochain0({v: s.blocks[v] + t.blocks[v] for v in s.blocks})
        ok = ok and sheaf_norm(sh, total) <= ns + nt + 1e-12 * (ns + nt + 1.0)

    injective, degenerate = [], []
    attempts = 0
    while (len(injective) < 10 or len(degenerate) < 10) and attempts < 4000:
        attempts += 1
        sh = random_sheaf(rng, random_graph(rng, max_nodes=8, min_nodes=2))
        mat = coboundary(sh)
        full_rank = int(np.linalg.matrix_rank(mat)) == sh.total_node_dim if mat.size else False
        if full_rank and len(injective) < 10:
            injective.append(sh)
        elif not full_rank and len(degenerate) < 10:
            degenerate.append(sh)
    ok = ok and len(injective) == 10 and len(degenerate) == 10

    for sh in injective:
        ok = ok and global_sections(sh, KERNEL_TOL).dimension == 0
        for _ in range(5):
            s = random_cochain(rng, sh)
            ok = ok and (sheaf_norm(sh, s) > 0.0)
    for sh in degenerate:
        basis = global_sections(sh, KERNEL_TOL)
        ok = ok and basis.dimension >= 1
        scale = float(np.linalg.norm(coboundary(sh))) if coboundary(sh).size else 1.0
        for vec in basis.vectors:
            ok = ok and sheaf_norm(sh, vec) <= 1e-8 * max(scale, 1.0)
    record("sheaf norm is a seminorm, and a norm exactly when injective", ok)


def test_cli_determinism(tmp_path):
    """Byte-identical stdout across repeated runs of every analysis command."""
    path = tmp_path / "fig4.json"
    path.write_bytes(write_triple(fig4_triple()))
    commands = [
        ["demo", "fig4"],
        ["validate", "--input", str(path)],
        ["sections", "--input", str(path), "--sheaf", "gat"],
        ["spectrum", "--input", str(path), "--sheaf", "gat"],
        ["harmonic", "--input", str(path), "--epsilon", "0.5"],
        ["barcode", "--input", str(path), "--mode", "full", "--format", "json"],
    ]
    ok = True
    for argv in commands:
        full = [sys.executable, "-m", "sheafharmonics", *argv]
        first = subprocess.run(full, capture_output=True)
        second = subprocess.run(full, capture_output=True)
        ok = ok and first.returncode == 0 and second.returncode == 0
        ok = ok and first.stdout == second.stdout
    record("repeated CLI runs produce byte-identical stdout", ok)
