"""Exit criteria. Each test logs one PASS/FAIL line, shown in the terminal summary."""
import json
import math
import time

import numpy as np
import pytest

from graph_frames import (
    DualSpec,
    Frame,
    canonical_dual,
    canonical_dual_lg,
    complete,
    connected_components,
    cycle,
    disjoint_union,
    dual_from_shifts,
    dual_is_in_family,
    eigenbasis_variant,
    eigh,
    frame_operator,
    gramian,
    is_g_frame,
    is_lg_frame,
    laplacian_bound_check,
    laplacian_matrix,
    lg_frame,
    random_connected_graph,
    star,
    tightness_report,
    unitary_equivalence_map,
    verify_dual,
)
from graph_frames.cli import main
from graph_frames.io import frame_to_csv, write_edge_list
from graph_frames.linalg import identity, matmul, max_abs_diff, transpose
from graph_frames.survey import enumerate_graphs, multiplicities_match, survey

from .conftest import C4_FRAME, C4_LAPLACIAN, STAR_FRAME, STAR_LAPLACIAN


def record(log, number, title, ok, detail):
    log.append(f"[{'PASS' if ok else 'FAIL'}] AC{number} {title}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def survey5():
    start = time.perf_counter()
    rep = survey(5)
    return rep, time.perf_counter() - start


def test_ac1_cycle_example(acceptance_log, tmp_path, capsys):
    start = time.perf_counter()
    edges = tmp_path / "c4.edges"
    edges.write_text(write_edge_list(cycle(4)))
    assert main(["frame", "--input", str(edges), "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    spectrum_err = max_abs_diff(rep["spectrum"]["laplacian"], [4, 2, 2, 0])
    f = Frame(rep["frame"]["vectors"])
    frame_op_err = max_abs_diff(frame_operator(f), np.diag([4.0, 2.0, 2.0]))
    gram_err = max_abs_diff(gramian(f), C4_LAPLACIAN)

    paper = tmp_path / "paper.csv"
    paper.write_text(frame_to_csv(Frame(C4_FRAME)))
    code = main(["verify", "--input", str(edges), "--frame", str(paper)])
    ver = json.loads(capsys.readouterr().out)
    elapsed = time.perf_counter() - start
    ok = (
        max(spectrum_err, frame_op_err, gram_err) <= 1e-9
        and code == 0
        and ver["is_g_frame"] is True
        and ver["is_lg_frame"] is True
        and elapsed < 1.0
    )
    record(
        acceptance_log, 1, "C4 example", ok,
        f"spectrum {spectrum_err:.1e}, S {frame_op_err:.1e}, Gramian {gram_err:.1e} (<= 1e-9); "
        f"paper frame g/lg = {ver['is_g_frame']}/{ver['is_lg_frame']}; {elapsed:.3f}s < 1s",
    )


def test_ac2_star_example(acceptance_log):
    start = time.perf_counter()
    f = Frame(STAR_FRAME)
    g_ok, _ = is_g_frame(f, star(4))
    gram_err = max_abs_diff(gramian(f), STAR_LAPLACIAN)
    lg = is_lg_frame(f, star(4))
    elapsed = time.perf_counter() - start
    ok = g_ok and gram_err <= 1e-9 and lg is False and elapsed < 1.0
    record(acceptance_log, 2, "star example", ok,
           f"G-frame {g_ok}, Gramian err {gram_err:.1e} (<= 1e-9), L_G-frame {lg} (expected False); {elapsed:.3f}s < 1s")


def test_ac3_canonical_dual(acceptance_log):
    r = lg_frame(cycle(4))
    lg_dual = canonical_dual_lg(r)
    generic = canonical_dual(r.frame)
    diff = max_abs_diff(lg_dual.vectors, generic.vectors)
    d_err = max_abs_diff(1.0 / r.leading_spectrum, [1 / 4, 1 / 2, 1 / 2])
    ok_dual, res = verify_dual(r.frame, lg_dual)
    ok = diff <= 1e-9 and d_err <= 1e-9 and ok_dual and res <= 1e-9
    record(acceptance_log, 3, "canonical dual", ok,
           f"diagonal vs generic {diff:.1e}, D err {d_err:.1e}, verify_dual residual {res:.1e} (all <= 1e-9)")


def test_ac4_dual_family(acceptance_log):
    start = time.perf_counter()
    rng = np.random.default_rng(4)
    worst_res = worst_recovery = 0.0
    passed = impostors_rejected = 0
    cases = [(star(4), 25), (disjoint_union(complete(3), complete(3)), 25)]
    for g, count in cases:
        f = lg_frame(g).frame
        p = connected_components(g).count
        base = canonical_dual(f).vectors
        for _ in range(count):
            nu = rng.uniform(-5, 5, (p, f.k))
            dual = dual_from_shifts(f, g, DualSpec(nu))
            ok, res = verify_dual(f, dual)
            fam, spec = dual_is_in_family(f, g, dual)
            worst_res = max(worst_res, res)
            worst_recovery = max(worst_recovery, max_abs_diff(spec.shifts, nu))
            passed += ok and fam and res <= 1e-9 and max_abs_diff(spec.shifts, nu) <= 1e-8
            # impostor: one vertex gets a different shift from the rest of its component
            labels = np.array(connected_components(g).labels)
            h = nu[labels].copy()
            h[rng.integers(g.n)] += rng.uniform(0.5, 2.0) * rng.choice([-1, 1], size=f.k)
            fake = Frame(base + h)
            impostors_rejected += not verify_dual(f, fake)[0] and not dual_is_in_family(f, g, fake)[0]
    elapsed = time.perf_counter() - start
    ok = passed == 50 and impostors_rejected == 50 and elapsed < 5.0
    record(acceptance_log, 4, "dual family", ok,
           f"{passed}/50 duals valid (residual max {worst_res:.1e} <= 1e-9, shift recovery max {worst_recovery:.1e} <= 1e-8), "
           f"{impostors_rejected}/50 impostors rejected; {elapsed:.2f}s < 5s")


def test_ac5_unitary_equivalence(acceptance_log):
    start = time.perf_counter()
    worst_orth = worst_map = 0.0
    pairs = 0
    for i in range(20):
        n = 3 + i % 6
        g = random_connected_graph(n, 0.5, seed=1000 + 37 * i)
        base = lg_frame(g)
        for v in range(3):
            other = eigenbasis_variant(base, g, seed=10 * i + v)
            emap = unitary_equivalence_map(base.frame, other.frame, g)
            worst_orth = max(worst_orth, emap.max_orth_residual)
            worst_map = max(worst_map, emap.max_map_residual)
            pairs += 1
    elapsed = time.perf_counter() - start
    ok = pairs == 60 and worst_orth <= 1e-8 and worst_map <= 1e-8 and elapsed < 10.0
    record(acceptance_log, 5, "unitary equivalence", ok,
           f"{pairs} frame pairs, orthogonality residual {worst_orth:.1e}, map residual {worst_map:.1e} (<= 1e-8); {elapsed:.2f}s < 10s")


def test_ac6_tightness_survey(acceptance_log, survey5, tmp_path, capsys):
    rep, elapsed = survey5
    code = main(["survey", "--max-n", "5", "--json"])
    cli = json.loads(capsys.readouterr().out)
    ok = (
        rep.graphs == 2**10 - 1
        and rep.violations == 0
        and rep.tight_connected == [list(complete(5).edges)]
        and code == 0
        and cli["violations"] == 0
        and elapsed < 60.0
    )
    record(acceptance_log, 6, "tightness survey n=5", ok,
           f"{rep.graphs} graphs, {rep.violations} violations {rep.violations_by_predicate}, "
           f"connected tight = K5 only: {rep.tight_connected == [list(complete(5).edges)]}; {elapsed:.2f}s < 60s")


def test_ac7_eigenvalue_bounds(acceptance_log, survey5):
    start = time.perf_counter()
    min_slack = math.inf
    checked = 0
    for _, g in enumerate_graphs(5):
        b = laplacian_bound_check(g)
        min_slack = min(min_slack, b.max_slack, *(() if b.connectivity_slack is None else (b.connectivity_slack,)))
        checked += 1
    rng = np.random.default_rng(7)
    for i in range(50):
        n = int(rng.integers(2, 31))
        g = random_connected_graph(n, float(rng.uniform(0.1, 0.9)), seed=5000 + i)
        b = laplacian_bound_check(g)
        min_slack = min(min_slack, b.max_slack, b.connectivity_slack)
        checked += 1
    elapsed = time.perf_counter() - start
    ok = min_slack >= -1e-9 and survey5[0].violations_by_predicate["e_laplacian_bounds"] == 0 and elapsed < 30.0
    record(acceptance_log, 7, "Laplacian eigenvalue bounds", ok,
           f"{checked} graphs, minimum slack {min_slack:.2e} >= -1e-9; {elapsed:.2f}s < 30s")


def test_ac8_uniform_and_multiplicities(acceptance_log, survey5):
    checked = 0
    worst = 0.0
    mult_ok = True
    for n in (4, 5):
        for _, g in enumerate_graphs(n):
            r = lg_frame(g)
            rep = tightness_report(g, result=r)
            if not rep.is_tight or rep.has_null_vertex:
                continue
            norms = np.sqrt(np.sum(r.frame.vectors**2, axis=1))
            worst = max(worst, float(np.max(np.abs(norms - math.sqrt(rep.regular_degree)))))
            mult_ok &= multiplicities_match(rep, g.n)
            checked += 1
    ok = checked == 5 and worst <= 1e-8 and mult_ok and survey5[0].multiplicity_mismatches == 0
    record(acceptance_log, 8, "tight => uniform, multiplicities", ok,
           f"{checked} tight graphs without null vertices (n=4,5), max |norm - sqrt r| {worst:.1e} <= 1e-8, "
           f"multiplicities exact: {mult_ok}")


def test_ac9_eigensolver_quality(acceptance_log):
    rng = np.random.default_rng(9)
    worst_orth = worst_recon = worst_trace = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 13))
        a = rng.uniform(-5, 5, (n, n))
        a = np.triu(a) + np.triu(a, 1).T
        values, m = eigh(a)
        worst_orth = max(worst_orth, max_abs_diff(matmul(transpose(m), m), identity(n)))
        worst_recon = max(worst_recon, max_abs_diff(matmul(m * values, transpose(m)), a))
        tr = float(np.trace(a))
        worst_trace = max(worst_trace, abs(math.fsum(values) - tr))
    ok = worst_orth <= 1e-10 and worst_recon <= 1e-10 and worst_trace <= 1e-9
    record(acceptance_log, 9, "eigensolver quality", ok,
           f"100 matrices: orthogonality {worst_orth:.1e}, reconstruction {worst_recon:.1e} (<= 1e-10), trace {worst_trace:.1e} (<= 1e-9)")
