"""Acceptance criteria 1-8, one test each, each logging a single PASS/FAIL line."""

import re
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

import oracles
from conftest import ACCEPTANCE_LINES, DATA, PENDANT_K4, complete, oracle_graphs, to_adj
from pfp_netlab.cli import check_tolerances, main
from pfp_netlab.formats import (
    parse_peering_list,
    parse_tolerances,
    read_report,
    write_peering_list,
    write_report,
)
from pfp_netlab.graph import from_edge_list
from pfp_netlab.kcore_viz import layout, render_svg
from pfp_netlab.metrics import (
    REPORT_FIELDS,
    coreness,
    distances_from,
    full_report,
    rich_club_by_degree,
    rich_club_by_rank,
    shortest_path_stats,
    top_clique_size,
    triangle_coefficients,
)
from pfp_netlab.pfp import PfpParams, grow, make_rng, pfp_select, preference_weights

REFERENCE = Path(__file__).parent.parent / "reference"
ENSEMBLE_SEED = "2006"


def record(number, title, failures, detail=""):
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number} {title}: {status}"
    if detail:
        line += f"  [{detail}]"
    if failures:
        line += "  failed: " + "; ".join(failures)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert not failures, line


def _gate(targets_name, tol_name, ensemble_path):
    """Run the compare gate and return per-metric failure descriptions."""
    targets = read_report((REFERENCE / targets_name).read_text())
    got = read_report(ensemble_path.read_text())
    tol = parse_tolerances((REFERENCE / tol_name).read_text())
    failed = check_tolerances(targets, got, tol)
    exit_code = main(["compare", str(REFERENCE / targets_name), str(ensemble_path),
                      "--tolerances", str(REFERENCE / tol_name)])
    assert exit_code == (1 if failed else 0)
    described = [f"{name}={getattr(got, name):.4g} want {getattr(targets, name):g} {tol[name]}"
                 for name in failed]
    summary = ", ".join(f"{name}={getattr(got, name):.4g}" for name in tol)
    return described, summary


def _generate(tmp_path_factory, nodes):
    out = tmp_path_factory.mktemp(f"pfp{nodes}")
    assert main(["generate", "--nodes", str(nodes), "--runs", "10",
                 "--seed", ENSEMBLE_SEED, "--out-dir", str(out)]) == 0
    return out / "ensemble.report"


@pytest.mark.slow
def test_criterion_1_large_ensemble(tmp_path_factory):
    failures, summary = _gate("pfp2_targets.report", "pfp2.tol", _generate(tmp_path_factory, 9204))
    record(1, "N=9204 ensemble vs PFP_2 column", failures, summary)


def test_criterion_2_small_ensemble(tmp_path_factory):
    failures, summary = _gate("pfp1_targets.report", "pfp1.tol", _generate(tmp_path_factory, 84))
    record(2, "N=84 ensemble vs PFP_1 column", failures, summary)


CN05 = DATA / "cn05.asl"
# hand-checked on paper; gamma and theta from an independent least-squares fit
GOLDEN_EXPECTED = {
    "n": 13, "l": 19, "k_max": 7, "n_clique": 3, "c_max": 3,
    "ell_star": float(Fraction(94, 39)),
    "mean_triangle": float(Fraction(21, 13)),
    "alpha": -0.0931928687196107,
    "gamma": -2.294897995546055,
    "theta": -1.115081486155247,
}


def test_criterion_3_measured_graph(golden, tmp_path):
    if CN05.exists():
        report = tmp_path / "cn05.report"
        report.write_text(write_report(full_report(parse_peering_list(CN05.read_text()))))
        failures, summary = _gate("cn05_targets.report", "cn05.tol", report)
        record(3, "CN05 fixture", failures, summary)
        return
    rep = full_report(golden)
    failures = []
    for name, want in GOLDEN_EXPECTED.items():
        got = getattr(rep, name)
        exact = isinstance(want, int)
        if got is None or (got != want if exact else abs(got - want) > 1e-9):
            failures.append(f"{name}={got} want {want}")
    if rep.disconnected:
        failures.append("golden graph flagged disconnected")
    record(3, "golden graph (CN05 file unavailable)", failures,
           f"{len(GOLDEN_EXPECTED)} fields")


def test_criterion_4_oracle_suite():
    graphs = oracle_graphs()
    counts = dict.fromkeys(("triangles", "coreness", "distances", "rich_club", "n_clique"), 0)
    for g in graphs:
        adj = to_adj(g)
        counts["triangles"] += triangle_coefficients(g) != oracles.triangles(adj)
        counts["coreness"] += coreness(g)[0] != oracles.coreness(adj)
        _, fw = oracles.floyd_warshall(adj)
        bfs_ok = np.array_equal(np.where(np.isinf(fw), -1, fw).astype(int),
                                distances_from(g, g.nodes))
        if bfs_ok and len(g) > 1:
            bfs_ok = abs(shortest_path_stats(g).ell_star - fw[np.triu_indices(len(g), 1)].mean()) < 1e-12
        counts["distances"] += not bfs_ok
        by_deg, want_deg = rich_club_by_degree(g).as_dict(), oracles.rich_club_degree(adj)
        by_rank, want_rank = rich_club_by_rank(g).points, oracles.rich_club_rank(adj)
        club_ok = by_deg.keys() == want_deg.keys() and all(
            abs(by_deg[k] - want_deg[k]) < 1e-12 for k in want_deg)
        club_ok = club_ok and len(by_rank) == len(want_rank) and all(
            abs(x - r / len(g)) < 1e-12 and abs(y - want_rank[r]) < 1e-12
            for (x, y), r in zip(by_rank, sorted(want_rank)))
        counts["rich_club"] += not club_ok
        counts["n_clique"] += top_clique_size(g) != oracles.top_clique(adj)
    failures = [f"{name}: {n} mismatches" for name, n in counts.items() if n]
    record(4, "oracle equivalence", failures, f"{len(graphs)} graphs")


def _select_frequencies(g, delta, excluded, draws, seed):
    rng = make_rng(seed)
    counts = dict.fromkeys(g.nodes, 0)
    for _ in range(draws):
        counts[pfp_select(g, delta, excluded, rng)] += 1
    return {v: c / draws for v, c in counts.items()}


def test_criterion_5_preference_rule():
    failures = []
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(1000):
        degrees = rng.integers(1, 2000, size=int(rng.integers(1, 500)))
        w = preference_weights(degrees.tolist(), 0.048)
        worst = max(worst, abs(float(np.sum(w / np.sum(w))) - 1.0))
    if worst > 1e-12:
        failures.append(f"normalisation error {worst:.2e}")

    g = from_edge_list([(0, 1), (0, 2), (0, 3), (1, 2), (3, 4)])
    total = sum(g.degrees.values())
    freq = _select_frequencies(g, 0.0, (), 100_000, seed=11)
    for v, k in g.degrees.items():
        share = k / total
        if abs(freq[v] - share) > 0.02 * share:
            failures.append(f"delta=0 node {v}: {freq[v]:.4f} vs {share:.4f}")

    # candidates 0, 1, 2 of the bow-tie have degrees 2, 2, 4
    bowtie = from_edge_list([(0, 2), (1, 2), (2, 3), (2, 4), (3, 0), (4, 1)])
    hub = _select_frequencies(bowtie, 0.048, {3, 4}, 100_000, seed=12)[2]
    if abs(hub - 0.5076) > 0.01:
        failures.append(f"[2,2,4] hub frequency {hub:.4f}")
    record(5, "preference rule", failures, f"max sum error {worst:.1e}, hub {hub:.4f}")


def test_criterion_6_determinism(tmp_path, monkeypatch):
    args = ["generate", "--nodes", "300", "--runs", "4", "--seed", "61"]
    outputs = {}
    for label, threads in (("a", "1"), ("b", "1"), ("c", "4"), ("d", "0")):
        monkeypatch.setenv("PFP_NETLAB_THREADS", threads)
        out = tmp_path / label
        assert main(args + ["--out-dir", str(out)]) == 0
        outputs[label] = {p.name: p.read_bytes() for p in sorted(out.iterdir())}
    failures = [f"run {label} differs" for label in "bcd" if outputs[label] != outputs["a"]]
    record(6, "determinism", failures, f"{len(outputs['a'])} files x 4 invocations")


def test_criterion_7_round_trips(golden):
    failures = []
    for i in range(100):
        g = grow(PfpParams(target_n=30 + 7 * i, rng_seed=7000 + i))
        if parse_peering_list(write_peering_list(g)) != g:
            failures.append(f"graph {i}")
    reports = [full_report(golden), full_report(complete(4)), full_report(from_edge_list([(1, 2)])),
               full_report(from_edge_list([(0, 1), (1, 2), (5, 6)]))]
    for rep in reports:
        text = write_report(rep)
        back = read_report(text)
        if back != rep or back.reasons != rep.reasons or write_report(back) != text:
            failures.append(f"report n={rep.n}")
    absent = sum(len(r.reasons) for r in reports)
    if absent == 0:
        failures.append("no absent fields exercised")
    record(7, "round trips", failures, f"100 graphs, {len(reports)} reports, {absent} absent fields")


def _svg_counts(g):
    svg = render_svg(layout(g, coreness(g)[0]), g)
    return len(re.findall(r"<circle\b", svg)), len(re.findall(r"<line\b", svg))


def test_criterion_8_svg(golden):
    failures = []
    cases = {"K4": complete(4), "pendant-K4": PENDANT_K4}
    if CN05.exists():
        cases["CN05"] = parse_peering_list(CN05.read_text())
    else:
        cases["golden"] = golden
    for name, g in cases.items():
        circles, lines = _svg_counts(g)
        if (circles, lines) != (len(g), g.edge_count):
            failures.append(f"{name}: {circles} circles, {lines} lines")
    per_node, _ = coreness(PENDANT_K4)
    shells = layout(PENDANT_K4, per_node)
    for u in PENDANT_K4.nodes:
        for v in PENDANT_K4.nodes:
            if per_node[u] > per_node[v] and not shells.ring_radius(u) < shells.ring_radius(v):
                failures.append(f"ring order {u} vs {v}")
    record(8, "SVG structure", failures, ", ".join(cases))


def test_reference_files_cover_every_metric():
    for name in ("pfp2_targets.report", "pfp1_targets.report", "cn05_targets.report"):
        rep = read_report((REFERENCE / name).read_text())
        assert set(rep.defined()) == set(REPORT_FIELDS)
    for name in ("pfp2.tol", "pfp1.tol", "cn05.tol"):
        assert parse_tolerances((REFERENCE / name).read_text())
