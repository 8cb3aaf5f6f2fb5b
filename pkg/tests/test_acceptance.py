"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines and timings. Tolerances are the contract values; seeds are fixed so the
suite is deterministic.
"""
from __future__ import annotations

import math
import time

import numpy as np
import pytest
from scipy import stats

from conftest import complete_graph, directed_cycle
from voterlab.degrees import DegreeSequence, ParetoSpec, sample_pareto_bidegrees, sample_pareto_degrees
from voterlab.graph import build_cm, build_dcm, is_strongly_connected, strongly_connected_components
from voterlab.theory import entropy_H, theory_params
from voterlab.voter import exact_consensus_mean, fit_chi, run_many, run_voter
from voterlab.walk import KingmanSpec, kingman_sample, meeting_time_mc, stationary

H_HALF = entropy_H(0.5)
THETA_REGULAR_3 = math.sqrt(1.5)
CHI_REGULAR_3 = math.sqrt(2.0 / 3.0)


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} - {detail}")


def _regular_dcm(n: int, seed: int):
    seq = DegreeSequence.directed(np.full(n, 3), np.full(n, 3))
    g = build_dcm(seq, seed=seed)
    comps = strongly_connected_components(g)
    if comps.largest_size < g.n:
        g, _ = comps.largest_subgraph(g)
    return g


def _pareto_dcm(alpha: float, x_min: int, n: int, seed: int):
    seq = sample_pareto_bidegrees(ParetoSpec(alpha, x_min, n, seed=seed))
    g = build_dcm(seq, seed=seed)
    comps = strongly_connected_components(g)
    if comps.largest_size < g.n:
        g, _ = comps.largest_subgraph(g)
    return g


def _pareto_cm(alpha: float, x_min: int, n: int, seed: int):
    seq = sample_pareto_degrees(ParetoSpec(alpha, x_min, n, seed=seed))
    g = build_cm(seq, seed=seed)
    comps = strongly_connected_components(g)
    if comps.largest_size < g.n:
        g, _ = comps.largest_subgraph(g)
    return g


def test_regular_dcm_theta_convergence():
    """Regular d+=d-=3 sequences: mean(tau)/(H(1/2) n) approaches sqrt(3/2)."""
    t0 = time.time()
    ratios = {}
    for n, runs in ((250, 400), (500, 400), (1000, 400), (2000, 800)):
        taus = []
        for gseed in range(4):
            g = _regular_dcm(n, seed=50_000 + 17 * n + gseed)
            t, _, _ = run_many(g, 0.5, runs // 4, seed=60_000 + 13 * n + gseed)
            taus.append(t)
        ratios[n] = float(np.concatenate(taus).mean() / (H_HALF * n))
    elapsed = time.time() - t0
    final = ratios[2000] / THETA_REGULAR_3
    ok = abs(final - 1.0) <= 0.10 and elapsed < 600.0
    trend = " ".join(f"n={n}:{r / THETA_REGULAR_3:.3f}" for n, r in ratios.items())
    _report(
        "regular-DCM theta",
        ok,
        f"ratio/theta {trend}; n=2000 within {abs(final - 1) * 100:.1f}% "
        f"(tol 10%), runtime {elapsed:.0f}s (cap 600s)",
    )
    assert abs(final - 1.0) <= 0.10
    assert elapsed < 600.0


def test_pareto_dcm_prediction_window():
    """alpha=3 DCM: per-graph mean(tau)/(H theta n) inside [0.8, 1.2] for >=80%."""
    for n, n_graphs, runs in ((250, 8, 60), (500, 8, 60), (1000, 25, 100)):
        ratios = []
        for k in range(n_graphs):
            g = _pareto_dcm(3.0, 2, n, seed=1000 + k)
            theory = theory_params(g.degree_sequence())
            taus, _, _ = run_many(g, 0.5, runs, seed=2000 + k)
            ratios.append(float(taus.mean() / (H_HALF * theory.theta * g.n)))
        ratios = np.array(ratios)
        inside = int(((ratios >= 0.8) & (ratios <= 1.2)).sum())
        if n == 1000:
            ok = inside >= 0.8 * n_graphs
            _report(
                "Pareto-DCM prediction",
                ok,
                f"n=1000: {inside}/{n_graphs} graphs inside [0.8, 1.2] "
                f"(need >= {int(0.8 * n_graphs)}); mean ratio {ratios.mean():.3f}",
            )
            assert inside >= 0.8 * n_graphs
        else:
            print(f"  context n={n}: {inside}/{n_graphs} inside, mean {ratios.mean():.3f}")


def test_cm_scaling_exponents():
    """alpha-CM log-log slopes: 1.0 +- 0.15 at alpha=3, 2/3 +- 0.2 at 1.5;
    alpha=0.7 mean grows by at most 2x from n=200 to n=2000."""
    ns = (200, 500, 1000, 2000)

    def sweep(alpha, n_seqs, runs):
        means = []
        for n in ns:
            taus = []
            for s in range(n_seqs):
                g = _pareto_cm(alpha, 3, n, seed=10_000 + 13 * n + s)
                t, _, _ = run_many(g, 0.5, runs, seed=20_000 + 7 * n + s)
                taus.append(t)
            means.append(float(np.concatenate(taus).mean()))
        return np.array(means)

    means3 = sweep(3.0, 6, 12)
    slope3 = float(np.polyfit(np.log(ns), np.log(means3), 1)[0])
    ok3 = abs(slope3 - 1.0) <= 0.15
    _report("CM scaling alpha=3", ok3, f"slope {slope3:.3f} (target 1.0 +- 0.15)")

    means15 = sweep(1.5, 10, 16)
    slope15 = float(np.polyfit(np.log(ns), np.log(means15), 1)[0])
    ok15 = abs(slope15 - 2.0 / 3.0) <= 0.2
    _report("CM scaling alpha=1.5", ok15, f"slope {slope15:.3f} (target 0.667 +- 0.2)")

    means07 = sweep(0.7, 6, 12)
    factor = float(means07[-1] / means07[0])
    ok07 = factor <= 2.0
    _report("CM scaling alpha=0.7", ok07, f"mean grows {factor:.2f}x over n=200..2000 (cap 2x)")

    assert ok3 and ok15 and ok07


def test_exact_oracle_equivalence():
    """50 random strongly connected digraphs (n <= 8): MC mean over 1e5 runs
    within 3 stderr of the exact absorbing-chain value in >= 47 cases."""
    master = np.random.default_rng(424242)
    graphs = []
    while len(graphs) < 50:
        n = int(master.integers(3, 9))
        degs = master.integers(1, 4, size=n)
        perm = np.random.default_rng(int(master.integers(2**32))).permutation(degs)
        seq = DegreeSequence.directed(degs, perm)
        g = build_dcm(seq, seed=int(master.integers(2**32)))
        if is_strongly_connected(g):
            graphs.append(g)
    hits = 0
    worst = 0.0
    for i, g in enumerate(graphs):
        exact = exact_consensus_mean(g, 0.5)
        taus, _, _ = run_many(g, 0.5, 100_000, seed=777 + i)
        stderr = taus.std(ddof=1) / math.sqrt(taus.size)
        z = abs(taus.mean() - exact) / stderr
        worst = max(worst, z)
        if z <= 3.0:
            hits += 1
    ok = hits >= 47
    _report("exact-oracle equivalence", ok, f"{hits}/50 within 3 stderr (worst z = {worst:.2f})")
    assert hits >= 47


def test_kingman_identities_and_density_match():
    """Kingman means, mean-field KS agreement at alpha=3, breakdown at 0.7."""
    full = kingman_sample(KingmanSpec(None, 2000), 100_000, seed=11)
    stderr = full.std(ddof=1) / math.sqrt(full.size)
    ok_full = abs(full.mean() - 2.0) <= 3.0 * stderr
    _report(
        "Kingman full-coalescence mean",
        ok_full,
        f"mean {full.mean():.4f} vs 2 (3 stderr = {3 * stderr:.4f}, truncation bias 2/k_max = 0.001)",
    )

    half = kingman_sample(KingmanSpec(0.5, 2000), 100_000, seed=50)
    stderr_h = half.std(ddof=1) / math.sqrt(half.size)
    ok_half = abs(half.mean() - 2.0 * math.log(2.0)) <= 3.0 * stderr_h
    _report(
        "Kingman consensus mean",
        ok_half,
        f"mean {half.mean():.4f} vs 2 ln 2 = {2 * math.log(2):.4f} (3 stderr = {3 * stderr_h:.4f})",
    )

    reference = kingman_sample(KingmanSpec(0.5, 2000), 20_000, seed=6000)

    def rescaled_consensus(alpha, graph_seed0, meet_seed0, vote_seed0):
        samples = []
        for k in range(5):
            g = _pareto_dcm(alpha, 2, 1000, seed=graph_seed0 + k)
            pi = stationary(g).pi
            est = meeting_time_mc(g, pi, 2000, seed=meet_seed0 + k)
            taus, _, _ = run_many(g, 0.5, 200, seed=vote_seed0 + k)
            samples.append(taus / est.mean)
        return np.concatenate(samples)

    good = rescaled_consensus(3.0, 3000, 4000, 5000)
    ks_good = stats.ks_2samp(good, reference).statistic
    ok_good = ks_good <= 0.08
    _report("Kingman density alpha=3", ok_good, f"KS {ks_good:.4f} (cap 0.08) over {good.size} samples")

    bad = rescaled_consensus(0.7, 7000, 8000, 9000)
    ks_bad = stats.ks_2samp(bad, reference).statistic
    ok_bad = ks_bad > 0.15
    _report(
        "Kingman breakdown alpha=0.7",
        ok_bad,
        f"KS {ks_bad:.4f} (must exceed 0.15; infinite-mean regime departs from mean field)",
    )

    assert ok_full and ok_half and ok_good and ok_bad


def test_meeting_time_closed_forms_and_conjecture():
    """Complete-graph and 2-cycle closed forms at 3 stderr; m_pi vs n theta/2
    within 15% on alpha=3 DCM (n=1000)."""
    details = []
    ok_all = True
    for n in (3, 5, 10):
        g = complete_graph(n)
        est = meeting_time_mc(g, stationary(g).pi, 10_000, seed=100 + n)
        target = (1.0 - 1.0 / n) * (n - 1.0) / 2.0
        ok = abs(est.mean - target) <= 3.0 * est.stderr
        ok_all &= ok
        details.append(f"K{n}: {est.mean:.3f} vs {target:.3f}")
    two = directed_cycle(2)
    est = meeting_time_mc(two, stationary(two).pi, 10_000, seed=7)
    ok_all &= abs(est.mean - 0.25) <= 3.0 * est.stderr
    details.append(f"2-cycle: {est.mean:.4f} vs 0.25")
    _report("meeting closed forms", ok_all, "; ".join(details))

    ratios = []
    for k in range(5):
        g = _pareto_dcm(3.0, 2, 1000, seed=111 + k)
        theory = theory_params(g.degree_sequence())
        est = meeting_time_mc(g, stationary(g).pi, 10_000, seed=222 + k)
        ratios.append(est.mean / (g.n * theory.theta / 2.0))
    ok_conj = all(abs(r - 1.0) <= 0.15 for r in ratios)
    _report(
        "meeting conjecture m_pi ~ n theta/2",
        ok_conj,
        "ratios " + " ".join(f"{r:.3f}" for r in ratios) + " (tol 15%)",
    )
    assert ok_all and ok_conj


def _wf_fits():
    """(chi_hat, chi_formula, m_pi, pi_delta) per alpha=3 DCM graph (n=1000)."""
    out = []
    for k in range(5):
        g = _pareto_dcm(3.0, 2, 1000, seed=111 + k)
        theory = theory_params(g.degree_sequence())
        dist = stationary(g)
        est = meeting_time_mc(g, dist.pi, 10_000, seed=222 + k)
        grid = np.linspace(0.0, 2.0 * H_HALF * theory.theta * g.n, 200)
        points = []
        for r in range(8):
            trace = run_voter(g, 0.5, seed=333 + 100 * k + r, pi=dist.pi, observe=grid)
            points.extend((m, s) for t, _, m, s in trace.observations if t > 0.0)
        out.append((fit_chi(points), theory.chi, est.mean, dist.pi_delta))
    return out


@pytest.mark.xfail(
    strict=True,
    reason="spec defect: the fitted slope of the weighted-discordance cloud is "
    "2x the closed-form chi (the source's chi formula presumes a meeting time "
    "normalized to one walker moving at a time); see the decisions ledger",
)
def test_chi_fit_matches_formula_as_stated():
    """Literal criterion: fitted chi within 10% of the closed form per graph."""
    fits = _wf_fits()
    ratios = [chi_hat / chi for chi_hat, chi, _, _ in fits]
    ok = all(abs(r - 1.0) <= 0.10 for r in ratios)
    _report(
        "chi fit vs formula (literal)",
        ok,
        "chi_hat/chi_formula " + " ".join(f"{r:.3f}" for r in ratios) + " (tol 10%)",
    )
    assert ok


def test_chi_fit_matches_formula_with_meeting_convention():
    """The verified form of the same criterion: the cloud slope equals twice
    the closed-form chi (equivalently 1/(m_pi pi_delta)); the closed form on
    regular d=3 is 0.8165; and 1/chi_hat tracks m_pi pi_delta within 20%."""
    fits = _wf_fits()
    ratios = [chi_hat / (2.0 * chi) for chi_hat, chi, _, _ in fits]
    ok_fit = all(abs(r - 1.0) <= 0.10 for r in ratios)
    _report(
        "chi fit vs formula (meeting convention)",
        ok_fit,
        "chi_hat/(2 chi_formula) " + " ".join(f"{r:.3f}" for r in ratios) + " (tol 10%)",
    )

    regular = theory_params(DegreeSequence.directed(np.full(8, 3), np.full(8, 3)))
    ok_reg = abs(regular.chi - 0.8165) <= 1e-4
    _report("chi formula regular d=3", ok_reg, f"chi = {regular.chi:.6f} vs 0.8165")

    inv = [(1.0 / chi_hat, m_pi * pi_delta) for chi_hat, _, m_pi, pi_delta in fits]
    ok_inv = all(abs(a / b - 1.0) <= 0.20 for a, b in inv)
    _report(
        "1/chi_hat vs m_pi pi_delta",
        ok_inv,
        " ".join(f"{a:.3f}~{b:.3f}" for a, b in inv) + " (tol 20%)",
    )
    assert ok_fit and ok_reg and ok_inv


def test_stationary_distribution_certificates():
    """Residual <= 1e-10 on every emitted pi; Eulerian closed form agrees with
    power iteration entrywise to 1e-10."""
    worst_residual = 0.0
    for k in range(5):
        g = _pareto_dcm(3.0, 2, 1000, seed=111 + k)
        worst_residual = max(worst_residual, stationary(g).residual)
    g_cm = _pareto_cm(3.0, 3, 800, seed=501)
    worst_residual = max(worst_residual, stationary(g_cm).residual)

    const = np.full(400, 3)
    g_reg = build_dcm(DegreeSequence.directed(const, const), seed=777)
    comps = strongly_connected_components(g_reg)
    if comps.largest_size < g_reg.n:
        g_reg, _ = comps.largest_subgraph(g_reg)
    closed = stationary(g_reg)
    power = stationary(g_reg, method="power")
    gap = float(np.abs(closed.pi - power.pi).max())
    worst_residual = max(worst_residual, closed.residual, power.residual)

    ok = worst_residual <= 1e-10 and gap <= 1e-10 and closed.method == "eulerian"
    _report(
        "stationary certificates",
        ok,
        f"worst residual {worst_residual:.2e} (cap 1e-10); Eulerian vs power gap {gap:.2e}",
    )
    assert ok
