from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import stats

from conftest import complete_graph, complete_graph_with_loops, directed_cycle
from voterlab.degrees import ParetoSpec, sample_pareto_bidegrees
from voterlab.graph import MultiDigraph, build_dcm, strongly_connected_components
from voterlab.theory import entropy_H
from voterlab.walk import (
    KingmanSpec,
    full_coalescence_mc,
    kingman_sample,
    meeting_time_mc,
    mixing_diagnostics,
    stationary,
)


def _dcm_on_largest_scc(alpha, x_min, n, seed):
    seq = sample_pareto_bidegrees(ParetoSpec(alpha, x_min, n, seed=seed))
    g = build_dcm(seq, seed=seed)
    comps = strongly_connected_components(g)
    if comps.largest_size < g.n:
        g, _ = comps.largest_subgraph(g)
    return g


def test_stationary_uniform_on_directed_cycle():
    dist = stationary(directed_cycle(7))
    assert np.allclose(dist.pi, 1.0 / 7.0, atol=1e-14)
    assert dist.residual <= 1e-10
    assert dist.pi_delta == pytest.approx(1.0 / 7.0, rel=1e-12)
    assert 1.0 / 7.0 <= dist.pi_delta <= dist.pi_max + 1e-15


def test_stationary_two_state_balance():
    # out-stubs: 0 -> [1]; 1 -> [0, 1]; balance gives (1/3, 2/3)
    g = MultiDigraph.from_edges(2, [(0, 1), (1, 0), (1, 1)], True)
    dist = stationary(g, method="power")
    assert dist.pi == pytest.approx([1.0 / 3.0, 2.0 / 3.0], abs=1e-12)
    assert dist.residual <= 1e-10


def test_stationary_eulerian_closed_form_matches_power_iteration():
    g = MultiDigraph.from_edges(
        3, [(0, 1), (0, 1), (1, 0), (1, 0), (1, 2), (1, 2), (2, 1), (2, 1)], True
    )
    # in_deg == out_deg == (2, 4, 2) hence pi = (1/4, 1/2, 1/4)
    assert np.array_equal(g.in_deg, g.out_deg)
    closed = stationary(g)
    assert closed.method == "eulerian"
    assert closed.pi == pytest.approx([0.25, 0.5, 0.25], abs=1e-14)
    power = stationary(g, method="power")
    assert np.abs(closed.pi - power.pi).max() <= 1e-10
    assert power.residual <= 1e-10


def test_stationary_on_pareto_dcm_certifies_residual():
    g = _dcm_on_largest_scc(3.0, 2, 400, seed=13)
    dist = stationary(g)
    assert dist.method == "power"
    assert dist.residual <= 1e-10
    assert dist.pi.sum() == pytest.approx(1.0, abs=1e-12)
    assert (dist.pi > 0).all()


def test_stationary_rejects_disconnected():
    g = MultiDigraph.from_edges(2, [(0, 0), (1, 1)], True)
    with pytest.raises(ValueError):
        stationary(g)


def test_undirected_stationary_is_degree_proportional():
    g = MultiDigraph.from_edges(3, [(0, 1), (1, 2), (1, 2)], False)
    dist = stationary(g)
    assert dist.method == "degree"
    assert dist.pi == pytest.approx([1 / 6, 3 / 6, 2 / 6], abs=1e-14)


@pytest.mark.parametrize("n", [3, 5, 10])
def test_meeting_closed_form_complete_graph(n):
    g = complete_graph(n)
    dist = stationary(g)
    est = meeting_time_mc(g, dist.pi, 10_000, seed=100 + n)
    target = (1.0 - 1.0 / n) * (n - 1.0) / 2.0
    assert abs(est.mean - target) <= 3.0 * est.stderr


def test_meeting_closed_form_directed_two_cycle():
    g = directed_cycle(2)
    dist = stationary(g)
    est = meeting_time_mc(g, dist.pi, 10_000, seed=7)
    assert abs(est.mean - 0.25) <= 3.0 * est.stderr
    # co-located draws contribute exact zeros
    assert (est.samples == 0.0).mean() == pytest.approx(0.5, abs=0.02)


def test_meeting_event_cap_diagnostic():
    g = directed_cycle(6)
    dist = stationary(g)
    with pytest.raises(RuntimeError, match="event cap"):
        meeting_time_mc(g, dist.pi, 200, seed=1, max_events=1)


def test_full_coalescence_two_cycle_and_complete():
    g = directed_cycle(2)
    samples = full_coalescence_mc(g, 20_000, seed=3)
    stderr = samples.std(ddof=1) / math.sqrt(samples.size)
    assert abs(samples.mean() - 0.5) <= 3.0 * stderr  # Exp(2) mean

    g3 = complete_graph(3)
    samples = full_coalescence_mc(g3, 20_000, seed=4)
    stderr = samples.std(ddof=1) / math.sqrt(samples.size)
    assert abs(samples.mean() - 4.0 / 3.0) <= 3.0 * stderr  # 1/3 + 1

    single = MultiDigraph.from_edges(1, [(0, 0)], True)
    assert full_coalescence_mc(single, 5, seed=5).tolist() == [0.0] * 5


def test_kingman_full_coalescence_mean():
    spec = KingmanSpec(None, k_max=2000)
    draws = kingman_sample(spec, 100_000, seed=11)
    stderr = draws.std(ddof=1) / math.sqrt(draws.size)
    assert abs(draws.mean() - (2.0 - 2.0 / 2000)) <= 3.0 * stderr


@pytest.mark.parametrize("u", [0.1, 0.25, 0.5])
def test_kingman_mean_identity(u):
    spec = KingmanSpec(u, k_max=2000)
    draws = kingman_sample(spec, 100_000, seed=int(u * 100))
    stderr = draws.std(ddof=1) / math.sqrt(draws.size)
    target = 2.0 * entropy_H(u) - 2.0 / spec.k_max  # exact truncated mean
    assert abs(draws.mean() - target) <= 3.0 * stderr


def test_kingman_truncation_control():
    a = kingman_sample(KingmanSpec(0.5, k_max=200), 100_000, seed=21)
    b = kingman_sample(KingmanSpec(0.5, k_max=2000), 100_000, seed=22)
    noise = 3.0 * math.sqrt(
        a.var(ddof=1) / a.size + b.var(ddof=1) / b.size
    )
    assert abs(a.mean() - b.mean()) <= 2.0 / 200 + noise


def test_kingman_edge_cases():
    assert (kingman_sample(KingmanSpec(1.0, 2000), 100, seed=1) == 0.0).all()
    with pytest.raises(ValueError):
        KingmanSpec(0.5, k_max=1)
    with pytest.raises(ValueError):
        KingmanSpec(0.0, k_max=10)
    draws = kingman_sample(KingmanSpec(0.999, 50), 2000, seed=2)
    assert (draws >= 0).all()


def test_meeting_law_invariant_under_relabeling():
    g = _dcm_on_largest_scc(2.0, 2, 60, seed=31)
    perm = np.random.default_rng(0).permutation(g.n)
    h = g.permuted(perm)
    est_g = meeting_time_mc(g, stationary(g).pi, 10_000, seed=41)
    est_h = meeting_time_mc(h, stationary(h).pi, 10_000, seed=42)
    ks = stats.ks_2samp(est_g.samples, est_h.samples).statistic
    assert ks <= 0.02


def test_mixing_fast_on_uniform_complete():
    g = complete_graph_with_loops(8)
    dist = stationary(g)
    diag = mixing_diagnostics(g, dist.pi, m_pi=4.0)
    assert diag.q_max == pytest.approx(1.0 - 1.0 / 8.0, rel=1e-12)
    assert diag.t_mix_steps <= 4
    assert diag.pure_skeleton_mixes
    assert diag.ratio_mix_meet == pytest.approx(diag.t_mix / 4.0)


def test_mixing_two_cycle_periodicity():
    g = directed_cycle(2)
    diag = mixing_diagnostics(g, stationary(g).pi)
    assert not diag.pure_skeleton_mixes  # period-2 skeleton never mixes
    assert diag.t_mix_steps is not None  # the lazy version does
    assert diag.q_max == 1.0
    assert diag.directed_condition == pytest.approx((1.0 + diag.t_mix) * 0.5)


def test_mixing_q_max_one_without_self_loops():
    diag = mixing_diagnostics(directed_cycle(5), stationary(directed_cycle(5)).pi)
    assert diag.q_max == 1.0


def test_mixing_refuses_large_graphs():
    g = directed_cycle(30)
    with pytest.raises(ValueError):
        mixing_diagnostics(g, stationary(g).pi, n_cap=10)
