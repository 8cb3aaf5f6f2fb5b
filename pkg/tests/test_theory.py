from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from voterlab.degrees import DegreeSequence, ParetoSpec, sample_pareto_bidegrees
from voterlab.theory import (
    chi_value,
    entropy_H,
    predict_consensus,
    sqrt_one_minus_ratio,
    theory_params,
    theta_leading_order,
    theta_value,
)


def test_entropy_hand_values():
    assert entropy_H(0.5) == pytest.approx(math.log(2.0), abs=1e-15)
    assert entropy_H(0.0) == 0.0
    assert entropy_H(1.0) == 0.0
    # frozen from exact evaluation: -(3/4)ln(3/4) - (1/4)ln(1/4)
    assert entropy_H(0.25) == pytest.approx(0.562335144619, abs=1e-10)


def test_entropy_rejects_outside_unit_interval():
    with pytest.raises(ValueError):
        entropy_H(-0.01)
    with pytest.raises(ValueError):
        entropy_H(1.01)


@settings(max_examples=200, deadline=None)
@given(u=st.floats(0.0, 1.0, allow_nan=False))
def test_entropy_bounds_and_symmetry(u):
    h = entropy_H(u)
    assert 0.0 <= h <= math.log(2.0) + 1e-15
    assert h == pytest.approx(entropy_H(1.0 - u), abs=1e-12)


def test_theory_params_regular_three():
    const = np.full(4, 3)
    params = theory_params(DegreeSequence.directed(const, const))
    assert params.delta == pytest.approx(3.0, abs=1e-15)
    assert params.beta == pytest.approx(3.0, abs=1e-15)
    assert params.rho == pytest.approx(1.0 / 3.0, abs=1e-15)
    assert params.gamma == pytest.approx(1.0, abs=1e-15)
    assert params.theta == pytest.approx(math.sqrt(1.5), rel=1e-12)
    assert params.chi == pytest.approx(math.sqrt(2.0 / 3.0), rel=1e-12)


def test_theory_params_mixed_pair():
    params = theory_params(DegreeSequence.directed([2, 4], [4, 2]))
    assert params.delta == pytest.approx(3.0)
    assert params.beta == pytest.approx(10.0 / 3.0)
    assert params.rho == pytest.approx(5.0 / 12.0)
    assert params.gamma == pytest.approx(1.5)
    # frozen from exact evaluation of the closed forms
    assert params.theta == pytest.approx(0.956165418374, abs=1e-9)
    assert params.chi == pytest.approx(0.811010092661, abs=1e-9)


@pytest.mark.parametrize("d", range(2, 51))
def test_eulerian_regular_identities(d):
    const = np.full(6, d)
    params = theory_params(DegreeSequence.directed(const, const))
    assert params.theta == pytest.approx(math.sqrt(d / (d - 1.0)), rel=1e-12)
    assert params.chi == pytest.approx(math.sqrt((d - 1.0) / d), rel=1e-12)
    assert params.theta * params.chi == pytest.approx(1.0, rel=1e-12)


def test_theory_params_rejects_bad_inputs():
    with pytest.raises(ValueError):
        theory_params(DegreeSequence.undirected([2, 2]))
    with pytest.raises(ValueError):
        theory_params(DegreeSequence.directed([1, 1], [0, 2]))  # zero out-degree
    with pytest.raises(ValueError):
        theory_params(DegreeSequence.directed([1, 1], [1, 1]))  # rho = 1


def test_series_and_direct_branch_agree():
    for rho in (2e-8, 1e-7, 1e-6, 1e-5, 9e-5):
        direct = sqrt_one_minus_ratio(rho, force_series=False)
        series = sqrt_one_minus_ratio(rho, force_series=True)
        assert abs(direct / series - 1.0) < 1e-10


def test_theta_uses_series_branch_consistently():
    # synthetic functionals with rho inside the cross-check window
    for rho in (2e-8, 5e-6, 9e-5):
        delta, beta, gamma = 4.0, 6.0, 1.2
        direct = delta / ((gamma - rho) / (1 - rho) * (1 - sqrt_one_minus_ratio(rho, False)) + beta - 1)
        series = delta / ((gamma - rho) / (1 - rho) * (1 - sqrt_one_minus_ratio(rho, True)) + beta - 1)
        assert abs(direct / series - 1.0) < 1e-10
        assert theta_value(delta, beta, rho, gamma) == pytest.approx(direct, rel=1e-12)


def test_chi_small_rho_limit():
    for delta in (2.0, 3.0, 10.0):
        assert chi_value(delta, 1e-10) == pytest.approx(1.0 - 1.0 / (2.0 * delta), rel=1e-9)


def _pareto_corpus():
    corpus = []
    seed = 0
    for alpha in (0.7, 1.0, 1.5, 2.0, 3.0):
        for x_min in (2, 3):
            for _ in range(100):
                seed += 1
                corpus.append((alpha, x_min, ParetoSpec(alpha, x_min, 600, seed=seed)))
    return corpus


def test_bounds_hold_on_pareto_corpus():
    for alpha, x_min, spec in _pareto_corpus():
        seq = sample_pareto_bidegrees(spec)
        params = theory_params(seq)
        d_max_out = float(seq.out_deg.max())
        # lower bounds from the truncated integral of 1/k against the density
        integral = (alpha / (alpha + 1.0)) * x_min**alpha * (
            x_min ** (-alpha - 1.0) - d_max_out ** (-alpha - 1.0)
        )
        c1 = x_min / params.delta * integral
        c2 = x_min * c1
        assert c1 <= params.rho <= 1.0 / x_min + 1e-12
        assert c2 <= params.gamma <= params.beta / x_min + 1e-12
        assert params.theta > 0.0
        assert 0.0 < params.chi <= 1.0


def test_leading_order_tracks_theta_on_corpus():
    for _, _, spec in _pareto_corpus():
        seq = sample_pareto_bidegrees(spec)
        params = theory_params(seq)
        order = theta_leading_order(seq)
        assert order == pytest.approx(params.delta / params.beta, rel=1e-12)
        assert 0.1 <= params.theta / order <= 10.0


def test_theta_leading_order_hand_values():
    const = np.full(5, 4)
    assert theta_leading_order(DegreeSequence.directed(const, const)) == pytest.approx(1.0)
    assert theta_leading_order(DegreeSequence.directed([2, 4], [4, 2])) == pytest.approx(0.9)
    # scale-degree-1 homogeneity: doubling degrees keeps the ratio at 0.9
    assert theta_leading_order(DegreeSequence.directed([4, 8], [8, 4])) == pytest.approx(0.9)
    assert theta_leading_order(DegreeSequence.undirected([2, 4, 4, 2])) == pytest.approx(0.9)


def test_predict_consensus():
    const = np.full(10, 3)
    params = theory_params(DegreeSequence.directed(const, const))
    pred = predict_consensus(params, 1000, 0.5)
    # frozen from exact evaluation: ln(2) sqrt(3/2) 1000
    assert pred.predicted_mean == pytest.approx(848.9284545, abs=1e-4)
    assert pred.predicted_meeting == pytest.approx(1000 * math.sqrt(1.5) / 2.0, rel=1e-12)
    assert pred.predicted_mean == pytest.approx(
        2.0 * entropy_H(0.5) * pred.predicted_meeting, rel=1e-12
    )
    assert predict_consensus(params, 1000, 0.0).predicted_mean == 0.0
    for u in (0.1, 0.37, 0.9):
        p = predict_consensus(params, 123, u)
        assert p.predicted_mean / p.predicted_meeting == pytest.approx(
            2.0 * entropy_H(u), rel=1e-12
        )
