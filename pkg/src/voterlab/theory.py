"""Closed-form consensus-time quantities derived from a degree sequence.

All vertex sums that mix heavy-tailed magnitudes use exact integer arithmetic
or ``math.fsum``: the squared-degree sums reach n^(2/alpha) and naive float
accumulation loses digits there.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .degrees import DIRECTED, DegreeSequence, empirical_moment

# below this, (1 - sqrt(1 - rho))/rho switches to its series to avoid cancellation
_SERIES_RHO = 1e-8


@dataclass(frozen=True)
class TheoryParams:
    delta: float  # mean degree m/n
    beta: float  # second in-degree moment over m
    rho: float  # mean of in/out degree ratios over m
    gamma: float  # mean of squared-in over out ratios over m
    theta: float  # consensus-time prefactor
    chi: float  # effective diffusion parameter


@dataclass(frozen=True)
class ConsensusPrediction:
    u: float
    entropy: float
    predicted_mean: float  # H(u) * theta * n
    predicted_meeting: float  # n * theta / 2


def entropy_H(u: float) -> float:
    """Bernoulli entropy -(1-u)log(1-u) - u log(u) in nats, 0 at the endpoints."""
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"u must lie in [0, 1], got {u}")
    if u in (0.0, 1.0):
        return 0.0
    return -(1.0 - u) * math.log1p(-u) - u * math.log(u)


def sqrt_one_minus_ratio(rho: float, force_series: bool | None = None) -> float:
    """(1 - sqrt(1 - rho)) / rho, series-evaluated for tiny rho.

    The direct branch uses the conjugate form 1/(1 + sqrt(1 - rho)), which is
    the same quantity without the catastrophic cancellation of the literal
    numerator at small rho.
    """
    if force_series or (force_series is None and rho < _SERIES_RHO):
        return 0.5 + rho / 8.0 + rho * rho / 16.0
    return 1.0 / (1.0 + math.sqrt(1.0 - rho))


def theta_value(delta: float, beta: float, rho: float, gamma: float) -> float:
    """Consensus prefactor from the four degree functionals."""
    if not 0.0 < rho < 1.0:
        raise ValueError(f"rho must lie in (0, 1), got {rho}")
    bracket = 1.0 - sqrt_one_minus_ratio(rho)
    denom = (gamma - rho) / (1.0 - rho) * bracket + beta - 1.0
    return delta / denom


def chi_value(delta: float, rho: float) -> float:
    """Effective diffusion parameter 1 - (1 - sqrt(1 - rho)) / (delta * rho)."""
    if not 0.0 < rho < 1.0:
        raise ValueError(f"rho must lie in (0, 1), got {rho}")
    return 1.0 - sqrt_one_minus_ratio(rho) / delta


def theory_params(degrees: DegreeSequence) -> TheoryParams:
    """delta, beta, rho, gamma, theta, chi for a directed degree sequence."""
    if degrees.kind != DIRECTED:
        raise ValueError("theory_params needs a directed degree sequence")
    din = degrees.in_deg.tolist()
    dout = degrees.out_deg.tolist()
    if min(dout) < 1:
        raise ValueError("all out-degrees must be >= 1")
    n = len(din)
    m = sum(din)
    delta = m / n
    beta = sum(d * d for d in din) / m
    rho = math.fsum(a / b for a, b in zip(din, dout)) / m
    gamma = math.fsum(a * a / b for a, b in zip(din, dout)) / m
    if rho >= 1.0:
        raise ValueError(f"rho must be < 1, got {rho}")
    return TheoryParams(delta, beta, rho, gamma, theta_value(delta, beta, rho, gamma), chi_value(delta, rho))


def predict_consensus(params: TheoryParams, n: int, u: float) -> ConsensusPrediction:
    h = entropy_H(u)
    return ConsensusPrediction(u, h, h * params.theta * n, n * params.theta / 2.0)


def theta_leading_order(degrees: DegreeSequence) -> float:
    """Leading order of theta: squared first over second empirical in-moment.

    Defined for both kinds; for undirected sequences this is the only
    closed-form factor available (the exact prefactor is open there).
    """
    m1 = empirical_moment(degrees.in_deg, 1)
    m2 = empirical_moment(degrees.in_deg, 2)
    if m2 == 0:
        raise ValueError("second moment is zero")
    return m1 * m1 / m2
