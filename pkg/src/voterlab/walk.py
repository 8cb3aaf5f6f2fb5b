"""Random-walk analytics: stationary law, meeting/coalescence Monte Carlo,
Kingman reference draws, and mean-field mixing diagnostics."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.sparse as sp

from .graph import MultiDigraph, is_strongly_connected
from .kernels import coalescence_run, meeting_pair
from .rng import kernel_seeds, kernel_seeds_indexed, stream

L1_TOL = 1e-13
RESIDUAL_TOL = 1e-10
MAX_POWER_ITERS = 10**6
DEFAULT_STEP_CAP = 10**9
MIXING_N_CAP = 2000
MIXING_TV_THRESHOLD = 0.25


@dataclass(eq=False)
class StationaryDistribution:
    pi: np.ndarray
    pi_max: float
    pi_delta: float  # sum of squared masses
    residual: float  # L1 norm of pi P - pi
    method: str  # "degree", "eulerian", or "power"


@dataclass(eq=False)
class MeetingEstimate:
    samples: np.ndarray
    mean: float
    stderr: float
    n_pairs: int


@dataclass(frozen=True)
class KingmanSpec:
    """u in (0, 1] for a consensus-type sum; u = None marks full coalescence."""

    u: Optional[float]
    k_max: int = 2000

    def __post_init__(self) -> None:
        if self.u is not None and not 0.0 < self.u <= 1.0:
            raise ValueError(f"u must lie in (0, 1], got {self.u}")
        if self.k_max < 2:
            raise ValueError(f"k_max must be >= 2, got {self.k_max}")


@dataclass(eq=False)
class MeanFieldDiagnostics:
    q_max: float
    t_mix: Optional[float]  # continuous-time units (lazy steps / 2)
    t_mix_steps: Optional[int]  # lazy uniformized skeleton steps
    pi_max: float
    directed_condition: float  # (1 + q_max * t_mix) * pi_max
    ratio_mix_meet: Optional[float]
    pure_skeleton_mixes: bool


def transition_matrix(g: MultiDigraph) -> sp.csr_matrix:
    """Row-stochastic P(x, y) = A(x, y) / out_deg(x)."""
    out_deg = g.out_deg
    if (out_deg == 0).any():
        raise ValueError("every vertex needs out-degree >= 1")
    src = np.repeat(np.arange(g.n), out_deg)
    weights = 1.0 / out_deg[src]
    P = sp.csr_matrix((weights, (src, g.out_targets)), shape=(g.n, g.n))
    P.sum_duplicates()
    return P


def stationary(g: MultiDigraph, method: str = "auto") -> StationaryDistribution:
    """Stationary law of the walk: closed form where available, else power
    iteration on the lazy kernel (same fixed point, aperiodic for free).

    ``method`` is "auto" (closed form when the graph is undirected or
    Eulerian) or "power" (force the iteration). The residual certificate is
    always taken against the plain kernel.
    """
    if method not in ("auto", "power"):
        raise ValueError(f"method must be 'auto' or 'power', got {method!r}")
    if not is_strongly_connected(g):
        raise ValueError("graph is not strongly connected")
    P = transition_matrix(g)
    PT = P.T.tocsr()
    if method == "auto" and not g.directed:
        pi = g.out_deg / g.out_deg.sum()
        method = "degree"
    elif method == "auto" and np.array_equal(g.in_deg, g.out_deg):
        pi = g.in_deg / g.in_deg.sum()
        method = "eulerian"
    else:
        pi = np.full(g.n, 1.0 / g.n)
        method = "power"
        for _ in range(MAX_POWER_ITERS):
            new = 0.5 * (pi + PT @ pi)
            new /= new.sum()
            delta = np.abs(new - pi).sum()
            pi = new
            if delta < L1_TOL:
                break
        else:
            raise RuntimeError(f"power iteration did not reach {L1_TOL} in {MAX_POWER_ITERS} iterations")
    residual = float(np.abs(PT @ pi - pi).sum())
    if residual > RESIDUAL_TOL:
        raise RuntimeError(f"stationarity residual {residual} exceeds {RESIDUAL_TOL}")
    return StationaryDistribution(pi, float(pi.max()), float(pi @ pi), residual, method)


def meeting_time_mc(
    g: MultiDigraph,
    pi: np.ndarray,
    n_pairs: int,
    seed: int,
    max_events: int = DEFAULT_STEP_CAP,
) -> MeetingEstimate:
    """Meeting times of two independent stationary-started walks.

    Coinciding starts (mass pi x pi on the diagonal) contribute zeros, which
    belong in the estimate of the stationary meeting time.
    """
    rng = stream(seed, "meeting")
    xs = rng.choice(g.n, size=n_pairs, p=pi).astype(np.int64)
    ys = rng.choice(g.n, size=n_pairs, p=pi).astype(np.int64)
    base = kernel_seeds(rng)
    samples = np.zeros(n_pairs)
    for i in range(n_pairs):
        if xs[i] == ys[i]:
            continue
        s0, s1 = kernel_seeds_indexed(base, i)
        t = meeting_pair(g.out_offsets, g.out_targets, xs[i], ys[i], s0, s1, max_events)
        if t < 0:
            raise RuntimeError(f"pair {i} exceeded the {max_events}-event cap before meeting")
        samples[i] = t
    mean = float(samples.mean())
    stderr = float(samples.std(ddof=1) / math.sqrt(n_pairs)) if n_pairs > 1 else 0.0
    return MeetingEstimate(samples, mean, stderr, n_pairs)


def full_coalescence_mc(
    g: MultiDigraph,
    n_runs: int,
    seed: int,
    max_events: int = DEFAULT_STEP_CAP,
) -> np.ndarray:
    """Full-merge times of coalescing walks started one per vertex."""
    if not is_strongly_connected(g):
        raise ValueError("graph is not strongly connected")
    rng = stream(seed, "coalescence")
    base = kernel_seeds(rng)
    out = np.zeros(n_runs)
    for i in range(n_runs):
        if g.n == 1:
            continue
        s0, s1 = kernel_seeds_indexed(base, i)
        t = coalescence_run(g.out_offsets, g.out_targets, s0, s1, max_events)
        if t < 0:
            raise RuntimeError(f"run {i} exceeded the {max_events}-event cap before full merge")
        out[i] = t
    return out


def kingman_sample(spec: KingmanSpec, n_draws: int, seed: int) -> np.ndarray:
    """Draws of sum_{k > K} Z_k with Z_k ~ Exp(k (k-1) / 2), truncated at k_max.

    K is 1 for the full-coalescence marker, otherwise U A + (1 - U) B with
    U ~ Bern(u), A ~ Geom(1-u), B ~ Geom(u), geometrics supported on
    {1, 2, ...}: the unique convention under which the mean is 2 H(u).
    The truncation leaves out mass of mean 2 / k_max.
    """
    rng = stream(seed, "kingman")
    if spec.u is None:
        K = np.ones(n_draws, dtype=np.int64)
    elif spec.u == 1.0:
        return np.zeros(n_draws)
    else:
        first = rng.random(n_draws) < spec.u
        a = rng.geometric(1.0 - spec.u, size=n_draws)
        b = rng.geometric(spec.u, size=n_draws)
        K = np.where(first, a, b).astype(np.int64)
    k = np.arange(2, spec.k_max + 1)
    rates = k * (k - 1) / 2.0
    out = np.zeros(n_draws)
    chunk = max(1, int(4_000_000 // rates.size))
    for lo in range(0, n_draws, chunk):
        hi = min(lo + chunk, n_draws)
        exps = rng.exponential(size=(hi - lo, rates.size)) / rates
        suffix = np.cumsum(exps[:, ::-1], axis=1)[:, ::-1]
        # sum over k >= K+1 starts at column K-1 (column j holds k = j+2)
        start = np.clip(K[lo:hi] - 1, 0, rates.size)
        inside = start < rates.size
        rows = np.flatnonzero(inside)
        out[lo + rows] = suffix[rows, start[rows]]
    return out


def _max_tv(powers: np.ndarray, pi: np.ndarray) -> float:
    return 0.5 * float(np.abs(powers - pi[None, :]).sum(axis=1).max())


def mixing_diagnostics(
    g: MultiDigraph,
    pi: np.ndarray,
    m_pi: Optional[float] = None,
    n_cap: int = MIXING_N_CAP,
) -> MeanFieldDiagnostics:
    """Desk-scale mixing-time estimate on the lazy uniformized skeleton.

    t_mix is the smallest lazy-step count with worst-start total variation
    <= 1/4, found by repeated squaring plus a binary refinement; it is
    reported both in steps and in continuous-time units (steps / 2, the
    lazy chain making a real jump every other step on average). The pure
    skeleton is probed at power-of-two horizons only, which is enough to
    flag periodic chains that never mix.
    """
    if g.n > n_cap:
        raise ValueError(f"mixing diagnostics are capped at n = {n_cap} (got {g.n})")
    P = transition_matrix(g).toarray()
    loops = np.diag(P)
    q_max = float((1.0 - loops).max())

    lazy = 0.5 * (np.eye(g.n) + P)
    # bracket: square until TV drops, remembering the last power above 1/4
    powers = [lazy]
    steps = 1
    while _max_tv(powers[-1], pi) > MIXING_TV_THRESHOLD and steps < 2**24:
        powers.append(powers[-1] @ powers[-1])
        steps *= 2
    t_mix_steps: Optional[int]
    if _max_tv(powers[-1], pi) > MIXING_TV_THRESHOLD:
        t_mix_steps = None
    elif len(powers) == 1:
        t_mix_steps = 1
    else:
        lo, hi = steps // 2, steps  # TV(lo) > 1/4 >= TV(hi)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            M = None
            bits = mid
            j = 0
            while bits:
                if bits & 1:
                    M = powers[j] if M is None else M @ powers[j]
                bits >>= 1
                j += 1
            if _max_tv(M, pi) <= MIXING_TV_THRESHOLD:
                hi = mid
            else:
                lo = mid
        t_mix_steps = hi

    pure_mixes = False
    M = P.copy()
    for _ in range(min(20, len(powers) + 3)):
        if _max_tv(M, pi) <= MIXING_TV_THRESHOLD:
            pure_mixes = True
            break
        M = M @ M

    pi_max = float(pi.max())
    t_mix = None if t_mix_steps is None else t_mix_steps / 2.0
    condition = math.inf if t_mix is None else (1.0 + q_max * t_mix) * pi_max
    ratio = None
    if t_mix is not None and m_pi is not None and m_pi > 0:
        ratio = t_mix / m_pi
    return MeanFieldDiagnostics(
        q_max, t_mix, t_mix_steps, pi_max, condition, ratio, pure_mixes
    )
