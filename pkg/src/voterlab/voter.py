"""Continuous-time voter dynamics, diffusion observables, and a small-n
exact oracle for the expected consensus time."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve

from .graph import MultiDigraph
from .kernels import voter_events, voter_observed
from .rng import kernel_seeds, kernel_seeds_indexed, stream

DEFAULT_MAX_EVENTS = 10**12
EXACT_N_CAP = 12
FIT_M_WINDOW = (0.05, 0.95)
FIT_MIN_POINTS = 10


@dataclass(eq=False)
class OpinionState:
    """Binary opinions plus the discordant-out-stub counts they induce."""

    opinions: np.ndarray
    ones_count: int
    discordant_out: np.ndarray

    @property
    def total_discordant(self) -> int:
        return int(self.discordant_out.sum())

    @classmethod
    def from_opinions(cls, g: MultiDigraph, opinions: np.ndarray) -> "OpinionState":
        opinions = np.asarray(opinions, dtype=np.uint8)
        disagree = opinions[g.out_targets] != opinions[np.repeat(np.arange(g.n), g.out_deg)]
        disc = np.zeros(g.n, dtype=np.int64)
        np.add.at(disc, np.repeat(np.arange(g.n), g.out_deg), disagree)
        return cls(opinions, int(opinions.sum()), disc)


@dataclass(eq=False)
class SimTrace:
    consensus_time: float
    final_opinion: int
    n_events: int
    observations: Optional[list[tuple[float, float, float, float]]] = None
    # each observation is (t, density, weighted_density, weighted_discordance)


def _validate_graph(g: MultiDigraph) -> None:
    if (g.out_deg == 0).any():
        raise ValueError("every vertex needs out-degree >= 1")


def _init_opinions(rng: np.random.Generator, n: int, u: float) -> np.ndarray:
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"u must lie in [0, 1], got {u}")
    return (rng.random(n) < u).astype(np.uint8)


def run_voter(
    g: MultiDigraph,
    u: float,
    seed: int,
    pi: Optional[np.ndarray] = None,
    observe: Optional[np.ndarray] = None,
    max_events: int = DEFAULT_MAX_EVENTS,
    _return_state: bool = False,
):
    """One voter run from a Bernoulli(u) start; returns a SimTrace.

    With an observation grid (which requires ``pi``), the run records the
    opinion density, the pi-weighted density, and the normalized weighted
    discordance at each grid time; values after consensus are the absorbed
    ones. Without a grid the run uses the fast event-count path and draws
    the elapsed time from its exact conditional law.
    """
    _validate_graph(g)
    rng = stream(seed, "voter")
    opinions = _init_opinions(rng, g.n, u)
    ones = int(opinions.sum())
    s0, s1 = kernel_seeds(rng)

    if observe is None:
        if ones in (0, g.n):
            trace = SimTrace(0.0, int(opinions[0]), 0)
            return (trace, OpinionState.from_opinions(g, opinions)) if _return_state else trace
        final, events = voter_events(
            g.out_offsets, g.out_targets, opinions, ones, s0, s1, max_events
        )
        if final < 0:
            raise RuntimeError(f"run exceeded the {max_events}-event cap before consensus")
        t = float(rng.gamma(events) / g.n)
        trace = SimTrace(t, final, events)
        return (trace, OpinionState.from_opinions(g, opinions)) if _return_state else trace

    if pi is None:
        raise ValueError("an observation grid requires the stationary distribution pi")
    grid = np.asarray(observe, dtype=np.float64)
    if grid.ndim != 1 or (np.diff(grid) < 0).any() or (grid.size and grid[0] < 0):
        raise ValueError("observation grid must be non-negative and sorted")
    t, final, events, obs_o, obs_m, obs_s, disc, recorded = voter_observed(
        g.out_offsets, g.out_targets, g.in_offsets, g.in_sources,
        opinions, ones, np.asarray(pi, dtype=np.float64), grid, s0, s1, max_events,
    )
    if t < 0:
        raise RuntimeError(f"run exceeded the {max_events}-event cap before consensus")
    final_ones = int(opinions.sum())
    for gi in range(recorded, grid.size):
        obs_o[gi] = final_ones / g.n
        obs_m[gi] = 1.0 if final == 1 else 0.0
        obs_s[gi] = 0.0
    observations = [
        (float(grid[i]), float(obs_o[i]), float(obs_m[i]), float(obs_s[i]))
        for i in range(grid.size)
    ]
    trace = SimTrace(float(t), int(final), int(events), observations)
    if _return_state:
        return trace, OpinionState(opinions, final_ones, disc)
    return trace


def run_many(
    g: MultiDigraph,
    u: float,
    runs: int,
    seed: int,
    max_events: int = DEFAULT_MAX_EVENTS,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Batch of independent fast runs; returns (times, final_opinions, events)."""
    _validate_graph(g)
    rng = stream(seed, "voter")
    base = kernel_seeds(rng)
    times = np.zeros(runs)
    finals = np.zeros(runs, dtype=np.int64)
    events = np.zeros(runs, dtype=np.int64)
    for r in range(runs):
        opinions = _init_opinions(rng, g.n, u)
        ones = int(opinions.sum())
        if ones in (0, g.n):
            finals[r] = opinions[0]
            continue
        s0, s1 = kernel_seeds_indexed(base, r)
        final, ev = voter_events(g.out_offsets, g.out_targets, opinions, ones, s0, s1, max_events)
        if final < 0:
            raise RuntimeError(f"run {r} exceeded the {max_events}-event cap before consensus")
        finals[r] = final
        events[r] = ev
    positive = events > 0
    times[positive] = rng.gamma(events[positive]) / g.n
    return times, finals, events


def exact_consensus_mean(g: MultiDigraph, u: float) -> float:
    """Expected consensus time from the 2^n-state absorbing chain.

    Solves the first-step linear system for the mean absorption time of
    every configuration and averages under the product-Bernoulli(u) law.
    """
    _validate_graph(g)
    if g.n > EXACT_N_CAP:
        raise ValueError(f"exact oracle is capped at n = {EXACT_N_CAP} (got {g.n})")
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"u must lie in [0, 1], got {u}")
    n = g.n
    n_states = 1 << n
    full = n_states - 1
    out_deg = g.out_deg
    # flip rate of vertex x in state s: discordant out-stubs / out-degree
    stub_src = np.repeat(np.arange(n), out_deg)
    stub_tgt = g.out_targets

    rows, cols, vals = [], [], []
    rhs = np.zeros(n_states)
    for s in range(n_states):
        if s == 0 or s == full:
            rows.append(s)
            cols.append(s)
            vals.append(1.0)
            continue
        bits = (s >> stub_src) & 1
        tbits = (s >> stub_tgt) & 1
        disc = np.bincount(stub_src, weights=(bits != tbits), minlength=n)
        rates = disc / out_deg
        total = rates.sum()
        rows.append(s)
        cols.append(s)
        vals.append(total)
        rhs[s] = 1.0
        for x in np.flatnonzero(rates):
            rows.append(s)
            cols.append(s ^ (1 << x))
            vals.append(-rates[x])
    A = sp.csr_matrix((vals, (rows, cols)), shape=(n_states, n_states))
    h = spsolve(A, rhs)

    pops = np.array([bin(s).count("1") for s in range(n_states)])
    if u in (0.0, 1.0):
        return 0.0
    log_w = pops * math.log(u) + (n - pops) * math.log(1.0 - u)
    return float(np.exp(log_w) @ h)


def fit_chi(observations: Sequence[tuple[float, float]]) -> float:
    """Least-squares slope of weighted discordance against M (1 - M).

    ``observations`` are (M, S) pairs; only points with M inside the fit
    window participate. With points exactly on chi * x (1 - x) this returns
    chi; an all-zero S gives 0.
    """
    pts = [(m, s) for m, s in observations if FIT_M_WINDOW[0] < m < FIT_M_WINDOW[1]]
    if len(pts) < FIT_MIN_POINTS:
        raise ValueError(
            f"need at least {FIT_MIN_POINTS} observations with M in {FIT_M_WINDOW}, got {len(pts)}"
        )
    m = np.array([p[0] for p in pts])
    s = np.array([p[1] for p in pts])
    w = m * (1.0 - m)
    return float((s @ w) / (w @ w))
