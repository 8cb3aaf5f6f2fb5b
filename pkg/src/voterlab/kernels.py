"""Jitted event loops shared by the voter and walk simulators.

All kernels consume the stub-level CSR adjacency and an explicit
xorshift128+ state, so results are reproducible independently of numba's
global RNG. Holding times are exact exponentials; the unobserved voter
kernel returns only the event count, whose conditional law fixes the
consensus time as Gamma(events)/n (constant total rate n, jump chain
independent of the iid holding times).
"""
from __future__ import annotations

import numpy as np
from numba import njit

U64 = np.uint64
_INV53 = 1.0 / 9007199254740992.0  # 2^-53


@njit(inline="always", cache=True)
def _u01(state):
    # xorshift128+ (Vigna); high 53 bits -> [0, 1)
    s1 = state[0]
    s0 = state[1]
    result = s0 + s1
    state[0] = s0
    s1 ^= s1 << U64(23)
    state[1] = s1 ^ s0 ^ (s1 >> U64(18)) ^ (s0 >> U64(5))
    return float(result >> U64(11)) * _INV53


@njit(cache=True)
def voter_events(out_off, out_tgt, opinions, ones, s0, s1, max_events):
    """Run to consensus; returns (final_opinion, events). events < 0 on cap."""
    n = out_off.shape[0] - 1
    state = np.empty(2, dtype=np.uint64)
    state[0] = s0
    state[1] = s1
    events = 0
    while 0 < ones < n:
        if events >= max_events:
            return -1, -events
        x = int(_u01(state) * n)
        lo = out_off[x]
        y = out_tgt[lo + int(_u01(state) * (out_off[x + 1] - lo))]
        oy = opinions[y]
        if opinions[x] != oy:
            opinions[x] = oy
            ones += 1 if oy == 1 else -1
        events += 1
    return int(opinions[0]), events


@njit(cache=True)
def voter_observed(out_off, out_tgt, in_off, in_src, opinions, ones, pi, grid,
                   s0, s1, max_events):
    """Voter run with incremental discordance bookkeeping and grid sampling.

    Returns (t_cons, final_opinion, events, obs_density, obs_weighted,
    obs_discordance, discordant_out, n_recorded). t_cons < 0 signals the
    event cap. Grid entries past consensus are left for the caller to fill
    with the absorbed state.
    """
    n = out_off.shape[0] - 1
    state = np.empty(2, dtype=np.uint64)
    state[0] = s0
    state[1] = s1

    d_out = np.empty(n, dtype=np.int64)
    disc = np.zeros(n, dtype=np.int64)
    for x in range(n):
        d_out[x] = out_off[x + 1] - out_off[x]
        ox = opinions[x]
        c = 0
        for k in range(out_off[x], out_off[x + 1]):
            if opinions[out_tgt[k]] != ox:
                c += 1
        disc[x] = c

    pi_delta = 0.0
    for x in range(n):
        pi_delta += pi[x] * pi[x]

    n_grid = grid.shape[0]
    obs_density = np.zeros(n_grid)
    obs_weighted = np.zeros(n_grid)
    obs_disc = np.zeros(n_grid)
    gi = 0

    t = 0.0
    events = 0
    while 0 < ones < n:
        if events >= max_events:
            return -1.0, -1, events, obs_density, obs_weighted, obs_disc, disc, gi
        dt = -np.log(1.0 - _u01(state)) / n
        t_next = t + dt
        while gi < n_grid and grid[gi] < t_next:
            obs_density[gi] = ones / n
            mw = 0.0
            sw = 0.0
            for x in range(n):
                if opinions[x] == 1:
                    mw += pi[x]
                sw += pi[x] * pi[x] / pi_delta * disc[x] / d_out[x]
            obs_weighted[gi] = mw
            obs_disc[gi] = sw
            gi += 1
        t = t_next

        x = int(_u01(state) * n)
        lo = out_off[x]
        y = out_tgt[lo + int(_u01(state) * (out_off[x + 1] - lo))]
        oy = opinions[y]
        ox = opinions[x]
        if ox != oy:
            opinions[x] = oy
            ones += 1 if oy == 1 else -1
            # rescan x's out-stubs, then shift each in-neighbor by the flip
            c = 0
            for k in range(lo, out_off[x + 1]):
                if opinions[out_tgt[k]] != oy:
                    c += 1
            disc[x] = c
            for k in range(in_off[x], in_off[x + 1]):
                w = in_src[k]
                if w != x:
                    if opinions[w] == ox:
                        disc[w] += 1
                    else:
                        disc[w] -= 1
        events += 1
    return t, int(opinions[0]), events, obs_density, obs_weighted, obs_disc, disc, gi


@njit(cache=True)
def meeting_pair(out_off, out_tgt, x, y, s0, s1, max_events):
    """Meeting time of two independent rate-1 walks; -1.0 on event cap."""
    state = np.empty(2, dtype=np.uint64)
    state[0] = s0
    state[1] = s1
    t = 0.0
    events = 0
    while x != y:
        if events >= max_events:
            return -1.0
        t += -np.log(1.0 - _u01(state)) / 2.0
        if _u01(state) < 0.5:
            lo = out_off[x]
            x = out_tgt[lo + int(_u01(state) * (out_off[x + 1] - lo))]
        else:
            lo = out_off[y]
            y = out_tgt[lo + int(_u01(state) * (out_off[y + 1] - lo))]
        events += 1
    return t


@njit(cache=True)
def coalescence_run(out_off, out_tgt, s0, s1, max_events):
    """Full-merge time of coalescing walks started one per vertex; -1.0 on cap."""
    n = out_off.shape[0] - 1
    state = np.empty(2, dtype=np.uint64)
    state[0] = s0
    state[1] = s1
    pos = np.arange(n, dtype=np.int64)
    occupant = np.arange(n, dtype=np.int64)  # vertex -> walker slot, -1 empty
    k = n
    t = 0.0
    events = 0
    while k > 1:
        if events >= max_events:
            return -1.0
        t += -np.log(1.0 - _u01(state)) / k
        i = int(_u01(state) * k)
        v = pos[i]
        lo = out_off[v]
        y = out_tgt[lo + int(_u01(state) * (out_off[v + 1] - lo))]
        occupant[v] = -1
        if occupant[y] >= 0:
            # lands on an occupied vertex: walkers merge
            k -= 1
            if i != k:
                pos[i] = pos[k]
                occupant[pos[i]] = i
        else:
            pos[i] = y
            occupant[y] = i
        events += 1
    return t
