"""Compiled inner loop of the ant simulation.

The step loop is inherently sequential (every ant action mutates the shared
grid), so the only way to hit interactive speeds at 10^6 steps is a compiled
kernel.  Everything here mirrors the reference functions in ``swarm.py``
exactly: the same xoshiro256++ stream, the same neighbour scan order, the
same arithmetic written in the same order.  ``tests/test_swarm.py`` pins the
two paths to bit-identical trajectories.

Scalar rules are defined here once as jitted functions and re-exported
through ``swarm.py``, so the interpreted and compiled paths cannot round
differently.  Squares are written as products rather than ``** 2`` for the
same reason.

Neighbour directions are indexed 0..7 clockwise from north:

    0=N, 1=NE, 2=E, 3=SE, 4=S, 5=SW, 6=W, 7=NW

Per-ant draw order within a step: one uniform per neighbouring item during a
pick/drop vote (directions scanned 0..7), then one uniform for the move (only
when at least one neighbour cell is free of other ants).
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

DR = np.array([-1, -1, 0, 1, 1, 1, 0, -1], dtype=np.int64)
DC = np.array([0, 1, 1, 1, 0, -1, -1, -1], dtype=np.int64)

_U11 = np.uint64(11)
_U17 = np.uint64(17)
_U23 = np.uint64(23)
_U41 = np.uint64(41)
_U45 = np.uint64(45)
_U19 = np.uint64(19)
_INV_2_53 = 2.0**-53


@njit(cache=True, inline="always")
def xoshiro_next(s):
    """One xoshiro256++ step on a uint64[4] state array."""
    s0 = s[0]
    s1 = s[1]
    s2 = s[2]
    s3 = s[3]
    t0 = s0 + s3
    result = ((t0 << _U23) | (t0 >> _U41)) + s0
    t = s1 << _U17
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s3 = (s3 << _U45) | (s3 >> _U19)
    s[0] = s0
    s[1] = s1
    s[2] = s2
    s[3] = s3
    return result


@njit(cache=True, inline="always")
def uniform01(s):
    """Double in [0, 1): top 53 bits of one generator step."""
    return float(xoshiro_next(s) >> _U11) * _INV_2_53


@njit(cache=True)
def ipow(x, n):
    """x**n by repeated multiplication (fixed rounding order)."""
    acc = 1.0
    for _ in range(n):
        acc *= x
    return acc


@njit(cache=True)
def weight_scalar(sigma, beta, delta):
    """Pheromone attraction W(sigma) = (1 + sigma/(1 + delta*sigma))**beta."""
    return (1.0 + sigma / (1.0 + delta * sigma)) ** beta


@njit(cache=True)
def threshold_scalar(s, theta, n):
    """Sigmoid response s**n / (s**n + theta**n)."""
    sn = ipow(s, n)
    return sn / (sn + ipow(theta, n))


@njit(cache=True)
def pick_threshold_scalar(d, k2):
    r = d / (k2 + d)
    return r * r


@njit(cache=True)
def drop_threshold_scalar(d, k1):
    r = k1 / (k1 + d)
    return r * r


@njit(cache=True, inline="always")
def feature_dist(feats, i, j):
    """Root mean squared component difference; in [0,1] for unit-box features."""
    nf = feats.shape[1]
    acc = 0.0
    for k in range(nf):
        dv = feats[i, k] - feats[j, k]
        acc += dv * dv
    return math.sqrt(acc / nf)


@njit(cache=True, inline="always")
def count_items_around(item_grid, r, c, rows, cols):
    n = 0
    for d in range(8):
        nr = r + DR[d]
        if nr < 0:
            nr += rows
        elif nr >= rows:
            nr -= rows
        nc = c + DC[d]
        if nc < 0:
            nc += cols
        elif nc >= cols:
            nc -= cols
        if item_grid[nr, nc] >= 0:
            n += 1
    return n


@njit(cache=True)
def run_steps(
    item_grid,
    pheromone,
    ant_grid,
    ant_r,
    ant_c,
    ant_h,
    ant_carry,
    feats,
    rng_state,
    n_steps,
    k1,
    k2,
    evap_k,
    eta,
    deposit_a,
    beta,
    delta,
    theta,
    steep,
    dir_kernel,
):
    """Advance the simulation n_steps in place.

    Each step: every ant acts in index order (vote / move / deposit), then the
    whole pheromone field decays once.
    """
    rows, cols = item_grid.shape
    n_ants = ant_r.shape[0]
    wbuf = np.empty(8, dtype=np.float64)
    decay = 1.0 - evap_k

    for _ in range(n_steps):
        for a in range(n_ants):
            r = ant_r[a]
            c = ant_c[a]
            n = count_items_around(item_grid, r, c, rows, cols)
            carry = ant_carry[a]
            here = item_grid[r, c]

            if carry < 0 and here >= 0:
                if n == 0:
                    do_pick = True
                else:
                    chi = threshold_scalar(float(n), theta, steep)
                    votes = 0
                    for d in range(8):
                        nr = r + DR[d]
                        if nr < 0:
                            nr += rows
                        elif nr >= rows:
                            nr -= rows
                        nc = c + DC[d]
                        if nc < 0:
                            nc += cols
                        elif nc >= cols:
                            nc -= cols
                        other = item_grid[nr, nc]
                        if other >= 0:
                            dist = feature_dist(feats, here, other)
                            p_pick = (1.0 - chi) * pick_threshold_scalar(dist, k2)
                            if uniform01(rng_state) <= p_pick:
                                votes += 1
                    do_pick = 2 * votes >= n
                if do_pick:
                    ant_carry[a] = here
                    item_grid[r, c] = -1
            elif carry >= 0 and here < 0:
                if n > 0:
                    chi = threshold_scalar(float(n), theta, steep)
                    votes = 0
                    for d in range(8):
                        nr = r + DR[d]
                        if nr < 0:
                            nr += rows
                        elif nr >= rows:
                            nr -= rows
                        nc = c + DC[d]
                        if nc < 0:
                            nc += cols
                        elif nc >= cols:
                            nc -= cols
                        other = item_grid[nr, nc]
                        if other >= 0:
                            dist = feature_dist(feats, carry, other)
                            p_drop = chi * drop_threshold_scalar(dist, k1)
                            if uniform01(rng_state) <= p_drop:
                                votes += 1
                    if 2 * votes >= n:
                        item_grid[r, c] = carry
                        ant_carry[a] = -1

            # movement: weighted choice among the 8 neighbours free of ants
            total = 0.0
            free = 0
            for d in range(8):
                nr = r + DR[d]
                if nr < 0:
                    nr += rows
                elif nr >= rows:
                    nr -= rows
                nc = c + DC[d]
                if nc < 0:
                    nc += cols
                elif nc >= cols:
                    nc -= cols
                if ant_grid[nr, nc] >= 0:
                    wbuf[d] = -1.0
                else:
                    free += 1
                    m = d - ant_h[a]
                    if m < 0:
                        m += 8
                    if m > 4:
                        m = 8 - m
                    w = weight_scalar(pheromone[nr, nc], beta, delta) * dir_kernel[m]
                    wbuf[d] = w
                    total += w

            if free > 0:
                chosen = -1
                if total > 0.0:
                    u = uniform01(rng_state) * total
                    acc = 0.0
                    for d in range(8):
                        if wbuf[d] <= 0.0:
                            continue
                        acc += wbuf[d]
                        if u < acc:
                            chosen = d
                            break
                    if chosen < 0:
                        for d in range(7, -1, -1):
                            if wbuf[d] > 0.0:
                                chosen = d
                                break
                else:
                    # all free directions weigh zero: uniform among them
                    idx = int(uniform01(rng_state) * free)
                    if idx >= free:
                        idx = free - 1
                    k = -1
                    for d in range(8):
                        if wbuf[d] >= 0.0:
                            k += 1
                            if k == idx:
                                chosen = d
                                break
                nr = r + DR[chosen]
                if nr < 0:
                    nr += rows
                elif nr >= rows:
                    nr -= rows
                nc = c + DC[chosen]
                if nc < 0:
                    nc += cols
                elif nc >= cols:
                    nc -= cols
                ant_grid[r, c] = -1
                ant_grid[nr, nc] = a
                ant_r[a] = nr
                ant_c[a] = nc
                ant_h[a] = chosen
                r = nr
                c = nc

            n_after = count_items_around(item_grid, r, c, rows, cols)
            pheromone[r, c] += eta + n_after / deposit_a

        for i in range(rows):
            for j in range(cols):
                pheromone[i, j] *= decay
