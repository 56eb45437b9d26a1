"""Stigmergic ant clustering on a toroidal grid.

Ants walk a wrap-around lattice, biased toward pheromone they collectively
deposit, and pick up or drop data items according to response-threshold
rules driven by local crowding and feature-space similarity.  Items with
similar feature vectors end up spatially clustered, with no central
coordination and no ant memory.

Two execution paths produce bit-identical trajectories:

* ``SwarmState.step_python`` - plain-Python reference implementation,
  written for readability and used by the equivalence tests;
* ``SwarmState.step`` - compiled kernel (``_kernel.run_steps``), the one
  you want for million-step runs.

Both consume the same xoshiro256++ stream in the same documented order.
Per ant, per step: one uniform per neighbouring item while voting (cells
scanned clockwise from north), then one uniform for the move whenever at
least one neighbour cell is free of other ants.  Initialization draws
(row, col) rejection pairs for every item in input order, then for every
ant, then one heading draw per ant.

Feature vectors must be min-max normalized into [0, 1] so that the mean
squared component distance is itself bounded by 1.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import _kernel as _k
from .errors import (
    CapacityExceededError,
    DimensionMismatchError,
    NoItemsError,
)
from .knn import Placement, PlacementEntry
from .rng import Xoshiro256pp

__all__ = [
    "DEFAULT_DIRECTION_KERNEL",
    "Params",
    "SwarmState",
    "RunResult",
    "pheromone_weight",
    "directional_weight",
    "response_threshold",
    "crowding",
    "feature_distance",
    "drop_threshold",
    "pick_threshold",
    "pick_probability",
    "drop_probability",
    "transition_step",
    "transition_probabilities",
    "agent_act",
    "evaporate",
    "run",
    "spatial_entropy",
]

# Moore directions, clockwise from north: N NE E SE S SW W NW.
DR = (-1, -1, 0, 1, 1, 1, 0, -1)
DC = (0, 1, 1, 1, 0, -1, -1, -1)

# Persistence kernel over turn magnitudes 0..4 (in 45 degree steps).
# Forward motion is favoured; renormalization happens in the transition
# rule, so the kernel itself need not sum to anything in particular.
DEFAULT_DIRECTION_KERNEL = (1.0, 0.5, 0.25, 0.1, 0.05)


@dataclass(frozen=True)
class Params:
    """Behavioural constants of the colony.

    Defaults are the constants of the bundled larvae identification
    experiment (see ``datasets``).  ``sensory_delta`` is the
    saturation constant of the pheromone weighting (its reciprocal is the
    sensory ceiling); ``deposit_a`` scales the per-item bonus in the
    deposit rule ``eta + n / deposit_a``.
    """

    k1: float = 0.1
    k2: float = 0.3
    evap_k: float = 0.015
    eta: float = 0.07
    deposit_a: float = 400.0
    beta: float = 3.5
    sensory_delta: float = 0.2
    crowd_theta: float = 5.0
    steepness: int = 2
    t_max: int = 1_000_000
    n_ants: int = 6
    grid_rows: int = 15
    grid_cols: int = 15
    seed: int = 0
    direction_kernel: tuple = DEFAULT_DIRECTION_KERNEL

    def __post_init__(self):
        if not self.k1 > 0:
            raise ValueError("k1 must be > 0")
        if not self.k2 > 0:
            raise ValueError("k2 must be > 0")
        if not 0.0 <= self.evap_k < 1.0:
            raise ValueError("evap_k must lie in [0, 1)")
        if self.eta < 0:
            raise ValueError("eta must be >= 0")
        if not self.deposit_a > 0:
            raise ValueError("deposit_a must be > 0")
        if not self.beta > 0:
            raise ValueError("beta must be > 0")
        if self.sensory_delta < 0:
            raise ValueError("sensory_delta must be >= 0")
        if not self.crowd_theta > 0:
            raise ValueError("crowd_theta must be > 0")
        if int(self.steepness) < 2 or self.steepness != int(self.steepness):
            raise ValueError("steepness must be an integer >= 2")
        if self.t_max < 0:
            raise ValueError("t_max must be >= 0")
        if self.n_ants < 1:
            raise ValueError("n_ants must be >= 1")
        if self.grid_rows < 1 or self.grid_cols < 1:
            raise ValueError("grid dimensions must be >= 1")
        kern = tuple(float(w) for w in self.direction_kernel)
        if len(kern) != 5:
            raise ValueError("direction_kernel needs 5 magnitudes (0..4 turns)")
        if any(w < 0 for w in kern):
            raise ValueError("direction_kernel weights must be >= 0")
        object.__setattr__(self, "direction_kernel", kern)

    @property
    def cells(self) -> int:
        return self.grid_rows * self.grid_cols


# ---------------------------------------------------------------------------
# scalar rules
#
# The compiled kernel owns the arithmetic; these wrappers re-export it so the
# interpreted path and any external caller evaluate the exact same ops in the
# exact same order.


def pheromone_weight(sigma: float, p: Params) -> float:
    """Attraction W(sigma) = (1 + sigma/(1 + delta*sigma))**beta.

    Monotone in sigma, W(0) = 1, saturating at (1 + 1/delta)**beta, so a
    single reinforced trail can never dominate the move distribution beyond
    a fixed ceiling.
    """
    if sigma < 0:
        raise ValueError("pheromone must be >= 0")
    return float(_k.weight_scalar(float(sigma), p.beta, p.sensory_delta))


def directional_weight(turn: int, kernel=DEFAULT_DIRECTION_KERNEL) -> float:
    """Persistence weight for a heading change of ``turn`` 45-degree steps."""
    m = abs(int(turn))
    if m > 4:
        raise ValueError("turn magnitude exceeds 4 half-quadrants")
    return float(kernel[m])


def response_threshold(s: float, theta: float, n: int) -> float:
    """Sigmoid response s**n / (s**n + theta**n); 1/2 exactly at s = theta."""
    if not theta > 0:
        raise ValueError("theta must be > 0")
    n = int(n)
    if n < 2:
        raise ValueError("steepness must be >= 2")
    if s < 0:
        raise ValueError("stimulus must be >= 0")
    return float(_k.threshold_scalar(float(s), float(theta), n))


def crowding(n_items: int, theta: float = 5.0) -> float:
    """Crowding pressure chi = n**2 / (n**2 + theta**2) for n neighbouring items."""
    return response_threshold(float(n_items), theta, 2)


def feature_distance(a, b) -> float:
    """Root mean squared component difference between two feature vectors.

    For vectors confined to the unit box this lies in [0, 1], which the
    pick/drop thresholds rely on.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 1 or b.ndim != 1 or a.shape != b.shape:
        raise DimensionMismatchError(
            f"feature vectors must share one dimension, got {a.shape} and {b.shape}"
        )
    if a.size == 0:
        raise DimensionMismatchError("feature vectors must be non-empty")
    # same accumulation order as the kernel: sequential, left to right
    acc = 0.0
    for i in range(a.size):
        dv = a[i] - b[i]
        acc += dv * dv
    return math.sqrt(acc / a.size)


def drop_threshold(d: float, p: Params) -> float:
    """(k1/(k1+d))**2 - approaches 1 as the neighbourhood matches the load."""
    return float(_k.drop_threshold_scalar(float(d), p.k1))


def pick_threshold(d: float, p: Params) -> float:
    """(d/(k2+d))**2 - approaches 1 as the neighbourhood mismatches the item."""
    return float(_k.pick_threshold_scalar(float(d), p.k2))


def pick_probability(chi: float, eps: float) -> float:
    """P_pick = (1 - chi) * eps: dissimilarity invites picking unless crowded."""
    return (1.0 - chi) * eps


def drop_probability(chi: float, delta_fn: float) -> float:
    """P_drop = chi * delta_fn: similarity invites dropping where it is dense."""
    return chi * delta_fn


# ---------------------------------------------------------------------------
# state


@dataclass
class SwarmState:
    """Mutable simulation state.

    Grids store entity *indices* (-1 for empty); external item ids live in
    ``item_ids`` and only surface in exported placements.  A cell may hold
    one item and one ant simultaneously; exclusion is per kind.
    """

    params: Params
    item_grid: np.ndarray
    ant_grid: np.ndarray
    pheromone: np.ndarray
    ant_r: np.ndarray
    ant_c: np.ndarray
    ant_heading: np.ndarray
    ant_carry: np.ndarray
    features: np.ndarray
    item_ids: np.ndarray
    item_labels: tuple
    rng: Xoshiro256pp
    t: int = 0

    # -- construction -----------------------------------------------------

    @classmethod
    def initialize(cls, items, p: Params, item_ids=None, labels=None) -> "SwarmState":
        """Place items then ants at distinct random cells and seed the RNG.

        Raises CapacityExceededError when either entity kind outnumbers the
        grid cells.  Feature values outside [0, 1] are rejected because the
        distance normalization depends on the unit box.
        """
        feats = np.asarray(items, dtype=np.float64)
        if feats.size == 0:
            feats = feats.reshape(0, 1)
        if feats.ndim != 2:
            raise DimensionMismatchError("items must form a 2-D (n, features) array")
        n_items = feats.shape[0]
        if n_items and (not np.all(np.isfinite(feats)) or feats.min() < 0.0 or feats.max() > 1.0):
            raise ValueError("feature values must lie in [0, 1]; normalize first")

        rows, cols = p.grid_rows, p.grid_cols
        if n_items > p.cells:
            raise CapacityExceededError(f"{n_items} items exceed {p.cells} cells")
        if p.n_ants > p.cells:
            raise CapacityExceededError(f"{p.n_ants} ants exceed {p.cells} cells")

        if item_ids is None:
            item_ids = np.arange(1, n_items + 1, dtype=np.int64)
        else:
            item_ids = np.asarray(item_ids, dtype=np.int64)
            if item_ids.shape != (n_items,):
                raise DimensionMismatchError("item_ids length must match item count")
        if labels is None:
            labels = (None,) * n_items
        else:
            labels = tuple(labels)
            if len(labels) != n_items:
                raise DimensionMismatchError("labels length must match item count")

        rng = Xoshiro256pp(p.seed)
        item_grid = np.full((rows, cols), -1, dtype=np.int64)
        ant_grid = np.full((rows, cols), -1, dtype=np.int64)
        pheromone = np.zeros((rows, cols), dtype=np.float64)

        for i in range(n_items):
            while True:
                r = rng.randint_below(rows)
                c = rng.randint_below(cols)
                if item_grid[r, c] < 0:
                    item_grid[r, c] = i
                    break

        ant_r = np.empty(p.n_ants, dtype=np.int64)
        ant_c = np.empty(p.n_ants, dtype=np.int64)
        ant_h = np.empty(p.n_ants, dtype=np.int64)
        for a in range(p.n_ants):
            while True:
                r = rng.randint_below(rows)
                c = rng.randint_below(cols)
                if ant_grid[r, c] < 0:
                    ant_grid[r, c] = a
                    ant_r[a] = r
                    ant_c[a] = c
                    break
            ant_h[a] = rng.randint_below(8)

        return cls(
            params=p,
            item_grid=item_grid,
            ant_grid=ant_grid,
            pheromone=pheromone,
            ant_r=ant_r,
            ant_c=ant_c,
            ant_heading=ant_h,
            ant_carry=np.full(p.n_ants, -1, dtype=np.int64),
            features=feats,
            item_ids=item_ids,
            item_labels=labels,
            rng=rng,
        )

    # -- stepping ----------------------------------------------------------

    def step(self, n_steps: int = 1) -> "SwarmState":
        """Advance ``n_steps`` through the compiled kernel, in place."""
        if n_steps <= 0:
            return self
        state = self.rng.state_array()
        _k.run_steps(
            self.item_grid,
            self.pheromone,
            self.ant_grid,
            self.ant_r,
            self.ant_c,
            self.ant_heading,
            self.ant_carry,
            self.features,
            state,
            n_steps,
            self.params.k1,
            self.params.k2,
            self.params.evap_k,
            self.params.eta,
            self.params.deposit_a,
            self.params.beta,
            self.params.sensory_delta,
            self.params.crowd_theta,
            int(self.params.steepness),
            np.asarray(self.params.direction_kernel, dtype=np.float64),
        )
        self.rng.set_state_array(state)
        self.t += n_steps
        return self

    def step_python(self, n_steps: int = 1) -> "SwarmState":
        """Reference interpreter for the same dynamics; bit-equal to step()."""
        for _ in range(n_steps):
            for a in range(self.params.n_ants):
                agent_act(a, self, self.params)
            evaporate(self, self.params)
            self.t += 1
        return self

    # -- inspection ----------------------------------------------------------

    def placement(self) -> Placement:
        """Snapshot of items currently on the grid (carried items are absent)."""
        pos = {}
        rows, cols = self.item_grid.shape
        for r in range(rows):
            for c in range(cols):
                idx = self.item_grid[r, c]
                if idx >= 0:
                    pos[int(idx)] = (r, c)
        entries = tuple(
            PlacementEntry(
                item_id=int(self.item_ids[i]),
                row=pos[i][0],
                col=pos[i][1],
                label=self.item_labels[i],
            )
            for i in range(self.features.shape[0])
            if i in pos
        )
        return Placement(entries=entries, grid_rows=rows, grid_cols=cols)

    def copy(self) -> "SwarmState":
        dup = SwarmState(
            params=self.params,
            item_grid=self.item_grid.copy(),
            ant_grid=self.ant_grid.copy(),
            pheromone=self.pheromone.copy(),
            ant_r=self.ant_r.copy(),
            ant_c=self.ant_c.copy(),
            ant_heading=self.ant_heading.copy(),
            ant_carry=self.ant_carry.copy(),
            features=self.features.copy(),
            item_ids=self.item_ids.copy(),
            item_labels=self.item_labels,
            rng=Xoshiro256pp(0),
            t=self.t,
        )
        dup.rng.set_state_array(self.rng.state_array())
        return dup

    def check_invariants(self) -> list:
        """Return human-readable descriptions of every violated invariant.

        Checks item conservation (grid XOR carried), per-kind cell
        exclusion, ant bookkeeping consistency, and pheromone bounds.
        Empty list means the state is sound.
        """
        bad = []
        n_items = self.features.shape[0]

        on_grid = self.item_grid[self.item_grid >= 0]
        if len(on_grid) != len(set(on_grid.tolist())):
            bad.append("duplicate item index on grid")
        carried = [int(x) for x in self.ant_carry if x >= 0]
        if len(carried) != len(set(carried)):
            bad.append("item carried by two ants")
        seen = set(on_grid.tolist()) | set(carried)
        if len(on_grid) + len(carried) != n_items or seen != set(range(n_items)):
            bad.append(
                f"conservation broken: {len(on_grid)} on grid + {len(carried)} carried != {n_items}"
            )

        ants_on_grid = self.ant_grid[self.ant_grid >= 0]
        if len(ants_on_grid) != self.params.n_ants:
            bad.append("ant grid does not hold every ant exactly once")
        for a in range(self.params.n_ants):
            r, c = int(self.ant_r[a]), int(self.ant_c[a])
            if self.ant_grid[r, c] != a:
                bad.append(f"ant {a} position desynced from grid")
                break

        if np.any(self.pheromone < 0) or not np.all(np.isfinite(self.pheromone)):
            bad.append("pheromone negative or non-finite")
        if np.any(self.pheromone > 100.0):
            bad.append("pheromone exceeds the generous ceiling of 100")
        return bad


# ---------------------------------------------------------------------------
# per-ant dynamics (reference path)


def _wrap(v: int, n: int) -> int:
    if v < 0:
        return v + n
    if v >= n:
        return v - n
    return v


def _neighbour(state: SwarmState, r: int, c: int, d: int):
    rows, cols = state.item_grid.shape
    return _wrap(r + DR[d], rows), _wrap(c + DC[d], cols)


def _count_items_around(state: SwarmState, r: int, c: int) -> int:
    n = 0
    for d in range(8):
        nr, nc = _neighbour(state, r, c, d)
        if state.item_grid[nr, nc] >= 0:
            n += 1
    return n


def transition_probabilities(ant: int, state: SwarmState, p: Params):
    """Normalized move distribution over the 8 directions for one ant.

    Blocked directions (another ant present) get probability 0.  Returns an
    8-vector summing to 1 over the free directions, or all zeros when the
    ant is fully enclosed.
    """
    r, c = int(state.ant_r[ant]), int(state.ant_c[ant])
    h = int(state.ant_heading[ant])
    w = np.zeros(8, dtype=np.float64)
    for d in range(8):
        nr, nc = _neighbour(state, r, c, d)
        if state.ant_grid[nr, nc] >= 0:
            continue
        m = (d - h) % 8
        if m > 4:
            m = 8 - m
        w[d] = _k.weight_scalar(float(state.pheromone[nr, nc]), p.beta, p.sensory_delta) * p.direction_kernel[m]
    total = w.sum()
    if total > 0:
        w /= total
    return w


def transition_step(ant: int, state: SwarmState, p: Params):
    """Sample one move for ``ant`` and apply it; returns ((row, col), heading).

    Consumes exactly one uniform draw when any neighbour is free of other
    ants, none otherwise.  The heading after a move is the direction moved;
    a fully blocked ant keeps position and heading.
    """
    r, c = int(state.ant_r[ant]), int(state.ant_c[ant])
    h = int(state.ant_heading[ant])
    rows, cols = state.item_grid.shape

    wbuf = [0.0] * 8
    total = 0.0
    free = 0
    for d in range(8):
        nr, nc = _neighbour(state, r, c, d)
        if state.ant_grid[nr, nc] >= 0:
            wbuf[d] = -1.0
        else:
            free += 1
            m = (d - h) % 8
            if m > 4:
                m = 8 - m
            w = _k.weight_scalar(float(state.pheromone[nr, nc]), p.beta, p.sensory_delta) * p.direction_kernel[m]
            wbuf[d] = w
            total += w

    if free == 0:
        return (r, c), h

    chosen = -1
    if total > 0.0:
        u = state.rng.uniform() * total
        acc = 0.0
        for d in range(8):
            if wbuf[d] <= 0.0:
                continue
            acc += wbuf[d]
            if u < acc:
                chosen = d
                break
        if chosen < 0:
            # float round-off pushed u past the last bin; take it anyway
            for d in range(7, -1, -1):
                if wbuf[d] > 0.0:
                    chosen = d
                    break
    else:
        # every free direction weighs zero (degenerate kernel): uniform choice
        idx = int(state.rng.uniform() * free)
        if idx >= free:
            idx = free - 1
        k = -1
        for d in range(8):
            if wbuf[d] >= 0.0:
                k += 1
                if k == idx:
                    chosen = d
                    break

    nr, nc = _neighbour(state, r, c, chosen)
    state.ant_grid[r, c] = -1
    state.ant_grid[nr, nc] = ant
    state.ant_r[ant] = nr
    state.ant_c[ant] = nc
    state.ant_heading[ant] = chosen
    return (nr, nc), chosen


def agent_act(ant: int, state: SwarmState, p: Params) -> SwarmState:
    """One ant's full turn: vote to pick or drop, move, deposit pheromone.

    Pick rule (unladen, standing on an item): every neighbouring item casts
    a vote with probability (1-chi)*eps(d); the item is taken on a majority
    2*sum >= n, and always when it is isolated (n == 0).  Drop rule
    (carrying, empty cell): votes with probability chi*delta(d), majority
    drops; an isolated cell (n == 0) never receives a drop.  The deposit at
    the post-move cell is eta + n/a with n recounted after moving, and it
    happens every step, blocked or not.
    """
    r, c = int(state.ant_r[ant]), int(state.ant_c[ant])
    n = _count_items_around(state, r, c)
    carry = int(state.ant_carry[ant])
    here = int(state.item_grid[r, c])

    if carry < 0 and here >= 0:
        if n == 0:
            do_pick = True
        else:
            chi = _k.threshold_scalar(float(n), p.crowd_theta, int(p.steepness))
            votes = 0
            for d in range(8):
                nr, nc = _neighbour(state, r, c, d)
                other = int(state.item_grid[nr, nc])
                if other >= 0:
                    dist = feature_distance(state.features[here], state.features[other])
                    p_pick = pick_probability(chi, pick_threshold(dist, p))
                    if state.rng.uniform() <= p_pick:
                        votes += 1
            do_pick = 2 * votes >= n
        if do_pick:
            state.ant_carry[ant] = here
            state.item_grid[r, c] = -1
    elif carry >= 0 and here < 0:
        if n > 0:
            chi = _k.threshold_scalar(float(n), p.crowd_theta, int(p.steepness))
            votes = 0
            for d in range(8):
                nr, nc = _neighbour(state, r, c, d)
                other = int(state.item_grid[nr, nc])
                if other >= 0:
                    dist = feature_distance(state.features[carry], state.features[other])
                    p_drop = drop_probability(chi, drop_threshold(dist, p))
                    if state.rng.uniform() <= p_drop:
                        votes += 1
            if 2 * votes >= n:
                state.item_grid[r, c] = carry
                state.ant_carry[ant] = -1

    (r, c), _ = transition_step(ant, state, p)

    n_after = _count_items_around(state, r, c)
    state.pheromone[r, c] += p.eta + n_after / p.deposit_a
    return state


def evaporate(state: SwarmState, p: Params) -> SwarmState:
    """Multiplicative field decay, sigma <- sigma * (1 - evap_k), every cell."""
    state.pheromone *= 1.0 - p.evap_k
    return state


# ---------------------------------------------------------------------------
# whole runs


@dataclass(frozen=True)
class RunResult:
    """Outcome of a clustering run: periodic placements plus the final one.

    ``snapshots`` holds (step, Placement) pairs, always starting with
    (0, initial) and ending with (t_max, final-after-force-drop).  The
    final snapshot is the only one guaranteed to contain every item.
    """

    params: Params
    snapshots: tuple
    final: Placement


def _force_drop(state: SwarmState) -> None:
    """Ground any still-carried item: own cell if item-free, else the nearest
    item-free cell by toroidal distance, row-major scan breaking ties."""
    rows, cols = state.item_grid.shape
    for a in range(state.params.n_ants):
        idx = int(state.ant_carry[a])
        if idx < 0:
            continue
        r, c = int(state.ant_r[a]), int(state.ant_c[a])
        if state.item_grid[r, c] < 0:
            state.item_grid[r, c] = idx
        else:
            best = None
            best_d = math.inf
            for rr in range(rows):
                dr = min(abs(rr - r), rows - abs(rr - r))
                for cc in range(cols):
                    if state.item_grid[rr, cc] >= 0:
                        continue
                    dc = min(abs(cc - c), cols - abs(cc - c))
                    d = math.sqrt(dr * dr + dc * dc)
                    if d < best_d:
                        best_d = d
                        best = (rr, cc)
            if best is None:
                raise CapacityExceededError("no free cell to ground a carried item")
            state.item_grid[best] = idx
        state.ant_carry[a] = -1


def run(items, p: Params, snapshot_every=None, item_ids=None, labels=None,
        use_kernel: bool = True) -> RunResult:
    """Cluster ``items`` for ``p.t_max`` steps and return the placement history.

    ``snapshot_every`` adds intermediate placements every that many steps
    (carried items missing from those).  At termination carried items are
    force-dropped so the final placement always contains the full set.
    """
    state = SwarmState.initialize(items, p, item_ids=item_ids, labels=labels)
    snaps = [(0, state.placement())]

    stepper = state.step if use_kernel else state.step_python
    if snapshot_every is not None and snapshot_every <= 0:
        raise ValueError("snapshot_every must be positive")

    remaining = p.t_max
    if snapshot_every is None:
        if remaining:
            stepper(remaining)
    else:
        while remaining > 0:
            chunk = min(snapshot_every, remaining)
            stepper(chunk)
            remaining -= chunk
            snaps.append((state.t, state.placement()))

    _force_drop(state)
    final = state.placement()
    if snaps[-1][0] == p.t_max:
        snaps[-1] = (p.t_max, final)
    else:
        snaps.append((p.t_max, final))
    return RunResult(params=p, snapshots=tuple(snaps), final=final)


def spatial_entropy(placement: Placement, block_size: int) -> float:
    """Shannon entropy of item counts over block_size x block_size tiles.

    The grid dimensions travel with the placement; tiles at the high edges
    may be ragged when the block size does not divide them.  Only occupied
    tiles contribute terms, so empty tiles never enter the sum.  Low entropy
    means items concentrate in few tiles, i.e. visible clusters.  Raises
    NoItemsError for an empty placement (entropy of nothing is undefined,
    not zero).
    """
    if block_size < 1:
        raise ValueError("block_size must be >= 1")
    if not placement.entries:
        raise NoItemsError("cannot measure entropy of zero items")
    counts = Counter(
        (e.row // block_size, e.col // block_size) for e in placement.entries
    )
    total = len(placement.entries)
    ent = 0.0
    for nb in counts.values():
        pb = nb / total
        ent -= pb * math.log(pb)
    return ent
