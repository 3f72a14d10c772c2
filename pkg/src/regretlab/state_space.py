"""State spaces of conditional Bernoulli outcome probabilities.

A state assigns one success probability to each covariate cell. The spaces
handled here are boxes (per-cell probability bounds) intersected with
pairwise bounded-variation constraints of the form

    p[ref] + lam_minus <= p[cell] <= p[ref] + lam_plus.

Grids are built by laying a uniform, endpoint-inclusive grid on each cell's
axis and keeping the points that satisfy every constraint.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

# Comparing 0.1-spaced decimals in binary floating point needs a little
# slack, or grid points sitting exactly on a constraint boundary get
# dropped by rounding crumbs.
FEASIBILITY_SLACK = 1e-12


@dataclass(frozen=True)
class VariationBound:
    """Constrains p[cell] to [p[ref] + lam_minus, p[ref] + lam_plus]."""

    cell: int
    ref: int
    lam_minus: float
    lam_plus: float

    def __post_init__(self):
        if self.cell == self.ref:
            raise ValueError("variation bound must relate two distinct cells")
        if not self.lam_minus <= self.lam_plus:
            raise ValueError(
                f"lam_minus={self.lam_minus} exceeds lam_plus={self.lam_plus}"
            )


@dataclass(frozen=True)
class State:
    """One point of the state space: a probability per covariate cell."""

    p: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(float(v) for v in self.p))
        for v in self.p:
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"state probability {v} outside [0,1]")

    def __len__(self):
        return len(self.p)


@dataclass(frozen=True)
class BernoulliStateSpace:
    """Box bounds per cell plus pairwise bounded-variation constraints."""

    lower: tuple[float, ...]
    upper: tuple[float, ...]
    variation: tuple[VariationBound, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "lower", tuple(float(v) for v in self.lower))
        object.__setattr__(self, "upper", tuple(float(v) for v in self.upper))
        object.__setattr__(self, "variation", tuple(self.variation))
        if len(self.lower) != len(self.upper):
            raise ValueError("lower and upper must have one entry per cell")
        k = self.cells
        for lo, hi in zip(self.lower, self.upper):
            if not (0.0 <= lo <= hi <= 1.0):
                raise ValueError(f"cell bounds [{lo}, {hi}] violate 0<=lo<=hi<=1")
        for vb in self.variation:
            if not (0 <= vb.cell < k and 0 <= vb.ref < k):
                raise ValueError(f"variation bound references cell outside 0..{k-1}")
        # existence of a feasible state is part of the type's contract
        lo, hi = self.tightened_bounds()
        if np.any(lo > hi + FEASIBILITY_SLACK):
            raise ValueError("state space is empty: constraints are contradictory")

    @property
    def cells(self) -> int:
        return len(self.lower)

    def tightened_bounds(self) -> tuple[np.ndarray, np.ndarray]:
        """Propagate variation constraints through the box bounds.

        Returns per-cell [lo, hi] intervals such that every feasible state
        lies inside them and each interval endpoint is attained by some
        point satisfying the pairwise constraints (projection onto each
        axis). This is plain bound propagation on a difference-constraint
        system; it converges because each pass only shrinks intervals.
        """
        lo = np.array(self.lower, dtype=float)
        hi = np.array(self.upper, dtype=float)
        # cells * constraints passes suffice for a chain; cap defensively
        for _ in range(self.cells * max(1, len(self.variation)) + 1):
            changed = False
            for vb in self.variation:
                c, r = vb.cell, vb.ref
                cand = max(0.0, lo[r] + vb.lam_minus)
                if cand > lo[c]:
                    lo[c] = cand
                    changed = True
                cand = min(1.0, hi[r] + vb.lam_plus)
                if cand < hi[c]:
                    hi[c] = cand
                    changed = True
                # the same band read in the other direction
                cand = max(0.0, lo[c] - vb.lam_plus)
                if cand > lo[r]:
                    lo[r] = cand
                    changed = True
                cand = min(1.0, hi[c] - vb.lam_minus)
                if cand < hi[r]:
                    hi[r] = cand
                    changed = True
            if not changed:
                break
        return lo, hi


def is_feasible(state: State, space: BernoulliStateSpace) -> bool:
    """True iff the state satisfies all box and variation constraints.

    All inequalities are inclusive and evaluated with FEASIBILITY_SLACK.
    """
    if len(state) != space.cells:
        raise ValueError(
            f"state has {len(state)} cells, space has {space.cells}"
        )
    s = FEASIBILITY_SLACK
    for v, lo, hi in zip(state.p, space.lower, space.upper):
        if not (lo - s <= v <= hi + s):
            return False
    for vb in space.variation:
        ref = state.p[vb.ref]
        if not (ref + vb.lam_minus - s <= state.p[vb.cell] <= ref + vb.lam_plus + s):
            return False
    return True


@dataclass(frozen=True)
class StateGrid:
    """Feasible subset of a uniform product grid, in deterministic order.

    Order is lexicographic in cell index: cell 0's axis varies slowest.
    `axes[k]` holds cell k's grid values and `indices[i]` the per-cell axis
    positions of the i-th state, which is what the evaluation engine
    consumes; `states` materializes the same points as State values.
    """

    space: BernoulliStateSpace
    axes: tuple[np.ndarray, ...]
    indices: np.ndarray  # shape (n_states, cells), int

    def __len__(self):
        return self.indices.shape[0]

    @property
    def resolutions(self) -> tuple[int, ...]:
        return tuple(len(ax) for ax in self.axes)

    @property
    def states(self) -> list[State]:
        return [
            State(tuple(self.axes[k][j] for k, j in enumerate(row)))
            for row in self.indices
        ]

    def state_at(self, i: int) -> State:
        row = self.indices[i]
        return State(tuple(self.axes[k][j] for k, j in enumerate(row)))


def build_grid(space: BernoulliStateSpace, resolution_per_axis) -> StateGrid:
    """Uniform inclusive grid on each cell's tightened interval, filtered
    by feasibility.

    Each cell's axis spans the projection of the feasible set onto that
    cell (tightened_bounds), so no feasible region is cut off when a cell's
    declared box is loose.
    """
    res = tuple(int(r) for r in resolution_per_axis)
    if len(res) != space.cells:
        raise ValueError("one resolution per cell required")
    if any(r < 2 for r in res):
        raise ValueError("resolution per axis must be at least 2")
    lo, hi = space.tightened_bounds()
    axes = tuple(np.linspace(lo[k], hi[k], res[k]) for k in range(space.cells))
    kept = []
    for combo in itertools.product(*(range(r) for r in res)):
        st = State(tuple(axes[k][j] for k, j in enumerate(combo)))
        if is_feasible(st, space):
            kept.append(combo)
    if not kept:
        raise ValueError(
            "no feasible grid point at this resolution; constraints too tight"
        )
    return StateGrid(space=space, axes=axes,
                     indices=np.array(kept, dtype=np.intp))
