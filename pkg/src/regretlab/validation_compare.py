"""Cross-validated weight choice versus the minimax-regret weight.

Picks kernel weights by K-fold CV the way an ML practitioner would, then
measures the worst-case price: the ratio of the selected weight's maximum
regret to the minimax-regret weight's, over the same state grid. The fold
protocol here is this package's own; only the target cell's observations
are ever held out, since CV is validating prediction of that cell.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .predictors import (KernelWeights, OutcomeCounts, SampleDesign,
                         weighted_average_estimate)
from .regret_engine import McParams, max_regret, mmr_weight_search
from .state_space import State, StateGrid, is_feasible


@dataclass(frozen=True)
class CvProtocol:
    """Fold count (None for leave-one-out), candidate weights, shuffle seed."""

    folds: int | None
    weight_grid: tuple[KernelWeights, ...]
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "weight_grid", tuple(self.weight_grid))
        if self.folds is not None and self.folds < 2:
            raise ValueError("folds must be at least 2 (or None for LOO)")
        if not self.weight_grid:
            raise ValueError("weight grid must be nonempty")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")


def kfold_weight_select(counts: OutcomeCounts, design: SampleDesign,
                        target_cell: int, protocol: CvProtocol
                        ) -> KernelWeights:
    """Candidate weight with minimal out-of-fold squared prediction error.

    Target-cell observations are expanded to 0/1 values, shuffled by the
    protocol seed and split into folds; non-target cells always stay in the
    training part. CV error is the pooled mean over all held-out
    observations. Ties go to the smallest w0.
    """
    counts.validate_against(design)
    n_t = counts.n[target_cell]
    N_t = design.sizes[target_cell]
    folds = N_t if protocol.folds is None else protocol.folds
    if not 2 <= folds <= N_t:
        raise ValueError(
            f"fold count {folds} not admitted by target cell size {N_t}")

    obs = np.zeros(N_t, dtype=float)
    obs[:n_t] = 1.0
    rng = np.random.default_rng(protocol.seed)
    perm = rng.permutation(N_t)
    fold_members = np.array_split(perm, folds)
    if any(len(f) == 0 for f in fold_members):
        raise ValueError("empty fold")

    errors = np.empty(len(protocol.weight_grid), dtype=float)
    for i, w in enumerate(protocol.weight_grid):
        total = 0.0
        for members in fold_members:
            held = obs[members]
            train_n = list(counts.n)
            train_sizes = list(design.sizes)
            train_n[target_cell] = n_t - int(held.sum())
            train_sizes[target_cell] = N_t - len(members)
            est = weighted_average_estimate(
                OutcomeCounts(tuple(train_n)),
                SampleDesign(tuple(train_sizes)), w)
            total += float(np.sum((held - est) ** 2))
        errors[i] = total / N_t

    best = float(errors.min())
    tied = [i for i, e in enumerate(errors) if e <= best + 1e-12]
    sel = min(tied, key=lambda i: protocol.weight_grid[i].w[0])
    return protocol.weight_grid[sel]


@dataclass(frozen=True)
class CvComparisonReport:
    """Outcome of repeated CV selection measured against the MMR weight."""

    selected_w0: np.ndarray          # one entry per replication
    histogram: dict                  # w0 -> count
    evaluated_w0: np.ndarray         # distinct selected weights, ascending
    evaluated_max_regret: np.ndarray  # max regret of each, same order
    mmr_w0: float
    mmr_max_regret: float
    ratios: np.ndarray               # per-replication regret ratio


def compare_cv_vs_mmr(design: SampleDesign, grid: StateGrid,
                      welfare, protocol: CvProtocol, replications: int,
                      generating_state: State, target_cell: int = 0,
                      method: str = "exact",
                      mc_params: McParams | None = None,
                      workers: int = 1) -> CvComparisonReport:
    """Distribution of CV-selected weights and their max-regret penalty.

    Training samples are drawn from generating_state; each replication gets
    its own derived seeds for the sample draw and the fold shuffle, so the
    report does not depend on evaluation order.
    """
    if replications < 1:
        raise ValueError("replications must be a positive integer")
    if not is_feasible(generating_state, grid.space):
        raise ValueError("generating state is not feasible in the state space")

    selected = np.empty(replications, dtype=float)
    for rep in range(replications):
        ss = np.random.SeedSequence([int(protocol.seed), rep])
        seed_draw, seed_cv = (int(v) for v in ss.generate_state(2, np.uint64))
        rng = np.random.default_rng(seed_draw)
        n = rng.binomial(design.sizes, generating_state.p)
        rep_protocol = CvProtocol(folds=protocol.folds,
                                  weight_grid=protocol.weight_grid,
                                  seed=seed_cv)
        w = kfold_weight_select(OutcomeCounts(tuple(int(v) for v in n)),
                                design, target_cell, rep_protocol)
        selected[rep] = w.w[0]

    uniq = np.unique(selected)
    regret_by_w0 = {}
    for w0 in uniq:
        pos = next(i for i, w in enumerate(protocol.weight_grid)
                   if w.w[0] == w0)
        rep = max_regret(protocol.weight_grid[pos], design, grid, welfare,
                         target_cell, method, mc_params, workers)
        regret_by_w0[float(w0)] = rep.max_regret
    mmr_w, mmr_rep = mmr_weight_search(list(protocol.weight_grid), design,
                                       grid, welfare, target_cell, method,
                                       mc_params, workers)

    ratios = np.array([regret_by_w0[float(w0)] / mmr_rep.max_regret
                       for w0 in selected])
    hist = {float(w0): int(np.sum(selected == w0)) for w0 in uniq}
    return CvComparisonReport(
        selected_w0=selected,
        histogram=hist,
        evaluated_w0=uniq,
        evaluated_max_regret=np.array([regret_by_w0[float(v)] for v in uniq]),
        mmr_w0=mmr_w.w[0],
        mmr_max_regret=mmr_rep.max_regret,
        ratios=ratios,
    )
