"""Expected-regret evaluation over state grids.

Per (predictor, state) pair the engine computes the expected regret of the
induced as-if treatment rule, either by exact enumeration of all outcome
counts under the product-Binomial sampling distribution or by seeded Monte
Carlo. On top of that sit maximization over a state grid, a weight-grid
search for the minimax-regret predictor, and generic decision criteria
over expected-loss tables.

Everything here is engineered for bit-identical results across worker
counts: each parallel task is a fixed-shape, self-contained computation,
and reductions happen in deterministic grid or weight order in the parent.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .decision_model import WelfareModel, regret_gap, threshold
from .predictors import KernelWeights, SampleDesign
from .state_space import State, StateGrid

# Full enumeration is refused above this many outcome combinations.
ENUMERATION_CAP = 10_000_000

# Max-regret curves over w0 are piecewise constant and typically flat to
# about 1e-5 near their minimum; a strict argmin there reports float noise.
# Weights within this much of the minimum count as tied, and the smallest
# tied w0 (most pooling) wins.
TIE_TOLERANCE = 1e-5


@dataclass(frozen=True)
class McParams:
    """Draw count and base seed for Monte Carlo evaluation."""

    draws: int
    seed: int

    def __post_init__(self):
        if self.draws < 1:
            raise ValueError("draws must be a positive integer")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")


@dataclass(frozen=True)
class RegretReport:
    """Expected regret per grid state plus its maximum.

    argmax_index is the first grid position attaining the maximum.
    """

    per_state: np.ndarray
    max_regret: float
    argmax_index: int
    argmax_state: State
    method: str  # "exact" or "monte_carlo"
    draws: int | None = None
    seed: int | None = None


@dataclass(frozen=True)
class ExpectedLossTable:
    """Rows are candidate actions or decision rules, columns are states."""

    losses: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.losses, dtype=float)
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError("loss table must be a nonempty 2-D array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("loss table entries must be finite")
        object.__setattr__(self, "losses", arr)


# ---------------------------------------------------------------------------
# per-(predictor, state) evaluation


def _weighted_denominator(w: tuple[float, ...], sizes: tuple[int, ...]) -> float:
    den = 0.0
    for wk, Nk in zip(w, sizes):
        den += wk * Nk
    if den <= 0.0:
        raise ValueError("all positively weighted cells are empty")
    return den


def _validate_cells(weights: KernelWeights, design: SampleDesign, state: State,
                    target_cell: int) -> None:
    k = design.cells
    if len(weights.w) != k or len(state) != k:
        raise ValueError("weights, design and state must have equal cell counts")
    if not 0 <= target_cell < k:
        raise ValueError(f"target_cell {target_cell} outside 0..{k-1}")


def exact_error_components(weights: KernelWeights, design: SampleDesign,
                           state: State, welfare: WelfareModel,
                           target_cell: int = 0,
                           cap: int = ENUMERATION_CAP) -> tuple[float, float]:
    """Exact (error probability, regret gap) by full enumeration.

    Enumerates every outcome-count combination, weights it by its
    product-Binomial probability, and accumulates the probability that the
    as-if rule picks the action that is inferior at the target cell's true
    probability. Expected regret is the product of the two returns.
    """
    _validate_cells(weights, design, state, target_cell)
    combos = 1
    for N in design.sizes:
        combos *= N + 1
        if combos > cap:
            raise ValueError(
                f"enumeration needs more than {cap} outcome combinations"
            )
    thr = threshold(welfare)
    p_t = state.p[target_cell]
    gap = regret_gap(p_t, welfare)

    k = design.cells
    shape = tuple(N + 1 for N in design.sizes)
    num = 0.0
    for i, (wk, Nk) in enumerate(zip(weights.w, design.sizes)):
        vec_shape = [1] * k
        vec_shape[i] = Nk + 1
        num = num + wk * np.arange(Nk + 1, dtype=float).reshape(vec_shape)
    den = _weighted_denominator(weights.w, design.sizes)
    est = num / den

    choose_a = est <= thr
    optimal_a = p_t <= thr
    err = (choose_a != optimal_a).astype(float)
    # contract the error indicator with each cell's Binomial pmf in turn
    for i in range(k - 1, -1, -1):
        pmf = stats.binom.pmf(np.arange(design.sizes[i] + 1),
                              design.sizes[i], state.p[i])
        err = err @ pmf
    return float(err), gap


def exact_expected_regret(weights: KernelWeights, design: SampleDesign,
                          state: State, welfare: WelfareModel,
                          target_cell: int = 0,
                          cap: int = ENUMERATION_CAP) -> float:
    """Exact expected regret: regret gap times exact error probability."""
    err, gap = exact_error_components(weights, design, state, welfare,
                                      target_cell, cap)
    return gap * err


def _mc_eval(counts: np.ndarray, w_list, sizes: tuple[int, ...], thr: float,
             gap: float, optimal_a: bool) -> np.ndarray:
    """Error-rate evaluation of several weights on one draw matrix.

    counts has shape (draws, cells). Reusing one matrix across weights is
    the common-random-numbers scheme: the draws do not depend on the
    weights, so this is identical to redrawing with the same seed.
    """
    out = np.empty(len(w_list), dtype=float)
    for i, w in enumerate(w_list):
        num = 0.0
        for k, wk in enumerate(w):
            num = num + wk * counts[:, k]
        den = _weighted_denominator(w, sizes)
        est = num / den
        choose_a = est <= thr
        err = choose_a != optimal_a
        out[i] = gap * err.mean()
    return out


def mc_expected_regret(weights: KernelWeights, design: SampleDesign,
                       state: State, welfare: WelfareModel,
                       target_cell: int = 0, draws: int = 20000,
                       seed: int = 0) -> float:
    """Monte Carlo expected regret: gap times the erring-draw fraction.

    Same (inputs, seed) give bitwise-identical output.
    """
    _validate_cells(weights, design, state, target_cell)
    if draws < 1:
        raise ValueError("draws must be a positive integer")
    thr = threshold(welfare)
    p_t = state.p[target_cell]
    gap = regret_gap(p_t, welfare)
    rng = np.random.default_rng(int(seed))
    counts = rng.binomial(design.sizes, state.p, size=(draws, design.cells))
    vals = _mc_eval(counts, [weights.w], design.sizes, thr, gap, p_t <= thr)
    return float(vals[0])


def derive_state_seed(base_seed: int, state_index: int) -> int:
    """Per-state stream seed, independent of evaluation order.

    One stream per state, shared by every weight evaluated at that state.
    """
    ss = np.random.SeedSequence([int(base_seed), int(state_index)])
    return int(ss.generate_state(1, np.uint64)[0])


# ---------------------------------------------------------------------------
# grid evaluation contexts and worker tasks

_WORKER_CTX: dict | None = None


def _init_worker(ctx: dict) -> None:
    global _WORKER_CTX
    _WORKER_CTX = ctx


def _run_tasks(fn, tasks: list, ctx: dict, workers: int) -> list:
    global _WORKER_CTX
    if workers <= 1 or len(tasks) <= 1:
        prev = _WORKER_CTX
        _WORKER_CTX = ctx
        try:
            return [fn(t) for t in tasks]
        finally:
            _WORKER_CTX = prev
    chunk = max(1, math.ceil(len(tasks) / (workers * 8)))
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                             initargs=(ctx,)) as ex:
        return list(ex.map(fn, tasks, chunksize=chunk))


def _build_ctx(w_list, design: SampleDesign, grid: StateGrid,
               welfare: WelfareModel, target_cell: int,
               mc_params: McParams | None) -> dict:
    if not welfare.is_normalized_neutralizing:
        raise ValueError("grid evaluation requires normalized neutralizing "
                         "welfare; call .normalized() first")
    k = design.cells
    if grid.space.cells != k:
        raise ValueError("grid and design have different cell counts")
    if not 0 <= target_cell < k:
        raise ValueError(f"target_cell {target_cell} outside 0..{k-1}")
    for w in w_list:
        if len(w) != k:
            raise ValueError("weights and design have different cell counts")
        _weighted_denominator(w, design.sizes)

    combos = 1
    for N in design.sizes:
        combos *= N + 1
        if combos > ENUMERATION_CAP and mc_params is None:
            raise ValueError(
                f"enumeration needs more than {ENUMERATION_CAP} outcome "
                f"combinations")

    thr = threshold(welfare)
    idx = grid.indices
    p_t = grid.axes[target_cell][idx[:, target_cell]]
    gap = np.abs((1.0 - p_t) - welfare.u_b0)
    opt_a = p_t <= thr

    ctx = {
        "sizes": design.sizes,
        "cells": k,
        "w_list": list(w_list),
        "thr": thr,
        "gap": gap,
        "opt_a": opt_a,
        "target_cell": target_cell,
    }
    if mc_params is not None:
        ctx["draws"] = mc_params.draws
        ctx["base_seed"] = mc_params.seed
        ctx["state_p"] = np.array(
            [[grid.axes[c][j] for c, j in enumerate(row)] for row in idx],
            dtype=float)
    else:
        if k == 2:
            N0, N1 = design.sizes
            pmf0 = stats.binom.pmf(np.arange(N0 + 1)[None, :], N0,
                                   grid.axes[0][:, None])
            pmf1 = stats.binom.pmf(np.arange(N1 + 1)[None, :], N1,
                                   grid.axes[1][:, None])
            ctx["n0"] = np.arange(N0 + 1, dtype=float)
            ctx["n1"] = np.arange(N1 + 1, dtype=float)
            ctx["P0_rows"] = pmf0[idx[:, 0]]  # (n_states, N0+1)
            ctx["pmf1"] = pmf1                # (res1, N1+1)
            ctx["idx1"] = idx[:, 1]
        else:
            ctx["axes"] = grid.axes
            ctx["idx"] = idx
    return ctx


def _exact_state_regrets(c: dict, w: tuple[float, ...],
                         lo: int = 0, hi: int | None = None) -> np.ndarray:
    """Exact expected regret for one weight over grid states [lo, hi).

    Per-state values are independent of the slicing, so chunked parallel
    evaluation reproduces the single-pass result bit for bit.
    """
    gap = c["gap"][lo:hi]
    opt_a = c["opt_a"][lo:hi]
    den = _weighted_denominator(w, c["sizes"])
    if c["cells"] == 2 and "n0" in c:
        num = w[0] * c["n0"][:, None] + w[1] * c["n1"][None, :]
        est = num / den
        mask_a = (est <= c["thr"]).astype(float)
        mid = mask_a @ c["pmf1"].T                      # (N0+1, res1)
        P0 = c["P0_rows"][lo:hi]
        cols = mid[:, c["idx1"][lo:hi]]                 # (N0+1, n)
        p_choose_a = np.einsum("si,is->s", P0, cols)
    else:
        # generic cell count: one tensor contraction per state
        sizes = c["sizes"]
        k = c["cells"]
        num = 0.0
        for i, (wk, Nk) in enumerate(zip(w, sizes)):
            shp = [1] * k
            shp[i] = Nk + 1
            num = num + wk * np.arange(Nk + 1, dtype=float).reshape(shp)
        mask_a = ((num / den) <= c["thr"]).astype(float)
        idx = c["idx"][lo:hi]
        axes = c["axes"]
        p_choose_a = np.empty(len(idx), dtype=float)
        for s, row in enumerate(idx):
            t = mask_a
            for i in range(k - 1, -1, -1):
                pmf = stats.binom.pmf(np.arange(sizes[i] + 1), sizes[i],
                                      axes[i][row[i]])
                t = t @ pmf
            p_choose_a[s] = t
    err = np.where(opt_a, 1.0 - p_choose_a, p_choose_a)
    return gap * err


def _exact_weight_task(i: int) -> tuple[float, int]:
    c = _WORKER_CTX
    r = _exact_state_regrets(c, c["w_list"][i])
    j = int(np.argmax(r))
    return float(r[j]), j


def _exact_chunk_task(bounds: tuple[int, int]) -> np.ndarray:
    lo, hi = bounds
    c = _WORKER_CTX
    return _exact_state_regrets(c, c["w_list"][0], lo, hi)


def _mc_state_task(i: int) -> np.ndarray:
    """All weights at one state, on that state's own draw stream."""
    c = _WORKER_CTX
    seed = derive_state_seed(c["base_seed"], i)
    rng = np.random.default_rng(seed)
    p_row = c["state_p"][i]
    counts = rng.binomial(c["sizes"], p_row, size=(c["draws"], c["cells"]))
    return _mc_eval(counts, c["w_list"], c["sizes"], c["thr"],
                    float(c["gap"][i]), bool(c["opt_a"][i]))


# ---------------------------------------------------------------------------
# public grid operations


def max_regret_profile(weight_grid, design: SampleDesign, grid: StateGrid,
                       welfare: WelfareModel, target_cell: int = 0,
                       method: str = "exact",
                       mc_params: McParams | None = None,
                       workers: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Max regret over the grid for every weight in weight_grid.

    Returns (values, argmax_indices), aligned with weight_grid order.
    """
    w_list = [w.w for w in weight_grid]
    if not w_list:
        raise ValueError("weight grid must be nonempty")
    if method == "exact":
        ctx = _build_ctx(w_list, design, grid, welfare, target_cell, None)
        res = _run_tasks(_exact_weight_task, list(range(len(w_list))),
                         ctx, workers)
        vals = np.array([v for v, _ in res], dtype=float)
        arg = np.array([j for _, j in res], dtype=np.intp)
        return vals, arg
    if method == "mc":
        if mc_params is None:
            raise ValueError("mc method requires mc_params")
        ctx = _build_ctx(w_list, design, grid, welfare, target_cell, mc_params)
        rows = _run_tasks(_mc_state_task, list(range(len(grid))), ctx, workers)
        mat = np.stack(rows, axis=0)            # (n_states, n_weights)
        arg = np.argmax(mat, axis=0)
        vals = mat[arg, np.arange(mat.shape[1])]
        return vals.astype(float), arg.astype(np.intp)
    raise ValueError(f"unknown method {method!r}")


def max_regret(weights: KernelWeights, design: SampleDesign, grid: StateGrid,
               welfare: WelfareModel, target_cell: int = 0,
               method: str = "exact", mc_params: McParams | None = None,
               workers: int = 1) -> RegretReport:
    """Expected regret at every grid state and its maximum for one predictor."""
    if method == "exact":
        ctx = _build_ctx([weights.w], design, grid, welfare, target_cell, None)
        n = len(grid)
        n_chunks = max(1, min(workers * 4, n))
        edges = np.linspace(0, n, n_chunks + 1).astype(int)
        bounds = [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:])
                  if a < b]
        parts = _run_tasks(_exact_chunk_task, bounds, ctx, workers)
        per_state = np.concatenate(parts)
        draws = seed = None
    elif method == "mc":
        if mc_params is None:
            raise ValueError("mc method requires mc_params")
        ctx = _build_ctx([weights.w], design, grid, welfare, target_cell,
                         mc_params)
        rows = _run_tasks(_mc_state_task, list(range(len(grid))), ctx, workers)
        per_state = np.array([r[0] for r in rows], dtype=float)
        draws, seed = mc_params.draws, mc_params.seed
    else:
        raise ValueError(f"unknown method {method!r}")
    j = int(np.argmax(per_state))
    return RegretReport(
        per_state=per_state,
        max_regret=float(per_state[j]),
        argmax_index=j,
        argmax_state=grid.state_at(j),
        method="exact" if method == "exact" else "monte_carlo",
        draws=draws,
        seed=seed,
    )


def mmr_weight_search(weight_grid, design: SampleDesign, grid: StateGrid,
                      welfare: WelfareModel, target_cell: int = 0,
                      method: str = "exact",
                      mc_params: McParams | None = None, workers: int = 1,
                      tie_tol: float = TIE_TOLERANCE
                      ) -> tuple[KernelWeights, RegretReport]:
    """Weight in weight_grid minimizing max regret over the grid.

    Weights whose max regret is within tie_tol of the minimum are tied;
    the smallest tied w0 wins.
    """
    weight_grid = list(weight_grid)
    vals, _ = max_regret_profile(weight_grid, design, grid, welfare,
                                 target_cell, method, mc_params, workers)
    vmin = float(vals.min())
    tied = [i for i, v in enumerate(vals) if v <= vmin + tie_tol]
    best = min(tied, key=lambda i: weight_grid[i].w[0])
    report = max_regret(weight_grid[best], design, grid, welfare, target_cell,
                        method, mc_params, workers)
    return weight_grid[best], report


def criterion_select(table: ExpectedLossTable, criterion: str,
                     prior=None) -> int:
    """Row index selected by a decision criterion on an expected-loss table.

    bayes minimizes prior-weighted average loss, minimax the row maximum,
    minimax_regret the row maximum after subtracting each column's minimum.
    Ties go to the lowest row index.
    """
    L = table.losses
    if criterion == "bayes":
        if prior is None:
            raise ValueError("bayes criterion requires a prior")
        pr = np.asarray(prior, dtype=float)
        if pr.shape != (L.shape[1],):
            raise ValueError("prior length must equal the number of states")
        if np.any(pr < 0) or abs(pr.sum() - 1.0) > 1e-9:
            raise ValueError("prior must be nonnegative and sum to 1")
        scores = L @ pr
    elif criterion == "minimax":
        scores = L.max(axis=1)
    elif criterion == "minimax_regret":
        scores = (L - L.min(axis=0)).max(axis=1)
    else:
        raise ValueError(f"unknown criterion {criterion!r}")
    return int(np.argmin(scores))
