"""Command-line interface.

Each subcommand reads one JSON experiment configuration, runs a
computation, and writes CSV files into the output directory. Files start
with '#' provenance comments (config hash, seed, method) and carry floats
at six significant digits. No timestamps or host details go into the
output, and worker count never affects values, so a rerun of the same
configuration produces byte-identical files.

Exit codes: 0 success, 2 configuration error, 3 computation error.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .config import ConfigError, ExperimentConfig, apply_overrides, load_config
from .missing_data import (MissingDataSetting, design_max_regret_table,
                           midpoint_max_regret)
from .predictors import KernelWeights, SampleDesign
from .regret_engine import (ExpectedLossTable, McParams, TIE_TOLERANCE,
                            criterion_select, max_regret_profile,
                            mmr_weight_search)
from .state_space import State, build_grid, is_feasible
from .validation_compare import CvProtocol, compare_cv_vs_mmr

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_COMPUTE = 3

# Fixed report columns of the benchmark table; the fine search grid from
# the configuration is used only for the minimax-regret selection.
COLUMN_W0 = (0.5, 0.6, 0.7, 0.8, 0.9, 1.0)

_DEFAULT_MISSING = ({"p_obs_share": 1.0, "observed_count": 10},
                    {"p_obs_share": 0.8, "observed_count": 25},
                    {"p_obs_share": 0.5, "observed_count": 50})


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".6g")
    return str(v)


def _write_csv(path: str, comments, header, rows) -> None:
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _provenance(cfg: ExperimentConfig, command: str, extra=()) -> list[str]:
    line = (f"config_hash={cfg.config_hash()} seed={cfg.seed} "
            f"method={cfg.method}")
    if cfg.method == "mc":
        line += f" draws={cfg.draws}"
    return [f"regretlab {command}", line, *extra]


def _cfg_number(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{where} must be a number, got {v!r}")
    return float(v)


def _cfg_int(v, where: str, minimum: int = 0) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{where} must be an integer, got {v!r}")
    if v < minimum:
        raise ConfigError(f"{where} must be >= {minimum}, got {v}")
    return v


def _require_two_cells(cfg: ExperimentConfig, command: str) -> None:
    if cfg.state_space.cells != 2:
        raise ConfigError(
            f"{command} works on the two-cell setup (target cell plus one "
            f"neighbor); the state space declares {cfg.state_space.cells}")


def _regret_setup(cfg: ExperimentConfig):
    welfare = cfg.normalized_welfare()
    if not welfare.is_normalized_neutralizing:
        raise ConfigError(
            "regret-grid commands need treatment welfare that does not "
            "depend on the outcome (u_b0 == u_b1 after normalization)")
    try:
        grid = build_grid(cfg.state_space, cfg.grid_resolution)
    except ValueError as e:
        raise ConfigError(f"state grid: {e}") from e
    mc = McParams(cfg.draws, cfg.seed) if cfg.method == "mc" else None
    return welfare, grid, mc


def _section_design(cfg: ExperimentConfig, sec: dict, where: str) -> SampleDesign:
    if "design" not in sec:
        return cfg.designs[0]
    row = sec["design"]
    if not isinstance(row, list) or len(row) != cfg.state_space.cells:
        raise ConfigError(
            f"{where}.design needs {cfg.state_space.cells} cell sizes")
    try:
        return SampleDesign(tuple(
            _cfg_int(v, f"{where}.design[]") for v in row))
    except ValueError as e:
        raise ConfigError(f"{where}.design: {e}") from e


def _section_target(sec: dict, cells: int, where: str) -> int:
    t = sec.get("target_cell", 0)
    if isinstance(t, bool) or not isinstance(t, int) or not 0 <= t < cells:
        raise ConfigError(
            f"{where}.target_cell must be an integer in 0..{cells - 1}")
    return t


# ---------------------------------------------------------------------------
# subcommand runners: each returns [(filename, comments, header, rows), ...]


def run_table1(cfg: ExperimentConfig):
    """Benchmark table: max regret per design at fixed pooling weights,
    plus the minimax-regret weight found on the fine search grid."""
    _require_two_cells(cfg, "table1")
    welfare, grid, mc = _regret_setup(cfg)
    search = cfg.weight_grid_list()
    col_weights = [KernelWeights.binary(w) for w in COLUMN_W0]
    rows = []
    for design in cfg.designs:
        cvals, _ = max_regret_profile(col_weights, design, grid, welfare,
                                      0, cfg.method, mc, cfg.workers)
        best, rep = mmr_weight_search(search, design, grid, welfare, 0,
                                      cfg.method, mc, cfg.workers)
        rows.append(list(design.sizes) + list(cvals)
                    + [rep.max_regret, best.w0])
    header = (["N0", "N1"] + [f"w0={w:g}" for w in COLUMN_W0]
              + ["mmr", "w_opt"])
    comments = _provenance(cfg, "table1", [
        f"states={len(grid)} search_weights={len(search)} "
        f"tie_tol={TIE_TOLERANCE:g}",
    ])
    return [("table1.csv", comments, header, rows)]


def run_max_regret(cfg: ExperimentConfig):
    """Max regret over the state grid for the requested pooling weights."""
    _require_two_cells(cfg, "max-regret")
    welfare, grid, mc = _regret_setup(cfg)
    sec = cfg.sections.get("max_regret", {})
    design = _section_design(cfg, sec, "max_regret")
    target = _section_target(sec, 2, "max_regret")
    w0s = sec.get("w0", list(COLUMN_W0))
    if isinstance(w0s, (int, float)) and not isinstance(w0s, bool):
        w0s = [w0s]
    if not isinstance(w0s, list) or not w0s:
        raise ConfigError("max_regret.w0 must be a number or a nonempty list")
    try:
        wlist = [KernelWeights.binary(_cfg_number(v, "max_regret.w0"))
                 for v in w0s]
    except ValueError as e:
        raise ConfigError(f"max_regret.w0: {e}") from e

    vals, arg = max_regret_profile(wlist, design, grid, welfare, target,
                                   cfg.method, mc, cfg.workers)
    rows = [[w.w0, v] + list(grid.state_at(int(j)).p)
            for w, v, j in zip(wlist, vals, arg)]
    header = ["w0", "max_regret", "argmax_p0", "argmax_p1"]
    comments = _provenance(cfg, "max-regret", [
        f"design={list(design.sizes)} target_cell={target} "
        f"states={len(grid)}",
    ])
    return [("max_regret.csv", comments, header, rows)]


def run_mmr_search(cfg: ExperimentConfig):
    """Full weight-grid search: every candidate's max regret, winner flagged."""
    _require_two_cells(cfg, "mmr-search")
    welfare, grid, mc = _regret_setup(cfg)
    sec = cfg.sections.get("mmr_search", {})
    design = _section_design(cfg, sec, "mmr_search")
    target = _section_target(sec, 2, "mmr_search")
    weights = cfg.weight_grid_list()

    vals, _ = max_regret_profile(weights, design, grid, welfare, target,
                                 cfg.method, mc, cfg.workers)
    # same tie rule as mmr_weight_search: near-minimal weights are tied and
    # the smallest tied w0 wins; the grid is ascending so first hit wins
    vmin = float(vals.min())
    best = int(np.argmax(vals <= vmin + TIE_TOLERANCE))
    rows = [[w.w0, v, int(i == best)]
            for i, (w, v) in enumerate(zip(weights, vals))]
    header = ["w0", "max_regret", "selected"]
    comments = _provenance(cfg, "mmr-search", [
        f"design={list(design.sizes)} target_cell={target} "
        f"states={len(grid)} tie_tol={TIE_TOLERANCE:g}",
        f"selected w0={weights[best].w0:.6g} "
        f"max_regret={float(vals[best]):.6g}",
    ])
    return [("mmr_search.csv", comments, header, rows)]


def _parse_missing_entries(entries, where: str) -> list[MissingDataSetting]:
    if not isinstance(entries, list) or not entries:
        raise ConfigError(f"{where} must be a nonempty list")
    settings = []
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise ConfigError(f"{where} entries must be objects")
        unknown = set(entry) - {"p_obs_share", "observed_count"}
        if unknown:
            raise ConfigError(
                f"unknown key(s) {sorted(unknown)} in {where}[{i}]")
        share = _cfg_number(entry.get("p_obs_share"),
                            f"{where}[{i}].p_obs_share")
        count = entry.get("observed_count")
        if count is not None:
            count = _cfg_int(count, f"{where}[{i}].observed_count", 1)
        try:
            settings.append(MissingDataSetting(share, count))
        except ValueError as e:
            raise ConfigError(f"{where}[{i}]: {e}") from e
    return settings


def run_midpoint(cfg: ExperimentConfig):
    """Worst-case regret bound of the midpoint predictor per setting."""
    sec = cfg.sections.get("midpoint")
    entries = sec["settings"] if sec else list(_DEFAULT_MISSING)
    settings = _parse_missing_entries(entries, "midpoint.settings")
    rows = [[s.p_obs_share, s.observed_count, midpoint_max_regret(s)]
            for s in settings]
    header = ["p_obs_share", "observed_count", "max_regret"]
    comments = _provenance(cfg, "midpoint")
    return [("midpoint.csv", comments, header, rows)]


def run_designs(cfg: ExperimentConfig):
    """Observation designs ranked by the midpoint worst-case regret."""
    entries = cfg.sections.get("missing_designs", list(_DEFAULT_MISSING))
    settings = _parse_missing_entries(entries, "missing_designs")
    table = design_max_regret_table(settings)
    rows = [[rank + 1, s.p_obs_share, s.observed_count, v]
            for rank, (s, v) in enumerate(table)]
    header = ["rank", "p_obs_share", "observed_count", "max_regret"]
    comments = _provenance(cfg, "designs")
    return [("designs.csv", comments, header, rows)]


def run_compare_cv(cfg: ExperimentConfig):
    """Cross-validated weight choice versus the minimax-regret weight."""
    _require_two_cells(cfg, "compare-cv")
    welfare, grid, mc = _regret_setup(cfg)
    sec = cfg.sections.get("compare_cv", {})
    design = _section_design(cfg, sec, "compare_cv")
    target = _section_target(sec, 2, "compare_cv")

    gs = sec.get("generating_state", [0.3, 0.3])
    if not isinstance(gs, list) or len(gs) != 2:
        raise ConfigError(
            "compare_cv.generating_state needs one probability per cell")
    try:
        state = State(tuple(_cfg_number(v, "compare_cv.generating_state")
                            for v in gs))
    except ValueError as e:
        raise ConfigError(f"compare_cv.generating_state: {e}") from e
    if not is_feasible(state, cfg.state_space):
        raise ConfigError(
            "compare_cv.generating_state lies outside the state space")

    folds = sec.get("folds")
    if folds is not None:
        folds = _cfg_int(folds, "compare_cv.folds", 2)
        if folds > design.sizes[target]:
            raise ConfigError("compare_cv.folds exceeds the target cell size")
    if design.sizes[target] < 2:
        raise ConfigError("compare-cv needs at least 2 target-cell draws")
    reps = _cfg_int(sec.get("replications", 100), "compare_cv.replications", 1)
    cv_seed = _cfg_int(sec.get("cv_seed", cfg.seed), "compare_cv.cv_seed", 0)

    menu = tuple(KernelWeights.binary(w) for w in COLUMN_W0)
    protocol = CvProtocol(folds=folds, weight_grid=menu, seed=cv_seed)
    report = compare_cv_vs_mmr(design, grid, welfare, protocol, reps, state,
                               target, cfg.method, mc, cfg.workers)

    w_rows = [[w0, report.histogram[float(w0)], r]
              for w0, r in zip(report.evaluated_w0,
                               report.evaluated_max_regret)]
    folds_label = "loo" if folds is None else folds
    s_rows = [[reps, folds_label, state.p[0], state.p[1], report.mmr_w0,
               report.mmr_max_regret, float(report.ratios.mean()),
               float(report.ratios.max())]]
    base = [f"design={list(design.sizes)} target_cell={target} "
            f"cv_seed={cv_seed} menu_w0={list(COLUMN_W0)}"]
    return [
        ("compare_cv_weights.csv",
         _provenance(cfg, "compare-cv", base),
         ["w0", "times_selected", "max_regret"], w_rows),
        ("compare_cv_summary.csv",
         _provenance(cfg, "compare-cv", base),
         ["replications", "folds", "generating_p0", "generating_p1",
          "mmr_w0", "mmr_max_regret", "ratio_mean", "ratio_max"], s_rows),
    ]


def run_criteria(cfg: ExperimentConfig):
    """Decision criteria applied to an expected-loss table."""
    sec = cfg.sections.get("criteria", {})
    table = sec.get("loss_table", [[1.0, 3.0], [2.0, 2.0]])
    try:
        tab = ExpectedLossTable(np.asarray(table, dtype=float))
    except (TypeError, ValueError) as e:
        raise ConfigError(f"criteria.loss_table: {e}") from e

    names = sec.get("criterion", ["bayes", "minimax", "minimax_regret"])
    if isinstance(names, str):
        names = [names]
    if not isinstance(names, list) or not names:
        raise ConfigError("criteria.criterion must be a name or nonempty list")

    n_states = tab.losses.shape[1]
    raw_prior = sec.get("prior", [1.0 / n_states] * n_states)
    if not isinstance(raw_prior, list):
        raise ConfigError("criteria.prior must be a list of probabilities")
    prior = [_cfg_number(v, "criteria.prior[]") for v in raw_prior]
    rows = []
    for name in names:
        if name not in ("bayes", "minimax", "minimax_regret"):
            raise ConfigError(f"unknown criterion {name!r}")
        try:
            sel = criterion_select(tab, name,
                                   prior if name == "bayes" else None)
        except ValueError as e:
            raise ConfigError(f"criteria: {e}") from e
        rows.append([name, sel])
    header = ["criterion", "selected_row"]
    prior_label = "[" + ",".join(_fmt(v) for v in prior) + "]"
    comments = _provenance(cfg, "criteria", [
        f"rows={tab.losses.shape[0]} states={n_states} prior={prior_label}",
    ])
    return [("criteria.csv", comments, header, rows)]


_COMMANDS = {
    "table1": run_table1,
    "max-regret": run_max_regret,
    "mmr-search": run_mmr_search,
    "midpoint": run_midpoint,
    "designs": run_designs,
    "compare-cv": run_compare_cv,
    "criteria": run_criteria,
}

_HELP = {
    "table1": "benchmark table: max regret per design and weight, plus the "
              "minimax-regret weight",
    "max-regret": "max regret over the state grid for given pooling weights",
    "mmr-search": "full weight-grid minimax-regret search for one design",
    "midpoint": "worst-case regret bounds of the midpoint predictor",
    "designs": "rank observation designs by midpoint worst-case regret",
    "compare-cv": "cross-validated weight choice versus the minimax-regret "
                  "weight",
    "criteria": "apply decision criteria to an expected-loss table",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regretlab",
        description="Minimax-regret evaluation of pooling predictors and "
                    "treatment rules.")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="subcommand")
    for name, fn in _COMMANDS.items():
        sp = sub.add_parser(name, help=_HELP[name])
        sp.add_argument("--config", metavar="FILE", default=None,
                        help="JSON experiment configuration "
                             "(default: built-in benchmark setup)")
        sp.add_argument("--seed", type=int, default=None,
                        help="override the base seed")
        sp.add_argument("--workers", type=int, default=None,
                        help="worker processes (values never depend on this)")
        sp.add_argument("--method", choices=["exact", "mc"], default=None,
                        help="exact enumeration or seeded Monte Carlo")
        sp.add_argument("--draws", type=int, default=None,
                        help="Monte Carlo draws per state")
        sp.add_argument("--out", metavar="DIR", default=None,
                        help="output directory for CSV files")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        cfg = apply_overrides(cfg, seed=args.seed, workers=args.workers,
                              method=args.method, draws=args.draws,
                              output_dir=args.out)
        outputs = _COMMANDS[args.command](cfg)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as e:
        print(f"computation failed: {e}", file=sys.stderr)
        return EXIT_COMPUTE

    try:
        os.makedirs(cfg.output_dir, exist_ok=True)
        written = []
        for fname, comments, header, rows in outputs:
            path = os.path.join(cfg.output_dir, fname)
            _write_csv(path, comments, header, rows)
            written.append(path)
    except OSError as e:
        print(f"cannot write output: {e}", file=sys.stderr)
        return EXIT_COMPUTE
    for path in written:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
