"""Experiment configuration: one JSON file, strictly validated.

Unknown keys are rejected at every nesting level so an experiment file is
a reviewable record of exactly what ran. Omitted top-level keys fall back
to the bundled benchmark defaults (two covariate cells, a +/-0.1 variation
band around p0 in [0.2, 0.6], outcome-neutral treatment welfare 0.6, six
sampling designs, 50x50 state grid, 0.001-step weight search).
"""

from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .decision_model import WelfareModel
from .predictors import KernelWeights, SampleDesign
from .state_space import BernoulliStateSpace, VariationBound


class ConfigError(Exception):
    """Invalid or inconsistent experiment configuration."""


DEFAULT_CONFIG: dict = {
    "state_space": {
        "lower": [0.2, 0.0],
        "upper": [0.6, 1.0],
        "variation": [
            {"cell": 1, "ref": 0, "lambda_minus": -0.1, "lambda_plus": 0.1}
        ],
    },
    "welfare": {"u_b": 0.6},
    "designs": [[10, 10], [5, 15], [15, 5], [20, 20], [10, 30], [30, 10]],
    "weight_grid": {"start": 0.5, "stop": 1.0, "step": 0.001},
    "grid_resolution": [50, 50],
    "method": "exact",
    "draws": 20000,
    "seed": 1729,
    "workers": 1,
    "output_dir": "out",
}

_TOP_KEYS = set(DEFAULT_CONFIG) | {
    "max_regret", "mmr_search", "midpoint", "missing_designs",
    "compare_cv", "criteria",
}
_SECTION_KEYS = {
    "max_regret": {"design", "w0", "target_cell"},
    "mmr_search": {"design", "target_cell"},
    "midpoint": {"settings"},
    "compare_cv": {"design", "generating_state", "folds", "replications",
                   "cv_seed", "target_cell"},
    "criteria": {"loss_table", "criterion", "prior"},
}


def _check_keys(d: dict, allowed: set, where: str) -> None:
    unknown = set(d) - allowed
    if unknown:
        raise ConfigError(
            f"unknown key(s) {sorted(unknown)} in {where}; "
            f"allowed: {sorted(allowed)}")


def _as_int(v, where: str, minimum=None) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{where} must be an integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise ConfigError(f"{where} must be >= {minimum}, got {v}")
    return v


def _as_number(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{where} must be a number, got {v!r}")
    return float(v)


@dataclass(frozen=True)
class ExperimentConfig:
    state_space: BernoulliStateSpace
    welfare: WelfareModel
    designs: tuple[SampleDesign, ...]
    weight_start: float
    weight_stop: float
    weight_step: float
    grid_resolution: tuple[int, ...]
    method: str
    draws: int
    seed: int
    workers: int
    output_dir: str
    sections: dict
    effective: dict  # canonical merged dict, for hashing and provenance

    def weight_values(self) -> np.ndarray:
        """Weight-grid values as correctly rounded decimals.

        Built as arange(k0, k1+1)/den for decimal steps so 0.751 means the
        double closest to 751/1000, matching scalar literals exactly.
        """
        inv = 1.0 / self.weight_step
        den = round(inv)
        if den >= 1 and abs(den - inv) < 1e-9:
            k0 = round(self.weight_start * den)
            k1 = round(self.weight_stop * den)
            return np.arange(k0, k1 + 1, dtype=float) / den
        n = int(round((self.weight_stop - self.weight_start) / self.weight_step))
        return self.weight_start + np.arange(n + 1) * self.weight_step

    def weight_grid_list(self) -> list[KernelWeights]:
        return [KernelWeights.binary(w0) for w0 in self.weight_values()]

    def normalized_welfare(self) -> WelfareModel:
        return self.welfare.normalized()

    def config_hash(self) -> str:
        """Hash of everything that determines output values.

        workers and output_dir are excluded: they affect where and how fast
        results appear, never what they are.
        """
        base = {k: v for k, v in self.effective.items()
                if k not in ("workers", "output_dir")}
        blob = json.dumps(base, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:12]


def _build_state_space(d: dict) -> BernoulliStateSpace:
    _check_keys(d, {"lower", "upper", "variation"}, "state_space")
    for key in ("lower", "upper"):
        if key not in d or not isinstance(d[key], list) or not d[key]:
            raise ConfigError(f"state_space.{key} must be a nonempty list")
    lower = tuple(_as_number(v, "state_space.lower[]") for v in d["lower"])
    upper = tuple(_as_number(v, "state_space.upper[]") for v in d["upper"])
    bounds = []
    for i, vb in enumerate(d.get("variation", [])):
        if not isinstance(vb, dict):
            raise ConfigError("state_space.variation entries must be objects")
        _check_keys(vb, {"cell", "ref", "lambda_minus", "lambda_plus"},
                    f"state_space.variation[{i}]")
        bounds.append(VariationBound(
            cell=_as_int(vb.get("cell"), "variation.cell", 0),
            ref=_as_int(vb.get("ref"), "variation.ref", 0),
            lam_minus=_as_number(vb.get("lambda_minus"), "variation.lambda_minus"),
            lam_plus=_as_number(vb.get("lambda_plus"), "variation.lambda_plus"),
        ))
    try:
        return BernoulliStateSpace(lower, upper, tuple(bounds))
    except ValueError as e:
        raise ConfigError(f"state_space: {e}") from e


def _build_welfare(d: dict) -> WelfareModel:
    if "u_b" in d:
        _check_keys(d, {"u_b"}, "welfare")
        try:
            return WelfareModel.neutralizing(_as_number(d["u_b"], "welfare.u_b"))
        except ValueError as e:
            raise ConfigError(f"welfare: {e}") from e
    full = {"u_a0", "u_a1", "u_b0", "u_b1"}
    _check_keys(d, full, "welfare")
    if set(d) != full:
        raise ConfigError(
            "welfare needs either u_b alone or all four of u_a0,u_a1,u_b0,u_b1")
    try:
        return WelfareModel(**{k: _as_number(d[k], f"welfare.{k}") for k in full})
    except ValueError as e:
        raise ConfigError(f"welfare: {e}") from e


def build_config(user: dict) -> ExperimentConfig:
    """Validate a raw dict (as loaded from JSON) into an ExperimentConfig."""
    if not isinstance(user, dict):
        raise ConfigError("configuration root must be a JSON object")
    _check_keys(user, _TOP_KEYS, "configuration root")
    eff = copy.deepcopy(DEFAULT_CONFIG)
    eff.update(copy.deepcopy(user))

    space = _build_state_space(eff["state_space"])
    welfare = _build_welfare(eff["welfare"])

    if not isinstance(eff["designs"], list) or not eff["designs"]:
        raise ConfigError("designs must be a nonempty list of per-cell sizes")
    designs = []
    for row in eff["designs"]:
        if not isinstance(row, list) or len(row) != space.cells:
            raise ConfigError(
                f"each design needs {space.cells} cell sizes, got {row!r}")
        try:
            designs.append(SampleDesign(tuple(
                _as_int(v, "designs[][]", 0) for v in row)))
        except ValueError as e:
            raise ConfigError(f"designs: {e}") from e

    wg = eff["weight_grid"]
    if not isinstance(wg, dict):
        raise ConfigError("weight_grid must be an object with start/stop/step")
    _check_keys(wg, {"start", "stop", "step"}, "weight_grid")
    start = _as_number(wg.get("start"), "weight_grid.start")
    stop = _as_number(wg.get("stop"), "weight_grid.stop")
    step = _as_number(wg.get("step"), "weight_grid.step")
    if not (0.0 <= start <= stop <= 1.0):
        raise ConfigError("weight_grid must satisfy 0 <= start <= stop <= 1")
    if step <= 0.0:
        raise ConfigError("weight_grid.step must be positive")

    res = eff["grid_resolution"]
    if not isinstance(res, list) or len(res) != space.cells:
        raise ConfigError(
            f"grid_resolution needs one entry per cell ({space.cells})")
    resolution = tuple(_as_int(v, "grid_resolution[]", 2) for v in res)

    method = eff["method"]
    if method not in ("exact", "mc"):
        raise ConfigError(f"method must be 'exact' or 'mc', got {method!r}")

    sections = {}
    for name in _SECTION_KEYS:
        if name in user:
            sec = user[name]
            if not isinstance(sec, dict):
                raise ConfigError(f"{name} section must be an object")
            _check_keys(sec, _SECTION_KEYS[name], name)
            sections[name] = copy.deepcopy(sec)
    if "missing_designs" in user:
        md = user["missing_designs"]
        if not isinstance(md, list) or not md:
            raise ConfigError("missing_designs must be a nonempty list")
        for i, entry in enumerate(md):
            if not isinstance(entry, dict):
                raise ConfigError("missing_designs entries must be objects")
            _check_keys(entry, {"p_obs_share", "observed_count"},
                        f"missing_designs[{i}]")
        sections["missing_designs"] = copy.deepcopy(md)

    return ExperimentConfig(
        state_space=space,
        welfare=welfare,
        designs=tuple(designs),
        weight_start=start,
        weight_stop=stop,
        weight_step=step,
        grid_resolution=resolution,
        method=method,
        draws=_as_int(eff["draws"], "draws", 1),
        seed=_as_int(eff["seed"], "seed", 0),
        workers=_as_int(eff["workers"], "workers", 1),
        output_dir=str(eff["output_dir"]),
        sections=sections,
        effective=eff,
    )


def load_config(path: str | None) -> ExperimentConfig:
    """Load and validate a JSON config file; None gives the defaults."""
    if path is None:
        return build_config({})
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file {path} is not valid JSON: {e}") from e
    return build_config(raw)


def apply_overrides(cfg: ExperimentConfig, seed=None, workers=None,
                    method=None, draws=None, output_dir=None
                    ) -> ExperimentConfig:
    """Command-line overrides, revalidated through the same path."""
    eff = copy.deepcopy(cfg.effective)
    for name in _SECTION_KEYS:
        if name in cfg.sections:
            eff[name] = copy.deepcopy(cfg.sections[name])
    if "missing_designs" in cfg.sections:
        eff["missing_designs"] = copy.deepcopy(cfg.sections["missing_designs"])
    if seed is not None:
        eff["seed"] = seed
    if workers is not None:
        eff["workers"] = workers
    if method is not None:
        eff["method"] = method
    if draws is not None:
        eff["draws"] = draws
    if output_dir is not None:
        eff["output_dir"] = output_dir
    return build_config(eff)
