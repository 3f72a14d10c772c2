"""Minimax-regret evaluation of pooling predictors and treatment rules.

The package covers a small decision problem end to end: a clinician (or
planner) sees per-cell Bernoulli samples, forms a point estimate of the
target cell's illness probability, treats as if that estimate were the
truth, and is scored by expected welfare regret against the worst state a
bounded-variation state space allows. On top sit predictor constructions
(weighted cell averages, shrinkage, midpoint rules under missing data),
exact and Monte Carlo regret evaluation, a minimax-regret weight search,
cross-validation comparisons, and generic decision criteria.
"""

from .config import (ConfigError, DEFAULT_CONFIG, ExperimentConfig,
                     apply_overrides, build_config, load_config)
from .decision_model import (Action, WelfareModel, choose_treatment,
                             mcr_regret, mse_regret, regret_gap,
                             square_loss_regret, state_regret, threshold)
from .missing_data import (MissingDataSetting, counterfactual_midpoints,
                           design_max_regret_table, midpoint_estimate,
                           midpoint_max_regret)
from .predictors import (KernelWeights, OutcomeCounts, SampleDesign,
                         hodges_lehmann_estimate, weighted_average_estimate)
from .regret_engine import (ENUMERATION_CAP, ExpectedLossTable, McParams,
                            RegretReport, TIE_TOLERANCE, criterion_select,
                            derive_state_seed, exact_error_components,
                            exact_expected_regret, max_regret,
                            max_regret_profile, mc_expected_regret,
                            mmr_weight_search)
from .state_space import (BernoulliStateSpace, State, StateGrid,
                          VariationBound, build_grid, is_feasible)
from .validation_compare import (CvComparisonReport, CvProtocol,
                                 compare_cv_vs_mmr, kfold_weight_select)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "BernoulliStateSpace",
    "ConfigError",
    "CvComparisonReport",
    "CvProtocol",
    "DEFAULT_CONFIG",
    "ENUMERATION_CAP",
    "ExpectedLossTable",
    "ExperimentConfig",
    "KernelWeights",
    "McParams",
    "MissingDataSetting",
    "OutcomeCounts",
    "RegretReport",
    "SampleDesign",
    "State",
    "StateGrid",
    "TIE_TOLERANCE",
    "VariationBound",
    "WelfareModel",
    "apply_overrides",
    "build_config",
    "build_grid",
    "choose_treatment",
    "compare_cv_vs_mmr",
    "counterfactual_midpoints",
    "criterion_select",
    "derive_state_seed",
    "design_max_regret_table",
    "exact_error_components",
    "exact_expected_regret",
    "hodges_lehmann_estimate",
    "is_feasible",
    "kfold_weight_select",
    "load_config",
    "max_regret",
    "max_regret_profile",
    "mc_expected_regret",
    "mcr_regret",
    "midpoint_estimate",
    "midpoint_max_regret",
    "mmr_weight_search",
    "mse_regret",
    "regret_gap",
    "square_loss_regret",
    "state_regret",
    "threshold",
    "weighted_average_estimate",
]
