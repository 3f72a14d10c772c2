"""Midpoint prediction with missing outcome data.

When a fraction of outcomes is unobservable, the mean outcome is only
partially identified: with outcomes normalized to [0,1], the identification
interval is [m*P1, m*P1 + P0] for observed mean m, observed share P1 and
missing share P0 = 1 - P1. Predicting the interval midpoint caps maximum
regret at a closed form that splits into a sampling-variance and a
worst-case-bias term.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class MissingDataSetting:
    """Observability share and the number of observed outcomes.

    observed_count is conditioned on (treated as fixed). It may be None
    only in the fully unobserved case p_obs_share = 0. The share may also
    be an estimate from data; the closed-form bound below then no longer
    applies (no closed form is known for that case; Monte Carlo through
    the regret engine is the fallback).
    """

    p_obs_share: float
    observed_count: int | None

    def __post_init__(self):
        if not 0.0 <= self.p_obs_share <= 1.0:
            raise ValueError("p_obs_share must lie in [0,1]")
        if self.p_obs_share > 0:
            if self.observed_count is None:
                raise ValueError(
                    "observed_count required when p_obs_share > 0")
            if self.observed_count < 1:
                raise ValueError("observed_count must be at least 1")


def midpoint_estimate(observed_mean: float | None,
                      setting: MissingDataSetting) -> float:
    """observed_mean * P1 + (1/2) * P0, the identification-interval midpoint.

    With nothing observed (P1 = 0) the midpoint is 1/2 regardless of the
    (then-irrelevant) observed mean.
    """
    p1 = setting.p_obs_share
    if p1 == 0.0:
        return 0.5
    if observed_mean is None or not 0.0 <= observed_mean <= 1.0:
        raise ValueError("observed mean must lie in [0,1]")
    return observed_mean * p1 + 0.5 * (1.0 - p1)


def midpoint_max_regret(setting: MissingDataSetting) -> float:
    """Closed-form maximum regret of the midpoint predictor:
    (1/4) * [P1^2 / K + P0^2]."""
    p1 = setting.p_obs_share
    p0 = 1.0 - p1
    if p1 == 0.0:
        # variance term has zero weight; only the interval half-width matters
        return 0.25
    return 0.25 * (p1 * p1 / setting.observed_count + p0 * p0)


def counterfactual_midpoints(mean_a: float | None, share_a: float,
                             mean_b: float | None) -> tuple[float, float]:
    """Midpoint predictions of everyone-gets-A and everyone-gets-B means.

    Each treatment's outcome is missing for the subpopulation that received
    the other one, so the A prediction treats the B arm as unobserved and
    vice versa. A mean may be None only when its arm has zero share.
    """
    if not 0.0 <= share_a <= 1.0:
        raise ValueError("share_a must lie in [0,1]")
    if share_a > 0 and (mean_a is None or not 0.0 <= mean_a <= 1.0):
        raise ValueError("mean_a must lie in [0,1] when arm A is nonempty")
    if share_a < 1 and (mean_b is None or not 0.0 <= mean_b <= 1.0):
        raise ValueError("mean_b must lie in [0,1] when arm B is nonempty")
    ma = 0.0 if mean_a is None else mean_a
    mb = 0.0 if mean_b is None else mean_b
    pred_a = ma * share_a + 0.5 * (1.0 - share_a)
    pred_b = mb * (1.0 - share_a) + 0.5 * share_a
    return pred_a, pred_b


def design_max_regret_table(settings) -> list[tuple[MissingDataSetting, float]]:
    """Rank data-collection designs by midpoint maximum regret, ascending.

    Ties go to the design with more observed outcomes.
    """
    rows = [(s, midpoint_max_regret(s)) for s in settings]
    return sorted(
        rows,
        key=lambda r: (r[1], -(r[0].observed_count or 0)),
    )
