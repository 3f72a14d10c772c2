"""Two-action treatment choice under uncertain illness probability.

Action A is surveillance, B is aggressive treatment. A welfare table
U(action, outcome) induces a probability threshold p#: surveillance is
optimal when the illness probability is at or below p#, aggressive
treatment when it is above. Also holds the regret formulas for binary
point predictors under square loss and misclassification loss.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Action(enum.Enum):
    A = "surveillance"
    B = "aggressive_treatment"


@dataclass(frozen=True)
class WelfareModel:
    """Welfare of each action when well (0) and when ill (1).

    Requires u_b1 > u_a1 (treatment better if ill) and u_a0 > u_b0
    (surveillance better if well); otherwise one action dominates and
    there is no decision problem.
    """

    u_a0: float
    u_a1: float
    u_b0: float
    u_b1: float

    def __post_init__(self):
        if not self.u_b1 > self.u_a1:
            raise ValueError("aggressive treatment must be better when ill")
        if not self.u_a0 > self.u_b0:
            raise ValueError("surveillance must be better when well")

    @classmethod
    def neutralizing(cls, u_b: float) -> "WelfareModel":
        """Normalized form with treatment welfare independent of outcome:
        u_a0 = 1, u_a1 = 0, u_b0 = u_b1 = u_b with 0 < u_b < 1."""
        if not 0.0 < u_b < 1.0:
            raise ValueError("u_b must lie strictly inside (0,1)")
        return cls(1.0, 0.0, float(u_b), float(u_b))

    def normalized(self) -> "WelfareModel":
        """Affine rescale to u_a0 = 1, u_a1 = 0 (threshold-preserving)."""
        span = self.u_a0 - self.u_a1
        if span <= 0.0:
            raise ValueError("u_a0 must exceed u_a1 to normalize")
        return WelfareModel(
            1.0,
            0.0,
            (self.u_b0 - self.u_a1) / span,
            (self.u_b1 - self.u_a1) / span,
        )

    @property
    def is_normalized_neutralizing(self) -> bool:
        return (self.u_a0 == 1.0 and self.u_a1 == 0.0
                and self.u_b0 == self.u_b1)


def threshold(welfare: WelfareModel) -> float:
    """Indifference probability p# between surveillance and treatment.

    p# = (u_a0 - u_b0) / ((u_a0 - u_b0) + (u_b1 - u_a1)), in (0,1).
    """
    alpha = welfare.u_a0 - welfare.u_b0
    beta = welfare.u_b1 - welfare.u_a1
    return alpha / (alpha + beta)


def choose_treatment(estimate: float, welfare: WelfareModel) -> Action:
    """A iff estimate <= p#, else B.

    The comparison is done on raw doubles with equality going to A.
    Estimates that equal p# in exact decimal arithmetic may land on either
    side after rounding; that per-value resolution is intentional and part
    of the evaluated decision rule.
    """
    if not 0.0 <= estimate <= 1.0:
        raise ValueError("estimate must lie in [0,1]")
    return Action.A if estimate <= threshold(welfare) else Action.B


def regret_gap(p_ill: float, welfare: WelfareModel) -> float:
    """Welfare loss of the inferior action at illness probability p_ill.

    Requires the normalized neutralizing form, where the loss is
    |(1 - p_ill) - u_b| for whichever action is not optimal.
    """
    if not welfare.is_normalized_neutralizing:
        raise ValueError(
            "regret gap in this form requires normalized neutralizing welfare; "
            "call .normalized() first"
        )
    return abs((1.0 - p_ill) - welfare.u_b0)


def state_regret(action: Action, p_ill: float, welfare: WelfareModel) -> float:
    """0 if the action is optimal at p_ill, else the regret gap.

    At p_ill = p# both actions are optimal and the gap itself is zero.
    """
    gap = regret_gap(p_ill, welfare)
    thr = threshold(welfare)
    if action is Action.A:
        return 0.0 if p_ill <= thr else gap
    return 0.0 if p_ill >= thr else gap


def square_loss_regret(variance: float, bias: float) -> float:
    """Square-loss regret of a point predictor: V[predictor] + bias^2."""
    if variance < 0.0:
        raise ValueError("variance must be nonnegative")
    return variance + bias * bias


def mse_regret(q: float, p: float) -> float:
    """Square-loss regret of a random binary predictor.

    q is the predictor's probability of predicting 1, p the true outcome
    probability. Equals q(1-p) + p(1-q) - p(1-p), i.e. misclassification
    probability minus the irreducible part; identically q(1-q) + (p-q)^2,
    the variance-plus-squared-bias form.
    """
    _check_unit(q, "q")
    _check_unit(p, "p")
    return q * (1.0 - p) + p * (1.0 - q) - p * (1.0 - p)


def mcr_regret(q: float, p: float) -> float:
    """Misclassification-rate regret of a random binary predictor:
    q(1-p) + p(1-q) - min(p, 1-p)."""
    _check_unit(q, "q")
    _check_unit(p, "p")
    return q * (1.0 - p) + p * (1.0 - q) - min(p, 1.0 - p)


def _check_unit(v: float, name: str) -> None:
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"{name} must lie in [0,1]")
