import numpy as np
import pytest

from regretlab import (Action, WelfareModel, choose_treatment, mcr_regret,
                       mse_regret, regret_gap, square_loss_regret,
                       state_regret, threshold)


def test_threshold_neutral_06():
    w = WelfareModel.neutralizing(0.6)
    assert threshold(w) == pytest.approx(0.4)


def test_threshold_neutral_05():
    assert threshold(WelfareModel.neutralizing(0.5)) == pytest.approx(0.5)


def test_threshold_general_welfare():
    w = WelfareModel(u_a0=0.9, u_a1=0.2, u_b0=0.4, u_b1=0.8)
    assert threshold(w) == pytest.approx(5 / 11)


def test_normalization_preserves_threshold():
    w = WelfareModel(u_a0=0.9, u_a1=0.2, u_b0=0.4, u_b1=0.8)
    n = w.normalized()
    assert n.u_a0 == pytest.approx(1.0)
    assert n.u_a1 == pytest.approx(0.0)
    assert threshold(n) == pytest.approx(threshold(w))


def test_choose_treatment_tie_goes_to_surveillance():
    w = WelfareModel.neutralizing(0.6)
    # the comparison is a raw <= on doubles, no epsilon, so the exact
    # threshold value itself must land on A
    assert choose_treatment(threshold(w), w) is Action.A
    assert choose_treatment(0.0, w) is Action.A
    assert choose_treatment(0.5, w) is Action.B


def test_choose_treatment_depends_only_on_comparison():
    w = WelfareModel.neutralizing(0.6)
    thr = threshold(w)
    eps = 1e-12
    assert choose_treatment(thr - eps, w) is Action.A
    assert choose_treatment(thr + eps, w) is Action.B


def test_state_regret_hand_values():
    w = WelfareModel.neutralizing(0.6)
    assert state_regret(Action.B, 0.3, w) == pytest.approx(0.1)
    assert state_regret(Action.B, 0.55, w) == 0.0
    assert state_regret(Action.A, 0.3, w) == 0.0
    assert state_regret(Action.A, 0.55, w) == pytest.approx(0.15)


def test_state_regret_vanishes_at_threshold():
    w = WelfareModel.neutralizing(0.6)
    thr = threshold(w)
    assert state_regret(Action.A, thr, w) == 0.0
    assert state_regret(Action.B, thr, w) == 0.0


def test_state_regret_needs_neutral_welfare():
    w = WelfareModel(u_a0=0.9, u_a1=0.2, u_b0=0.4, u_b1=0.8)
    with pytest.raises(ValueError):
        state_regret(Action.A, 0.3, w)
    with pytest.raises(ValueError):
        regret_gap(0.3, w)


def test_welfare_validation():
    with pytest.raises(ValueError):
        WelfareModel(u_a0=0.5, u_a1=0.2, u_b0=0.6, u_b1=0.8)  # u_a0 <= u_b0
    with pytest.raises(ValueError):
        WelfareModel(u_a0=0.9, u_a1=0.8, u_b0=0.4, u_b1=0.8)  # u_b1 <= u_a1
    with pytest.raises(ValueError):
        WelfareModel.neutralizing(0.0)
    with pytest.raises(ValueError):
        WelfareModel.neutralizing(1.0)


def test_mse_hand_values():
    assert mse_regret(0.0, 0.0) == 0.0
    assert mse_regret(1.0, 0.3) == pytest.approx(0.49)
    assert mse_regret(0.5, 0.5) == pytest.approx(0.25)


def test_mcr_hand_values():
    assert mcr_regret(1.0, 0.7) == pytest.approx(0.0)
    assert mcr_regret(0.3, 0.5) == pytest.approx(0.0)
    assert mcr_regret(0.0, 0.7) == pytest.approx(0.4)


def test_regret_identities_coarse():
    # the full 101x101 sweep lives in the acceptance suite
    qs = np.linspace(0, 1, 11)
    ps = np.linspace(0, 1, 11)
    for q in qs:
        for p in ps:
            lhs = mcr_regret(q, p) - mse_regret(q, p)
            rhs = p * (1 - p) - min(p, 1 - p)
            assert lhs == pytest.approx(rhs, abs=1e-12)
            assert mse_regret(q, p) == pytest.approx(
                q * (1 - q) + (p - q) ** 2, abs=1e-12)


def test_square_loss_regret_is_variance_plus_bias_squared():
    assert square_loss_regret(0.02, 0.1) == pytest.approx(0.03)
    with pytest.raises(ValueError):
        square_loss_regret(-0.01, 0.1)


def test_unit_interval_validation():
    with pytest.raises(ValueError):
        mse_regret(1.2, 0.5)
    with pytest.raises(ValueError):
        mcr_regret(0.5, -0.2)
    w = WelfareModel.neutralizing(0.6)
    with pytest.raises(ValueError):
        choose_treatment(1.5, w)
