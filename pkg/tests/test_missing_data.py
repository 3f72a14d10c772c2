import numpy as np
import pytest

from regretlab import (MissingDataSetting, counterfactual_midpoints,
                       design_max_regret_table, midpoint_estimate,
                       midpoint_max_regret)


def test_estimate_no_missing():
    s = MissingDataSetting(1.0, 10)
    assert midpoint_estimate(0.5, s) == pytest.approx(0.5)


def test_estimate_partial_missing():
    s = MissingDataSetting(0.8, 25)
    assert midpoint_estimate(0.4, s) == pytest.approx(0.42)


def test_estimate_all_missing():
    s = MissingDataSetting(0.0, None)
    assert midpoint_estimate(None, s) == 0.5
    assert midpoint_estimate(0.9, s) == 0.5


def test_estimate_is_interval_midpoint():
    # identification interval is [m*P1, m*P1 + P0]
    s = MissingDataSetting(0.7, 12)
    m = 0.3
    lo = m * 0.7
    hi = m * 0.7 + 0.3
    assert midpoint_estimate(m, s) == pytest.approx((lo + hi) / 2)


def test_max_regret_complete_data():
    assert midpoint_max_regret(MissingDataSetting(1.0, 25)) == pytest.approx(0.01)


def test_max_regret_partial():
    v = midpoint_max_regret(MissingDataSetting(0.8, 100))
    assert v == pytest.approx(0.0116)


def test_max_regret_no_data():
    assert midpoint_max_regret(MissingDataSetting(0.0, None)) == 0.25


def test_max_regret_decreasing_in_k():
    vals = [midpoint_max_regret(MissingDataSetting(0.8, k))
            for k in (5, 10, 50, 500)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_max_regret_complete_data_shrinks_as_quarter_over_k():
    for k in (1, 10, 250):
        assert midpoint_max_regret(MissingDataSetting(1.0, k)) == \
            pytest.approx(0.25 / k)


def test_setting_validation():
    with pytest.raises(ValueError):
        MissingDataSetting(1.2, 10)
    with pytest.raises(ValueError):
        MissingDataSetting(0.5, None)  # count required with data observed
    with pytest.raises(ValueError):
        MissingDataSetting(0.5, 0)


def test_brute_force_bound_check_single_setting():
    # exact Binomial variance and worst missing mean; the full battery of
    # settings runs in the acceptance suite
    p1, k = 0.8, 25
    s = MissingDataSetting(p1, k)
    p0 = 1.0 - p1
    worst = 0.0
    for p in np.linspace(0, 1, 101):
        for m in (0.0, 1.0):
            v = p1 * p1 * p * (1 - p) / k
            b = (0.5 - m) * p0
            worst = max(worst, v + b * b)
    assert worst == pytest.approx(midpoint_max_regret(s), abs=2e-4)


def test_counterfactual_hand_values():
    assert counterfactual_midpoints(0.5, 0.6, 0.25) == \
        pytest.approx((0.5, 0.4))


def test_counterfactual_fully_observed_arm():
    pred_a, pred_b = counterfactual_midpoints(0.3, 1.0, None)
    assert pred_a == pytest.approx(0.3)
    assert pred_b == pytest.approx(0.5)


def test_counterfactual_symmetry():
    assert counterfactual_midpoints(0.5, 0.37, 0.5) == \
        pytest.approx((0.5, 0.5))


def test_counterfactual_missing_mean_with_positive_share():
    with pytest.raises(ValueError):
        counterfactual_midpoints(None, 0.6, 0.25)
    with pytest.raises(ValueError):
        counterfactual_midpoints(0.5, 0.6, None)


def test_design_table_ranking():
    t = design_max_regret_table([MissingDataSetting(1.0, 25),
                                 MissingDataSetting(0.8, 100)])
    assert t[0][0].p_obs_share == 1.0
    assert t[0][1] == pytest.approx(0.0100)
    assert t[1][1] == pytest.approx(0.0116)


def test_design_table_singleton():
    t = design_max_regret_table([MissingDataSetting(0.9, 50)])
    assert len(t) == 1


def test_design_table_tie_order_is_stable():
    a = MissingDataSetting(0.9, 50)
    b = MissingDataSetting(0.9, 50)
    t1 = design_max_regret_table([a, b])
    t2 = design_max_regret_table([a, b])
    assert [(r[0].p_obs_share, r[0].observed_count, r[1]) for r in t1] == \
        [(r[0].p_obs_share, r[0].observed_count, r[1]) for r in t2]


def test_design_table_tie_prefers_larger_k():
    # same bound can arise from different settings; larger K ranks first
    lo = MissingDataSetting(1.0, 4)    # 0.0625
    hi = MissingDataSetting(0.0, None)  # 0.25
    mid_small = MissingDataSetting(1.0, 16)   # 0.015625
    t = design_max_regret_table([hi, lo, mid_small])
    assert [r[0].observed_count for r in t] == [16, 4, None]
