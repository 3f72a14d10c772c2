"""Midpoint imputation when a share of outcomes is never observed.

Only a fraction P1 of subjects have recorded outcomes; nothing is known
about the missing mean beyond [0, 1].  Imputing 1/2 for the missing part
gives est = P1 * observed_mean + P0 / 2, and its worst-case square-loss
regret has the closed form (P1^2 / K + P0^2) / 4 where K counts observed
subjects.  More data only helps through the first term: the P0^2 / 4
floor is the price of the missing share and no sample size removes it.
"""

from regretlab import (MissingDataSetting, counterfactual_midpoints,
                       design_max_regret_table, midpoint_estimate,
                       midpoint_max_regret)

print("worst-case regret by observability share and observed count")
print()
print("  share  count   bound      floor P0^2/4")
settings = []
for share, count in [(1.0, 10), (1.0, 40), (0.8, 25), (0.8, 100),
                     (0.5, 50), (0.5, 1000)]:
    s = MissingDataSetting(share, count)
    settings.append(s)
    floor = (1.0 - share) ** 2 / 4.0
    print(f"  {share:5.2f}  {count:5d}   {midpoint_max_regret(s):.6f}   "
          f"{floor:.6f}")

print()
print("ranking candidate designs by the bound (ties prefer more data):")
for rank, (s, r) in enumerate(design_max_regret_table(settings), start=1):
    print(f"  {rank}. share={s.p_obs_share:.2f} count={s.observed_count}"
          f"  ->  {r:.6f}")

print()
# two-arm setting: outcomes observed only for the arm actually assigned
pred_a, pred_b = counterfactual_midpoints(mean_a=0.5, share_a=0.6,
                                          mean_b=0.25)
print("counterfactual pair, 60% assigned to arm a:")
print(f"  observed mean a = 0.50, observed mean b = 0.25")
print(f"  midpoint predictions: a -> {pred_a}, b -> {pred_b}")
print(f"  (each arm's missing share is imputed at 1/2)")

# degenerate case: nothing observed
empty = MissingDataSetting(0.0, None)
print()
print(f"share 0: estimate is {midpoint_estimate(0.9, empty)} regardless of "
      f"input, bound {midpoint_max_regret(empty)}")
