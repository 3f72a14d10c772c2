"""Where the treatment decision flips, and what a wrong call costs.

The planner picks surveillance (A) or aggressive treatment (B) from a point
estimate of the event probability.  With neutralizing welfare u_b = 0.6 the
indifference point sits at 1 - u_b = 0.4; below it surveillance is optimal,
above it treatment is.  The regret gap |(1 - p) - u_b| is the per-person
welfare loss when the wrong side is chosen at state p.
"""

import numpy as np

from regretlab import (Action, WelfareModel, choose_treatment, regret_gap,
                       state_regret, threshold)

welfare = WelfareModel.neutralizing(0.6)
thr = threshold(welfare)
print(f"welfare: u_a0=1, u_a1=0, u_b0=u_b1=0.6  ->  threshold p# = {thr}")
print()

print("estimate  action")
for est in [0.0, 0.25, 0.39, 0.4, 0.41, 0.55, 1.0]:
    act = choose_treatment(est, welfare)
    note = "  (tie goes to surveillance)" if est == thr else ""
    print(f"  {est:5.2f}   {act.value}{note}")
print()

# cost of each wrong call across the state axis
print("   p    gap      regret if A chosen   regret if B chosen")
for p in np.linspace(0.2, 0.6, 9):
    g = regret_gap(p, welfare)
    ra = state_regret(Action.A, p, welfare)
    rb = state_regret(Action.B, p, welfare)
    print(f"  {p:.2f}  {g:.3f}   {ra:18.3f}   {rb:18.3f}")

print()
print("only the action that is wrong at p carries regret; at p = p# the")
print("gap is zero, so no estimator can lose anything there")
