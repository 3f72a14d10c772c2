"""
Why pool across cells at all?
=============================

The estimate fed to the treatment rule is a weighted average of the two
cell means.  Putting weight only on the target cell (w0 = 1) is unbiased
but noisy; borrowing from the reference cell shrinks the variance at the
price of bias whenever the two probabilities differ.

This script makes the tradeoff concrete for the (10, 10) design:

  * at a state with p1 = p0 pooling is free variance reduction,
  * at a state near the edge of the variation band the bias bites,
  * the max over the whole feasible band is minimized strictly inside
    (0.5, 1.0).
"""

import os

import numpy as np

from regretlab import (KernelWeights, SampleDesign, State, WelfareModel,
                       build_grid, exact_expected_regret, max_regret_profile)
from regretlab.state_space import BernoulliStateSpace, VariationBound

design = SampleDesign((10, 10))
welfare = WelfareModel.neutralizing(0.6)
space = BernoulliStateSpace(lower=(0.2, 0.0), upper=(0.6, 1.0),
                            variation=(VariationBound(1, 0, -0.1, 0.1),))

w0s = np.round(np.arange(0.5, 1.001, 0.05), 3)
states = [State((0.35, 0.35)),   # cells agree: pooling is free
          State((0.35, 0.45)),   # edge of the band: bias costs
          State((0.45, 0.35))]

print("expected regret at selected states, design (10, 10)")
print()
header = "   w0 " + "".join(f"   p=({s.p[0]:.2f},{s.p[1]:.2f})" for s in states)
print(header)
for w0 in w0s:
    w = KernelWeights.binary(float(w0))
    row = f"  {w0:.2f}"
    for s in states:
        row += f"   {exact_expected_regret(w, design, s, welfare):13.5f}"
    print(row)

print()
grid = build_grid(space, (50, 50))
workers = min(8, os.cpu_count() or 1)
weights = [KernelWeights.binary(float(w0)) for w0 in w0s]
vals, _ = max_regret_profile(weights, design, grid, welfare, workers=workers)
best = int(np.argmin(vals))
print(f"max regret over the {len(grid.states)}-state band:")
for w0, v in zip(w0s, vals):
    mark = "  <- min" if w0 == w0s[best] else ""
    print(f"  w0={w0:.2f}  {v:.5f}{mark}")

print()
print(f"interior optimum at w0 = {w0s[best]:.2f}: neither extreme weight "
      f"survives the max over the band")
