"""Three classical criteria disagree on the same expected-loss table.

Rows are feasible actions, columns are states of nature.  Maximin utility
(minimax loss) guards the single worst column; minimax regret compares
each action to the best action per column before taking the worst case;
the Bayes rule averages columns with a prior.  A table where all three
coincide is the exception, not the rule.
"""

import numpy as np

from regretlab import ExpectedLossTable, criterion_select

losses = np.array([
    [1.0, 3.0],
    [2.0, 2.0],
])
table = ExpectedLossTable(losses)
labels = ["act 0", "act 1"]

print("expected loss table (rows actions, columns states):")
print(losses)
print()

for crit in ("minimax", "minimax_regret", "bayes"):
    kwargs = {"prior": [0.5, 0.5]} if crit == "bayes" else {}
    pick = criterion_select(table, crit, **kwargs)
    print(f"  {crit:15s} -> {labels[pick]}")
print()

# regret computation spelled out: subtract the column minimum
regrets = losses - losses.min(axis=0, keepdims=True)
print("regret table:")
print(regrets)
print(f"row maxima: {regrets.max(axis=1)}  "
      f"(act 0 wins under minimax regret)")
print()

# a skewed prior flips the Bayes pick while the worst-case picks stand
for prior in ([0.9, 0.1], [0.1, 0.9]):
    pick = criterion_select(table, "bayes", prior=prior)
    print(f"  bayes with prior {prior} -> {labels[pick]}")
print()
print("all three are invariant to adding a constant to the table or")
print("rescaling it by a positive factor:")
shifted = ExpectedLossTable(2.0 * losses + 3.0)
picks = [criterion_select(shifted, c, prior=[0.5, 0.5] if c == "bayes"
                          else None) for c in
         ("minimax", "minimax_regret", "bayes")]
print(f"  picks on 2 * L + 3: {[labels[p] for p in picks]}")
