"""Point predictors evaluated by the regret engine.

Weighted-average (kernel) estimators pool success counts across covariate
cells; the Hodges-Lehmann predictor shrinks a sample mean toward 1/2 by an
amount that equalizes square-loss regret across Bernoulli states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class SampleDesign:
    """Predetermined per-cell sample sizes."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(n) for n in self.sizes))
        if any(n < 0 for n in self.sizes):
            raise ValueError("sample sizes must be nonnegative")
        if not any(n > 0 for n in self.sizes):
            raise ValueError("at least one cell must have a positive sample size")

    @property
    def cells(self) -> int:
        return len(self.sizes)


@dataclass(frozen=True)
class OutcomeCounts:
    """Observed success counts per cell (the sample realization)."""

    n: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(int(v) for v in self.n))
        if any(v < 0 for v in self.n):
            raise ValueError("counts must be nonnegative")

    def validate_against(self, design: SampleDesign) -> None:
        if len(self.n) != design.cells:
            raise ValueError("counts and design have different cell counts")
        for v, N in zip(self.n, design.sizes):
            if v > N:
                raise ValueError(f"count {v} exceeds cell size {N}")


@dataclass(frozen=True)
class KernelWeights:
    """Nonnegative cell weights, normalized to sum to 1 at construction.

    For the binary constructor with w0 in [0.5, 1], 1 - w0 is exact in
    floating point (Sterbenz) and the sum is exactly 1.0, so normalization
    leaves the given values untouched bit for bit.
    """

    w: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(v) for v in self.w)
        if any(v < 0.0 for v in w):
            raise ValueError("weights must be nonnegative")
        s = 0.0
        for v in w:
            s += v
        if s <= 0.0:
            raise ValueError("weights must have a positive sum")
        object.__setattr__(self, "w", tuple(v / s for v in w))

    @classmethod
    def binary(cls, w0: float) -> "KernelWeights":
        return cls((float(w0), 1.0 - float(w0)))

    @property
    def w0(self) -> float:
        return self.w[0]


def weighted_average_estimate(counts: OutcomeCounts, design: SampleDesign,
                              weights: KernelWeights) -> float:
    """(sum_k w_k n_k) / (sum_k w_k N_k), the pooled point estimate.

    Raises ValueError when every positively weighted cell is empty (the
    denominator would be zero); a cell with N[k] = 0 is fine as long as
    some positive-weight cell has data.
    """
    counts.validate_against(design)
    if len(weights.w) != design.cells:
        raise ValueError("weights and design have different cell counts")
    num = 0.0
    den = 0.0
    for wk, nk, Nk in zip(weights.w, counts.n, design.sizes):
        num += wk * nk
        den += wk * Nk
    if den <= 0.0:
        raise ValueError("all positively weighted cells are empty")
    return num / den


def hodges_lehmann_estimate(sample_mean: float, N: int) -> float:
    """Shrink a sample mean toward 1/2: (mean*sqrt(N) + 1/2) / (sqrt(N) + 1).

    The output is strictly inside (0,1) and its square-loss regret against
    Bernoulli states is constant in the true p, at 1/(4(sqrt(N)+1)^2).
    """
    if not 0.0 <= sample_mean <= 1.0:
        raise ValueError("sample mean must lie in [0,1]")
    if N < 1:
        raise ValueError("N must be a positive integer")
    r = math.sqrt(N)
    return (sample_mean * r + 0.5) / (r + 1.0)
