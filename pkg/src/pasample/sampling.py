"""Fixed-size, without-replacement sampling designs with unequal probabilities.

Three sequential designs (draw-by-draw, conditional Poisson, Chao) plus the
systematic family (ordered / random) over an explicitly ordered weight
array. All samplers return a sorted tuple of distinct population indices.

Weights are exact rationals at the API surface; the samplers themselves
draw over float64 copies (see ``_kernels``), which is exact for the integer
degree weights the generators use.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import DuplicateSelectionRiskError, InfeasibleWeightsError, RejectionBudgetError

Sample = tuple[int, ...]

DEFAULT_MAX_ROUNDS = 1_000_000


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**12)
    return Fraction(value)


@dataclass(frozen=True)
class WeightedPopulation:
    """Non-negative rational weights with positive total."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be non-negative")
        if sum(self.weights) <= 0:
            raise ValueError("total weight must be positive")

    @classmethod
    def from_values(cls, values: Iterable) -> "WeightedPopulation":
        return cls(tuple(_as_fraction(v) for v in values))

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @property
    def positive_count(self) -> int:
        return sum(1 for w in self.weights if w > 0)

    def as_floats(self) -> np.ndarray:
        return np.array([float(w) for w in self.weights], dtype=np.float64)


@dataclass(frozen=True)
class OrderedWeightArray:
    """A population laid out in an explicit order for systematic selection."""

    entries: tuple[tuple[int, Fraction], ...]  # (population index, weight)

    @classmethod
    def from_population(
        cls, pop: WeightedPopulation, order: Sequence[int] | None = None
    ) -> "OrderedWeightArray":
        if order is None:
            order = range(pop.size)
        order = list(order)
        if sorted(order) != list(range(pop.size)):
            raise ValueError("order must be a permutation of the population")
        return cls(tuple((i, pop.weights[i]) for i in order))

    @classmethod
    def from_weights(cls, weights: Iterable) -> "OrderedWeightArray":
        return cls.from_population(WeightedPopulation.from_values(weights))

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def total(self) -> Fraction:
        return sum((w for _, w in self.entries), Fraction(0))

    def indices(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.entries)

    def weights_in_order(self) -> tuple[Fraction, ...]:
        return tuple(w for _, w in self.entries)

    def prefix_sums(self) -> list[Fraction]:
        sums, acc = [], Fraction(0)
        for _, w in self.entries:
            acc += w
            sums.append(acc)
        return sums

    def max_weight(self) -> Fraction:
        return max(w for _, w in self.entries)


def target_first_order(pop: WeightedPopulation, m: int) -> list[Fraction]:
    """Strictly size-proportional inclusion probabilities m*w_i/W."""
    if not 1 <= m <= pop.size:
        raise ValueError(f"sample size {m} out of range for {pop.size} elements")
    W = pop.total
    probs = [m * w / W for w in pop.weights]
    if any(p > 1 for p in probs):
        bad = max(range(pop.size), key=lambda i: probs[i])
        raise InfeasibleWeightsError(
            f"m*w/W = {probs[bad]} > 1 for element {bad}; "
            "strict proportionality is impossible"
        )
    return probs


def _check_fixed_size(pop: WeightedPopulation, m: int) -> None:
    if m < 1:
        raise ValueError("sample size must be at least 1")
    if pop.positive_count < m:
        raise ValueError(
            f"cannot draw {m} distinct elements from "
            f"{pop.positive_count} with positive weight"
        )


def sample_draw_by_draw(
    pop: WeightedPopulation, m: int, rng: np.random.Generator
) -> Sample:
    """Select m units one by one, each proportional to its start-of-step
    weight among the units not yet selected."""
    _check_fixed_size(pop, m)
    out = np.empty(m, dtype=np.int64)
    scratch = pop.as_floats()
    _kernels.dbd_draw(scratch, m, rng, out)
    return tuple(sorted(int(i) for i in out))


def sample_conditional_poisson(
    pop: WeightedPopulation,
    m: int,
    rng: np.random.Generator,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> Sample:
    """Independent Bernoulli(m*w_i/W) rounds, keeping the first round with
    exactly m successes."""
    _check_fixed_size(pop, m)
    W = pop.total
    if any(m * w > W for w in pop.weights):
        raise InfeasibleWeightsError(
            "conditional Poisson working probabilities m*w/W exceed 1"
        )
    out = np.empty(m, dtype=np.int64)
    rounds = _kernels.cp_draw(pop.as_floats(), m, rng, out, max_rounds)
    if rounds < 0:
        raise RejectionBudgetError(max_rounds)
    return tuple(sorted(int(i) for i in out))


def sample_chao(pop: WeightedPopulation, m: int, rng: np.random.Generator) -> Sample:
    """Chao's sequential procedure; first-order inclusion is exactly m*w_i/W."""
    _check_fixed_size(pop, m)
    W = pop.total
    if any(m * w > W for w in pop.weights):
        raise InfeasibleWeightsError(
            "m*w/W > 1 for some element; Chao's procedure targets strict "
            "proportionality and cannot proceed"
        )
    keep = [i for i, w in enumerate(pop.weights) if w > 0]
    w = np.array([float(pop.weights[i]) for i in keep], dtype=np.float64)
    out = np.empty(m, dtype=np.int64)
    scratch = np.empty((2, len(keep)), dtype=np.float64)
    _kernels.chao_draw(w, m, rng, out, scratch[0], scratch[1])
    return tuple(sorted(keep[int(i)] for i in out))


def _systematic_feasible(arr: OrderedWeightArray, m: int) -> Fraction:
    """Validate the no-duplicate condition and return the skip W/m."""
    if m < 1:
        raise ValueError("sample size must be at least 1")
    W = arr.total
    if W <= 0:
        raise ValueError("total weight must be positive")
    skip = W / m
    if arr.max_weight() > skip:
        raise DuplicateSelectionRiskError(
            f"an entry weight exceeds W/m = {skip}; one entry could be "
            "selected twice"
        )
    return skip


def systematic_at(
    arr: OrderedWeightArray, m: int, u, circular: bool = False
) -> Sample:
    """Deterministic systematic selection for a given start point u.

    Selects the entries whose cumulative-weight intervals contain the m
    points u + k*(W/m). Linear traversal by default; with ``circular`` the
    points wrap modulo W and u ranges over [0, W).
    """
    skip = _systematic_feasible(arr, m)
    W = arr.total
    u = _as_fraction(u) if not isinstance(u, float) else u
    hi = W if circular else skip
    if not 0 <= u < hi:
        raise ValueError(f"u must lie in [0, {hi}), got {u}")
    prefix = arr.prefix_sums()
    picks = []
    for k in range(m):
        point = u + k * skip
        if circular:
            point = point % W
        idx = bisect_right(prefix, point)
        picks.append(arr.entries[idx][0])
    if len(set(picks)) != m:
        raise DuplicateSelectionRiskError(
            f"systematic selection produced duplicates at u={u}"
        )
    return tuple(sorted(picks))


def sample_ordered_systematic(
    arr: OrderedWeightArray, m: int, rng: np.random.Generator, circular: bool = False
) -> Sample:
    """Systematic selection from a fixed array order with uniform start."""
    skip = _systematic_feasible(arr, m)
    hi = arr.total if circular else skip
    u = rng.random() * float(hi)
    return systematic_at(arr, m, u, circular=circular)


def sample_random_systematic(
    pop: WeightedPopulation, m: int, rng: np.random.Generator, circular: bool = False
) -> Sample:
    """Uniformly shuffle the population into an array, then select
    systematically."""
    _check_fixed_size(pop, m)
    order = [int(i) for i in rng.permutation(pop.size)]
    arr = OrderedWeightArray.from_population(pop, order)
    return sample_ordered_systematic(arr, m, rng, circular=circular)
