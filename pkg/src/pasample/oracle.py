"""Exact inclusion-probability tables by brute-force enumeration.

Everything exact here is computed in rational arithmetic; Monte Carlo
estimates are stored as exact count/reps rationals and flagged
``exact=False``. These tables are the ground truth the samplers are tested
against.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np

from . import _kernels
from .design import DesignKind, DesignSpec
from .errors import (
    DegenerateDesignError,
    EnumerationTooLargeError,
    InfeasibleWeightsError,
    RejectionBudgetError,
)
from .sampling import (
    DEFAULT_MAX_ROUNDS,
    OrderedWeightArray,
    WeightedPopulation,
    _systematic_feasible,
    systematic_at,
    target_first_order,
)

DBD_MAX_SIZE = 12
DBD_MAX_M = 4
CP_MAX_SIZE = 20
RSYS_MAX_SIZE = 8


@dataclass
class InclusionTable:
    """First- and higher-order inclusion probabilities for one design."""

    m: int
    weights: tuple[Fraction, ...]
    first_order: tuple[Fraction, ...]
    joint: dict[tuple[int, ...], Fraction]
    exact: bool
    reps: int | None = None
    samples: dict[tuple[int, ...], Fraction] | None = field(default=None, repr=False)

    def pair(self, i: int, j: int) -> Fraction:
        if i == j:
            raise ValueError("joint probabilities are over distinct indices")
        return self.joint.get((min(i, j), max(i, j)), Fraction(0))

    def to_json_dict(self) -> dict:
        def enc(x: Fraction):
            return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        return {
            "m": self.m,
            "weights": [enc(w) for w in self.weights],
            "first_order": [f"{p.numerator}/{p.denominator}" for p in self.first_order],
            "joint": [
                {"tuple": list(t), "p": f"{p.numerator}/{p.denominator}"}
                for t, p in sorted(self.joint.items())
            ],
            "exact": self.exact,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def _table_from_samples(
    weights: tuple[Fraction, ...],
    m: int,
    dist: dict[tuple[int, ...], Fraction],
    exact: bool = True,
) -> InclusionTable:
    """Aggregate a sample -> probability map into an inclusion table."""
    n = len(weights)
    first = [Fraction(0)] * n
    joint: dict[tuple[int, ...], Fraction] = {}
    for sample, p in dist.items():
        for i in sample:
            first[i] += p
        for r in range(2, m + 1):
            for sub in combinations(sample, r):
                joint[sub] = joint.get(sub, Fraction(0)) + p
    return InclusionTable(
        m=m,
        weights=weights,
        first_order=tuple(first),
        joint=joint,
        exact=exact,
        samples=dist,
    )


def exact_dbd(pop: WeightedPopulation, m: int) -> InclusionTable:
    """Enumerate every ordered draw-by-draw outcome exactly."""
    t = pop.size
    if t > DBD_MAX_SIZE or m > DBD_MAX_M:
        raise EnumerationTooLargeError(
            f"draw-by-draw enumeration capped at size {DBD_MAX_SIZE}, m {DBD_MAX_M}"
        )
    if pop.positive_count < m:
        raise ValueError("fewer positive weights than the sample size")
    W = pop.total
    dist: dict[tuple[int, ...], Fraction] = {}
    for tup in permutations(range(t), m):
        p = Fraction(1)
        rem = W
        for i in tup:
            if pop.weights[i] == 0:
                p = Fraction(0)
                break
            p *= pop.weights[i] / rem
            rem -= pop.weights[i]
        if p > 0:
            key = tuple(sorted(tup))
            dist[key] = dist.get(key, Fraction(0)) + p
    return _table_from_samples(pop.weights, m, dist)


def exact_cp(pop: WeightedPopulation, m: int) -> InclusionTable:
    """Enumerate all size-m subsets under conditional Poisson weights."""
    t = pop.size
    if t > CP_MAX_SIZE:
        raise EnumerationTooLargeError(f"CP enumeration capped at size {CP_MAX_SIZE}")
    if m > t:
        raise ValueError("sample size exceeds population size")
    W = pop.total
    probs = [m * w / W for w in pop.weights]
    if any(p > 1 for p in probs):
        raise InfeasibleWeightsError("working probabilities m*w/W exceed 1")
    dist: dict[tuple[int, ...], Fraction] = {}
    total = Fraction(0)
    for sub in combinations(range(t), m):
        inside = set(sub)
        p = Fraction(1)
        for i in range(t):
            p *= probs[i] if i in inside else 1 - probs[i]
            if p == 0:
                break
        if p > 0:
            dist[sub] = p
            total += p
    if total == 0:
        raise DegenerateDesignError("every size-m subset has probability zero")
    dist = {s: p / total for s, p in dist.items()}
    return _table_from_samples(pop.weights, m, dist)


def systematic_sample_distribution(
    arr: OrderedWeightArray, m: int, circular: bool = False
) -> dict[tuple[int, ...], Fraction]:
    """Exact sample -> probability map for systematic selection on ``arr``.

    The start point u sweeps an interval; between consecutive breakpoints
    (interval boundaries shifted by whole skips) the selected sample is
    constant, so each u-subinterval contributes its length.
    """
    skip = _systematic_feasible(arr, m)
    W = arr.total
    span = W if circular else skip
    cuts = {Fraction(0), span}
    prefix = [Fraction(0)] + arr.prefix_sums()
    shifts = range(m) if not circular else range(2 * m + 1)
    for c in prefix:
        for k in shifts:
            v = c - k * skip
            if circular:
                v = v % W
            if 0 <= v < span:
                cuts.add(v)
    points = sorted(cuts)
    dist: dict[tuple[int, ...], Fraction] = {}
    for a, b in zip(points, points[1:]):
        if b == a:
            continue
        mid = (a + b) / 2
        sample = systematic_at(arr, m, mid, circular=circular)
        dist[sample] = dist.get(sample, Fraction(0)) + (b - a) / span
    return dist


def exact_systematic(
    arr: OrderedWeightArray, m: int, circular: bool = False
) -> InclusionTable:
    """Exact table for ordered systematic selection on a fixed array."""
    dist = systematic_sample_distribution(arr, m, circular=circular)
    n = arr.size
    weights = [Fraction(0)] * n
    for i, w in arr.entries:
        weights[i] = w
    return _table_from_samples(tuple(weights), m, dist)


def exact_random_systematic(
    pop: WeightedPopulation, m: int, circular: bool = False
) -> InclusionTable:
    """Average the ordered-systematic table over all array permutations."""
    t = pop.size
    if t > RSYS_MAX_SIZE:
        raise EnumerationTooLargeError(
            f"random-systematic enumeration capped at size {RSYS_MAX_SIZE}"
        )
    n_perms = 1
    for i in range(2, t + 1):
        n_perms *= i
    share = Fraction(1, n_perms)
    # Positions with identical weights yield identical position-distributions;
    # memoize on the weight sequence and remap positions to indices.
    memo: dict[tuple[Fraction, ...], dict[tuple[int, ...], Fraction]] = {}
    dist: dict[tuple[int, ...], Fraction] = {}
    for order in permutations(range(t)):
        seq = tuple(pop.weights[i] for i in order)
        pos_dist = memo.get(seq)
        if pos_dist is None:
            arr = OrderedWeightArray(tuple(enumerate(seq)))
            pos_dist = systematic_sample_distribution(arr, m, circular=circular)
            memo[seq] = pos_dist
        for positions, p in pos_dist.items():
            sample = tuple(sorted(order[pos] for pos in positions))
            dist[sample] = dist.get(sample, Fraction(0)) + p * share
    return _table_from_samples(pop.weights, m, dist)


def monte_carlo_inclusion(
    design: DesignSpec | DesignKind | str,
    pop: WeightedPopulation,
    m: int,
    reps: int,
    rng: np.random.Generator | int | None = None,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> InclusionTable:
    """Estimated inclusion table from seeded draws (order 2 joints)."""
    if reps < 1:
        raise ValueError("reps must be at least 1")
    spec = design if isinstance(design, DesignSpec) else DesignSpec.of(design)
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(spec.seed if rng is None else rng)
    kind_id = spec.kind.kernel_id
    weights = pop.as_floats()
    index_map = list(range(pop.size))
    if spec.kind is DesignKind.CHAO:
        # Validation + zero stripping as in the one-shot sampler.
        target_first_order(pop, m)
        if pop.positive_count < m:
            raise ValueError("fewer positive weights than the sample size")
        index_map = [i for i, w in enumerate(pop.weights) if w > 0]
        weights = np.array([float(pop.weights[i]) for i in index_map])
    elif spec.kind is DesignKind.CP:
        if any(m * w > pop.total for w in pop.weights):
            raise InfeasibleWeightsError("working probabilities m*w/W exceed 1")
    elif spec.kind in (DesignKind.ORDERED_SYSTEMATIC, DesignKind.RANDOM_SYSTEMATIC):
        _systematic_feasible(OrderedWeightArray.from_population(pop), m)
    if pop.positive_count < m:
        raise ValueError("fewer positive weights than the sample size")
    k = len(index_map)
    first = np.zeros(k, np.int64)
    pairs = np.zeros((k, k), np.int64)
    code = _kernels.mc_batch(
        kind_id, weights, m, reps, rng, spec.circular, max_rounds, first, pairs
    )
    if code < 0:
        raise RejectionBudgetError(max_rounds)
    n = pop.size
    first_full = [Fraction(0)] * n
    for local, i in enumerate(index_map):
        first_full[i] = Fraction(int(first[local]), reps)
    joint: dict[tuple[int, ...], Fraction] = {}
    for a in range(k):
        for b in range(a + 1, k):
            c = int(pairs[a, b])
            if c:
                joint[(index_map[a], index_map[b])] = Fraction(c, reps)
    return InclusionTable(
        m=m,
        weights=pop.weights,
        first_order=tuple(first_full),
        joint=joint,
        exact=False,
        reps=reps,
    )


@dataclass(frozen=True)
class Table1Row:
    """Closed forms for the one-heavy-element population (2, 1, ..., 1)."""

    n: int
    strpips: Fraction
    dbd: Fraction
    cp: Fraction
    diff_dbd: Fraction
    diff_cp: Fraction
    ratio_dbd: Fraction
    ratio_cp: Fraction


def table1_closed_forms(n: int) -> Table1Row:
    """Heavy-element inclusion probabilities and deviations at size n."""
    if n < 3:
        raise ValueError("closed forms need n >= 3")
    strpips = Fraction(4, n + 1)
    dbd = Fraction(2, n + 1) + Fraction(n - 1, n + 1) * Fraction(2, n)
    cp = Fraction(4 * n - 4, n * n - n + 2)
    return Table1Row(
        n=n,
        strpips=strpips,
        dbd=dbd,
        cp=cp,
        diff_dbd=Fraction(2, n * n + n),
        diff_cp=Fraction(4 * n - 12, n**3 + n + 2),
        ratio_dbd=Fraction(2 * n, 2 * n - 1),
        ratio_cp=Fraction(n * n - n + 2, n * n - 1),
    )


def check_marginalization(table: InclusionTable) -> tuple[bool, Fraction]:
    """Verify sum_{j != i} pi_ij = (m-1) * pi_i; returns (ok, max residual).

    Exact tables must have zero residual. For tables with joints beyond
    order 2 the same identity is checked one order up as well.
    """
    n = len(table.first_order)
    max_res = Fraction(0)
    for i in range(n):
        acc = Fraction(0)
        for j in range(n):
            if j != i:
                acc += table.pair(i, j)
        res = abs(acc - (table.m - 1) * table.first_order[i])
        max_res = max(max_res, res)
    ok = max_res == 0 if table.exact else max_res < Fraction(5, 1000)
    return ok, max_res
