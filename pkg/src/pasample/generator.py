"""Growing-graph generators parameterized by sampling design.

A generator starts from the complete graph on m vertices and, at each
step, draws m distinct existing vertices (weights = current degrees) with
its design, then attaches the newborn to them. The first step is forced
for every design (m distinct targets out of m existing vertices) and
consumes no randomness.

Also here: outcome-tree enumeration over isomorphism classes for small n
and the wheel-minus-arc joint-probability checks that separate ordered
from random systematic generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

import numpy as np

from . import _kernels
from .design import DesignKind, DesignSpec, OrderPolicy
from .errors import EnumerationTooLargeError, RejectionBudgetError
from .graph import Graph, complete_graph
from .oracle import (
    exact_cp,
    exact_dbd,
    exact_random_systematic,
    systematic_sample_distribution,
)
from .sampling import (
    DEFAULT_MAX_ROUNDS,
    OrderedWeightArray,
    Sample,
    WeightedPopulation,
    sample_chao,
    sample_conditional_poisson,
    sample_draw_by_draw,
    sample_ordered_systematic,
    sample_random_systematic,
)

OUTCOME_MAX_N = 7


@dataclass(frozen=True)
class GrowthParams:
    """Final size n, edges per newborn m, and the initial clique size m0 = m."""

    n: int
    m: int
    m0: int | None = None

    def __post_init__(self):
        m0 = self.m if self.m0 is None else self.m0
        object.__setattr__(self, "m0", m0)
        if not 1 <= self.m == m0 <= self.n:
            raise ValueError(
                f"need n >= m0 = m >= 1, got n={self.n}, m={self.m}, m0={m0}"
            )


def _expected_edges(n: int, m: int) -> int:
    return m * (m - 1) // 2 + (n - m) * m


def _validate_design(design: DesignSpec, m: int) -> None:
    if design.order_policy is OrderPolicy.ROMANTIC_CYCLE and m != 2:
        raise ValueError("the romantic insertion policy requires m = 2")


def _initial_array(policy: OrderPolicy, g: Graph) -> OrderedWeightArray:
    degrees = g.degrees
    ids = list(range(g.vertex_count))
    if policy is OrderPolicy.DEGREE_DESCENDING:
        ids.sort(key=lambda i: (-degrees[i], i))
    return OrderedWeightArray(tuple((i, Fraction(degrees[i])) for i in ids))


def _middle_index(weights: list[Fraction]) -> int:
    """Leftmost insertion index minimizing |left sum - right sum|."""
    total = sum(weights, Fraction(0))
    left = Fraction(0)
    best_idx, best_gap = 0, abs(total)
    for p in range(len(weights) + 1):
        gap = abs(left - (total - left))
        if gap < best_gap:
            best_idx, best_gap = p, gap
        if p < len(weights):
            left += weights[p]
    return best_idx


def ordered_array_update(
    policy: OrderPolicy,
    arr: OrderedWeightArray,
    newborn: int,
    targets: Sample,
) -> OrderedWeightArray:
    """Bump target weights and place the newborn per the insertion policy.

    DegreeDescending re-sorts by (weight desc, id asc); AgeOrder appends
    rightmost; RomanticCycle inserts at the repeating positions
    [left, right, middle, middle] keyed by newborn id mod 4, where middle
    is the leftmost index balancing the left/right weight sums.
    """
    tset = set(targets)
    entries = [(i, w + 1 if i in tset else w) for i, w in arr.entries]
    newcomer = (newborn, Fraction(len(targets)))
    if policy is OrderPolicy.AGE_ORDER:
        entries.append(newcomer)
    elif policy is OrderPolicy.DEGREE_DESCENDING:
        entries.append(newcomer)
        entries.sort(key=lambda e: (-e[1], e[0]))
    elif policy is OrderPolicy.ROMANTIC_CYCLE:
        slot = newborn % 4
        if slot == 0:
            entries.insert(0, newcomer)
        elif slot == 1:
            entries.append(newcomer)
        else:
            entries.insert(_middle_index([w for _, w in entries]), newcomer)
    else:
        raise ValueError(f"unknown policy {policy}")
    return OrderedWeightArray(tuple(entries))


def attachment_step(
    g: Graph,
    m: int,
    design: DesignSpec,
    rng: np.random.Generator,
    state: OrderedWeightArray | None = None,
) -> Sample:
    """One preferential-attachment selection on the current graph.

    For the ordered systematic design the array state is derived from the
    graph when possible (degree order, age order); the romantic policy is
    path-dependent, so a ``state`` array must be supplied unless the graph
    is the starting clique.
    """
    _validate_design(design, m)
    n = g.vertex_count
    if n == m:
        return tuple(range(m))
    pop = WeightedPopulation.from_values(g.degrees)
    kind = design.kind
    if kind is DesignKind.CHAO:
        return sample_chao(pop, m, rng)
    if kind is DesignKind.DBD:
        return sample_draw_by_draw(pop, m, rng)
    if kind is DesignKind.CP:
        return sample_conditional_poisson(pop, m, rng)
    if kind is DesignKind.RANDOM_SYSTEMATIC:
        return sample_random_systematic(pop, m, rng, circular=design.circular)
    if state is None:
        if design.order_policy is OrderPolicy.ROMANTIC_CYCLE:
            raise ValueError(
                "the romantic array order is path-dependent; pass the "
                "current array state"
            )
        state = _initial_array(design.order_policy, g)
    return sample_ordered_systematic(state, m, rng, circular=design.circular)


def generate(params: GrowthParams, design: DesignSpec) -> Graph:
    """Grow a graph of params.n vertices; deterministic given design.seed."""
    _validate_design(design, params.m)
    n, m = params.n, params.m
    rng = np.random.default_rng(design.seed)
    if design.kind in (DesignKind.CHAO, DesignKind.DBD, DesignKind.CP):
        edges = np.empty((_expected_edges(n, m), 2), dtype=np.int64)
        code = _kernels.grow_edges(
            design.kind.kernel_id, n, m, rng, DEFAULT_MAX_ROUNDS, edges
        )
        if code < 0:
            raise RejectionBudgetError(DEFAULT_MAX_ROUNDS)
        g = Graph(n)
        for u, v in edges:
            g.add_edge(int(u), int(v))
        return g
    g = complete_graph(m)
    arr = (
        _initial_array(design.order_policy, g)
        if design.kind is DesignKind.ORDERED_SYSTEMATIC
        else None
    )
    for t in range(m, n):
        if t == m:
            targets: Sample = tuple(range(m))
        elif design.kind is DesignKind.RANDOM_SYSTEMATIC:
            pop = WeightedPopulation.from_values(g.degrees)
            targets = sample_random_systematic(pop, m, rng, circular=design.circular)
        else:
            targets = sample_ordered_systematic(arr, m, rng, circular=design.circular)
        g.add_newborn(targets)
        if arr is not None:
            arr = ordered_array_update(design.order_policy, arr, t, targets)
    return g


# ---------------------------------------------------------------------------
# Outcome distributions over isomorphism classes
# ---------------------------------------------------------------------------

def canonical_certificate(g: Graph) -> str:
    """Isomorphism-class certificate by exhaustive degree-respecting
    relabeling; only intended for small graphs (n <= 7)."""
    n = g.vertex_count
    if n > OUTCOME_MAX_N:
        raise EnumerationTooLargeError(f"canonical labeling capped at n={OUTCOME_MAX_N}")
    degrees = g.degrees
    order = sorted(range(n), key=lambda v: (-degrees[v], v))
    # New positions grouped by degree; vertices may permute within a group.
    groups: list[list[int]] = []
    positions: list[list[int]] = []
    for pos, v in enumerate(order):
        if groups and degrees[v] == degrees[groups[-1][0]]:
            groups[-1].append(v)
            positions[-1].append(pos)
        else:
            groups.append([v])
            positions.append([pos])
    edges = list(g.edges())
    best: tuple | None = None
    for perms in product(*(permutations(p) for p in positions)):
        label = [0] * n
        for grp, pos in zip(groups, perms):
            for v, p in zip(grp, pos):
                label[v] = p
        relabeled = tuple(
            sorted((label[u], label[v]) if label[u] < label[v] else (label[v], label[u])
                   for u, v in edges)
        )
        if best is None or relabeled < best:
            best = relabeled
    return ",".join(f"{u}-{v}" for u, v in best) if best else ""


@dataclass
class OutcomeDistribution:
    """Probability of each isomorphism class a generator can produce."""

    classes: dict[str, Fraction]
    exact: bool
    representatives: dict[str, Graph]
    reps: int | None = None

    def probability(self, g: Graph) -> Fraction:
        return self.classes.get(canonical_certificate(g), Fraction(0))


def _step_distribution(
    design: DesignSpec, g: Graph, arr_ids: tuple[int, ...] | None
) -> dict[Sample, Fraction]:
    degrees = g.degrees
    pop = WeightedPopulation.from_values(degrees)
    if design.kind is DesignKind.DBD:
        return exact_dbd(pop, 2).samples
    if design.kind is DesignKind.CP:
        return exact_cp(pop, 2).samples
    if design.kind is DesignKind.RANDOM_SYSTEMATIC:
        return exact_random_systematic(pop, 2, circular=design.circular).samples
    arr = OrderedWeightArray(tuple((i, Fraction(degrees[i])) for i in arr_ids))
    return systematic_sample_distribution(arr, 2, circular=design.circular)


def outcome_distribution(
    params: GrowthParams,
    design: DesignSpec,
    reps: int | None = None,
) -> OutcomeDistribution:
    """Distribution of the generator's final graph up to isomorphism.

    Exact (tree enumeration with per-step oracle distributions) for the
    draw-by-draw, conditional Poisson, and systematic designs; Chao has no
    exact joint oracle, so it needs ``reps`` for a Monte Carlo estimate.
    Passing ``reps`` forces Monte Carlo for any design.
    """
    _validate_design(design, params.m)
    if params.n > OUTCOME_MAX_N:
        raise EnumerationTooLargeError(
            f"outcome distributions capped at n={OUTCOME_MAX_N}"
        )
    if reps is not None:
        counts: dict[str, int] = {}
        repr_graphs: dict[str, Graph] = {}
        seeds = np.random.SeedSequence(design.seed).spawn(reps)
        for s in seeds:
            d = DesignSpec(
                kind=design.kind,
                order_policy=design.order_policy,
                circular=design.circular,
                seed=int(s.generate_state(1)[0]),
            )
            g = generate(params, d)
            cert = canonical_certificate(g)
            counts[cert] = counts.get(cert, 0) + 1
            repr_graphs.setdefault(cert, g)
        classes = {c: Fraction(k, reps) for c, k in counts.items()}
        return OutcomeDistribution(classes, exact=False, representatives=repr_graphs, reps=reps)
    if design.kind is DesignKind.CHAO:
        raise ValueError(
            "Chao's joint probabilities have no exact oracle here; pass reps "
            "for a Monte Carlo estimate"
        )
    if params.m != 2:
        raise EnumerationTooLargeError("exact outcome trees are built for m = 2")
    m, n = params.m, params.n
    g0 = complete_graph(m)
    ids0 = tuple(range(m)) if design.kind is DesignKind.ORDERED_SYSTEMATIC else None
    # State: canonical (edge set, array order) -> (graph, prob)
    states: dict[tuple, tuple[Graph, tuple[int, ...] | None, Fraction]] = {
        (frozenset(g0.edges()), ids0): (g0, ids0, Fraction(1))
    }
    for t in range(m, n):
        nxt: dict[tuple, tuple[Graph, tuple[int, ...] | None, Fraction]] = {}
        for (g, ids, p) in states.values():
            if t == m:
                dist = {tuple(range(m)): Fraction(1)}
            else:
                dist = _step_distribution(design, g, ids)
            for sample, sp in dist.items():
                child = g.copy()
                child.add_newborn(sample)
                child_ids = (
                    _updated_ids(design.order_policy, g, ids, t, sample)
                    if ids is not None
                    else None
                )
                key = (frozenset(child.edges()), child_ids)
                prob = p * sp
                if key in nxt:
                    prev = nxt[key]
                    nxt[key] = (prev[0], prev[1], prev[2] + prob)
                else:
                    nxt[key] = (child, child_ids, prob)
        states = nxt
    classes: dict[str, Fraction] = {}
    repr_graphs = {}
    for (g, _, p) in states.values():
        cert = canonical_certificate(g)
        classes[cert] = classes.get(cert, Fraction(0)) + p
        repr_graphs.setdefault(cert, g)
    return OutcomeDistribution(classes, exact=True, representatives=repr_graphs)


def _updated_ids(
    policy: OrderPolicy,
    g_before: Graph,
    ids: tuple[int, ...],
    newborn: int,
    targets: Sample,
) -> tuple[int, ...]:
    arr = OrderedWeightArray(
        tuple((i, Fraction(g_before.degrees[i])) for i in ids)
    )
    return ordered_array_update(policy, arr, newborn, targets).indices()


# ---------------------------------------------------------------------------
# Wheel-minus-arc asymptotics
# ---------------------------------------------------------------------------

def wheel_age_weights(t: int, center_position: int = 0) -> list[int]:
    """Age-ordered degree array of the wheel-minus-arc graph on t vertices.

    ``center_position`` selects which growth path produced the wheel: the
    hub born first (canonical), second, or third; those are the only m=2
    paths that leave the hub with degree t-1.
    """
    if t < 4:
        raise ValueError(f"wheel-minus-arc needs t >= 4, got {t}")
    if center_position == 0:
        return [t - 1, 2] + [3] * (t - 3) + [2]
    if center_position == 1:
        return [2, t - 1] + [3] * (t - 3) + [2]
    if center_position == 2:
        return [2, 3, t - 1] + [3] * (t - 4) + [2]
    raise ValueError("center_position must be 0, 1, or 2")


def wheel_joint_probability(
    t: int,
    design: DesignKind = DesignKind.ORDERED_SYSTEMATIC,
    center_position: int = 0,
) -> Fraction:
    """Exact joint inclusion probability of the hub and the newest vertex
    for the m=2 systematic step on the wheel-minus-arc degree array."""
    weights = wheel_age_weights(t, center_position)
    center, last = center_position, t - 1
    if design is DesignKind.ORDERED_SYSTEMATIC:
        arr = OrderedWeightArray.from_weights(weights)
        dist = systematic_sample_distribution(arr, 2)
        acc = Fraction(0)
        for sample, p in dist.items():
            if center in sample and last in sample:
                acc += p
        return acc
    if design is DesignKind.RANDOM_SYSTEMATIC:
        return _wheel_random_joint(t)
    raise ValueError("wheel check is defined for the systematic designs")


def _wheel_random_joint(t: int) -> Fraction:
    """Hub/newest joint probability under random systematic, exactly.

    Averages over uniform placements of the hub (weight t-1) and the
    newest vertex (weight 2); the remaining elements are one 2 and (t-3)
    threes, exchangeable, so the lone 2 lands in each gap zone with
    probability proportional to the zone size. All in integer arithmetic.
    """
    if t < 4:
        raise ValueError(f"wheel-minus-arc needs t >= 4, got {t}")
    s = 2 * t - 3  # skip = W/2 with W = 4t - 6
    heavy = t - 1
    num = 0
    for i in range(t):
        for j in range(i + 1, t):
            z1, z2 = i, j - i - 1
            z3 = t - 2 - z1 - z2
            for zone, zlen in ((0, z1), (1, z2), (2, z3)):
                if zlen == 0:
                    continue
                before = 3 * z1 - (1 if zone == 0 else 0)
                between = 3 * z2 - (1 if zone == 1 else 0)
                # hub at slot i, newest at slot j
                a0, a1 = before, before + heavy
                b = before + heavy + between
                lo = max(a0, b - s, 0)
                hi = min(a1, b + 2 - s, s)
                if hi > lo:
                    num += zlen * (hi - lo)
                # newest at slot i, hub at slot j
                a0n, a1n = before, before + 2
                bn = before + 2 + between
                lo = max(a0n, bn - s, 0)
                hi = min(a1n, bn + heavy - s, s)
                if hi > lo:
                    num += zlen * (hi - lo)
    return Fraction(num, t * (t - 1) * (t - 2) * s)


def wheel_first_zero_threshold(
    t_max: int, center_position: int = 0
) -> tuple[int | None, list[Fraction]]:
    """Scan t = 4..t_max; return the first t after which the ordered
    systematic hub/newest joint probability stays zero, plus the values."""
    values = [
        wheel_joint_probability(t, DesignKind.ORDERED_SYSTEMATIC, center_position)
        for t in range(4, t_max + 1)
    ]
    threshold = None
    for offset in range(len(values) - 1, -1, -1):
        if values[offset] != 0:
            break
        threshold = offset + 4
    return threshold, values
