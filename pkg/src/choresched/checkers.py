"""Decidable predicates for the fairness and efficiency notions.

Envy relaxations are checked pairwise: agent i envies agent k when
v_i(X_i) < v_i(X_k).  EF-k asks for a set of at most k chores whose removal
from the envious bundle kills the envy; EF1 is EF-k with k = 1, EF is k = 0.
EFX demands the removal work for EVERY single chore of the envious bundle.

For additive profiles the single removal search uses the worst-chore
shortcut (removing the r most negative chores is optimal); for opaque
monotone profiles the search is exhaustive over removal subsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import (
    ConflictGraph,
    InputError,
    Instance,
    Schedule,
    SizeGuardError,
    is_feasible,
)


@dataclass(frozen=True)
class FairnessVerdict:
    """Outcome of a pairwise envy check.

    violations lists (envious agent, envied agent, minimal removal count that
    would cure the pair); witnesses maps cured envious pairs to the chore set
    (from the envious agent's bundle) whose removal kills the envy.
    """

    holds: bool
    violations: tuple[tuple[int, int, int], ...] = ()
    witnesses: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)


def _require_feasible(schedule: Schedule, instance: Instance) -> None:
    if not is_feasible(schedule, instance.graph()):
        raise InputError("schedule is infeasible for the instance's conflict graph")


def _min_removals_additive(own_values: list[int], gap: int) -> tuple[int, tuple[int, ...]]:
    """Smallest r (and the removed chores) closing an additive envy gap.

    own_values holds (value, chore) pairs implicitly via the caller; here we
    get [(value, chore), ...].  Removing the r most negative chores raises the
    bundle value the most, so scanning prefixes is exact.
    """
    ordered = sorted(own_values)  # most negative first: (value, chore id)
    removed = 0
    for r, (v, _) in enumerate(ordered, start=1):
        removed += v
        if -removed >= gap:
            return r, tuple(sorted(c for _, c in ordered[:r]))
    raise AssertionError("removing the whole bundle always cures envy of non-positive bundles")


def _min_removals_monotone(
    instance: Instance, agent: int, bundle: frozenset[int], target: int
) -> tuple[int, tuple[int, ...]]:
    """Smallest removal set curing envy under an opaque monotone profile."""
    members = sorted(bundle)
    for r in range(1, len(members) + 1):
        for subset in itertools.combinations(members, r):
            if instance.value(agent, bundle.difference(subset)) >= target:
                return r, subset
    raise AssertionError("empty bundle has value 0 >= any bundle value")


def check_efk(schedule: Schedule, instance: Instance, k: int) -> FairnessVerdict:
    """Envy-freeness up to k chores, over all ordered agent pairs."""
    if k < 0:
        raise InputError("k must be non-negative")
    _require_feasible(schedule, instance)
    bundles = schedule.bundles()
    own = [instance.value(i, bundles[i]) for i in range(schedule.n_agents)]
    violations: list[tuple[int, int, int]] = []
    witnesses: dict[tuple[int, int], tuple[int, ...]] = {}
    for i in range(schedule.n_agents):
        for j in range(schedule.n_agents):
            if i == j:
                continue
            other = instance.value(i, bundles[j])
            if own[i] >= other:
                continue
            if instance.valuations.is_additive:
                values = [(instance.valuations.chore_value(i, c), c) for c in bundles[i]]
                r, removed = _min_removals_additive(values, other - own[i])
            else:
                r, removed = _min_removals_monotone(instance, i, bundles[i], other)
            if r <= k:
                witnesses[(i, j)] = removed
            else:
                violations.append((i, j, r))
    return FairnessVerdict(
        holds=not violations, violations=tuple(violations), witnesses=witnesses
    )


def check_ef(schedule: Schedule, instance: Instance) -> FairnessVerdict:
    """Exact envy-freeness: v_i(X_i) >= v_i(X_k) for every ordered pair."""
    return check_efk(schedule, instance, 0)


def check_ef1(schedule: Schedule, instance: Instance) -> FairnessVerdict:
    """Envy-freeness up to one chore."""
    return check_efk(schedule, instance, 1)


def check_efx(schedule: Schedule, instance: Instance) -> FairnessVerdict:
    """Envy-freeness up to any chore: every single removal must kill the envy.

    A pair with an empty envious bundle is vacuously satisfied.  For a cured
    envious pair the witness is the tightest chore, i.e. the one whose removal
    leaves the least slack.
    """
    _require_feasible(schedule, instance)
    bundles = schedule.bundles()
    own = [instance.value(i, bundles[i]) for i in range(schedule.n_agents)]
    violations: list[tuple[int, int, int]] = []
    witnesses: dict[tuple[int, int], tuple[int, ...]] = {}
    for i in range(schedule.n_agents):
        for j in range(schedule.n_agents):
            if i == j or not bundles[i]:
                continue
            other = instance.value(i, bundles[j])
            if own[i] >= other:
                continue
            leftovers = {
                c: instance.value(i, bundles[i] - {c}) for c in sorted(bundles[i])
            }
            if all(v >= other for v in leftovers.values()):
                tightest = min(leftovers, key=lambda c: (leftovers[c], c))
                witnesses[(i, j)] = (tightest,)
            else:
                if instance.valuations.is_additive:
                    values = [(instance.valuations.chore_value(i, c), c) for c in bundles[i]]
                    r, _ = _min_removals_additive(values, other - own[i])
                else:
                    r, _ = _min_removals_monotone(instance, i, bundles[i], other)
                violations.append((i, j, r))
    return FairnessVerdict(
        holds=not violations, violations=tuple(violations), witnesses=witnesses
    )


def is_complete(schedule: Schedule) -> bool:
    """True iff every chore is assigned."""
    return all(a is not None for a in schedule.assignment)


def is_maximal(schedule: Schedule, graph: ConflictGraph) -> bool:
    """True iff no unassigned chore can be added to any bundle without conflict.

    Requires a feasible schedule; infeasible input is rejected.
    """
    if not is_feasible(schedule, graph):
        raise InputError("maximality is only defined for feasible schedules")
    bundle_masks = [0] * schedule.n_agents
    for c, a in enumerate(schedule.assignment):
        if a is not None:
            bundle_masks[a] |= 1 << c
    for c, a in enumerate(schedule.assignment):
        if a is None:
            nbr = graph.neighbor_masks[c]
            if any(not nbr & mask for mask in bundle_masks):
                return False
    return True


def is_pareto_optimal(schedule: Schedule, instance: Instance, guard: int = 16) -> bool:
    """True iff no other maximal schedule Pareto-dominates the given one.

    Pareto optimality is defined relative to ALL maximal schedules, so this
    enumerates them; the guard keeps the enumeration desk-scale.  The input
    must itself be maximal.
    """
    if instance.m > guard:
        raise SizeGuardError(
            f"Pareto check enumerates all maximal schedules; {instance.m} chores exceed the guard {guard}"
        )
    if not is_maximal(schedule, instance.graph()):
        raise InputError("Pareto optimality is only defined for maximal schedules")
    from .oracle import enumerate_maximal  # lazy: oracle imports this module

    own = [instance.value(i, schedule.bundle(i)) for i in range(instance.n)]
    for other in enumerate_maximal(instance, guard=guard):
        theirs = [instance.value(i, other.bundle(i)) for i in range(instance.n)]
        if all(t >= o for t, o in zip(theirs, own)) and any(
            t > o for t, o in zip(theirs, own)
        ):
            return False
    return True
