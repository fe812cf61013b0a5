"""Exhaustive ground truth for small instances.

enumerate_maximal walks every feasible-and-maximal schedule of an instance,
exists() answers fairness-existence queries over that space, and the demo_*
functions replay the classic round-robin and top-trading envy-cycle
procedures whose EF1 guarantees break under conflict constraints.

Everything here is desk-scale by design: correctness over speed, with a size
guard on the enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .checkers import check_ef, check_ef1, check_efk, check_efx, is_complete
from .core import (
    InputError,
    Instance,
    Schedule,
    SizeGuardError,
)

CRITERIA = ("ef", "ef1", "efx", "efk", "ef1+po", "ef1+complete")


@dataclass(frozen=True)
class ExistenceQuery:
    """A fairness-existence question over the maximal schedules of an instance.

    criterion is one of CRITERIA; every criterion implicitly includes
    maximality (the search space is the maximal schedules).  k is required
    for "efk"; guard overrides the enumeration size guard.
    """

    instance: Instance
    criterion: str
    k: Optional[int] = None
    guard: Optional[int] = None

    def __post_init__(self) -> None:
        if self.criterion not in CRITERIA:
            raise InputError(f"unknown criterion {self.criterion!r}; expected one of {CRITERIA}")
        if self.criterion == "efk" and (self.k is None or self.k < 0):
            raise InputError("criterion 'efk' needs a non-negative k")


def enumerate_maximal(instance: Instance, guard: int = 16) -> Iterator[Schedule]:
    """Yield every feasible-and-maximal schedule exactly once.

    The order is deterministic: lexicographic in the assignment vector with
    agent 0 < agent 1 < ... < unassigned.  The search assigns chores in id
    order, prunes infeasible branches immediately, and prunes "leave it
    unassigned" branches that can never become blocked.
    """
    if instance.m > guard:
        raise SizeGuardError(
            f"enumeration over {instance.m} chores exceeds the guard {guard}"
        )
    graph = instance.graph()
    n, m = instance.n, instance.m
    nbr = graph.neighbor_masks
    assignment: list[Optional[int]] = [None] * m
    bundle_masks = [0] * n

    def blocked_everywhere(c: int) -> bool:
        mask = nbr[c]
        return all(mask & bm for bm in bundle_masks)

    def walk(c: int) -> Iterator[Schedule]:
        if c == m:
            if all(
                assignment[x] is not None or blocked_everywhere(x) for x in range(m)
            ):
                yield Schedule(n, tuple(assignment))
            return
        mask = nbr[c]
        for agent in range(n):
            if mask & bundle_masks[agent]:
                continue
            assignment[c] = agent
            bundle_masks[agent] |= 1 << c
            yield from walk(c + 1)
            bundle_masks[agent] &= ~(1 << c)
            assignment[c] = None
        # Unassigned branch: prune when some agent could take c now and no
        # future chore overlaps c, so c would stay assignable forever.
        future = ((1 << m) - 1) & ~((1 << (c + 1)) - 1)
        if mask & future or all(mask & bm for bm in bundle_masks):
            yield from walk(c + 1)

    return walk(0)


def exists(query: ExistenceQuery) -> Optional[Schedule]:
    """Return a witness maximal schedule satisfying the criterion, or None.

    The answer is definitive: None means no maximal schedule of the instance
    satisfies the criterion.
    """
    instance = query.instance
    guard = query.guard if query.guard is not None else 16
    if query.criterion == "ef1+po":
        return _exists_ef1_po(instance, guard)
    for schedule in enumerate_maximal(instance, guard=guard):
        if _criterion_holds(schedule, instance, query):
            return schedule
    return None


def _criterion_holds(schedule: Schedule, instance: Instance, query: ExistenceQuery) -> bool:
    crit = query.criterion
    if crit == "ef":
        return check_ef(schedule, instance).holds
    if crit == "ef1":
        return check_ef1(schedule, instance).holds
    if crit == "efx":
        return check_efx(schedule, instance).holds
    if crit == "efk":
        return check_efk(schedule, instance, query.k).holds
    if crit == "ef1+complete":
        return is_complete(schedule) and check_ef1(schedule, instance).holds
    raise AssertionError(f"unhandled criterion {crit}")


def _exists_ef1_po(instance: Instance, guard: int) -> Optional[Schedule]:
    """EF1 among maximal schedules not Pareto-dominated by any maximal schedule."""
    schedules = list(enumerate_maximal(instance, guard=guard))
    utilities = [
        tuple(instance.value(i, s.bundle(i)) for i in range(instance.n)) for s in schedules
    ]
    for s, mine in zip(schedules, utilities):
        dominated = any(
            all(t >= o for t, o in zip(theirs, mine))
            and any(t > o for t, o in zip(theirs, mine))
            for theirs in utilities
        )
        if not dominated and check_ef1(s, instance).holds:
            return s
    return None


def max_utilitarian_maximal(instance: Instance, guard: int = 16) -> Schedule:
    """A maximal schedule maximizing the sum of agents' utilities.

    Such a schedule is Pareto optimal.  Ties go to the first schedule in
    enumeration order.
    """
    best: Optional[Schedule] = None
    best_total: Optional[int] = None
    for schedule in enumerate_maximal(instance, guard=guard):
        total = sum(
            instance.value(i, schedule.bundle(i)) for i in range(instance.n)
        )
        if best_total is None or total > best_total:
            best, best_total = schedule, total
    if best is None:
        raise AssertionError("every instance has at least one maximal schedule")
    return best


def demo_round_robin(
    instance: Instance, agent_order: Optional[Sequence[int]] = None
):
    """Round robin under conflicts: each agent picks its favorite feasible chore.

    Agents take turns in the given order (default: ascending index).  On its
    turn an agent picks the highest-valued unassigned chore that does not
    conflict with its bundle, ties broken by lowest chore id; an agent with no
    feasible chore passes.  The process stops when a full cycle passes.
    Returns the schedule and its EF1 verdict.
    """
    if not instance.valuations.is_additive:
        raise InputError("round robin demo needs an additive profile")
    order = tuple(agent_order) if agent_order is not None else tuple(range(instance.n))
    if sorted(order) != list(range(instance.n)):
        raise InputError("agent_order must be a permutation of all agents")
    graph = instance.graph()
    assignment: list[Optional[int]] = [None] * instance.m
    bundle_masks = [0] * instance.n
    while True:
        picked_any = False
        for agent in order:
            feasible = [
                c
                for c in range(instance.m)
                if assignment[c] is None
                and not graph.neighbor_masks[c] & bundle_masks[agent]
            ]
            if not feasible:
                continue
            choice = min(
                feasible, key=lambda c: (-instance.valuations.chore_value(agent, c), c)
            )
            assignment[choice] = agent
            bundle_masks[agent] |= 1 << choice
            picked_any = True
        if not picked_any:
            break
    schedule = Schedule(instance.n, tuple(assignment))
    return schedule, check_ef1(schedule, instance)


def demo_top_trading_envy_cycle(instance: Instance):
    """Sink-picking allocation for identical valuations.

    With identical valuations an envy cycle never occurs, so a sink (an agent
    envying no one, i.e. with maximal bundle value) always exists.  At each
    step the best-off agent that still has a feasible chore picks its
    highest-valued one; ties go to the lowest agent id and lowest chore id.
    Returns the schedule and its EF1 verdict.
    """
    if not (instance.valuations.is_additive and instance.valuations.is_identical()):
        raise InputError(
            "envy-cycle demo needs identical additive valuations (cycle resolution is out of scope)"
        )
    graph = instance.graph()
    assignment: list[Optional[int]] = [None] * instance.m
    bundle_masks = [0] * instance.n
    values = [0] * instance.n
    while True:
        candidates = []
        for agent in range(instance.n):
            feasible = [
                c
                for c in range(instance.m)
                if assignment[c] is None
                and not graph.neighbor_masks[c] & bundle_masks[agent]
            ]
            if feasible:
                candidates.append((agent, feasible))
        if not candidates:
            break
        agent, feasible = max(candidates, key=lambda af: (values[af[0]], -af[0]))
        choice = min(
            feasible, key=lambda c: (-instance.valuations.chore_value(agent, c), c)
        )
        assignment[choice] = agent
        bundle_masks[agent] |= 1 << choice
        values[agent] += instance.valuations.chore_value(agent, choice)
    schedule = Schedule(instance.n, tuple(assignment))
    return schedule, check_ef1(schedule, instance)
