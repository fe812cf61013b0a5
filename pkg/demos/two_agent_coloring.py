"""
The two-agent coloring construction, step by step
=================================================

The solver never reasons about values while it builds schedules.  It
constructs a chain of maximal schedules in which consecutive steps differ
by at most one chore per bundle ("adjacent") and the last step is the first
with red and blue swapped.  Agent red cannot envy in both endpoints, so its
envy flips somewhere along the chain, and one of the four schedules around
the flip is guaranteed EF1.  Only that final selection looks at values.
"""

import random

from choresched import (
    Chore,
    Instance,
    MonotoneValuations,
    check_ef1,
    interval_sequence_ef1,
    is_maximal,
    path_instance,
    select_ef1,
    solve_two_agents,
)

# --- On a path, the chain is a simple shift ---------------------------------

inst = path_instance([[-1, -1, -1, -4]] * 2)
seq = interval_sequence_ef1(inst)
print("chain on a 4-chore path (R = agent 0, B = agent 1, N = unassigned):")
for line in seq.trace_lines():
    print("  ", line)

chosen = select_ef1(seq, inst)
print("selected bundles:", [sorted(chosen.bundle(i)) for i in range(2)],
      "unassigned:", sorted(chosen.unassigned()))
print("EF1:", check_ef1(chosen, inst).holds,
      "maximal:", is_maximal(chosen, inst.graph()))
print()

# --- General intervals bring unassigned chores into play --------------------
#
# Chores overlapping two earlier finishers stay out of every schedule in the
# chain; a preparatory pass reshuffles colors until each such chore is
# overlapped by enough assigned chores to stay blocked while the swap runs.

intervals = [(0, 2), (1, 3), (0, 4), (3, 5), (4, 6), (2, 7), (6, 8)]
chores = tuple(Chore(id=i, start=s, finish=f) for i, (s, f) in enumerate(intervals))
inst = Instance(2, chores, MonotoneValuations(2, 7, lambda i, b: -(len(b) ** 2)))
seq = interval_sequence_ef1(inst)
print("chain on a nested interval instance:")
for line in seq.trace_lines():
    print("  ", line)
chosen = solve_two_agents(inst)
print("selected bundles:", [sorted(chosen.bundle(i)) for i in range(2)],
      "unassigned:", sorted(chosen.unassigned()))
print("EF1:", check_ef1(chosen, inst).holds,
      "maximal:", is_maximal(chosen, inst.graph()))
print()

# --- It works for any monotone valuations, not just additive tables ---------

rng = random.Random(4)
ok = 0
for _ in range(500):
    m = rng.randint(1, 10)
    trial_chores = []
    for j in range(m):
        s = rng.randint(0, 2 * m)
        trial_chores.append(Chore(id=j, start=s, finish=s + rng.randint(1, 4)))
    trial = Instance(
        2, tuple(trial_chores), MonotoneValuations(2, m, lambda i, b: -(len(b) ** 2))
    )
    schedule = solve_two_agents(trial)
    assert check_ef1(schedule, trial).holds and is_maximal(schedule, trial.graph())
    ok += 1
print(f"500/{ok} random monotone instances solved EF1+maximal")
