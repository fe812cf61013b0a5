"""
Why the unconstrained EF1 algorithms break under conflicts
==========================================================

Round robin and sink-picking (top-trading envy-cycle elimination) both
guarantee EF1 when any chore can go to any agent.  Once overlapping chores
must go to different agents, a picker can be locked out of its favorite
chore, envy builds up round after round, and the final schedule is not EF1
even with identical valuations on a simple path.
"""

from choresched import demo_round_robin, demo_top_trading_envy_cycle, path_instance

# --- Round robin ------------------------------------------------------------
#
# Eight chores in a row.  Agent 0 picks first and corners all the cheap
# chores; agent 1 keeps getting blocked by its own previous pick and ends
# up with every expensive one.

inst = path_instance([[0, -7, -2, -1, -3, -8, -9, -10]] * 2)
schedule, verdict = demo_round_robin(inst)
print("round robin bundles:")
for agent in range(2):
    chores = sorted(schedule.bundle(agent))
    total = inst.value(agent, chores)
    print(f"  agent {agent}: {chores}  (value {total})")
print("EF1 holds:", verdict.holds)
for i, k, removals in verdict.violations:
    print(f"  agent {i} still envies agent {k} after any single removal "
          f"(needs {removals})")
print()

# --- Sink picking -----------------------------------------------------------
#
# Five chores valued -10, -1, -10, -3, -2.  The currently best-off agent
# always picks next, but conflicts steer both -10 chores to the same agent.

inst = path_instance([[-10, -1, -10, -3, -2]] * 2)
schedule, verdict = demo_top_trading_envy_cycle(inst)
print("sink-picking bundles:")
for agent in range(2):
    chores = sorted(schedule.bundle(agent))
    total = inst.value(agent, chores)
    print(f"  agent {agent}: {chores}  (value {total})")
print("EF1 holds:", verdict.holds)
