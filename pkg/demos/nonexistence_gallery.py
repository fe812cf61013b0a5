"""
Three small instances where fairness and efficiency cannot coexist
==================================================================

All three live on a path conflict graph with two agents and identical
values, yet each rules out a different fairness/efficiency combination.
The exhaustive oracle walks every maximal schedule, so the "no" answers
below are definitive, not heuristic.
"""

from choresched import ExistenceQuery, exists, path_instance

# --- 1. Envy-freeness up to ANY chore (EFX) vs maximality ----------------
#
# Four chores in a row valued -1, -1, -1, -4.  Whoever ends up with the -4
# chore cannot take anything else without violating EFX, but maximality
# keeps forcing more chores onto someone.

inst = path_instance([[-1, -1, -1, -4]] * 2)
print("EFX + maximal witness:", exists(ExistenceQuery(inst, "efx")))
print("...but EF1 + maximal exists:",
      exists(ExistenceQuery(inst, "ef1")) is not None)
print()

# --- 2. EF1 vs Pareto optimality ------------------------------------------
#
# Values -2, -10, -1, -10, -2.  Every maximal schedule touching a -10 chore
# is Pareto dominated by giving one agent both ends (-4) and the other the
# middle (-1); and that dominant split is exactly the one EF1 forbids.

inst = path_instance([[-2, -10, -1, -10, -2]] * 2)
print("EF1 + Pareto-optimal witness:", exists(ExistenceQuery(inst, "ef1+po")))
print("...but EF1 + maximal exists:",
      exists(ExistenceQuery(inst, "ef1")) is not None)
print()

# --- 3. EF1 vs completeness ------------------------------------------------
#
# Values -1, -3, -1, -3.  A complete schedule on a path must two-color it,
# so one agent collects both -3 chores and stays envious even after
# dropping one of them.

inst = path_instance([[-1, -3, -1, -3]] * 2)
print("EF1 + complete witness:", exists(ExistenceQuery(inst, "ef1+complete")))
print("...but EF1 + maximal exists:",
      exists(ExistenceQuery(inst, "ef1")) is not None)
