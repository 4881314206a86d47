"""
Checking Droop proportionality by brute force
=============================================

A group of ballots that all put the same set of candidates on top is a solid
coalition. If it holds more than K Droop quotas it is owed K seats from that
set. For small rosters we can list every such constraint and every winner
set that honours all of them.
"""

from phragmen_list import all_constraints, check_droop, droop_compliant_sets, load_example

ex1 = load_example("example1")
for seats in (1, 2, 3):
    sets = droop_compliant_sets(ex1, seats)
    print(f"{seats} seat(s):", ["".join(ex1.names[c] for c in sorted(s)) for s in sets])

print()
for con in all_constraints(ex1, 3):
    print(f"{con.label(ex1):>10}  support {con.support:3d}  owed {con.floor}")

###############################################################################
# In the second example E is a clone of B. Together the B and E voters hold
# 51 ballots, just over a three-seat quota of 50, so a result without B or E
# breaks proportionality.

ex2 = load_example("example2")
verdict = check_droop(ex2, [ex2.index_of(n) for n in "ACD"])
for con, got in verdict.violations:
    print(f"{con.label(ex2)} holds {con.support} ballots, owed {con.floor}, got {got}")
