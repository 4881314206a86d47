"""
Building a top-down proportional list
=====================================

Four candidates, 200 ballots. The list is filled from position 1 down: each
round first re-elects the candidates already on the list, then knocks out
the weakest hopeful, and restarts until one hopeful is left.
"""

from phragmen_list import load_example, top_down_list

profile = load_example("example1")
for b in profile.ballots:
    print(f"{b.weight:4d}: {profile.label(b.ranking)}")

###############################################################################
# Each round's transcript prints like a count sheet: the priority of every
# candidate at each step, E for elected, X for excluded.

lst = top_down_list(profile)
for log in lst.logs:
    print()
    print(log.to_table())

print()
print("List:", " > ".join(profile.names[c] for c in lst.order))

###############################################################################
# Position 1 is always the instant-runoff winner, and the top N of the list
# are the N-seat winners for every N, so the list never has to be redrawn
# when the number of seats changes.
