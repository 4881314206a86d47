"""
Bottom-up lists and the quota-based count
=========================================

The same ballots counted two other ways. Bottom-up Phragmén repeatedly drops
the loser of an "everyone but one" count into the lowest free slot.
Quota-based Phragmén elects above a fixed Droop quota, which makes its
results jump around as the seat count changes.
"""

from phragmen_list import bottom_up_list, load_example, quota_phragmen

ex1 = load_example("example1")
ex3 = load_example("example3")  # example 1 plus 45 ballots for a newcomer E

lst = bottom_up_list(ex1)
for log in lst.logs:
    print(log.to_table())
    print()
print("Bottom-up list:", " > ".join(ex1.names[c] for c in lst.order))

###############################################################################
# One seat goes to C, but C is not among the three-seat winners.

for seats in (1, 3):
    res = quota_phragmen(ex1, seats)
    print(f"{seats} seat(s):", ex1.label(sorted(res.winners), ", "))

###############################################################################
# Adding ballots that only mention E changes which of A-D win: the quota
# depends on everybody's ballots.

res = quota_phragmen(ex3, 3)
print()
print(res.log.to_table())
print("with E's voters:", ex3.label(sorted(res.winners), ", "))
