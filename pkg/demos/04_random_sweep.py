"""
A randomized sweep against the oracle
=====================================

Random fully ranked elections, each list checked prefix by prefix against
the brute-force oracle. Counts where a tie had to be broken are skipped.
The full-size version of this sweep is ``phragmen-list properties``.
"""

import random

from phragmen_list import check_droop, top_down_list
from phragmen_list.properties import random_profile, run_suite

rng = random.Random(2024)
profile = random_profile(rng, n_candidates=5, n_ballots=37)
lst = top_down_list(profile)
print("list:", " > ".join(profile.names[c] for c in lst.order), "(tie)" if lst.tie_flag else "")
for n in range(1, profile.n_candidates + 1):
    print(n, check_droop(profile, lst.prefix(n)).compliant)

###############################################################################

for name in ("top-down-droop", "bottom-up-droop", "coherence"):
    print(run_suite(name, profiles=100, seed=7).summary())
