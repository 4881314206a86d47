"""Hypothesis strategies for ballot profiles."""

import string

from hypothesis import strategies as st

from phragmen_list.ballots import Ballot, BallotProfile, Candidate


@st.composite
def profiles(draw, min_candidates=1, max_candidates=5, max_lines=6, max_weight=20,
             full=False, first_name=0):
    n = draw(st.integers(min_candidates, max_candidates))
    perm = st.permutations(list(range(n)))
    if full:
        ranking = perm
    else:
        ranking = st.builds(lambda p, k: tuple(p[:k]), perm, st.integers(1, n))
    lines = draw(st.lists(st.tuples(ranking, st.integers(1, max_weight)),
                          min_size=1, max_size=max_lines))
    names = string.ascii_uppercase[first_name:first_name + n]
    return BallotProfile(
        tuple(Candidate(i, c) for i, c in enumerate(names)),
        tuple(Ballot(tuple(r), w) for r, w in lines),
        seats=draw(st.integers(1, n)),
        title=draw(st.text(st.characters(blacklist_categories=("Cs", "Cc", "Zl", "Zp")), max_size=12)),
    )
