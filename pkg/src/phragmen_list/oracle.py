"""Brute-force Droop proportionality checks for small profiles.

A ballot solidly supports a candidate set ``L`` when it ranks the members
of ``L`` above everybody else. If the ballots supporting ``L`` weigh more than
``K`` Droop quotas, at least ``min(K, |L|)`` winners must come from ``L``.
Everything here enumerates candidate subsets, so it is only meant for
desk-scale rosters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .ballots import Ballot, BallotProfile
from .engine import droop_quota

__all__ = [
    "DEFAULT_MAX_CANDIDATES",
    "CoalitionConstraint",
    "OracleBoundError",
    "Verdict",
    "all_constraints",
    "check_droop",
    "droop_compliant_sets",
    "required_seats",
    "solid_coalition_support",
    "supports",
]

DEFAULT_MAX_CANDIDATES = 16


class OracleBoundError(ValueError):
    """The profile has more candidates than the oracle is allowed to enumerate."""


@dataclass(frozen=True)
class CoalitionConstraint:
    """At least ``floor`` winners must come from ``preferred``."""

    preferred: frozenset[int]
    support: int
    seats: int
    quota: Fraction
    floor: int

    def label(self, profile: BallotProfile) -> str:
        return "{" + ",".join(profile.names[c] for c in sorted(self.preferred)) + "}"

    def to_dict(self, profile: BallotProfile) -> dict:
        return {
            "preferred": [profile.names[c] for c in sorted(self.preferred)],
            "support": self.support,
            "seats": self.seats,
            "quota": f"{self.quota.numerator}/{self.quota.denominator}",
            "floor": self.floor,
        }


@dataclass(frozen=True)
class Verdict:
    winners: frozenset[int]
    violations: tuple[tuple[CoalitionConstraint, int], ...]

    @property
    def compliant(self) -> bool:
        return not self.violations

    def to_dict(self, profile: BallotProfile) -> dict:
        return {
            "winners": [profile.names[c] for c in sorted(self.winners)],
            "compliant": self.compliant,
            "violations": [
                {**con.to_dict(profile), "elected_from": got} for con, got in self.violations
            ],
        }


def _check_bound(profile: BallotProfile, max_candidates: int) -> None:
    if profile.n_candidates > max_candidates:
        raise OracleBoundError(
            f"{profile.n_candidates} candidates exceeds the oracle bound of {max_candidates}; "
            "raise max_candidates explicitly if the enumeration is affordable"
        )


def supports(ballot: Ballot, preferred: frozenset[int]) -> bool:
    """Whether ``ballot`` can place all of ``preferred`` above every other candidate.

    Truncated ballots count when everything they rank lies inside the set.
    """
    k = len(preferred)
    ranking = ballot.ranking
    if len(ranking) >= k:
        return frozenset(ranking[:k]) == preferred
    return preferred.issuperset(ranking)


def solid_coalition_support(profile: BallotProfile, preferred: Iterable[int]) -> int:
    preferred = frozenset(preferred)
    if not preferred:
        raise ValueError("preferred set must be non-empty")
    return sum(b.weight for b in profile.ballots if supports(b, preferred))


def required_seats(support: int, quota: Fraction, size: int) -> int:
    """``min(size, max K with support > K * quota)``."""
    k = math.ceil(Fraction(support) / quota) - 1
    return max(0, min(size, k))


def _candidate_sets(profile: BallotProfile, exhaustive: bool) -> Iterable[frozenset[int]]:
    if exhaustive or not profile.is_fully_ranked():
        n = profile.n_candidates
        for size in range(1, n + 1):
            for combo in combinations(range(n), size):
                yield frozenset(combo)
        return
    # every set with positive support is some ballot's prefix
    seen = set()
    for b in profile.ballots:
        for k in range(1, len(b.ranking) + 1):
            s = frozenset(b.ranking[:k])
            if s not in seen:
                seen.add(s)
    yield from sorted(seen, key=lambda s: (len(s), sorted(s)))


def all_constraints(
    profile: BallotProfile,
    seats: int,
    *,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
    exhaustive: bool = False,
) -> list[CoalitionConstraint]:
    """Every coalition constraint with a floor of at least one seat.

    Fully ranked profiles only need the sets that occur as ballot prefixes;
    ``exhaustive`` forces the full subset enumeration (used as a cross-check,
    and always used for truncated ballots).
    """
    _check_bound(profile, max_candidates)
    if seats < 1:
        raise ValueError("seat count must be at least 1")
    if profile.total_weight == 0:
        return []
    quota = droop_quota(profile.total_weight, seats)
    out = []
    for pref in _candidate_sets(profile, exhaustive):
        support = solid_coalition_support(profile, pref)
        floor = required_seats(support, quota, len(pref))
        if floor >= 1:
            out.append(CoalitionConstraint(pref, support, seats, quota, floor))
    out.sort(key=lambda con: (len(con.preferred), sorted(con.preferred)))
    return out


def droop_compliant_sets(
    profile: BallotProfile,
    seats: int,
    *,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
    exhaustive: bool = False,
) -> list[frozenset[int]]:
    """All ``seats``-sized winner sets satisfying every constraint, in lexicographic order."""
    if seats > profile.n_candidates:
        raise ValueError(f"{seats} seats but only {profile.n_candidates} candidates")
    constraints = all_constraints(
        profile, seats, max_candidates=max_candidates, exhaustive=exhaustive
    )
    out = []
    for combo in combinations(range(profile.n_candidates), seats):
        w = frozenset(combo)
        if all(len(w & con.preferred) >= con.floor for con in constraints):
            out.append(w)
    return out


def check_droop(
    profile: BallotProfile,
    winners: Iterable[int],
    *,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> Verdict:
    winners = list(winners)
    if not winners:
        raise ValueError("winner set must be non-empty")
    if len(set(winners)) != len(winners):
        raise ValueError("winners must be distinct")
    w = frozenset(winners)
    violations = []
    for con in all_constraints(profile, len(w), max_candidates=max_candidates):
        got = len(w & con.preferred)
        if got < con.floor:
            violations.append((con, got))
    return Verdict(w, tuple(violations))
