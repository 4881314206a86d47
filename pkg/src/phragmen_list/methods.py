"""Tabulation procedures built on the Phragmén engine.

* :func:`irv` -- instant runoff, one winner.
* :func:`quota_phragmen` -- elect above a fixed Droop quota, otherwise exclude.
* :func:`bottom_up_list` -- fill the list from the bottom with the loser of
  each "M-1 from M" pure-election count.
* :func:`top_down_list` -- fill the list from the top; each round re-elects the
  earlier positions before excluding the weakest hopeful.

Ties are broken towards the lowest candidate index and flagged in the log.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .ballots import BallotProfile, restrict_profile
from .engine import (
    AuditLog,
    CandidateStatus,
    CountState,
    assign_support,
    droop_quota,
    elect,
    exclude,
    initial_state,
    pick,
    restart,
)

__all__ = [
    "ElectionResult",
    "ProportionalList",
    "RoundResult",
    "bottom_up_list",
    "irv",
    "quota_phragmen",
    "sequential_phragmen",
    "top_down_list",
    "top_down_round",
    "top_down_winners",
]


@dataclass(frozen=True)
class ElectionResult:
    winners: tuple[int, ...]
    log: AuditLog
    state: CountState

    @property
    def tie_flag(self) -> bool:
        return self.log.tie_flag

    @property
    def winner(self) -> int:
        return self.winners[0]


@dataclass(frozen=True)
class RoundResult:
    """Outcome of one top-down round: the new winner and the round's transcript."""

    winner: int
    log: AuditLog
    state: CountState
    previously_elected: tuple[int, ...]

    @property
    def tie_flag(self) -> bool:
        return self.log.tie_flag

    def final_stage_priority(self) -> Fraction | None:
        """Winner's priority in the row where the last rival was excluded.

        ``None`` when the round had no exclusions (a single hopeful from the
        start).
        """
        for ev in reversed(self.log.events):
            if any(a.kind == "exclude" for a in ev.actions):
                return ev.priority_of(self.winner)
        return None


@dataclass(frozen=True)
class ProportionalList:
    """Candidates by list position, position 1 first.

    For the top-down list ``logs[k]`` is the round that filled position
    ``k + 1``. For the bottom-up list ``logs`` holds the inner counts in the
    order they ran; the first one decides the last position.
    """

    order: tuple[int, ...]
    logs: tuple[AuditLog, ...]

    @property
    def tie_flag(self) -> bool:
        return any(log.tie_flag for log in self.logs)

    def prefix(self, n: int) -> tuple[int, ...]:
        return self.order[:n]


def _check_nonempty(profile: BallotProfile) -> None:
    if profile.n_candidates == 0:
        raise ValueError("profile has no candidates")


def irv(profile: BallotProfile) -> ElectionResult:
    _check_nonempty(profile)
    state = initial_state(profile, title="Instant runoff")
    new_row = True
    while len(state.hopeful) > 1:
        tally = assign_support(state)
        loser, tie = pick(state.hopeful, lambda c: tally.votes[c], highest=False)
        state = exclude(state, loser, tie=tie, tally=tally)
        new_row = False
    winner = state.hopeful[0]
    state = elect(state, winner, new_row=new_row)
    return ElectionResult((winner,), state.log, state)


def quota_phragmen(profile: BallotProfile, seats: int) -> ElectionResult:
    """Quota-based Phragmén with a quota fixed from the full ballot weight.

    Each step elects the top hopeful if its priority strictly exceeds the
    quota; otherwise the bottom hopeful is excluded, unless the hopefuls
    only just fill the remaining seats, in which case the top one is elected
    anyway (a forced election).
    """
    if seats < 1:
        raise ValueError("seat count must be at least 1")
    if seats > profile.n_candidates:
        raise ValueError(f"{seats} seats but only {profile.n_candidates} candidates")
    quota = droop_quota(profile.total_weight, seats)
    state = initial_state(profile, title=f"Quota-based Phragmén, {seats} seats, quota {quota}")
    winners = []
    while len(winners) < seats:
        tally = assign_support(state)
        hopeful = state.hopeful
        best, best_tie = pick(hopeful, tally.priority, highest=True)
        if tally.priority(best) > quota:
            state = elect(state, best, tie=best_tie, tally=tally)
            winners.append(best)
        elif len(hopeful) > seats - len(winners):
            loser, tie = pick(hopeful, tally.priority, highest=False)
            state = exclude(state, loser, tie=tie, tally=tally)
        else:
            state = elect(state, best, tie=best_tie, forced=True, tally=tally)
            winners.append(best)
    return ElectionResult(tuple(winners), state.log, state)


def sequential_phragmen(
    profile: BallotProfile, seats: int, absent: Iterable[int] = (), title: str = ""
) -> ElectionResult:
    """Pure-election count: repeatedly elect the highest-priority candidate.

    ``absent`` candidates take no part (they should already be removed from
    the ballots).
    """
    state = initial_state(profile, excluded=absent, title=title)
    if seats > len(state.hopeful):
        raise ValueError(f"{seats} seats but only {len(state.hopeful)} candidates")
    winners = []
    for _ in range(seats):
        tally = assign_support(state)
        best, tie = pick(state.hopeful, tally.priority, highest=True)
        state = elect(state, best, tie=tie, tally=tally)
        winners.append(best)
    return ElectionResult(tuple(winners), state.log, state)


def bottom_up_list(profile: BallotProfile) -> ProportionalList:
    _check_nonempty(profile)
    n = profile.n_candidates
    order: list[int | None] = [None] * n
    removed: set[int] = set()
    logs = []
    for m in range(n, 1, -1):
        sub = restrict_profile(profile, removed)
        title = f"{m - 1} of {m} remaining (position {m})"
        result = sequential_phragmen(sub, m - 1, absent=removed, title=title)
        (loser,) = result.state.hopeful
        order[m - 1] = loser
        removed.add(loser)
        logs.append(result.log)
    (order[0],) = set(range(n)) - removed
    return ProportionalList(tuple(order), tuple(logs))


def top_down_round(profile: BallotProfile, previously_elected: Sequence[int] = ()) -> RoundResult:
    """Find the next list position given the positions already filled.

    Step 1 re-elects every previously elected candidate, highest priority
    first. Step 2 excludes the lowest-priority hopeful; if one hopeful is
    left it is elected, otherwise loads are zeroed and step 1 runs again.
    """
    prev = tuple(previously_elected)
    n = profile.n_candidates
    if len(set(prev)) != len(prev):
        raise ValueError("previously elected candidates must be distinct")
    for c in prev:
        if not 0 <= c < n:
            raise ValueError(f"unknown candidate index {c}")
    if len(prev) >= n:
        raise ValueError("no candidate left to elect")
    title = f"{len(prev) + 1} winner(s)"
    if prev:
        title += ", previously elected: " + ", ".join(profile.names[c] for c in prev)
    state = initial_state(profile, previously_elected=prev, title=title)

    while True:
        while state.previously_elected:
            tally = assign_support(state)
            best, tie = pick(state.previously_elected, tally.priority, highest=True)
            state = elect(state, best, tie=tie, tally=tally)
        if len(state.hopeful) == 1:
            # only reachable on the first pass: the last list position
            winner = state.hopeful[0]
            state = elect(state, winner, forced=True)
            break
        tally = assign_support(state)
        loser, tie = pick(state.hopeful, tally.priority, highest=False)
        state = exclude(state, loser, tie=tie, tally=tally)
        if len(state.hopeful) == 1:
            winner = state.hopeful[0]
            state = elect(state, winner, new_row=False)
            break
        if prev:
            state = restart(state)
    assert state.status[winner] is CandidateStatus.ELECTED
    return RoundResult(winner, state.log, state, prev)


def top_down_list(profile: BallotProfile, depth: int | None = None) -> ProportionalList:
    """Top-down proportional list of the first ``depth`` positions (default: all)."""
    _check_nonempty(profile)
    if depth is None:
        depth = profile.n_candidates
    if not 1 <= depth <= profile.n_candidates:
        raise ValueError(f"depth must be between 1 and {profile.n_candidates}, got {depth}")
    order: list[int] = []
    logs = []
    for _ in range(depth):
        rnd = top_down_round(profile, order)
        order.append(rnd.winner)
        logs.append(rnd.log)
    return ProportionalList(tuple(order), tuple(logs))


def top_down_rounds(profile: BallotProfile, depth: int | None = None) -> list[RoundResult]:
    """Like :func:`top_down_list` but keeps each round's full result."""
    if depth is None:
        depth = profile.n_candidates
    rounds: list[RoundResult] = []
    for _ in range(depth):
        rounds.append(top_down_round(profile, [r.winner for r in rounds]))
    return rounds


def top_down_winners(profile: BallotProfile, seats: int) -> frozenset[int]:
    """Winner set of the ``seats``-seat top-down election."""
    return frozenset(top_down_list(profile, seats).order)
