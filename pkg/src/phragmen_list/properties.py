"""Randomized property suites checked against the brute-force oracle.

Each suite draws fully ranked random profiles, runs a method, and checks a
proportionality or consistency property on the result. Runs where any tie
was broken are skipped, since the properties are only claimed for tie-free
counts. Everything is deterministic for a given seed.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .ballots import (
    Ballot,
    BallotProfile,
    Candidate,
    merge_profiles,
    restrict_profile,
    serialize_profile,
)
from .engine import droop_quota, seat_total
from .methods import bottom_up_list, irv, sequential_phragmen, top_down_list, top_down_rounds
from .oracle import check_droop, droop_compliant_sets

__all__ = [
    "SUITES",
    "SuiteReport",
    "random_profile",
    "run_suite",
]

PASS, FAIL, TIED = "pass", "fail", "tied"

MAX_GENERATOR_CANDIDATES = 7


def random_profile(
    rng: random.Random,
    n_candidates: int,
    n_ballots: int,
    first_name: int = 0,
) -> BallotProfile:
    """``n_ballots`` uniformly random full rankings, grouped into weighted lines."""
    names = [_name(first_name + i) for i in range(n_candidates)]
    counts: dict[tuple[int, ...], int] = {}
    for _ in range(n_ballots):
        ranking = list(range(n_candidates))
        rng.shuffle(ranking)
        key = tuple(ranking)
        counts[key] = counts.get(key, 0) + 1
    candidates = tuple(Candidate(i, n) for i, n in enumerate(names))
    ballots = tuple(Ballot(r, w) for r, w in counts.items())
    return BallotProfile(candidates, ballots, seats=1, title="random profile")


def _name(i: int) -> str:
    letters = string.ascii_uppercase
    return letters[i] if i < 26 else f"C{i}"


def _conserves_seats(state) -> bool:
    if any(a.unsupported for a in state.log.actions):
        return True
    return seat_total(state) == len(state.elected)


def check_top_down_prefixes(profile: BallotProfile) -> tuple[str, str]:
    rounds = top_down_rounds(profile)
    if any(r.tie_flag for r in rounds):
        return TIED, ""
    order = [r.winner for r in rounds]
    for m, rnd in enumerate(rounds, start=1):
        if not _conserves_seats(rnd.state):
            return FAIL, f"seat loads do not sum to {m} after round {m}"
        final = rnd.final_stage_priority()
        if final is not None and not final > droop_quota(profile.total_weight, m):
            return FAIL, f"round {m} winner priority {final} does not exceed the quota"
        verdict = check_droop(profile, order[:m])
        if not verdict.compliant:
            return FAIL, f"top-down prefix {profile.label(order[:m])} violates Droop proportionality"
    return PASS, ""


def check_bottom_up_prefixes(profile: BallotProfile) -> tuple[str, str]:
    lst = bottom_up_list(profile)
    if lst.tie_flag:
        return TIED, ""
    for m in range(1, profile.n_candidates + 1):
        verdict = check_droop(profile, lst.prefix(m))
        if not verdict.compliant:
            return FAIL, f"bottom-up prefix {profile.label(lst.prefix(m))} violates Droop proportionality"
    return PASS, ""


def check_irv_membership(profile: BallotProfile) -> tuple[str, str]:
    result = irv(profile)
    if result.tie_flag:
        return TIED, ""
    w = result.winner
    if not _conserves_seats(result.state):
        return FAIL, "seat loads do not sum to 1"
    final = next(
        (ev.priority_of(w) for ev in reversed(result.log.events)
         if any(a.kind == "exclude" for a in ev.actions)),
        None,
    )
    if final is not None and not final > droop_quota(profile.total_weight, 1):
        return FAIL, f"IRV winner's final tally {final} does not exceed half the ballots"
    for n in range(1, profile.n_candidates + 1):
        if not any(w in s for s in droop_compliant_sets(profile, n)):
            return FAIL, f"IRV winner {profile.names[w]} is in no compliant {n}-set"
    return PASS, ""


def check_nesting(profile: BallotProfile) -> tuple[str, str]:
    previous = None
    for n in range(1, profile.n_candidates + 1):
        lst = top_down_list(profile, n)
        if lst.tie_flag:
            return TIED, ""
        if previous is not None and not set(previous.order) <= set(lst.order):
            return FAIL, f"{profile.label(previous.order)} is not contained in {profile.label(lst.order)}"
        previous = lst
    return PASS, ""


def check_coherence(a: BallotProfile, b: BallotProfile) -> tuple[str, str]:
    merged = merge_profiles(a, b)
    la, lb, lm = top_down_list(a), top_down_list(b), top_down_list(merged)
    if la.tie_flag or lb.tie_flag or lm.tie_flag:
        return TIED, ""
    shift = a.n_candidates
    from_a = tuple(c for c in lm.order if c < shift)
    from_b = tuple(c - shift for c in lm.order if c >= shift)
    if from_a != la.order or from_b != lb.order:
        return FAIL, (
            f"merged list {merged.label(lm.order)} does not preserve "
            f"{a.label(la.order)} and {b.label(lb.order)}"
        )
    return PASS, ""


def check_bottom_up_inner_counts(profile: BallotProfile) -> tuple[str, str]:
    """Positions 1..N of the bottom-up list are the winners of its N-of-N+1 count."""
    lst = bottom_up_list(profile)
    if lst.tie_flag:
        return TIED, ""
    n = profile.n_candidates
    for m in range(n, 1, -1):
        removed = set(lst.order[m:])
        res = sequential_phragmen(restrict_profile(profile, removed), m - 1, absent=removed)
        if set(res.winners) != set(lst.prefix(m - 1)):
            return FAIL, f"inner count for {m - 1} seats disagrees with the list prefix"
        if not _conserves_seats(res.state):
            return FAIL, "seat loads not conserved in inner count"
    return PASS, ""


SingleCheck = Callable[[BallotProfile], "tuple[str, str]"]

SUITES: dict[str, SingleCheck | None] = {
    "top-down-droop": check_top_down_prefixes,
    "bottom-up-droop": check_bottom_up_prefixes,
    "irv-droop": check_irv_membership,
    "nesting": check_nesting,
    "bottom-up-nesting": check_bottom_up_inner_counts,
    "coherence": None,  # draws two profiles, see run_suite
}


@dataclass
class SuiteReport:
    name: str
    runs: int = 0
    tied: int = 0
    passed: int = 0
    failures: list[tuple[int, str, list[BallotProfile]]] = field(default_factory=list)

    @property
    def tie_free(self) -> int:
        return self.runs - self.tied

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        verdict = "compliant" if self.name.endswith("droop") else "consistent"
        line = f"{self.name}: {self.passed}/{self.tie_free} tie-free runs {verdict}"
        return line + f" ({self.tied} tied runs skipped, {len(self.failures)} failures)"


def run_suite(
    name: str,
    profiles: int = 1000,
    seed: int = 0,
    max_candidates: int = 6,
    max_weight: int = 60,
    max_attempts: int | None = None,
    counterexample_dir: str | Path | None = None,
) -> SuiteReport:
    """Run ``name`` until ``profiles`` tie-free runs are collected.

    Gives up after ``max_attempts`` draws (default ``20 * profiles``).
    Failing profiles are written in ballot file format to
    ``counterexample_dir`` when given.
    """
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    if not 1 <= max_candidates <= MAX_GENERATOR_CANDIDATES:
        raise ValueError(f"max_candidates must be between 1 and {MAX_GENERATOR_CANDIDATES}")
    if max_weight < 1:
        raise ValueError("max_weight must be positive")
    coherence = name == "coherence"
    if coherence and max_candidates < 2:
        raise ValueError("coherence needs room for two candidates")
    rng = random.Random(f"{seed}:{name}")
    if max_attempts is None:
        max_attempts = 20 * profiles
    report = SuiteReport(name)
    lo = min(2, max_candidates)
    while report.tie_free < profiles and report.runs < max_attempts:
        index = report.runs
        if coherence:
            na = rng.randint(1, max_candidates - 1)
            nb = rng.randint(1, max_candidates - na)
            half = max(1, max_weight // 2)
            a = random_profile(rng, na, rng.randint(1, half))
            b = random_profile(rng, nb, rng.randint(1, half), first_name=na)
            outcome, message = check_coherence(a, b)
            witnesses = [a, b, merge_profiles(a, b)]
        else:
            n = rng.randint(lo, max_candidates)
            p = random_profile(rng, n, rng.randint(1, max_weight))
            outcome, message = SUITES[name](p)
            witnesses = [p]
        report.runs += 1
        if outcome == TIED:
            report.tied += 1
        elif outcome == PASS:
            report.passed += 1
        else:
            report.failures.append((index, message, witnesses))
            if counterexample_dir is not None:
                _write_counterexample(Path(counterexample_dir), name, index, witnesses)
    return report


def _write_counterexample(directory: Path, name: str, index: int, profiles) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for j, p in enumerate(profiles):
        suffix = "" if len(profiles) == 1 else "-" + "abm"[j]
        path = directory / f"counterexample-{name}-{index}{suffix}.blt"
        path.write_text(serialize_profile(p), encoding="utf-8")
        paths.append(path)
    return paths
