"""Phragmén accounting for ranked ballots.

Every ballot line carries a seat load, the fraction of an elected seat each
of its weight units has paid for. A ballot supports its highest-ranked
candidate that is still hopeful or previously elected. For a candidate with
supporting weight ``V`` and supporting load ``S`` the priority is
``V / (1 + S)``; electing it resets the load of each supporting line to
``(S + 1) / V``, so the total load rises by exactly one seat.

All quantities are :class:`fractions.Fraction` or ``int``. The count state
is immutable: :func:`elect`, :func:`exclude` and :func:`restart` return a new
state with the action appended to its :class:`AuditLog`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Union

from .ballots import BallotProfile

__all__ = [
    "Action",
    "AuditLog",
    "CandidateStatus",
    "ContractError",
    "CountState",
    "RoundEvent",
    "SupportTally",
    "assign_support",
    "droop_quota",
    "elect",
    "end",
    "exclude",
    "format_rational",
    "initial_state",
    "pick",
    "priority",
    "rational_str",
    "replay",
    "restart",
    "seat_total",
    "snapshot",
]


class ContractError(RuntimeError):
    """An engine transition was applied to a candidate in the wrong status."""


class CandidateStatus(enum.Enum):
    HOPEFUL = "hopeful"
    PREVIOUSLY_ELECTED = "previously elected"
    ELECTED = "elected"
    EXCLUDED = "excluded"


_ACTIVE = (CandidateStatus.HOPEFUL, CandidateStatus.PREVIOUSLY_ELECTED)

Cell = Union[Fraction, str]
ELECTED_MARK = "E"
EXCLUDED_MARK = "X"


def droop_quota(total_weight: int, seats: int) -> Fraction:
    """Exact Droop quota ``total_weight / (seats + 1)``."""
    if seats < 1:
        raise ValueError("seat count must be at least 1")
    if total_weight < 1:
        raise ValueError("total weight must be at least 1")
    return Fraction(total_weight, seats + 1)


def priority(votes, load) -> Fraction:
    """Ballots per seat if the candidate were elected next: ``votes / (1 + load)``."""
    if not load:
        return Fraction(votes)
    return votes / (1 + Fraction(load))


def rational_str(x: Fraction) -> str:
    """Exact ``num/den`` rendering used in structured output."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def format_rational(x: Fraction) -> str:
    """Decimal with at most two fractional digits; ``~`` marks a rounded value.

    >>> format_rational(Fraction(105, 2)), format_rational(Fraction(149, 3))
    ('52.5', '49.67~')
    """
    x = Fraction(x)
    hundredths = x * 100
    exact = hundredths.denominator == 1
    # round half away from zero
    n = abs(hundredths)
    r = int(n + Fraction(1, 2))
    if hundredths < 0:
        r = -r
    whole, frac = divmod(abs(r), 100)
    sign = "-" if r < 0 else ""
    text = f"{sign}{whole}" if frac == 0 else f"{sign}{whole}.{frac:02d}".rstrip("0")
    return text if exact else text + "~"


@dataclass(frozen=True)
class Action:
    """One transition of the count.

    ``kind`` is ``"elect"``, ``"exclude"``, ``"restart"`` or ``"end"``.
    ``tie`` is set when the choice was made by the lowest-index tie-break,
    ``forced`` when an election happened without the method's usual test
    (last hopeful standing, seats left equal to hopefuls), and
    ``unsupported`` when a candidate with no supporting ballots was elected.
    """

    kind: str
    candidate: int | None = None
    tie: bool = False
    forced: bool = False
    unsupported: bool = False

    def describe(self, names: list[str]) -> str:
        if self.kind == "restart":
            return "Restart"
        if self.kind == "end":
            return "End"
        text = f"{self.kind.capitalize()} {names[self.candidate]}"
        flags = [f for f in ("tie", "forced", "unsupported") if getattr(self, f)]
        if flags:
            text += " (" + ", ".join(flags) + ")"
        return text


@dataclass(frozen=True)
class RoundEvent:
    """A table row: the priorities seen at this step and the actions taken on them."""

    step: int
    priorities: tuple[tuple[int, Cell], ...]
    actions: tuple[Action, ...]

    def priority_of(self, candidate: int) -> Cell:
        return dict(self.priorities)[candidate]


@dataclass(frozen=True)
class AuditLog:
    """Ordered round events of one count.

    ``columns`` are the candidates taking part in the count, in index order;
    candidates removed from the profile beforehand are not shown.
    """

    names: tuple[str, ...]
    columns: tuple[int, ...]
    events: tuple[RoundEvent, ...] = ()
    title: str = ""

    @property
    def actions(self) -> list[Action]:
        return [a for ev in self.events for a in ev.actions]

    @property
    def tie_flag(self) -> bool:
        return any(a.tie for a in self.actions)

    def row(self, step: int) -> RoundEvent:
        return self.events[step - 1]

    def add_row(self, priorities, action: Action) -> AuditLog:
        event = RoundEvent(len(self.events) + 1, tuple(priorities), (action,))
        return replace(self, events=self.events + (event,))

    def extend_row(self, action: Action) -> AuditLog:
        if not self.events:
            raise ContractError("no row to extend")
        last = self.events[-1]
        last = replace(last, actions=last.actions + (action,))
        return replace(self, events=self.events[:-1] + (last,))

    def to_table(self) -> str:
        """Aligned text table, one row per step."""
        names = list(self.names)
        header = [""] + [names[c] for c in self.columns] + ["Actions"]
        rows = [header]
        for ev in self.events:
            cells = dict(ev.priorities)
            row = [str(ev.step)]
            for c in self.columns:
                v = cells[c]
                row.append(v if isinstance(v, str) else format_rational(v))
            row.append(", ".join(a.describe(names) for a in ev.actions if a.kind != "end"))
            rows.append(row)
        widths = [max(len(r[i]) for r in rows) for i in range(len(header) - 1)]
        lines = []
        if self.title:
            lines.append(self.title)
        for r in rows:
            cells = [r[i].rjust(widths[i]) for i in range(len(widths))]
            lines.append("  ".join(cells + [r[-1]]).rstrip())
        return "\n".join(lines)

    def to_dict(self) -> dict:
        names = list(self.names)

        def cell(v):
            return v if isinstance(v, str) else rational_str(v)

        return {
            "title": self.title,
            "candidates": [names[c] for c in self.columns],
            "events": [
                {
                    "step": ev.step,
                    "priorities": {names[c]: cell(v) for c, v in ev.priorities},
                    "actions": [
                        {
                            "kind": a.kind,
                            "candidate": None if a.candidate is None else names[a.candidate],
                            "tie": a.tie,
                            "forced": a.forced,
                            "unsupported": a.unsupported,
                        }
                        for a in ev.actions
                    ],
                }
                for ev in self.events
            ],
        }


@dataclass(frozen=True)
class SupportTally:
    """Per-candidate supporting weight ``votes`` and supporting load ``loads``.

    ``supporter[i]`` is the candidate ballot line ``i`` supports, or ``None``
    when the line is exhausted.
    """

    votes: tuple[int, ...]
    loads: tuple[Fraction, ...]
    supporter: tuple[int | None, ...]
    exhausted: int

    def priority(self, c: int) -> Fraction:
        return priority(self.votes[c], self.loads[c])


@dataclass(frozen=True)
class CountState:
    profile: BallotProfile
    status: tuple[CandidateStatus, ...]
    seat_load: tuple[Fraction, ...]
    log: AuditLog = field(compare=False)

    def with_status(self, *wanted: CandidateStatus) -> list[int]:
        return [c for c, s in enumerate(self.status) if s in wanted]

    @property
    def hopeful(self) -> list[int]:
        return self.with_status(CandidateStatus.HOPEFUL)

    @property
    def previously_elected(self) -> list[int]:
        return self.with_status(CandidateStatus.PREVIOUSLY_ELECTED)

    @property
    def elected(self) -> list[int]:
        return self.with_status(CandidateStatus.ELECTED)


def initial_state(
    profile: BallotProfile,
    previously_elected: Iterable[int] = (),
    excluded: Iterable[int] = (),
    title: str = "",
) -> CountState:
    """Fresh state: zero loads, everyone hopeful except the given candidates.

    ``excluded`` candidates are treated as absent and left out of the log's
    columns.
    """
    n = profile.n_candidates
    status = [CandidateStatus.HOPEFUL] * n
    for c in previously_elected:
        status[c] = CandidateStatus.PREVIOUSLY_ELECTED
    absent = set(excluded)
    for c in absent:
        if status[c] is CandidateStatus.PREVIOUSLY_ELECTED:
            raise ContractError(f"candidate {c} is both previously elected and excluded")
        status[c] = CandidateStatus.EXCLUDED
    columns = tuple(c for c in range(n) if c not in absent)
    log = AuditLog(tuple(profile.names), columns, title=title)
    return CountState(profile, tuple(status), (Fraction(0),) * len(profile.ballots), log)


def assign_support(state: CountState) -> SupportTally:
    n = state.profile.n_candidates
    votes = [0] * n
    loads = [Fraction(0)] * n
    supporter: list[int | None] = []
    exhausted = 0
    active = [s in _ACTIVE for s in state.status]
    for ballot, load in zip(state.profile.ballots, state.seat_load):
        target = None
        for c in ballot.ranking:
            if active[c]:
                target = c
                break
        supporter.append(target)
        if target is None:
            exhausted += ballot.weight
            continue
        votes[target] += ballot.weight
        if load:
            loads[target] += ballot.weight * load
    return SupportTally(tuple(votes), tuple(loads), tuple(supporter), exhausted)


def snapshot(state: CountState, tally: SupportTally | None = None) -> list[tuple[int, Cell]]:
    """Priority of every column candidate, with E/X markers for decided ones."""
    if tally is None:
        tally = assign_support(state)
    out = []
    for c in state.log.columns:
        s = state.status[c]
        if s is CandidateStatus.ELECTED:
            out.append((c, ELECTED_MARK))
        elif s is CandidateStatus.EXCLUDED:
            out.append((c, EXCLUDED_MARK))
        else:
            out.append((c, tally.priority(c)))
    return out


def pick(candidates, key, highest: bool) -> tuple[int, bool]:
    """Candidate with the highest (or lowest) key; ties go to the lowest index.

    Returns ``(candidate, tied)``.
    """
    candidates = sorted(candidates)
    if not candidates:
        raise ContractError("no candidates to choose from")
    values = {c: key(c) for c in candidates}
    best = max(values.values()) if highest else min(values.values())
    winners = [c for c in candidates if values[c] == best]
    return winners[0], len(winners) > 1


def _record(state: CountState, action: Action, tally: SupportTally, new_row: bool) -> AuditLog:
    if new_row:
        return state.log.add_row(snapshot(state, tally), action)
    return state.log.extend_row(action)


def elect(
    state: CountState,
    c: int,
    *,
    tie: bool = False,
    forced: bool = False,
    new_row: bool = True,
    tally: SupportTally | None = None,
) -> CountState:
    """Elect ``c`` and charge its supporting ballots ``(S + 1) / V`` each.

    With ``new_row`` false the action joins the previous log row instead of
    starting a new one (e.g. "Exclude A, Elect C"). ``tally`` may pass in
    :func:`assign_support` of this same state to avoid recounting.
    """
    if state.status[c] not in _ACTIVE:
        raise ContractError(f"cannot elect candidate {c} with status {state.status[c].value}")
    if tally is None:
        tally = assign_support(state)
    votes = tally.votes[c]
    unsupported = votes == 0
    loads = list(state.seat_load)
    if not unsupported:
        new_load = (tally.loads[c] + 1) / votes
        for i, s in enumerate(tally.supporter):
            if s == c:
                loads[i] = new_load
    action = Action("elect", c, tie=tie, forced=forced, unsupported=unsupported)
    log = _record(state, action, tally, new_row)
    status = list(state.status)
    status[c] = CandidateStatus.ELECTED
    return CountState(state.profile, tuple(status), tuple(loads), log)


def exclude(
    state: CountState,
    c: int,
    *,
    tie: bool = False,
    new_row: bool = True,
    tally: SupportTally | None = None,
) -> CountState:
    if state.status[c] is not CandidateStatus.HOPEFUL:
        raise ContractError(f"cannot exclude candidate {c} with status {state.status[c].value}")
    if new_row and tally is None:
        tally = assign_support(state)
    log = _record(state, Action("exclude", c, tie=tie), tally, new_row)
    status = list(state.status)
    status[c] = CandidateStatus.EXCLUDED
    return CountState(state.profile, tuple(status), state.seat_load, log)


def restart(state: CountState) -> CountState:
    """Zero every seat load and demote elected candidates to previously elected."""
    status = tuple(
        CandidateStatus.PREVIOUSLY_ELECTED if s is CandidateStatus.ELECTED else s
        for s in state.status
    )
    log = state.log.extend_row(Action("restart"))
    return CountState(state.profile, status, (Fraction(0),) * len(state.seat_load), log)


def end(state: CountState) -> CountState:
    return replace(state, log=state.log.extend_row(Action("end")))


def seat_total(state: CountState) -> Fraction:
    """Total seat load carried by all ballots."""
    return sum(
        (b.weight * load for b, load in zip(state.profile.ballots, state.seat_load)),
        Fraction(0),
    )


def replay(initial: CountState, log: AuditLog) -> CountState:
    """Apply a log's actions to ``initial``, rebuilding rows the same way."""
    state = initial
    for ev in log.events:
        for i, a in enumerate(ev.actions):
            first = i == 0
            if a.kind == "elect":
                state = elect(state, a.candidate, tie=a.tie, forced=a.forced, new_row=first)
            elif a.kind == "exclude":
                state = exclude(state, a.candidate, tie=a.tie, new_row=first)
            elif a.kind == "restart":
                state = restart(state)
            elif a.kind == "end":
                state = end(state)
            else:
                raise ContractError(f"unknown action {a.kind!r}")
    return state
