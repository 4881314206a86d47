"""Ballot profiles: the data model, the ballot file format, and profile surgery.

A profile is a roster of candidates plus a list of weighted strict rankings.
Rankings may be truncated. Candidate identity is the 0-based index; names are
only for display.

The file format is a subset of the BLT convention::

    4 3                 # candidate count, default seat count
    60 1 4 3 2 0        # weight, 1-based preferences, terminating 0
    51 2 3 4 1 0
    0                   # end of ballots
    "A"                 # one quoted name per candidate
    "B"
    "C"
    "D"
    "Example 1"         # title
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Sequence

__all__ = [
    "Ballot",
    "BallotProfile",
    "Candidate",
    "ProfileError",
    "ParseError",
    "load_example",
    "make_profile",
    "merge_profiles",
    "parse_profile",
    "read_profile",
    "restrict_profile",
    "serialize_profile",
]


class ProfileError(ValueError):
    """Raised for an inconsistent profile (bad index, duplicate, bad weight)."""


class ParseError(ProfileError):
    """Raised for a malformed ballot file; carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
        self.message = message


@dataclass(frozen=True)
class Candidate:
    index: int
    name: str

    def __post_init__(self):
        if not self.name:
            raise ProfileError("candidate names must be non-empty")


@dataclass(frozen=True)
class Ballot:
    """A strict (possibly partial) ranking of candidate indices with an integer weight."""

    ranking: tuple[int, ...]
    weight: int = 1

    def __post_init__(self):
        object.__setattr__(self, "ranking", tuple(self.ranking))
        if not self.ranking:
            raise ProfileError("empty ranking")
        if len(set(self.ranking)) != len(self.ranking):
            raise ProfileError(f"duplicate candidate in ranking {self.ranking}")
        if isinstance(self.weight, bool) or not isinstance(self.weight, int):
            raise ProfileError(f"weight must be an integer, got {self.weight!r}")
        if self.weight < 1:
            raise ProfileError(f"weight must be positive, got {self.weight}")


@dataclass(frozen=True)
class BallotProfile:
    """Candidate roster plus weighted ballots.

    ``seats`` and ``title`` are file metadata and do not take part in
    equality. ``discarded_weight`` is the weight of ballots dropped by
    :func:`restrict_profile` because nothing was left on them.
    """

    candidates: tuple[Candidate, ...]
    ballots: tuple[Ballot, ...]
    seats: int = field(default=1, compare=False)
    title: str = field(default="", compare=False)
    discarded_weight: int = field(default=0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "candidates", tuple(self.candidates))
        object.__setattr__(self, "ballots", tuple(self.ballots))
        for i, cand in enumerate(self.candidates):
            if cand.index != i:
                raise ProfileError(f"candidate {cand.name!r} has index {cand.index}, expected {i}")
        names = [c.name for c in self.candidates]
        if len(set(names)) != len(names):
            raise ProfileError("candidate names must be unique")
        n = len(self.candidates)
        for ballot in self.ballots:
            for c in ballot.ranking:
                if not 0 <= c < n:
                    raise ProfileError(f"unknown candidate index {c}")

    @property
    def total_weight(self) -> int:
        return sum(b.weight for b in self.ballots)

    @property
    def original_weight(self) -> int:
        """Total weight before any ballots were discarded by restriction."""
        return self.total_weight + self.discarded_weight

    @property
    def n_candidates(self) -> int:
        return len(self.candidates)

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.candidates]

    def index_of(self, name: str) -> int:
        for c in self.candidates:
            if c.name == name:
                return c.index
        raise KeyError(name)

    def is_fully_ranked(self) -> bool:
        n = len(self.candidates)
        return all(len(b.ranking) == n for b in self.ballots)

    def label(self, indices: Iterable[int], sep: str = "") -> str:
        return sep.join(self.candidates[i].name for i in indices)


def make_profile(
    names: Sequence[str],
    ballots: Iterable[tuple[int, str | Sequence[str]]],
    seats: int = 1,
    title: str = "",
) -> BallotProfile:
    """Build a profile from names and ``(weight, ranking)`` pairs.

    Rankings are given by name; a plain string is split into characters, so
    single-letter rosters can be written the way they usually are::

        make_profile("ABCD", [(60, "ADCB"), (51, "BCDA")])
    """
    candidates = [Candidate(i, name) for i, name in enumerate(names)]
    lookup = {name: i for i, name in enumerate(names)}
    out = []
    for weight, ranking in ballots:
        try:
            out.append(Ballot(tuple(lookup[name] for name in ranking), weight))
        except KeyError as exc:
            raise ProfileError(f"unknown candidate {exc.args[0]!r}") from None
    return BallotProfile(tuple(candidates), tuple(out), seats=seats, title=title)


_NAME_RE = re.compile(r'^"((?:[^"\\]|\\.)*)"\s*(?:#.*)?$')


def _unquote(s: str) -> str:
    return re.sub(r"\\(.)", r"\1", s)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _ints(lineno: int, text: str) -> list[int]:
    out = []
    for tok in text.split():
        if not re.fullmatch(r"[+-]?\d+", tok):
            raise ParseError(lineno, f"expected an integer, got {tok!r}")
        out.append(int(tok))
    return out


def parse_profile(text: str) -> BallotProfile:
    """Parse a ballot file into a validated :class:`BallotProfile`."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append((lineno, stripped))

    pos = 0

    def next_line(what: str) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(lines):
            last = lines[-1][0] if lines else 0
            raise ParseError(last, f"unexpected end of file, expected {what}")
        item = lines[pos]
        pos += 1
        return item

    lineno, line = next_line("header")
    header = _ints(lineno, line.split("#", 1)[0])
    if len(header) != 2:
        raise ParseError(lineno, "header must be '<candidates> <seats>'")
    n_cands, seats = header
    if n_cands < 1:
        raise ParseError(lineno, "candidate count must be positive")
    if seats < 1:
        raise ParseError(lineno, "seat count must be positive")

    rankings: list[tuple[int, tuple[int, ...], int]] = []
    while True:
        lineno, line = next_line("ballot line or terminating 0")
        nums = _ints(lineno, line.split("#", 1)[0])
        if nums == [0]:
            break
        if len(nums) < 2 or nums[-1] != 0:
            raise ParseError(lineno, "ballot line must end with 0")
        weight, prefs = nums[0], nums[1:-1]
        if weight < 1:
            raise ParseError(lineno, f"weight must be positive, got {weight}")
        if not prefs:
            raise ParseError(lineno, "empty ballot")
        for p in prefs:
            if not 1 <= p <= n_cands:
                raise ParseError(lineno, f"unknown candidate index {p}")
        if len(set(prefs)) != len(prefs):
            raise ParseError(lineno, "duplicate candidate in ranking")
        rankings.append((lineno, tuple(p - 1 for p in prefs), weight))

    names = []
    for _ in range(n_cands + 1):
        lineno, line = next_line("quoted candidate name or title")
        m = _NAME_RE.match(line)
        if not m:
            raise ParseError(lineno, f"expected a quoted string, got {line!r}")
        names.append(_unquote(m.group(1)))
    title = names.pop()
    if pos < len(lines):
        raise ParseError(lines[pos][0], "unexpected content after title")

    try:
        candidates = tuple(Candidate(i, name) for i, name in enumerate(names))
    except ProfileError as exc:
        raise ParseError(lineno, str(exc)) from None
    if len(set(names)) != len(names):
        raise ParseError(lineno, "candidate names must be unique")
    ballots = tuple(Ballot(r, w) for _, r, w in rankings)
    return BallotProfile(candidates, ballots, seats=seats, title=title)


def serialize_profile(profile: BallotProfile) -> str:
    """Render a profile in the ballot file format (inverse of :func:`parse_profile`)."""
    out = [f"{profile.n_candidates} {profile.seats}"]
    for b in profile.ballots:
        prefs = " ".join(str(c + 1) for c in b.ranking)
        out.append(f"{b.weight} {prefs} 0")
    out.append("0")
    out.extend(_quote(c.name) for c in profile.candidates)
    out.append(_quote(profile.title))
    return "\n".join(out) + "\n"


def read_profile(path) -> BallotProfile:
    with open(path, encoding="utf-8") as fh:
        return parse_profile(fh.read())


def load_example(name: str) -> BallotProfile:
    """Load one of the bundled fixtures: ``"example1"``, ``"example2"``, ``"example3"``."""
    text = resources.files(__package__).joinpath("data", f"{name}.blt").read_text("utf-8")
    return parse_profile(text)


def restrict_profile(profile: BallotProfile, removed: Iterable[int]) -> BallotProfile:
    """Delete ``removed`` candidates from every ranking.

    Indices are preserved. Ballots left empty are dropped and their weight
    is added to ``discarded_weight``.
    """
    removed = frozenset(removed)
    for c in removed:
        if not 0 <= c < profile.n_candidates:
            raise ProfileError(f"unknown candidate index {c}")
    if not removed:
        return profile
    ballots = []
    dropped = 0
    for b in profile.ballots:
        ranking = tuple(c for c in b.ranking if c not in removed)
        if ranking:
            ballots.append(Ballot(ranking, b.weight))
        else:
            dropped += b.weight
    return BallotProfile(
        profile.candidates,
        tuple(ballots),
        seats=profile.seats,
        title=profile.title,
        discarded_weight=profile.discarded_weight + dropped,
    )


def merge_profiles(a: BallotProfile, b: BallotProfile) -> BallotProfile:
    """Count two profiles over disjoint candidates together.

    ``b``'s candidates are appended after ``a``'s and re-indexed.
    """
    overlap = set(a.names) & set(b.names)
    if overlap:
        raise ProfileError(f"overlapping candidate names: {sorted(overlap)}")
    shift = a.n_candidates
    candidates = a.candidates + tuple(Candidate(c.index + shift, c.name) for c in b.candidates)
    ballots = a.ballots + tuple(
        Ballot(tuple(c + shift for c in bal.ranking), bal.weight) for bal in b.ballots
    )
    title = " + ".join(t for t in (a.title, b.title) if t)
    return BallotProfile(candidates, ballots, seats=a.seats + b.seats, title=title)
