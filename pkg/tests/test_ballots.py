import pytest
from hypothesis import given
from hypothesis import strategies as st

from phragmen_list.ballots import (
    Ballot,
    BallotProfile,
    Candidate,
    ParseError,
    ProfileError,
    make_profile,
    merge_profiles,
    parse_profile,
    restrict_profile,
    serialize_profile,
)

from strategies import profiles

EXAMPLE1 = """\
4 3
60 1 4 3 2 0
51 2 3 4 1 0
45 3 1 4 2 0
44 4 3 1 2 0
0
"A"
"B"
"C"
"D"
"Example 1"
"""


def rankings(profile):
    return [(b.weight, profile.label(b.ranking)) for b in profile.ballots]


def test_parse_example1():
    p = parse_profile(EXAMPLE1)
    assert p.total_weight == 200
    assert p.names == ["A", "B", "C", "D"]
    assert p.seats == 3
    assert p.title == "Example 1"
    assert rankings(p) == [(60, "ADCB"), (51, "BCDA"), (45, "CADB"), (44, "DCAB")]


def test_bundled_example_matches(ex1):
    assert ex1 == parse_profile(EXAMPLE1)


def test_minimal_profile():
    p = parse_profile('1 1\n1 1 0\n0\n"A"\n"t"\n')
    assert p.total_weight == 1
    assert p.n_candidates == 1


def test_parse_is_deterministic():
    assert parse_profile(EXAMPLE1) == parse_profile(EXAMPLE1)
    assert serialize_profile(parse_profile(EXAMPLE1)) == serialize_profile(parse_profile(EXAMPLE1))


def test_comments_and_blank_lines():
    text = '# header comment\n\n2 1  # two candidates\n3 1 2 0 # ballot\n\n0\n"A" # first\n"B"\n"x # not a comment"\n'
    p = parse_profile(text)
    assert p.title == "x # not a comment"
    assert rankings(p) == [(3, "AB")]


@pytest.mark.parametrize(
    "line, lineno, fragment",
    [
        ("60 1 1 2 0", 2, "duplicate"),
        ("60 1 9 0", 2, "unknown candidate"),
        ("0 1 2 0", 2, "positive"),
        ("-3 1 2 0", 2, "positive"),
        ("60 0", 2, "empty ballot"),
        ("1.5 1 2 0", 2, "integer"),
        ("60 1 2", 2, "end with 0"),
    ],
)
def test_parse_errors_carry_line_numbers(line, lineno, fragment):
    text = f'4 1\n{line}\n0\n"A"\n"B"\n"C"\n"D"\n"t"\n'
    with pytest.raises(ParseError) as info:
        parse_profile(text)
    assert info.value.lineno == lineno
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"line {lineno}:")


@pytest.mark.parametrize(
    "text",
    [
        "",
        "2\n0\n",
        '2 1\n1 1 0\n0\n"A"\n',  # missing a name and the title
        '2 1\n1 1 0\n0\n"A"\nB\n"t"\n',  # unquoted name
        '2 1\n1 1 0\n0\n"A"\n"A"\n"t"\n',  # duplicate names
        '2 1\n1 1 0\n0\n"A"\n"B"\n"t"\n"extra"\n',
        '2 1\n1 1 0\n0\n"A"\n""\n"t"\n',  # empty name
    ],
)
def test_malformed_files(text):
    with pytest.raises(ParseError):
        parse_profile(text)


def test_model_validation():
    with pytest.raises(ProfileError):
        Ballot((0, 0), 1)
    with pytest.raises(ProfileError):
        Ballot((), 1)
    with pytest.raises(ProfileError):
        Ballot((0,), 0)
    with pytest.raises(ProfileError):
        BallotProfile((Candidate(0, "A"),), (Ballot((1,), 1),))
    with pytest.raises(ProfileError):
        BallotProfile((Candidate(1, "A"),), ())


def test_restrict_example1(ex1):
    c = ex1.index_of("C")
    r = restrict_profile(ex1, {c})
    assert rankings(r) == [(60, "ADB"), (51, "BDA"), (45, "ADB"), (44, "DAB")]
    assert r.n_candidates == 4  # indices are kept
    assert r.total_weight == 200 and r.discarded_weight == 0


def test_restrict_nothing_is_identity(ex1):
    assert restrict_profile(ex1, set()) == ex1


def test_restrict_to_exhaustion():
    p = make_profile("AB", [(3, "A")])
    r = restrict_profile(p, {0})
    assert r.ballots == ()
    assert r.total_weight == 0
    assert r.original_weight == 3


def test_restrict_rejects_bad_index(ex1):
    with pytest.raises(ProfileError):
        restrict_profile(ex1, {7})


def test_merge_builds_example3(ex1, ex3):
    e = make_profile("E", [(45, "E")])
    merged = merge_profiles(ex1, e)
    assert merged == ex3
    assert merged.total_weight == 245


def test_merge_with_empty_ballot_list(ex1):
    extra = BallotProfile((Candidate(0, "X"), Candidate(1, "Y")), ())
    merged = merge_profiles(ex1, extra)
    assert merged.names == ["A", "B", "C", "D", "X", "Y"]
    assert merged.ballots == ex1.ballots


def test_merge_two_singletons():
    merged = merge_profiles(make_profile("A", [(1, "A")]), make_profile("B", [(2, "B")]))
    assert merged.n_candidates == 2
    assert rankings(merged) == [(1, "A"), (2, "B")]


def test_merge_rejects_shared_names(ex1):
    with pytest.raises(ProfileError):
        merge_profiles(ex1, make_profile("A", [(1, "A")]))


@given(profiles())
def test_serialize_round_trip(p):
    q = parse_profile(serialize_profile(p))
    assert q == p
    assert (q.seats, q.title) == (p.seats, p.title)


@given(profiles(), st.data())
def test_restrict_idempotent(p, data):
    removed = data.draw(st.sets(st.integers(0, p.n_candidates - 1)))
    once = restrict_profile(p, removed)
    assert restrict_profile(once, removed) == once


@given(profiles(), profiles(first_name=10))
def test_merge_then_restrict_recovers_first(a, b):
    merged = merge_profiles(a, b)
    shift = a.n_candidates
    back = restrict_profile(merged, range(shift, merged.n_candidates))
    assert [(x.ranking, x.weight) for x in back.ballots] == [
        (x.ranking, x.weight) for x in a.ballots
    ]
