import json
from fractions import Fraction as F
from importlib import resources

import pytest

from phragmen_list.ballots import make_profile, serialize_profile
from phragmen_list.cli import main
from phragmen_list.engine import format_rational

DATA = resources.files("phragmen_list") / "data"
EX1, EX2, EX3 = (str(DATA / f"example{i}.blt") for i in (1, 2, 3))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_tabulate_top_down(capsys):
    code, out, _ = run(capsys, "tabulate", EX1, "--method", "top-down", "--depth", "4")
    assert code == 0
    assert "List: C > A > B > D" in out
    assert out.count("Actions") == 4
    assert "52.5  51   E  44  Exclude D, Restart" in out
    assert "74.5  51   E   X  Exclude B, Elect A" in out
    assert "E  51   E  49.67~  Exclude D, Elect B" in out


def test_list_subcommand_defaults_to_top_down(capsys):
    code, out, _ = run(capsys, "list", EX1)
    assert code == 0
    assert "List: C > A > B > D" in out


def test_tabulate_bottom_up(capsys):
    code, out, _ = run(capsys, "tabulate", EX1, "--method", "bottom-up", "--verify-droop")
    assert code == 0
    assert "List: A > D > B > C" in out
    assert "E  51  49.67~   E  Elect B" in out
    assert "105  95  Elect A" in out
    assert "VIOLATED" not in out


def test_quota_with_verification(capsys):
    code, out, _ = run(capsys, "tabulate", EX3, "--method", "quota-phragmen", "--seats", "3",
                       "--verify-droop")
    assert code == 0
    assert "Winners: C, A, B" in out
    assert "Droop check {A,B,C}: compliant" in out
    assert "coherence" not in out.lower()


def test_irv(capsys):
    code, out, _ = run(capsys, "tabulate", EX1, "--method", "irv")
    assert code == 0
    assert "Winners: C" in out
    assert "60   X  140   X  Exclude A, Elect C" in out


def test_violation_exit_code(tmp_path, capsys):
    # {A,B} is solidly backed by the A and BAC ballots (10 > 19/2) but C wins
    p = make_profile("ABC", [(2, "A"), (7, "CA"), (8, "BAC"), (2, "CAB")], title="t")
    path = tmp_path / "v.blt"
    path.write_text(serialize_profile(p))
    code, out, _ = run(capsys, "tabulate", str(path), "--method", "quota-phragmen",
                       "--seats", "1", "--verify-droop")
    assert code == 2
    assert "VIOLATED" in out
    assert "{A,B} has support 10" in out


def test_json_output_is_exact(capsys):
    code, out, _ = run(capsys, "tabulate", EX1, "--format", "json", "--verify-droop")
    assert code == 0
    doc = json.loads(out)
    assert doc["list"] == ["C", "A", "B", "D"]
    third = doc["logs"][2]["events"]
    assert third[1]["priorities"]["D"] == "52/1"
    assert third[2]["priorities"]["D"] == "149/3"
    assert all(v["compliant"] for v in doc["droop"])


def test_table_numbers_round_trip_to_json(capsys):
    _, table, _ = run(capsys, "tabulate", EX1, "--method", "bottom-up")
    _, js, _ = run(capsys, "tabulate", EX1, "--method", "bottom-up", "--format", "json")
    doc = json.loads(js)
    shown = []
    for log in doc["logs"]:
        for ev in log["events"]:
            for v in ev["priorities"].values():
                if v not in ("E", "X"):
                    num, den = map(int, v.split("/"))
                    shown.append(format_rational(F(num, den)))
    for text in shown:
        assert text in table


def test_output_is_deterministic(capsys):
    first = run(capsys, "tabulate", EX3, "--format", "json")
    second = run(capsys, "tabulate", EX3, "--format", "json")
    assert first == second


@pytest.mark.parametrize(
    "seats, expected",
    [("3", ["{A,B,C}", "{A,B,D}"]), ("2", ["{A,C}", "{A,D}", "{C,D}"])],
)
def test_coalitions(capsys, seats, expected):
    code, out, _ = run(capsys, "coalitions", EX1, "--seats", seats)
    assert code == 0
    listed = out.split("winner sets:")[1].split()
    assert listed == expected


def test_coalitions_single_candidate(tmp_path, capsys):
    path = tmp_path / "one.blt"
    path.write_text('1 1\n1 1 0\n0\n"A"\n"one"\n')
    code, out, _ = run(capsys, "coalitions", str(path))
    assert code == 0
    assert out.split("winner sets:")[1].split() == ["{A}"]


def test_coalitions_json(capsys):
    code, out, _ = run(capsys, "coalitions", EX2, "--seats", "3", "--format", "json")
    doc = json.loads(out)
    assert doc["quota"] == "50/1"
    assert {"preferred": ["B", "E"], "support": 51, "seats": 3, "quota": "50/1",
            "floor": 1} in doc["constraints"]


def test_coalitions_bound(capsys):
    code, _, err = run(capsys, "coalitions", EX1, "--max-candidates", "3")
    assert code == 1
    assert "bound" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["tabulate", "does-not-exist.blt"],
        ["tabulate", EX1, "--depth", "9"],
        ["tabulate", EX1, "--method", "quota-phragmen", "--seats", "0"],
        ["properties", "--max-candidates", "8"],
        ["properties", "--max-weight", "61"],
    ],
)
def test_input_errors_exit_1(capsys, argv):
    assert main(argv) == 1


def test_bad_method_exits_1(capsys):
    with pytest.raises(SystemExit) as info:
        main(["tabulate", EX1, "--method", "nonsense"])
    assert info.value.code == 1


def test_parse_error_reports_line(tmp_path, capsys):
    path = tmp_path / "bad.blt"
    path.write_text('2 1\n3 1 1 0\n0\n"A"\n"B"\n"t"\n')
    code, _, err = run(capsys, "tabulate", str(path))
    assert code == 1
    assert "line 2" in err


def test_properties_small_run(tmp_path, capsys):
    argv = ["properties", "--seed", "42", "--profiles", "20", "--max-candidates", "4",
            "--out-dir", str(tmp_path)]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert "top-down-droop: 20/20 tie-free runs compliant" in out
    assert "coherence: 20/20 tie-free runs consistent" in out
    assert run(capsys, *argv)[1] == out
    assert list(tmp_path.iterdir()) == []


def test_properties_single_candidate_is_vacuous(capsys):
    code, out, _ = run(capsys, "properties", "--profiles", "5", "--max-candidates", "1",
                       "--suite", "top-down-droop", "--suite", "coherence")
    assert code == 0
    assert "top-down-droop: 5/5" in out
    assert "coherence: skipped" in out


def test_properties_json(capsys):
    code, out, _ = run(capsys, "properties", "--profiles", "5", "--suite", "irv-droop",
                       "--format", "json")
    (doc,) = json.loads(out)
    assert doc["suite"] == "irv-droop" and doc["passed"] == 5 and doc["failures"] == []
