import json
import shutil

import pytest

from octowrap import cli
from octowrap.cayley import parse_cd
from octowrap.report import VerificationReport, emit_report, parse_csv_report
from octowrap.scenario import ScenarioError, format_path, parse_path, parse_scenario
from octowrap.suites import SUITES, SuiteSpec, UnknownSuiteError, load_sign_fixture, run_suite
from importlib import resources

FIXTURE = resources.files("octowrap").joinpath("data/octonion_table.txt")

SCENARIO = """\
# four quaternion edges around a square
group.model = unit-quaternion
mesh.circle.n = 4
conn.edge[0] = A2[0, 1, 0, 0]
conn.edge[1] = A2[0, 0, 1, 0]
conn.edge[2] = A2[0, 1, 0, 0]
conn.edge[3] = A2[0, 0, 1, 0]
wrap.path = 0+ 1+ 2+ 3+
"""


# reports

def test_empty_report_serialises():
    rep = VerificationReport("alternativity", seed=7)
    assert emit_report(rep).startswith("PASS alternativity trials=0 failures=0 seed=7")
    data = json.loads(emit_report(rep, "json"))
    assert data["trials"] == 0 and data["counterexample"] is None
    assert set(data) == {"suite", "trials", "failures", "seed", "duration_ms", "counterexample"}


def test_csv_and_json_agree():
    reps = [VerificationReport("a", 3, 1, 5, 1.25, "A2[1, 0, 0, 0]"), VerificationReport("b", 2, 0, 5, 0.5)]
    rows = parse_csv_report(emit_report(reps, "csv"))
    assert rows == json.loads(emit_report(reps, "json"))


def test_record_keeps_first_witness():
    rep = VerificationReport("x")
    rep.record(True)
    rep.record(False, "first")
    rep.record(False, "second")
    assert (rep.trials, rep.failures, rep.counterexample) == (3, 2, "first")
    assert not rep.passed


def test_unwritable_destination(tmp_path):
    with pytest.raises(OSError):
        emit_report(VerificationReport("a"), "text", tmp_path / "missing" / "out.txt")
    with pytest.raises(ValueError):
        emit_report(VerificationReport("a"), "yaml")


def test_report_written_to_file(tmp_path):
    dest = tmp_path / "r.json"
    out = emit_report(VerificationReport("a", seed=1), "json", dest)
    assert dest.read_text() == out


# suites

def test_unknown_suite():
    with pytest.raises(UnknownSuiteError, match="unknown suite"):
        run_suite(SuiteSpec("no-such-suite"))


def test_suite_spec_validation():
    with pytest.raises(ValueError):
        SuiteSpec("alternativity", samples=0)


def test_run_suite_is_deterministic():
    a = run_suite(SuiteSpec("bunch", samples=20, seed=3))
    b = run_suite(SuiteSpec("bunch", samples=20, seed=3))
    assert emit_report(a) == emit_report(b)
    assert a.seed == 3 and a.passed


def test_alternativity_small():
    rep = run_suite(SuiteSpec("alternativity", samples=20))
    assert rep.passed and rep.trials == 3 * 3 * 20


def test_corrupted_fixture_gives_parseable_counterexample(tmp_path):
    bad = tmp_path / "table.txt"
    rows = load_sign_fixture()
    rows[3][5] = -rows[3][5]
    bad.write_text("\n".join(" ".join(str(v) for v in r) for r in rows) + "\n")
    rep = run_suite(SuiteSpec("octonion-table", fixture=str(bad)))
    assert rep.failures == 1
    assert rep.counterexample.startswith("i3 i5:")
    literals = [tok for tok in rep.counterexample.split(": ", 1)[1].replace(" vs fixture ", "|")
                .replace("derived ", "").split("|")]
    derived, fixture = (parse_cd(t) for t in literals)
    assert derived == -fixture
    assert json.loads(emit_report(rep, "json"))["counterexample"] == rep.counterexample


# command line

def test_cli_list(capsys):
    assert cli.main(["--list"]) == 0
    names = [line.split("\t")[0] for line in capsys.readouterr().out.splitlines()]
    assert names == list(SUITES)


def test_cli_unknown_suite(capsys):
    assert cli.main(["--suite", "bogus"]) == 2
    assert "unknown suite" in capsys.readouterr().err


def test_cli_nothing_to_run(capsys):
    assert cli.main([]) == 2


def test_cli_seed_fallback(monkeypatch, capsys):
    monkeypatch.setenv("OCTOWRAP_SEED", "11")
    assert cli.main(["--suite", "components", "--samples", "5"]) == 0
    assert "seed=11" in capsys.readouterr().out
    assert cli.main(["--suite", "components", "--samples", "5", "--seed", "4"]) == 0
    assert "seed=4" in capsys.readouterr().out
    monkeypatch.delenv("OCTOWRAP_SEED")
    assert cli.main(["--suite", "components", "--samples", "5"]) == 0
    assert "seed=7" in capsys.readouterr().out


def test_cli_failure_exit_code(tmp_path, capsys):
    bad = tmp_path / "table.txt"
    shutil.copy(FIXTURE, bad)
    text = bad.read_text().replace(" 2 ", " -2 ", 1)
    bad.write_text(text)
    assert cli.main(["--suite", "octonion-table", "--fixture", str(bad), "--format", "json"]) == 1
    out = json.loads(capsys.readouterr().out)
    assert out[0]["failures"] >= 1 and out[0]["counterexample"]


def test_cli_formats_and_output(tmp_path, capsys):
    dest = tmp_path / "rep.csv"
    assert cli.main(["--suite", "pairing", "--samples", "3", "--format", "csv", "--output", str(dest)]) == 0
    out = capsys.readouterr().out
    assert dest.read_text() == out
    assert parse_csv_report(out)[0]["suite"] == "pairing"


# scenarios

def test_parse_path():
    assert parse_path("0+ 1+ 2-; 4") == (((0, 1), (1, 1), (2, -1)), ((4, 1),))
    assert format_path(parse_path("0+ 1-")) == "0+ 1-"
    with pytest.raises(ValueError):
        parse_path("x+")


def test_scenario_square():
    sc = parse_scenario(SCENARIO)
    assert sc.summary() == "(A2[-1, 0, 0, 0])"


def test_scenario_cli(tmp_path, capsys):
    path = tmp_path / "sq.txt"
    path.write_text(SCENARIO)
    assert cli.main(["--scenario", str(path)]) == 0
    assert "holonomy=(A2[-1,0,0,0])" in capsys.readouterr().out


@pytest.mark.parametrize("text, line", [
    ("mesh.circle.n = 4\nbogus = 1\nwrap.path = 0+\n", 2),
    ("mesh.circle.n = 4\nconn.edge[9] = A2[1, 0, 0, 0]\nwrap.path = 0+\n", 2),
    ("mesh.circle.n = 4\nmesh.circle.n = 5\n", 2),
    ("mesh.circle.n = 4\n\nwrap.path = 0+ 2+\n", 3),
    ("mesh.circle.n = 4\nwrap.path = 0+\nno equals sign\n", 3),
    ("# comment\nmesh.circle.n = four\nwrap.path = 0+\n", 2),
    ("mesh.circle.n = 4\nconn.edge[0] = A3[1]\nwrap.path = 0+ 1+ 2+ 3+\n", 2),
])
def test_scenario_errors_have_line_numbers(text, line):
    with pytest.raises(ScenarioError) as info:
        parse_scenario(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_scenario_cli_error(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("mesh.circle.n = 4\nwrap.path = 0+ 2+\n")
    assert cli.main(["--scenario", str(path)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert cli.main(["--scenario", str(tmp_path / "absent.txt")]) == 2
