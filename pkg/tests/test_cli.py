import json

import pytest
from click.testing import CliRunner

from magicforge.checks import CheckResult, RunReport, run_suite
from magicforge.cli import main


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(main, list(args))
    return invoke


def test_algebra_json(run):
    res = run("algebra", "sextonion", "--json")
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["dim"] == 6
    assert data["degrees"] == [-1, -1, 0, 0, 0, 0]
    assert set(data) >= {"name", "dim", "unit", "basis", "mul", "conj", "form", "degrees"}


def test_algebra_markdown(run):
    res = run("algebra", "split_octonion", "--md")
    assert res.exit_code == 0
    rows = [l for l in res.output.splitlines() if l.startswith("| ") and not l.startswith("| · ")]
    assert len(rows) == 8
    assert all(r.count("|") == 10 for r in rows)


def test_unknown_algebra_is_a_usage_error(run):
    res = run("algebra", "bogus")
    assert res.exit_code == 2
    assert "unknown algebra" in res.output


def test_algebra_file_roundtrip(run, tmp_path):
    first = run("algebra", "H3(reals)").output
    p = tmp_path / "j.json"
    p.write_text(first)
    assert run("algebra", "--file", str(p)).output == first


def test_lie_commands(run):
    assert json.loads(run("lie", "derive", "split_octonion").output)["dim"] == 14
    assert json.loads(run("lie", "triality", "sextonion").output)["dim"] == 18
    fp = json.loads(run("lie", "intermediate", "split_octonion", "--index", "3", "--fingerprint").output)
    assert fp["dim"] == 21


def test_grade_preset(run):
    data = json.loads(run("grade", "--preset", "der-Os").output)
    assert data["grading"] == [[-2, 1], [-1, 4], [0, 4], [1, 4], [2, 1]]
    assert data["intermediate"] == {"gbar": 3, "V": 4, "gtilde": 8}


def test_grade_from_files(run, tmp_path):
    from magicforge.liealg import classical_algebra, classical_principal_triple

    l = classical_algebra("sp", 4)
    t = classical_principal_triple("sp", 4)
    p = tmp_path / "sp4.json"
    p.write_text(json.dumps(l.to_json()))
    arg = json.dumps({k: [str(x) for x in v] for k, v in zip("ehf", (t.E, t.H, t.F))})
    res = run("grade", "--lie-file", str(p), "--triple", arg)
    assert res.exit_code == 0, res.output
    data = json.loads(res.output)
    assert data["grading"] == [[-2, 1], [-1, 2], [0, 4], [1, 2], [2, 1]]
    assert data["intermediate"] == {"gbar": 3, "V": 2, "gtilde": 6}


def test_grade_needs_input(run):
    assert run("grade").exit_code == 2
    assert run("grade", "--preset", "nope").exit_code == 2


def test_grade_rejects_non_triple(run, tmp_path):
    p = tmp_path / "l.json"
    p.write_text(run("lie", "derive", "split_quaternion").output)
    res = run("grade", "--lie-file", str(p), "--triple", '{"e": ["1","0","0"], "h": ["1","0","0"], "f": ["1","0","0"]}')
    assert res.exit_code == 2


def test_magic_formats(run):
    data = json.loads(run("magic", "--construction", "dims", "--format", "json").output)
    assert data["dims"][4] == [52, 78, 133, 190, 248]
    csv_lines = run("magic", "--format", "csv").output.strip().splitlines()
    assert len(csv_lines) == 26
    md = run("magic", "--format", "md").output
    assert "C_3.H_{14} (36)" in md and "D_6.H_{32}.H_{44} (144)" in md


def test_magic_bigrading(run):
    data = json.loads(run("magic", "--bigrading", "8", "--format", "json").output)
    assert data["total"] == 248 and data["total_grading"] == [14, 64, 92, 64, 14]


def test_series_command(run):
    rows = run("series", "--format", "csv").output.strip().splitlines()
    assert rows[1].startswith("1,21,52,14")
    out = json.loads(run("series", "--m", "-3/2", "--format", "json").output)
    assert out[0]["dim_exc"] == "1"
    assert run("series", "--m", "-4").exit_code == 2
    assert run("series", "--super").exit_code == 0


def test_check_series_suite(run):
    res = run("check", "--suite", "series")
    assert res.exit_code == 0
    assert res.output.splitlines()[-1] == "summary: 11 pass, 0 fail, 0 skip"


def test_check_core_suite_twice_identical(run):
    a = run("check", "--suite", "core", "--seed", "7")
    b = run("check", "--suite", "core", "--seed", "7")
    assert a.exit_code == 0 and a.output == b.output


def test_threads_do_not_change_report():
    serial = run_suite("core", 3, workers=1).to_text()
    parallel = run_suite("core", 3, workers=4).to_text()
    assert serial == parallel


def test_failing_check_exit_code():
    rep = RunReport("x", 0, [CheckResult("a", "pass"), CheckResult("b", "fail", "got 1 expected 2")])
    assert rep.exit_code == 1
    assert "FAIL b got 1 expected 2" in rep.to_text()
    assert json.loads(rep.dumps("json"))["exit_code"] == 1


def test_bad_suite_is_usage_error(run):
    assert run("check", "--suite", "nope").exit_code == 2
