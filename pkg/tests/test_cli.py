import json
import subprocess
import sys

import pytest

from gallai import fixtures
from gallai.cli import run
from gallai.coloring import parse_coloring


def out_of(capsys, argv):
    code = run(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_brute(capsys):
    code, out, _ = out_of(capsys, ["brute", "--kind", "tri", "--family", "tri-up-down", "--mmax", "6"])
    assert code == 0 and out.strip() == "2:6 3:18 4:36 5:0"


def test_count(capsys):
    code, out, _ = out_of(capsys, ["count", "--family", "rect-hom", "--k", "4", "--m", "52"])
    assert code == 0 and out.strip() == "14768"


@pytest.mark.parametrize("name", list(fixtures.FIXTURES))
def test_verify_fixtures(capsys, name):
    code, out, _ = out_of(capsys, ["verify", "--coloring", name])
    assert code == 0 and out.strip() == "Ok"


def test_verify_fig5_explicit(capsys):
    code, out, _ = out_of(capsys, ["verify", "--coloring", "fig5_s14", "--family", "sq-axis"])
    assert (code, out.strip()) == (0, "Ok")


def test_verify_violation(tmp_path, capsys):
    f = tmp_path / "c.txt"
    f.write_text("square 2\n11\n11\n")
    code, out, _ = out_of(capsys, ["verify", "--coloring", str(f), "--family", "sq-axis"])
    assert code == 2 and out.startswith("Violation AllOne")
    assert "(0,0)" in out


def test_gen_solve(tmp_path, capsys):
    cnf = tmp_path / "o7.cnf"
    assert run(["gen", "--family", "sq-all", "--m", "7", "--break", "fix-origin", "--out", str(cnf)]) == 0
    capsys.readouterr()
    code, out, _ = out_of(capsys, ["solve", "--in", str(cnf)])
    assert code == 20 and out.strip() == "UNSAT"
    cnf6 = tmp_path / "o6.cnf"
    run(["gen", "--family", "sq-all", "--m", "6", "--break", "fix-origin", "--out", str(cnf6)])
    wit = tmp_path / "w.txt"
    code, out, _ = out_of(capsys, ["solve", "--in", str(cnf6), "--witness-out", str(wit)])
    assert code == 10
    code, out, _ = out_of(capsys, ["verify", "--coloring", str(wit), "--family", "sq-all"])
    assert code == 0


def test_gen_header(tmp_path):
    cnf = tmp_path / "x15.cnf"
    run(["gen", "--family", "sq-axis", "--m", "15", "--break", "fix-origin", "--out", str(cnf)])
    assert "p cnf 225 2031" in cnf.read_text().splitlines()


def test_search(tmp_path, capsys):
    rep = tmp_path / "r.json"
    wit = tmp_path / "w.txt"
    code, _, _ = out_of(capsys, ["search", "--family", "tri-all", "--report", str(rep), "--witness-out", str(wit)])
    assert code == 0
    data = json.loads(rep.read_text())
    assert data["m0"] == 4 and data["witness_file"] == str(wit)
    assert parse_coloring(wit.read_text()).grid.m == 3


def test_search_limit(capsys):
    code, out, _ = out_of(capsys, ["search", "--family", "sq-axis", "--limit", "3"])
    assert code == 3 and json.loads(out)["results"][-1]["status"] == "SAT"


def test_classify(tmp_path, capsys):
    d = tmp_path / "sols"
    assert run(["brute", "--family", "tri-all", "--mmax", "3", "--collect", "3", "--out-dir", str(d)]) == 0
    capsys.readouterr()
    code, out, _ = out_of(capsys, ["classify", "--solutions-dir", str(d), "--flip"])
    assert code == 0 and sorted(json.loads(out)["class_sizes"]) == [6, 12]
    code, out, _ = out_of(capsys, ["classify", "--family", "sq-all", "--m", "6"])
    assert sorted(json.loads(out)["class_sizes"]) == [4, 4, 8, 8, 8, 8, 8, 8]


def test_render_roundtrip(capsys):
    for name in fixtures.FIXTURES:
        code, out, _ = out_of(capsys, ["render", "--coloring", name, "--format", "ascii"])
        assert code == 0 and parse_coloring(out) == fixtures.get(name).coloring()
    code, out, _ = out_of(capsys, ["render", "--coloring", "fig2_t3", "--format", "svg"])
    assert out.startswith("<svg") and out.count("<circle") == 6 and out.count('fill="black"') == 3


def test_fixtures_cmd(capsys, tmp_path):
    code, out, _ = out_of(capsys, ["fixtures", "--list"])
    assert code == 0 and len(out.strip().splitlines()) == 6
    f = tmp_path / "f5.txt"
    assert run(["fixtures", "--emit", "fig5_s14", "--out", str(f)]) == 0
    assert parse_coloring(f.read_text()) == fixtures.get("fig5_s14").coloring()


@pytest.mark.parametrize("argv", [["brute", "--family", "tri-all"], ["bogus"], ["count", "--family", "nope", "--m", "3"],
                                  ["count", "--kind", "tri", "--family", "sq-axis", "--m", "3"],
                                  ["verify", "--coloring", "no-such-thing"], ["fixtures", "--emit", "fig9"],
                                  ["solve", "--in", "x.cnf", "--engine", "external", "--solver-cmd", ""],
                                  ["count", "--family", "rect-hom", "--m", "5"], ["--threads", "0", "fixtures", "--list"]])
def test_usage_errors(argv, capsys, monkeypatch):
    monkeypatch.delenv("GALLAI_SOLVER_CMD", raising=False)
    with pytest.raises(SystemExit) as exc:
        sys.exit(run(argv))
    assert exc.value.code == 1


def test_threads_flag(capsys):
    assert run(["--threads", "1", "count", "--family", "sq-axis", "--m", "15"]) == 0
    assert capsys.readouterr().out.strip() == "1015"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gallai", "count", "--family", "rect-hom-both", "--k", "2",
                           "--m", "23"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "4554"
