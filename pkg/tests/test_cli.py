import json
import shlex

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sibruhat import siborder
from sibruhat.cli import (
    VerifyBudget,
    export_graph,
    format_element,
    load_budget,
    main,
    parse_budget,
    parse_element,
    run_verify,
)
from sibruhat.columns import enumerate_qkn
from sibruhat.crystal import AffElem
from sibruhat.weyl import RootDatum, WeylError

B9_FLAGS = ["--type", "B", "--rank", "9", "--i", "7", "--col=2,3,0,-9,-3,!0,!0"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def test_sib_commands(capsys):
    base = ["--type", "C", "--rank", "2", "--i", "1"]
    assert run(capsys, "sib", "leq", *base, "--lhs", "1@0", "--rhs=-1@0")[1] == "true"
    assert run(capsys, "sib", "leq", *base, "--lhs", "2@0", "--rhs", "1@0")[1] == "false"
    assert run(capsys, "sib", "oracle", *base, "--lhs", "1@0", "--rhs=-1@0")[1] == "true"
    assert run(capsys, "sib", "covers", *base, "--vertex=-1@0")[1] == "1@1 ∞/2-C5"


def test_deodhar_command(capsys):
    argv = ["sib", "deodhar", "--type", "A", "--rank", "6", "--J=",
            "--x", "[5,6,4,2,1,3];[1,0,-1,1,2]", "--y", "[4,1,2,6,3,5];[2,3,1,2,5]", "--report"]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "true"
    assert lines[:-1] == [f"i={i}: true" for i in range(1, 6)]


def test_tab_commands(capsys):
    code, out, _ = run(capsys, "tab", "split", *B9_FLAGS)
    assert code == 0
    assert json.loads(out) == {"I": [0, 3], "J": [8, 1], "K": [4, 5],
                               "r": [2, 3, 4, 5, -9, -8, -1], "l": [1, 2, 8, -9, -5, -4, -3]}
    data = json.loads(run(capsys, "tab", "qkn2qls", *B9_FLAGS)[1])
    assert data["segments"] == [[1, 5], [8, 9]] and data["d"] == 1
    assert data["maya_v"] == [[1], [8, 9]] and data["maya_w"] == [[3, 4, 5], [9]]
    back = run(capsys, "tab", "qls2qkn", "--type", "B", "--rank", "9", "--i", "7",
               "--v=2,3,4,5,-9,-8,-1", "--w=1,2,8,-9,-5,-4,-3")[1]
    assert back == "2,3,0,-9,-3,!0,!0"


def test_crystal_commands(capsys):
    flags = ["--type", "B", "--rank", "9", "--i", "7"]
    elem = "--elem=2,3,0,-9,-3,!0,!0@0"
    assert run(capsys, "crystal", "apply", *flags, elem, "--ops", "f2")[1] == \
        "2,3,0,-9,-2,!0,!0@0"
    assert run(capsys, "crystal", "apply", *flags, elem, "--ops", "e0")[1] == \
        "0,-9,-1,!0,!0,!0,!0@-1"
    code, out, _ = run(capsys, "crystal", "apply", "--type", "C", "--rank", "3", "--i", "1",
                       "--elem", "3", "--ops", "f1")
    assert (code, out) == (0, "none")
    out = run(capsys, "crystal", "graph", "--type", "C", "--rank", "2", "--i", "1")[1]
    assert out.splitlines()[0] == "crystal C2 i=1: 4 vertices, 4 edges"
    assert "-1 -> 1 f 0" in out


def test_export_c2(capsys):
    code, out, _ = run(capsys, "export", "qbg", "--type", "C", "--rank", "2", "--i", "1")
    g = json.loads(out)
    assert code == 0 and g["vertices"] == ["1", "2", "-2", "-1"]
    assert len(g["edges"]) == 4
    quantum = [e for e in g["edges"] if e["kind"] == "quantum"]
    assert [(e["src"], e["dst"]) for e in quantum] == [("-1", "1")]


@pytest.mark.parametrize("kind", ["qbg", "sib", "crystal"])
@pytest.mark.parametrize("fmt", ["json", "dot", "text"])
def test_export_formats_agree(kind, fmt):
    d = RootDatum("D", 4)
    g = json.loads(export_graph(kind, d, 2, "json"))
    out = export_graph(kind, d, 2, fmt)
    if fmt == "dot":
        assert out.startswith("digraph") and out.count(" -> ") == len(g["edges"])
    elif fmt == "text":
        assert len(out.splitlines()) == 1 + len(g["edges"])
    verts = set(g["vertices"])
    assert all(e["src"] in verts and e["dst"] in verts for e in g["edges"])


def test_sib_export_window():
    g = json.loads(export_graph("sib", RootDatum("C", 2), 1, window=1))
    assert len(g["vertices"]) == 8
    assert all(e["dst"].endswith(("@0", "@1")) for e in g["edges"])


def test_errors_exit_with_two(capsys):
    code, _, err = run(capsys, "sib", "leq", "--type", "C", "--rank", "2", "--i", "1",
                       "--lhs", "3@0", "--rhs", "1@0")
    assert code == 2 and err.startswith("error:")
    assert run(capsys, "tab", "split", "--type", "C", "--rank", "3", "--i", "2",
               "--col", "2,1")[0] == 2
    assert run(capsys, "sib", "leq", "--type", "D", "--rank", "3", "--i", "1",
               "--lhs", "1@0", "--rhs", "1@0")[0] == 2


def test_verify_maya_only(capsys):
    code, out, _ = run(capsys, "verify", "--suites", "maya", "--families", "B3,C3")
    assert code == 0
    assert out.splitlines()[-1].startswith("PASS: 3 sweeps")


def test_budget_file_from_environment(tmp_path, monkeypatch, capsys):
    path = tmp_path / "budget.txt"
    path.write_text("# small\nfamilies = C2\nsuites = sib, crystal\nwindow = 3\n")
    monkeypatch.setenv("SIBRUHAT_BUDGET", str(path))
    b = load_budget()
    assert b.ranks == {"C": 2} and b.suites == ("sib", "crystal") and b.c_window == 3
    code, out, _ = run(capsys, "verify", "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["passed"]
    assert [s["name"] for s in report["sweeps"]][:2] == ["sib C2 i=1", "sib C2 i=2"]


@pytest.mark.parametrize("text", ["families = Q3", "families = B9", "window = 0",
                                  "suites = everything", "colour = red", "seed = x", "seed"])
def test_bad_budgets(text):
    with pytest.raises(WeylError):
        parse_budget(text)


def test_budget_ranges_start_at_the_minimum():
    b = VerifyBudget(ranks={"A": 3, "D": 5})
    assert [str(d) for d in b.data()] == ["A2", "A3", "D4", "D5"]


def test_broken_order_is_caught_with_replayable_commands(monkeypatch, capsys):
    real = siborder._tableau_leq

    def broken(datum, i, T, Tp, d):
        ok = real(datum, i, T, Tp, d)
        return (not ok) if d == 1 else ok

    monkeypatch.setattr(siborder, "_tableau_leq", broken)
    report = run_verify(VerifyBudget(ranks={"C": 2}, suites=("sib",)))
    assert not report.passed
    failures = [f for r in report.results for f in r.failures]
    assert failures and all(f.startswith("sib leq ") for f in failures)
    for line in failures[:5]:
        argv = shlex.split(line)
        closed = run(capsys, *argv)[1]
        oracle = run(capsys, *argv, "--oracle")[1]
        assert closed != oracle
    assert "FAIL" in report.text().splitlines()[-1]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([(RootDatum("B", 4), 2), (RootDatum("C", 3), 2), (RootDatum("D", 4), 4)]),
       st.integers(-3, 3), st.data())
def test_element_text_round_trip(case, c, data):
    d, i = case
    col = data.draw(st.sampled_from(enumerate_qkn(d, i)))
    a = AffElem(col, c)
    assert parse_element(d, format_element(a), i) == a
    assert parse_element(d, format_element(col), i) == col
