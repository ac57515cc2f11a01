import json

import pytest

from socle_lab.cli import execute, main, parse_input
from socle_lab.errors import ParseError, SemanticError, UnknownScenario
from socle_lab.scenarios import (
    FAIL,
    INCONCLUSIVE_VERDICT,
    PASS,
    SCENARIOS,
    ScenarioReport,
    emit_report,
    exit_code,
    run_scenario,
)

PROVENANCE = {"reference", "by-construction", "recomputed"}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_input_accepts_valid_request():
    req = parse_input('kummer-rank --field "F7(t,u)" --p 3 --elems "t+u, t+u+1, t+u+2"')
    assert req.command == "kummer-rank" and req.p == 3 and len(req.elems) == 3
    assert req.field.t_vars == ("t",) and req.field.u_vars == ("u",)


@pytest.mark.parametrize(
    "line",
    [
        'kummer-rank --p 7 --field "F7(t)"',
        'as-rank --field "Q(t)"',
        'kummer-rank --p 3 --field "F5(t)" --elems t',
        'kummer-relative --p 3 --field "F7(t)" --elems t',
        'as-rank --field "F3(t)" --p 5 --elems t',
        "socle --group S3 --p 4",
    ],
)
def test_parse_input_semantic_errors(line):
    with pytest.raises(SemanticError):
        parse_input(line)


def test_parse_input_syntax_errors():
    with pytest.raises(ParseError) as info:
        parse_input('kummer-rank --p 3 --field "F7(t)" --elems "t +* 1"')
    assert info.value.column == 4
    with pytest.raises(ParseError):
        parse_input("no-such-command")
    with pytest.raises(UnknownScenario):
        parse_input("scenario nonexistent")


def test_exit_code_contract():
    assert exit_code([PASS, PASS]) == 0
    assert exit_code([PASS, FAIL, INCONCLUSIVE_VERDICT]) == 1
    assert exit_code([PASS, INCONCLUSIVE_VERDICT]) == 2
    assert exit_code([]) == 0


def test_cli_exit_codes(capsys):
    assert run(capsys, "kummer-rank", "--field", "F7(t,u)", "--p", "3", "--elems", "t+u, t+u+1")[0] == 0
    code, _, err = run(capsys, "kummer-rank", "--field", "F7(t)", "--p", "7", "--elems", "t")
    assert code == 4 and "characteristic" in err
    assert run(capsys, "kummer-rank", "--field", "F7(t", "--p", "3")[0] == 3
    assert run(capsys, "scenario", "nonexistent")[0] == 3
    assert run(capsys, "bogus")[0] == 3
    relative_gap = "1/(t*u+1), 1/(t*u+1)+u+t^3/(t+1), (t^2+t^2*u+t)/(t*u+1)^2"
    assert run(capsys, "as-rank", "--relative", "--field", "F2(t,u)", "--elems", relative_gap)[0] == 2


def test_jsonl_has_one_object_per_claim(capsys):
    code, out, _ = run(capsys, "as-rank", "--field", "F3(t)", "--elems", "1/t, 1/t^2, 1/t^3", "--format", "jsonl")
    lines = out.splitlines()
    rows = [json.loads(x) for x in lines]
    assert code == 0 and rows
    for row in rows:
        assert set(row) == {"scenario", "claim", "computed", "expected", "provenance", "verdict"}
        assert row["provenance"] in PROVENANCE


def test_empty_report_prints_header_only():
    r = ScenarioReport("empty", {"x": 1}, [], 0, "0")
    text = emit_report(r, "human")
    assert text.count("\n") == 1 and text.startswith("report empty")
    assert emit_report(r, "jsonl") == ""


@pytest.mark.parametrize("name", sorted(SCENARIOS))
def test_scenarios_pass_with_defaults(name):
    r = run_scenario(name)
    assert r.results
    assert r.exit_code() == 0, emit_report(r)
    assert all(row.provenance in PROVENANCE for row in r.results)


def test_abelian_rank_declares_its_scope():
    r = run_scenario("abelian-rank", {"max_n": 3})
    text = emit_report(r)
    assert "lower-bound" in text and "not machine-verified" in text


def test_scenario_parameters_are_validated():
    with pytest.raises(SemanticError):
        run_scenario("freshman-identity", {"bogus": 1})
    r = run_scenario("freshman-identity", {"p": 5})
    assert r.params["p"] == 5 and r.exit_code() == 0


def test_execute_multiple_scenarios_in_parallel():
    req = parse_input("scenario freshman-identity kummer-mixed-lines --jobs 2")
    reports = execute(req)
    assert [r.scenario for r in reports] == ["freshman-identity", "kummer-mixed-lines"]
    serial = execute(parse_input("scenario freshman-identity kummer-mixed-lines"))
    assert [emit_report(r, "jsonl") for r in reports] == [emit_report(r, "jsonl") for r in serial]


def test_group_commands(capsys):
    code, out, _ = run(capsys, "frattini", "--group", "D4", "--p", "2")
    assert code == 0 and "order 2" in out
    code, out, _ = run(capsys, "relative-frattini", "--group", "S3", "--p", "2", "--H", "1")
    assert code == 0
    code, out, _ = run(capsys, "socle", "--group", "C2xC2", "--p", "2")
    assert code == 0 and "failures" in out
    code, out, _ = run(capsys, "explore", "--max-order", "16", "--p", "2", "--format", "jsonl")
    assert code == 0
    row = json.loads(out.splitlines()[0])
    assert row["computed"] == "16 of 295 pairs fail the equation ['D4xC2']"


def test_catalog_file(tmp_path, capsys):
    path = tmp_path / "groups.txt"
    path.write_text("# two groups\nV4 = perm: 4 (12)(34) (13)(24)\nZ3 = table: 3 0 1 2 1 2 0 2 0 1\n")
    code, out, _ = run(capsys, "frattini", "--catalog", str(path), "--p", "2")
    assert code == 0 and "V4" in out and "Z3" in out
    bad = tmp_path / "bad.txt"
    bad.write_text("X = table: 2 0 1 1\n")
    assert run(capsys, "frattini", "--catalog", str(bad), "--p", "2")[0] == 3


def test_disjoint_command(capsys):
    code, out, _ = run(capsys, "disjoint", "--field", "Q(a:x^2-2)(b:x^2-3)", "--sub1", "a", "--sub2", "b", "--format", "jsonl")
    rows = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and rows[0]["computed"] == "(2, 2, 4)"
