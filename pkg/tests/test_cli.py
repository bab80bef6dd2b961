import json
import subprocess
import sys

import pytest

from fqzeta import cli
from fqzeta.laurent import LaurentTail
from fqzeta.relations import RelationSet


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_powersum_examples(capsys):
    code, out, _ = run(capsys, "powersum", "--q", "2", "--d", "1", "--k", "1")
    assert code == 0 and out.strip().replace(" ", "") == "1/(t^2+t)"
    code, out, _ = run(capsys, "powersum", "--q", "3", "--d", "1", "--k", "-2")
    assert code == 0 and out.strip() == "2"
    code, out, _ = run(capsys, "powersum", "--q", "2", "--d", "0", "--k", "7")
    assert out.strip() == "1"


def test_powersum_json(capsys):
    code, out, _ = run(capsys, "powersum", "--p", "3", "--s", "2", "--d", "1", "--k", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["q"] == 9 and data["den"][-1] == 1


def test_relation_examples(capsys):
    code, out, _ = run(capsys, "relation", "--q", "2", "--a", "1", "--b", "2", "--verify", "1,2,3")
    data = json.loads(out)
    assert code == 0 and data["pairs"] == [[1, 2]]
    assert data["verified"] == {"1": True, "2": True, "3": True}
    code, out, _ = run(capsys, "relation", "--q", "3", "--a", "3", "--b", "2")
    data = json.loads(out)
    assert len(data["parity"]) == len(data["pairs"]) > 0
    assert RelationSet.from_json(data).a == 3
    code, out, _ = run(capsys, "relation", "--q", "2", "--a", "1", "--b", "1")
    assert json.loads(out)["pairs"] == []


def test_relation_text(capsys):
    code, out, _ = run(capsys, "relation", "--q", "2", "--a", "1", "--b", "2", "--verify", "2",
                       "--format", "text")
    assert code == 0 and "(1,2)" in out and "d=2: pass" in out


def test_verification_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "derive_relation", lambda q, a, b: RelationSet(q, a, b, ()))
    code, out, _ = run(capsys, "relation", "--q", "2", "--a", "1", "--b", "2", "--verify", "2")
    assert code == cli.EXIT_VERIFY


def test_zeta_examples(capsys):
    code, out, _ = run(capsys, "zeta", "--q", "2", "--indices", "2", "--prec", "20")
    tail = LaurentTail.from_json(json.loads(out))
    assert code == 0 and tail.coefficient(0) == 1 and tail.precision == 20
    code, out, _ = run(capsys, "zeta", "--q", "2", "--indices", "1,2", "--prec", "20")
    data = json.loads(out)
    assert data["index"] == [1, 2] and data["valuation"] >= 1
    code, out, _ = run(capsys, "zeta", "--q", "3", "--indices", "5", "--prec", "30", "--format", "text")
    assert out.startswith("zeta(5) = 1 + ") and out.strip().endswith("O(u^31)")


def test_family_examples(capsys):
    for argv in (["--q", "2", "--id", "a3", "--b", "1..60"], ["--q", "3", "--id", "a1", "--b", "1..40"],
                 ["--q", "2", "--id", "large", "--n", "1..3"], ["--q", "3", "--id", "rec"],
                 ["--q", "4", "--id", "negN"], ["--q", "3", "--id", "prop1", "--n", "1,2"]):
        code, out, _ = run(capsys, "family", *argv)
        assert code == 0 and "FAIL" not in out


def test_family_json(capsys):
    code, out, _ = run(capsys, "family", "--q", "5", "--id", "a2", "--b", "1..10", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 10 and all(r["pass"] for r in rows)


def test_table_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert cli.main(["table", "--q", "2", "--a-max", "20", "--b-max", "20", "--out", str(a)]) == 0
    assert cli.main(["table", "--q", "2", "--a-max", "20", "--b-max", "20", "--out", str(b),
                     "--jobs", "3"]) == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert len(lines) == 400
    rels = [RelationSet.from_json(line) for line in lines]
    assert [(r.a, r.b) for r in rels][:3] == [(1, 1), (1, 2), (1, 3)]


def test_table_q5(capsys):
    code, out, _ = run(capsys, "table", "--q", "5", "--a-max", "10", "--b-max", "10")
    assert code == 0 and len(out.splitlines()) == 100


def test_usage_errors(capsys):
    for argv in (["powersum", "--q", "6", "--d", "1", "--k", "1"],
                 ["powersum", "--q", "4", "--p", "3", "--d", "1", "--k", "1"],
                 ["powersum", "--d", "1", "--k", "1"],
                 ["zeta", "--q", "2", "--indices", "0,1"],
                 ["zeta", "--q", "2", "--indices", "1", "--prec", "0"],
                 ["family", "--q", "3", "--id", "a3"],
                 ["family", "--q", "3", "--id", "bogus"],
                 ["family", "--q", "3", "--id", "rec", "--a", "4"],
                 ["powersum", "--q", "2", "--d", "1", "--k", "1", "--degree-budget", "-1"]):
        code, _, err = run(capsys, *argv)
        assert code == cli.EXIT_USAGE, argv
        assert "error" in err
    with pytest.raises(SystemExit) as exc:
        cli.main(["powersum", "--q", "2"])
    assert exc.value.code == cli.EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        cli.main(["nonsense"])
    assert exc.value.code == cli.EXIT_USAGE


def test_budget_errors(capsys, monkeypatch):
    code, _, err = run(capsys, "powersum", "--q", "2", "--d", "3", "--k", "1", "--degree-budget", "2")
    assert code == cli.EXIT_BUDGET and "budget" in err
    monkeypatch.setenv("FQZETA_MAX_PREC", "10")
    code, _, _ = run(capsys, "zeta", "--q", "2", "--indices", "2", "--prec", "11")
    assert code == cli.EXIT_BUDGET
    monkeypatch.setenv("FQZETA_MAX_ENUM", "100")
    code, _, _ = run(capsys, "powersum", "--q", "3", "--d", "5", "--k", "2")
    assert code == cli.EXIT_BUDGET


def test_parse_range():
    assert cli.parse_range("1..4") == [1, 2, 3, 4]
    assert cli.parse_range("2,5, 7") == [2, 5, 7]
    assert cli.parse_range("1..2,9") == [1, 2, 9]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "fqzeta", "powersum", "--q", "2", "--d", "1", "--k", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "1/(t^4 + t^2)"
