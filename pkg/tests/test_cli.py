import json

import pytest

from seedgraph.cli import main
from seedgraph.verify import CheckResult, VerifyReport


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_explore_preset(capsys):
    code, out, _ = run(capsys, "explore", "A2")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "closed"
    assert data["seed_count"] == 10
    assert len(data["graph"]["vertices"]) == 10


def test_explore_single_vertex(capsys):
    code, out, _ = run(capsys, "explore", "A1")
    assert code == 0
    assert json.loads(out)["seed_count"] == 2


def test_explore_budget_exhaustion_exits_zero(capsys):
    code, out, _ = run(capsys, "explore", "markov3", "--budget", "500", "--level", "quiver")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "budget-exhausted"
    assert data["seed_count"] == 500


def test_explore_env_budget(capsys, monkeypatch):
    monkeypatch.setenv("SEEDGRAPH_BUDGET", "10")
    code, out, _ = run(capsys, "explore", "A3-linear")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "budget-exhausted" and data["seed_count"] == 10


def test_explore_quiver_file(capsys, tmp_path):
    path = tmp_path / "q.json"
    path.write_text(json.dumps({"n": 2, "b": [[0, 1], [-1, 0]], "frozen": []}))
    code, out, _ = run(capsys, "explore", str(path))
    assert code == 0
    assert json.loads(out)["seed_count"] == 10


def test_explore_bad_source(capsys):
    code, _, err = run(capsys, "explore", "definitely-not-a-preset")
    assert code == 1
    assert "neither a preset" in err


def test_explore_outputs_are_deterministic(capsys, tmp_path):
    code, out1, _ = run(capsys, "explore", "A3-linear")
    code, out2, _ = run(capsys, "explore", "A3-linear")
    assert out1 == out2
    dot1 = tmp_path / "a.dot"
    dot2 = tmp_path / "b.dot"
    run(capsys, "explore", "A2", "--dot", str(dot1))
    run(capsys, "explore", "A2", "--dot", str(dot2))
    assert dot1.read_bytes() == dot2.read_bytes()
    assert dot1.read_text().startswith("graph mutationclass {")


def test_out_flag_writes_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "explore", "A2", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["seed_count"] == 10


def test_quotient_same_quiver(capsys):
    code, out, _ = run(capsys, "quotient", "A3-linear", "--relation", "same-quiver")
    assert code == 0
    data = json.loads(out)
    assert data["classes"] == 14
    assert data["seeds"] == 84
    assert data["group"]["order"] == 6
    assert data["group"]["abelian"] is True


def test_quotient_similar_alias(capsys):
    code, out, _ = run(capsys, "quotient", "A2", "--relation", "similar")
    assert code == 0
    data = json.loads(out)
    assert data["relation"] == "similar-quiver"
    assert data["classes"] == 1
    assert data["group"]["order"] == 10 and data["group"]["abelian"] is False


def test_quotient_stabilizer_matches_similar(capsys):
    code, out, _ = run(capsys, "quotient", "A2", "--relation", "same-stabilizer")
    assert code == 0
    data = json.loads(out)
    assert data["classes"] == 1
    assert "group" not in data
    code, out2, _ = run(capsys, "quotient", "A2", "--relation", "similar")
    assert json.loads(out2)["graph"]["edges"] == data["graph"]["edges"]


def test_quotient_quiver_level(capsys):
    code, out, _ = run(capsys, "quotient", "A2tilde-noncyclic", "--relation", "similar", "--level", "quiver")
    assert code == 0
    data = json.loads(out)
    assert data["quivers"] == 12 and data["classes"] == 6
    code, out, _ = run(capsys, "quotient", "A2tilde-noncyclic", "--level", "quiver")
    assert json.loads(out)["classes"] == 12


def test_quotient_nonclosing_errors(capsys):
    code, _, err = run(capsys, "quotient", "markov3", "--budget", "50", "--level", "quiver")
    assert code == 1
    assert "did not close" in err
    code, _, err = run(capsys, "quotient", "markov3", "--relation", "same-stabilizer", "--level", "quiver")
    assert code == 1


def test_verify_markov(capsys):
    code, out, _ = run(capsys, "verify", "markov", "--depth", "3")
    assert code == 0
    assert out.startswith("suite markov: PASS")


def test_verify_json_output(capsys):
    code, out, _ = run(capsys, "verify", "properties", "--cases", "5", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["suite"] == "properties" and data["passed"] is True


def test_verify_failure_exit_code(capsys, monkeypatch):
    import seedgraph.cli as cli_mod

    bad = VerifyReport("lemmas", [CheckResult("x", "fixed", "not-fixed")])
    monkeypatch.setattr(cli_mod, "run_lemma_suite", lambda power_bound: bad)
    code, out, _ = run(capsys, "verify", "lemmas")
    assert code == 1
    assert out.startswith("suite lemmas: FAIL")


def test_unknown_subcommand_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["frobnicate"])
