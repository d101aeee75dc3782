import pytest

from seedgraph.quiver import preset
from seedgraph.seeds import GroupElement, LabelledSeed
from seedgraph.verify import (
    CheckResult,
    LemmaCheck,
    check_fixed,
    check_markov,
    lemma_checks,
    run_check,
    run_lemma_suite,
    run_mainthm_suite,
    run_property_suite,
)


def test_lemma_table_shape():
    checks = lemma_checks()
    assert len(checks) == 17
    by_expect = {}
    for c in checks:
        by_expect[c.expect] = by_expect.get(c.expect, 0) + 1
    # 9 fixed-principal rows, 7 moved-trivial rows, 1 unbounded-order row
    assert by_expect == {"fixed": 9, "not-fixed": 7, "never-fixed": 1}


def test_lemma_suite_passes():
    rep = run_lemma_suite()
    assert rep.passed
    assert len(rep.results) == 17
    for r in rep.results:
        assert r.passed, r.name


def test_pair_word_powers_on_single_arrow():
    # principal coefficients, one arrow: (mu1 mu2)^m fixes the seed iff 5 | m
    s = LabelledSeed.initial(preset("A2").principal_coefficients())
    pair = GroupElement.from_word(4, [0, 1])
    for m in range(1, 5):
        assert not check_fixed(s, pair.power(m))
    assert check_fixed(s, pair.power(5))


def test_corrupted_expectation_is_caught():
    good = lemma_checks()[0]
    flipped = LemmaCheck(good.name, good.seed, good.word, "not-fixed")
    assert not run_check(flipped).passed
    # wrong word for the claim: (mu1 mu2)^2 does not fix the one-arrow seed
    s = LabelledSeed.initial(preset("A2").principal_coefficients())
    wrong = LemmaCheck("too-few turns", s, GroupElement.from_word(4, [0, 1]).power(2), "fixed")
    res = run_check(wrong)
    assert res.observed == "not-fixed" and not res.passed


def test_never_fixed_matches_exact_small_powers():
    # the specialized walk agrees with exact arithmetic at small powers
    s = LabelledSeed.initial(preset("kronecker2"))
    pair = GroupElement.from_word(2, [0, 1])
    for m in range(1, 7):
        assert s.apply(pair.power(m)) != s
    res = run_check(LemmaCheck("short run", s, pair, "never-fixed", power_bound=6))
    assert res.passed


def test_run_check_rejects_unknown_expectation():
    s = LabelledSeed.initial(preset("A2"))
    with pytest.raises(ValueError):
        run_check(LemmaCheck("bad", s, GroupElement.identity(2), "sometimes-fixed"))


def test_markov_depth6():
    rep = check_markov()
    assert rep.passed
    names = [r.name for r in rep.results]
    assert names == [
        "(a) triples satisfy x^2+y^2+z^2 = xyz",
        "(b) max multiplicity strictly increases",
        "(c) no labelled seed repeats",
        "(d) permuted components never meet the mutation-only component",
        "neighbor triple after mu1",
    ]
    assert rep.results[-1].observed == "(3, 3, 6)"


def test_markov_depth_bounds():
    assert check_markov(depth=0).passed
    with pytest.raises(ValueError):
        check_markov(depth=13)
    with pytest.raises(ValueError):
        check_markov(depth=-1)


def test_markov_deterministic():
    a = check_markov(depth=3).to_json()
    b = check_markov(depth=3).to_json()
    assert a == b


def test_mainthm_suite():
    rep = run_mainthm_suite()
    assert rep.passed
    assert len(rep.results) == 3
    # 10 seeds -> 55 unordered pairs; 84 seeds -> 3570
    assert "55 pairs" in rep.results[0].name
    assert "3570 pairs" in rep.results[1].name
    assert "never closes" in rep.results[2].name


def test_property_suite_smoke():
    rep = run_property_suite(cases=25)
    assert rep.passed
    assert len(rep.results) == 5
    for r in rep.results:
        assert r.observed == "0 failures"


def test_property_suite_counts_cases():
    rep = run_property_suite(cases=3)
    for r in rep.results:
        assert "3 random" in r.name


def test_report_json_and_render():
    rep = run_lemma_suite(power_bound=5)
    data = rep.to_json()
    assert data["suite"] == "lemmas"
    assert data["passed"] is True
    assert len(data["checks"]) == 17
    for chk in data["checks"]:
        assert set(chk) == {"name", "expected", "observed", "pass"}
    text = rep.render()
    lines = text.splitlines()
    assert lines[0] == "suite lemmas: PASS"
    assert sum(1 for l in lines if l.startswith("  PASS ")) == 17
    assert any(l.startswith("  note: ") for l in lines)


def test_failing_result_renders_fail():
    bad = CheckResult("x", "0 failures", "2 failures")
    assert not bad.passed
    assert bad.to_json()["pass"] is False
