from fractions import Fraction

import pytest

import bgt


def test_generate_and_canonicalize():
    assert bgt.generate("regular(3)") == ["1/2", "1/4", "1/4"]
    assert bgt.canonicalize(["1/4", "1/2", "1/4"]) == ["1/2", "1/4", "1/4"]
    rates = bgt.generate("uniform-normalized", 30, 7)
    assert sum(Fraction(r) for r in rates) == 1


def test_oracles_match_reports():
    rates = bgt.generate("figure4")
    o = bgt.MakespanTwoOracle(rates)
    picks = [o.query() for _ in range(16)]
    assert [picks.count(i) for i in range(1, 7)] == [8, 2, 2, 2, 1, 1]
    rm = bgt.ReduceMaxOracle(rates)
    assert rm.query() == 1
    rf = bgt.ReduceFastestOracle(rates, "1")
    assert 0 <= rf.query() <= 6


def test_verify_bounds():
    rates = bgt.generate("dyadic-random", 50, 3)
    r = bgt.verify(rates, "reduce-fastest", 20000, x=2)
    assert r["bound"]["bound"] == "19/6"
    assert r["bound"]["holds"]
    m = bgt.verify(bgt.generate("two-bamboo(2^-10)"), "makespan2")
    assert m["observed_makespan"] == "1023/512"
    assert m["transformed_makespan"] == "1"
    assert bgt.rf_bound(2) == "19/6"


def test_simulate_trace_and_equivalence():
    r = bgt.simulate(["1/2", "1/4", "1/4"], "reduce-max", 8, trace=True)
    assert len(r["trace"]) == 8
    assert bgt.equivalence(bgt.generate("uniform-normalized", 40, 2), 2000)["ok"]


def test_errors():
    with pytest.raises(ValueError):
        bgt.verify(["1/2"], "reduce-min")
    with pytest.raises(ValueError):
        bgt.canonicalize(["1/2", "3/4"])
    assert bgt.bench("pst", [256, 1024]).startswith("structure,n,ops")
