from fractions import Fraction
from math import comb

import pytest

import cobcalc


def test_universal_law_degree_two():
    law = cobcalc.universal_fgl(2).law
    assert law.coefficient(1, 1) == "-2*b1"
    assert str(law.series) == "y + x - 2*b1*x*y"


def test_multiplicative_series():
    law = cobcalc.FormalGroupLaw.multiplicative(4)
    assert str(law.n_series(3)) == "3*x - 3*x^2 + x^3"
    assert str(law.inverse()) == "-x - x^2 - x^3 - x^4"


def test_custom_law_is_validated():
    assert str(cobcalc.FormalGroupLaw.from_text("x + y + 2*x*y", 3).inverse()) == "-x + 2*x^2 - 4*x^3"
    with pytest.raises(cobcalc.CobcalcError, match="commutativity"):
        cobcalc.FormalGroupLaw.from_text("x + y + x*y^2", 4)


def test_decompose_additive():
    parts = cobcalc.decompose(cobcalc.FormalGroupLaw.additive(4), [1, 1], 4)
    assert {k: str(v) for k, v in parts.items()} == {"{1}": "1", "{2}": "1", "{1,2}": "0"}


def test_series_json_round_trip():
    s = cobcalc.universal_fgl(4).law.series
    assert cobcalc.Series.from_json(s.to_json()) == s


def test_pbf_and_pushforwards():
    add = cobcalc.FormalGroupLaw.additive(6)
    assert cobcalc.pb_coefficients(add, [2, 2], 3) == ["0", "1", "-x2 - x1"]
    assert cobcalc.cf_pushforwards([2, 2, 2]) == ["1", "1", "1"]
    assert cobcalc.chern_classes(cobcalc.FormalGroupLaw.multiplicative(6), [1, 1])[-1] == "x1*x2"


def test_hrr_matches_binomials():
    for n in range(4):
        for d in range(5):
            assert cobcalc.hrr_projective_space(n, d) == Fraction(comb(n + d, n))


def test_selftest_and_cli():
    report = cobcalc.selftest("quick")
    assert report["ok"] is True
    code, out, err = cobcalc.run_cli(["rr", "hrr", "--n", "0", "--d", "7"])
    assert (code, out) == (0, "1\n")
    assert cobcalc.run_cli(["rr", "hrr", "--n", "0"])[0] == 2
