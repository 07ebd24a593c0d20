from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hookbias import genfun, partitions

ENUM = {
    "a2": ("odd", "hooks_eq_t", 2),
    "b2": ("distinct", "hooks_eq_t", 2),
    "a3": ("odd", "hooks_eq_t", 3),
    "b3": ("distinct", "hooks_eq_t", 3),
    "a1": ("odd", "hooks_eq_t", 1),
    "b1": ("distinct", "hooks_eq_t", 1),
    "gaps1_odd": ("odd", "gaps_1", 0),
    "gaps1_distinct": ("distinct", "gaps_1", 0),
    "gaps2_odd": ("odd", "gaps_2", 0),
    "gaps2_distinct": ("distinct", "gaps_2", 0),
}


def test_polynomial_checksums():
    f = genfun.build("fpoly", 60).series
    g = genfun.build("gpoly", 60).series
    assert sum(f) == 118 and sum(g) == 16
    assert min(f.nonzero_terms()) == 25 and max(f.nonzero_terms()) == 51
    assert min(g.nonzero_terms()) == 9 and max(g.nonzero_terms()) == 22
    p = genfun.build("ppoly", 60).series
    assert min(p.nonzero_terms()) == 9 and max(p.nonzero_terms()) == 39


@pytest.mark.parametrize("name", sorted(ENUM))
def test_series_match_enumeration(name):
    fam, stat, t = ENUM[name]
    table = partitions.hook_table(fam, 60)
    ser = genfun.build(name, 60).series
    assert [ser[n] for n in range(61)] == [table.get(stat, t, n) for n in range(61)]


def test_excess_series_match_enumeration():
    odd, dist = partitions.hook_table("odd", 60), partitions.hook_table("distinct", 60)
    ell1 = genfun.build("ell1diff", 60).series
    H2 = genfun.build("H2", 60).series
    w = genfun.build("w", 60).series
    for n in range(61):
        assert ell1[n] == dist.get("gaps_1", 0, n) - odd.get("gaps_1", 0, n)
        assert H2[n] == odd.get("gaps_2", 0, n) - dist.get("gaps_2", 0, n)
        assert w[n] == partitions.beck_w(n)


def test_b2_at_seven():
    assert genfun.build("b2", 7)[7] == 6


def test_diff2_nonnegative_and_equals_w():
    d = genfun.build("diff2", 500).series
    assert not d.negative_exponents()
    assert d == genfun.build("w", 500).series
    assert d == genfun.build("a2", 500).series - genfun.build("b2", 500).series


def test_t3_difference_sign_pattern():
    d = genfun.build("a3", 500).series - genfun.build("b3", 500).series
    assert d.negative_exponents() == [5, 7]


def test_bisection_report():
    rep = genfun.check_bisection(300)
    assert rep.passed, rep.failures[:5]
    assert rep.notes["A_negative"] == [5, 7]
    assert genfun.build("Aq", 10)[5] < 0
    assert (genfun.build("Aq", 10).series + genfun.build("Bq", 10).series)[0] == 0
    # below q^76 the only non-negative coefficients are the zeros at 1..8, 10, 11
    assert rep.notes["fg_negative"] == [9] + list(range(12, 76))


def test_bisection_rejects_low_order():
    with pytest.raises(ValueError):
        genfun.check_bisection(50)


def test_gap_series_report():
    rep = genfun.check_gap_series(200)
    assert rep.passed, rep.failures[:5]
    assert rep.notes["ell1_negative"] == {2: -1, 4: -1}
    assert rep.notes["ell2_negative"] == {2: -1, 6: -1}


def test_report_flags_offending_exponent():
    rep = genfun.CheckReport("demo", 3)
    a = genfun.build("b2", 3).series
    rep.compare("x", a, a + genfun.monomial(3, 3))
    assert not rep.passed and rep.failures[0][:2] == ("x", 3)


def test_unknown_name():
    with pytest.raises(ValueError):
        genfun.build("zz", 5)


@pytest.mark.parametrize("which,params", [
    ("NO", {"z": 0}), ("NO", {"z": 1}), ("NO", {"z": 2}), ("NO", {"z": -1}),
    ("Han1", {"t": 2, "y": 0}), ("Han1", {"t": 2, "y": 2}), ("Han1", {"t": 3, "y": 2}),
    ("Han2", {"t": 2, "y": 0, "z": 1}), ("Han2", {"t": 2, "y": 2, "z": 3}), ("Han2", {"t": 3, "y": 2, "z": 1}),
])
def test_identities(which, params):
    assert genfun.check_identity(which, params, 12).passed


def test_identity_trivial_cases():
    from hookbias.analytic import partition_counts

    lhs, _ = genfun._identity_sides("NO", {"z": 1}, 10)
    assert list(lhs) == [1] + [0] * 10
    lhs, _ = genfun._identity_sides("NO", {"z": 0}, 10)
    assert list(lhs) == partition_counts(10)


def test_identity_detects_mismatch(monkeypatch):
    real = genfun._identity_sides

    def broken(which, params, order):
        lhs, rhs = real(which, params, order)
        return lhs, rhs + genfun.monomial(4, order)

    monkeypatch.setattr(genfun, "_identity_sides", broken)
    rep = genfun.check_identity("NO", {"z": 2}, 8)
    assert not rep.passed and rep.failures[0][1] == 4


def test_identity_parameter_errors():
    with pytest.raises(ValueError):
        genfun.check_identity("NO", {}, 5)
    with pytest.raises(ValueError):
        genfun.check_identity("NO", {"z": 1}, 25)


@given(st.sampled_from(genfun.NAMES), st.integers(0, 90), st.data())
def test_truncation_consistency(name, order, data):
    lower = data.draw(st.integers(0, order))
    assert genfun.build(name, order).series.truncate(lower) == genfun.build(name, lower).series
