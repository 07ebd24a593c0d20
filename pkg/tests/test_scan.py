from __future__ import annotations

import pytest

from hookbias import scan


def test_bias_small_t():
    assert scan.scan_bias("odd_vs_distinct", 2, 60).last_violation is None
    assert scan.scan_bias("odd_vs_distinct", 3, 60).last_violation == 7


def test_genfun_source_agrees_with_enumeration():
    for t in (2, 3):
        big = scan.scan_bias("odd_vs_distinct", t, 2000, "genfun")
        enum = scan.scan_bias("odd_vs_distinct", t, 60)
        assert [n for n in big.violation_set if n <= 60] == enum.violation_set
        assert all(n <= 7 for n in big.violation_set)
        assert all(big.differences[n] == enum.differences[n] for n in range(61))


def test_genfun_source_limits():
    with pytest.raises(ValueError):
        scan.scan_bias("odd_vs_distinct", 4, 10, "genfun")
    with pytest.raises(ValueError):
        scan.scan_bias("selfconj_vs_distinctodd", 2, 10, "genfun")


def test_report_invariant():
    rep = scan.scan_bias("selfconj_vs_distinctodd", 3, 40)
    assert rep.last_violation == (max(rep.violation_set) if rep.violation_set else None)


def test_congruence_small():
    rep = scan.scan_congruence(3, 40)
    assert rep.passed
    assert all(rep.residues[(m, 0)] == 0 for m in range(1, 4))


def test_identities_report():
    rep = scan.scan_identities(20)
    assert rep.passed
    assert rep["odd_sizes_above_one_at_most_distinct_wide_gaps"].kind == "observation"
    assert rep["odd_sizes_above_one_at_most_distinct_wide_gaps"].passed
