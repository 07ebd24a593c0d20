from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hookbias import partitions as P
from hookbias.qseries import pochhammer


def brute_hooks(parts):
    """Hook lengths from an explicit Young diagram."""
    cells = {(i, j) for i, row in enumerate(parts) for j in range(row)}
    out = Counter()
    for i, j in cells:
        arm = sum(1 for jj in range(j + 1, parts[i]))
        leg = sum(1 for ii in range(i + 1, len(parts)) if (ii, j) in cells)
        out[arm + leg + 1] += 1
    return out


partition_st = st.lists(st.integers(1, 12), max_size=10).map(lambda xs: P.Partition(sorted(xs, reverse=True)))


def test_distinct_seven():
    got = set(P.enumerate_partitions("distinct", 7))
    assert got == {(7,), (6, 1), (5, 2), (4, 3), (4, 2, 1)}


def test_empty_partition():
    assert list(P.enumerate_partitions("odd", 0)) == [()]
    for fam in P.FAMILIES:
        assert list(P.enumerate_partitions(fam, 0)) == [()]


def test_euler_identity_counts():
    for n in range(61):
        assert sum(1 for _ in P._raw_family("odd", n)) == sum(1 for _ in P._raw_family("distinct", n))


def test_families_are_exact_filters_of_all():
    for n in range(13):
        every = list(P.enumerate_partitions("all", n))
        assert len(every) == len(set(every))
        filters = {
            "odd": lambda l: all(p % 2 for p in l),
            "distinct": lambda l: len(set(l)) == len(l),
            "distinct_odd": lambda l: all(p % 2 for p in l) and len(set(l)) == len(l),
            "self_conjugate": lambda l: l.conjugate() == l,
        }
        for fam, keep in filters.items():
            assert sorted(P.enumerate_partitions(fam, n)) == sorted(l for l in every if keep(l))


def test_hook_multiset_examples():
    assert P.hook_multiset((7,)) == Counter({7: 1, 6: 1, 5: 1, 4: 1, 3: 1, 2: 1, 1: 1})
    assert P.hook_multiset((4, 2, 1)) == Counter([6, 4, 2, 1, 3, 1, 1])
    assert P.hook_multiset((1,)) == Counter([1])


def test_distinct_seven_totals():
    assert P.stat_total("distinct", "hooks_eq_t", 2, 7) == 6
    assert P.stat_total("distinct", "hooks_eq_t", 3, 7) == 6
    for t in range(1, 8):
        assert P.stat_total("odd", "hooks_eq_t", t, 0) == 0


def test_gap_example():
    assert P.Partition((11, 9, 5, 3)).gaps(2) == 2


def test_partition_validation():
    with pytest.raises(ValueError):
        P.Partition((1, 2))
    with pytest.raises(ValueError):
        P.Partition((2, 0))


@given(partition_st)
def test_hook_properties(lam):
    hooks = P.hook_multiset(lam)
    assert hooks == brute_hooks(lam)
    assert sum(hooks.values()) == lam.size
    assert lam.conjugate().conjugate() == lam
    assert P.hook_multiset(lam.conjugate()) == hooks
    assert hooks.get(1, 0) == lam.part_sizes()


@given(st.sets(st.integers(1, 25), max_size=8))
def test_distinct_hook_descriptions(parts):
    lam = P.Partition(sorted(parts, reverse=True))
    hooks = P.hook_multiset(lam)
    padded = list(lam) + [0]
    assert hooks.get(2, 0) == sum(1 for a, b in zip(padded, padded[1:]) if a - b >= 2)
    assert hooks.get(3, 0) == len(lam) - lam.multiplicity(1) - lam.gaps(2)


@given(st.sets(st.integers(0, 12), max_size=6))
def test_self_conjugate_diagonal_is_odd(arms):
    hooks = sorted((2 * a + 1 for a in arms), reverse=True)
    lam = P.Partition(P.self_conjugate_from_diagonal_hooks(hooks))
    assert lam.conjugate() == lam
    assert lam.size == sum(hooks)
    # diagonal hooks recovered
    conj = lam.conjugate()
    diag = [lam[i] + conj[i] - 2 * i - 1 for i in range(len(lam)) if i < lam[i]]
    assert diag == hooks


def test_fold_matches_direct_tables():
    for fam in ("odd", "distinct"):
        fold = P.build_hook_table(fam, 26, 9, method="fold")
        direct = P.build_hook_table(fam, 26, 9, method="direct")
        for key, v in fold.values.items():
            assert direct.values[key] == v, (fam, key)


def test_fold_parallel_split_matches():
    a = P.build_hook_table("odd", 30, 6, method="fold", threads=1)
    b = P.build_hook_table("odd", 30, 6, method="fold", threads=3)
    assert a.values == b.values


def test_fold_rejects_unsupported():
    with pytest.raises(ValueError):
        P.build_hook_table("all", 5, 3, method="fold")


def test_counts_match_products():
    table = P.build_hook_table("distinct", 40, 3)
    assert table.series("count") == list(pochhammer(-1, 1, 1, float("inf"), 40))


def test_table_invariants():
    pairs = [("odd", "distinct"), ("self_conjugate", "distinct_odd")]
    for fa, fb in pairs:
        ta = P.build_hook_table(fa, 30, 30, method="direct")
        tb = P.build_hook_table(fb, 30, 30, method="direct")
        assert all(v >= 0 for v in ta.values.values())
        for n in range(31):
            sa = sum(ta.get("hooks_eq_t", t, n) for t in range(1, 31))
            sb = sum(tb.get("hooks_eq_t", t, n) for t in range(1, 31))
            assert sa == sb == n * ta.get("count", 0, n)
    sc = P.build_hook_table("self_conjugate", 40, 10, method="direct")
    for n in range(41):
        for m in range(1, 6):
            assert sc.get("hooks_eq_t", 2 * m, n) % 2 == 0


def test_hooks_div_matches_sum_of_eq():
    t = P.build_hook_table("all", 16, 16, method="direct")
    for n in range(17):
        for d in range(1, 6):
            assert t.get("hooks_div_t", d, n) == sum(t.get("hooks_eq_t", k, n) for k in range(d, 17, d))


def test_table_merge_adds():
    a = P.build_hook_table("odd", 8, 3)
    doubled = a.merge(a)
    assert doubled.get("hooks_eq_t", 2, 8) == 2 * a.get("hooks_eq_t", 2, 8)


def test_beck_values():
    assert P.beck_c(3) == 1
    assert P.beck_c(0) == 0 and P.beck_w(0) == 0
    for n in range(51):
        table_d = P.hook_table("distinct", 50)
        table_o = P.hook_table("odd", 50)
        assert table_d.get("parts", 0, n) - table_o.get("part_sizes", 0, n) == P.beck_c(n)


def test_interpretations_match_excesses():
    odd = P.hook_table("odd", 50)
    dist = P.hook_table("distinct", 50)
    for n in range(7, 51):
        e1 = dist.get("gaps_1", 0, n) - odd.get("gaps_1", 0, n)
        e2 = odd.get("gaps_2", 0, n) - dist.get("gaps_2", 0, n)
        w = odd.get("hooks_eq_t", 2, n) - dist.get("hooks_eq_t", 2, n)
        assert P.excess_interpretation_counts("ell1", n) == e1
        assert P.excess_interpretation_counts("ell2", n) == e2
        assert P.excess_interpretation_counts("ell2_alt", n) == e2
        assert P.excess_interpretation_counts("w", n) == w


def test_interpretation_exceptions():
    assert P.excess_interpretation_counts("ell2_alt", 2) == 0
    assert P.excess_interpretation_counts("ell1", 0) == 0
    with pytest.raises(ValueError):
        P.excess_interpretation_counts("nope", 3)


def test_stat_total_errors():
    with pytest.raises(ValueError):
        P.stat_total("odd", "hooks_eq_t", 0, 5)
    with pytest.raises(ValueError):
        P.stat_total("weird", "parts", 0, 5)


def test_hook_table_cache_roundtrip(tmp_path):
    a = P.build_hook_table("distinct", 15, 4, cache_dir=tmp_path)
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    b = P.build_hook_table("distinct", 15, 4, cache_dir=tmp_path)
    assert a.values == b.values
    # a truncated file is detected and rebuilt
    text = files[0].read_text().splitlines()
    files[0].write_text("\n".join(text[:-3]) + "\n")
    c = P.build_hook_table("distinct", 15, 4, cache_dir=tmp_path)
    assert c.values == a.values
    assert P.load_hook_table(files[0]).values == a.values
