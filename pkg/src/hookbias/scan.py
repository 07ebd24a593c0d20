"""Scanners over exact tables: bias crossovers, congruences and the gap / Andrews-Beck identities.

Scans report what was observed up to ``n_max``. A last violation at or below
n_max is only consistent with a conjectured crossover; it proves nothing beyond it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from hookbias import genfun, partitions

PAIRS = {
    "odd_vs_distinct": ("odd", "distinct"),
    "selfconj_vs_distinctodd": ("self_conjugate", "distinct_odd"),
}
SOURCES = ("enumeration", "genfun")


@dataclass
class BiasReport:
    pair: str
    t: int
    n_max: int
    source: str
    differences: dict[int, int]
    violation_set: list[int] = field(init=False)
    last_violation: int | None = field(init=False)

    def __post_init__(self):
        self.violation_set = sorted(n for n, d in self.differences.items() if d < 0)
        self.last_violation = self.violation_set[-1] if self.violation_set else None

    def to_dict(self) -> dict:
        return {
            "pair": self.pair,
            "t": self.t,
            "n_max": self.n_max,
            "source": self.source,
            "last_violation": self.last_violation,
            "violation_set": self.violation_set,
            "differences": {str(n): d for n, d in sorted(self.differences.items())},
        }


def scan_bias(pair: str, t: int, n_max: int = 120, source: str = "enumeration", *,
              threads: int = 1, cache_dir=None) -> BiasReport:
    """Differences (first family) - (second family) of total hooks of length t for n <= n_max."""
    if pair not in PAIRS:
        raise ValueError(f"unknown pair {pair!r}; expected one of {tuple(PAIRS)}")
    if source not in SOURCES:
        raise ValueError(f"unknown source {source!r}; expected one of {SOURCES}")
    if t < 1:
        raise ValueError("t must be >= 1")
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if source == "genfun":
        if pair != "odd_vs_distinct" or t not in (2, 3):
            raise ValueError("closed forms exist only for odd_vs_distinct with t in {2, 3}")
        a = genfun.build(f"a{t}", n_max).series
        b = genfun.build(f"b{t}", n_max).series
        diffs = {n: a[n] - b[n] for n in range(n_max + 1)}
    else:
        first, second = PAIRS[pair]
        ta = partitions.hook_table(first, n_max, max(t, 10), threads=threads, cache_dir=cache_dir)
        tb = partitions.hook_table(second, n_max, max(t, 10), threads=threads, cache_dir=cache_dir)
        diffs = {n: ta.get("hooks_eq_t", t, n) - tb.get("hooks_eq_t", t, n) for n in range(n_max + 1)}
    return BiasReport(pair, t, n_max, source, diffs)


@dataclass
class CongruenceReport:
    m_max: int
    n_max: int
    residues: dict[tuple[int, int], int]

    @property
    def nonzero(self) -> list[tuple[int, int, int]]:
        return sorted((m, n, r) for (m, n), r in self.residues.items() if r)

    @property
    def passed(self) -> bool:
        return not self.nonzero

    def to_dict(self) -> dict:
        return {"m_max": self.m_max, "n_max": self.n_max, "passed": self.passed,
                "nonzero": [list(x) for x in self.nonzero]}


def scan_congruence(m_max: int = 5, n_max: int = 70, *, cache_dir=None) -> CongruenceReport:
    """Residues of total hooks of length 2m over self-conjugate partitions, mod 2m."""
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    table = partitions.hook_table("self_conjugate", n_max, max(2 * m_max, 10), cache_dir=cache_dir)
    res = {(m, n): table.get("hooks_eq_t", 2 * m, n) % (2 * m)
           for m in range(1, m_max + 1) for n in range(n_max + 1)}
    return CongruenceReport(m_max, n_max, res)


@dataclass
class IdentityCheck:
    name: str
    kind: str  # "theorem" for proved statements, "observation" for numerically verified ones
    failures: list[tuple[int, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class IdentityReport:
    n_max: int
    checks: list[IdentityCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.kind == "theorem")

    def __getitem__(self, name: str) -> IdentityCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "passed": self.passed,
            "checks": [{"name": c.name, "kind": c.kind, "passed": c.passed,
                        "failures": [list(f) for f in c.failures]} for c in self.checks],
        }


def scan_identities(n_max: int = 50) -> IdentityReport:
    """Check the Euler / Andrews-Beck identities and the gap-bias statements for n <= n_max."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    t_all = max(n_max, 1)
    odd = partitions.build_hook_table("odd", n_max, t_all, method="direct")
    dist = partitions.build_hook_table("distinct", n_max, t_all, method="direct")
    N = range(n_max + 1)

    def col(table, stat, t=0):
        return [table.get(stat, t, n) for n in N]

    a1, b1 = col(odd, "part_sizes"), col(dist, "parts")
    g1o, g1d = col(odd, "gaps_1"), col(dist, "gaps_1")
    g2o, g2d = col(odd, "gaps_2"), col(dist, "gaps_2")
    checks = []

    c = IdentityCheck("distinct_parts_minus_odd_sizes_is_beck_c", "theorem")
    for n in N:
        bc = partitions.beck_c(n)
        if b1[n] - a1[n] != bc:
            c.failures.append((n, f"{b1[n] - a1[n]} != {bc}"))
    checks.append(c)

    c = IdentityCheck("hook_length_one_counts", "theorem")
    for n in N:
        if odd.get("hooks_eq_t", 1, n) != a1[n] or dist.get("hooks_eq_t", 1, n) != b1[n]:
            c.failures.append((n, "hooks of length 1 differ from part-size counts"))
    checks.append(c)

    c = IdentityCheck("total_hooks_equal", "theorem")
    for n in N:
        sa = sum(odd.get("hooks_eq_t", t, n) for t in range(1, t_all + 1))
        sb = sum(dist.get("hooks_eq_t", t, n) for t in range(1, t_all + 1))
        if sa != sb:
            c.failures.append((n, f"{sa} != {sb}"))
    checks.append(c)

    c = IdentityCheck("gaps1_excess_exceptions", "theorem")
    for n in N:
        d = g1d[n] - g1o[n]
        expected_negative = n in (2, 4)
        if (d < 0) != expected_negative or (expected_negative and d != -1):
            c.failures.append((n, f"excess {d}"))
    checks.append(c)

    c = IdentityCheck("gaps2_excess_exceptions", "theorem")
    for n in N:
        d = g2o[n] - g2d[n]
        expected_negative = n in (2, 6)
        if (d < 0) != expected_negative or (expected_negative and d != -1):
            c.failures.append((n, f"excess {d}"))
    checks.append(c)

    c = IdentityCheck("gaps1_excess_at_most_b1_minus_a1", "theorem")
    for n in N:
        if n >= 5 and g1d[n] - g1o[n] > b1[n] - a1[n]:
            c.failures.append((n, f"{g1d[n] - g1o[n]} > {b1[n] - a1[n]}"))
    checks.append(c)

    # stated for every n >= 0 but proved only from n = 5 on
    c = IdentityCheck("odd_sizes_above_one_at_most_distinct_wide_gaps", "observation")
    for n in N:
        if a1[n] - g1o[n] > b1[n] - g1d[n]:
            c.failures.append((n, f"{a1[n] - g1o[n]} > {b1[n] - g1d[n]}"))
    checks.append(c)

    c = IdentityCheck("excess_interpretations", "theorem")
    for n in N:
        e1, e2 = g1d[n] - g1o[n], g2o[n] - g2d[n]
        if n >= 5 and partitions.excess_interpretation_counts("ell1", n) != e1:
            c.failures.append((n, "ell1"))
        if n not in (2, 6):
            for kind in ("ell2", "ell2_alt"):
                if partitions.excess_interpretation_counts(kind, n) != e2:
                    c.failures.append((n, kind))
        w = odd.get("hooks_eq_t", 2, n) - dist.get("hooks_eq_t", 2, n) if n else 0
        if partitions.beck_w(n) != w:
            c.failures.append((n, "w"))
    checks.append(c)
    return IdentityReport(n_max, checks)
