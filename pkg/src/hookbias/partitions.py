"""Partition enumeration and exact hook / gap statistics.

Two evaluation paths exist and are tested against each other:

* ``hook_multiset`` and ``partition_stats`` work on a single partition from
  its profile, h(i, j) = lambda_i + lambda'_j - i - j + 1.
* ``build_hook_table`` folds whole families. For odd and distinct partitions it
  walks a prefix tree of partitions (each node is a partition of its own size)
  and updates hook counts incrementally on the abacus: appending a part p moves
  one bead from position x to x + p, and hooks of length t are exactly the
  (bead, gap) pairs at distance t. All per-node counters live in one packed
  integer so a node costs a handful of big-int operations.
"""

from __future__ import annotations

import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator

from hookbias import cache as cache_store

FAMILIES = ("all", "odd", "distinct", "self_conjugate", "distinct_odd")
STATISTICS = ("hooks_eq_t", "hooks_div_t", "gaps_1", "gaps_2", "parts", "part_sizes", "count")
T_STATISTICS = ("hooks_eq_t", "hooks_div_t")

_FAST_T_LIMIT = 16


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] <= 0:
            raise ValueError(f"parts must be positive: {parts}")
        return super().__new__(cls, parts)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> Partition:
        return Partition(_conjugate(self))

    def multiplicity(self, part: int) -> int:
        return sum(1 for p in self if p == part)

    def gaps(self, size: int) -> int:
        """Number of i with lambda_i - lambda_{i+1} == size (trailing zero appended)."""
        padded = list(self) + [0]
        return sum(1 for a, b in zip(padded, padded[1:]) if a - b == size)

    def part_sizes(self) -> int:
        return len(set(self))


def _conjugate(parts: tuple[int, ...]) -> list[int]:
    """Column lengths of a weakly decreasing tuple, in one pass over the rows."""
    if not parts:
        return []
    conj = [0] * parts[0]
    for i, row in enumerate(parts, 1):
        # rows are weakly decreasing, so columns < row have length >= i
        conj[row - 1] = i
    for j in range(parts[0] - 2, -1, -1):
        if conj[j] < conj[j + 1]:
            conj[j] = conj[j + 1]
    return conj


def _hook_counts(parts: tuple[int, ...]) -> Counter:
    conj = _conjugate(parts)
    hooks: Counter = Counter()
    for i, row in enumerate(parts):
        base = row - i - 1
        hooks.update(base + conj[j] - j for j in range(row))
    return hooks


def hook_multiset(lam: Iterable[int]) -> Counter:
    """Multiset of hook lengths of lam, as a Counter {length: multiplicity}."""
    return _hook_counts(tuple(Partition(lam)))


# -- enumeration ----------------------------------------------------------------


def _distinct(n: int, below: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for p in range(min(n, below - 1), 0, -1):
        if p * (p + 1) // 2 < n:
            break
        for rest in _distinct(n - p, p):
            yield (p,) + rest


def _odd(n: int, at_most: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    top = min(n, at_most)
    if top % 2 == 0:
        top -= 1
    for p in range(top, 0, -2):
        for rest in _odd(n - p, p):
            yield (p,) + rest


def _distinct_odd(n: int, below: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    top = min(n, below - 1)
    if top % 2 == 0:
        top -= 1
    for p in range(top, 0, -2):
        # distinct odd parts <= p sum to at most ((p + 1) / 2)^2
        if ((p + 1) // 2) ** 2 < n:
            break
        for rest in _distinct_odd(n - p, p):
            yield (p,) + rest


def _all(n: int, at_most: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for p in range(min(n, at_most), 0, -1):
        for rest in _all(n - p, p):
            yield (p,) + rest


def _all_ascending(n: int) -> Iterator[list[int]]:
    """All partitions of n as ascending lists (Kelleher's accelerated ascending-composition rule)."""
    if n == 0:
        yield []
        return
    a = [0] * (n + 1)
    k = 1
    y = n - 1
    while k != 0:
        x = a[k - 1] + 1
        k -= 1
        while 2 * x <= y:
            a[k] = x
            y -= x
            k += 1
        l = k + 1
        while x <= y:
            a[k] = x
            a[l] = y
            yield a[: k + 2]
            x += 1
            y -= 1
        a[k] = x + y
        y = x + y - 1
        yield a[: k + 1]


def self_conjugate_from_diagonal_hooks(hooks: Iterable[int]) -> tuple[int, ...]:
    """Unfold distinct odd diagonal hook lengths into the self-conjugate partition."""
    arms = [(h - 1) // 2 for h in hooks]
    d = len(arms)
    rows = [a + i + 1 for i, a in enumerate(arms)]
    i = d + 1
    while True:
        r = sum(1 for j in range(d) if rows[j] >= i)
        if r == 0:
            break
        rows.append(r)
        i += 1
    return tuple(rows)


def _raw_family(family: str, n: int) -> Iterator[tuple[int, ...]]:
    if n < 0:
        raise ValueError("n must be non-negative")
    if family == "all":
        return _all(n, n)
    if family == "odd":
        return _odd(n, n)
    if family == "distinct":
        return _distinct(n, n + 1)
    if family == "distinct_odd":
        return _distinct_odd(n, n + 1)
    if family == "self_conjugate":
        return (self_conjugate_from_diagonal_hooks(h) for h in _distinct_odd(n, n + 1))
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def enumerate_partitions(family: str, n: int) -> Iterator[Partition]:
    """Yield every partition of n in family exactly once."""
    for parts in _raw_family(family, n):
        yield Partition(parts)


# -- per-partition statistics ---------------------------------------------------


def _gap_count(parts: tuple[int, ...], size: int) -> int:
    padded = parts + (0,)
    return sum(1 for a, b in zip(padded, padded[1:]) if a - b == size)


def _raw_stats(parts: tuple[int, ...], t_max: int) -> dict[tuple[str, int], int]:
    hooks = _hook_counts(parts)
    out: dict[tuple[str, int], int] = {
        ("count", 0): 1,
        ("parts", 0): len(parts),
        ("part_sizes", 0): len(set(parts)),
        ("gaps_1", 0): _gap_count(parts, 1),
        ("gaps_2", 0): _gap_count(parts, 2),
    }
    div = [0] * (t_max + 1)
    for h, c in hooks.items():
        for d in range(1, min(h, t_max) + 1):
            if h % d == 0:
                div[d] += c
    for t in range(1, t_max + 1):
        out[("hooks_eq_t", t)] = hooks.get(t, 0)
        out[("hooks_div_t", t)] = div[t]
    return out


def partition_stats(lam: Iterable[int], t_max: int) -> dict[tuple[str, int], int]:
    """Every per-partition statistic of lam, keyed (statistic, t) with t = 0 where unused."""
    return _raw_stats(tuple(Partition(lam)), t_max)


# -- hook tables ------------------------------------------------------------------


@dataclass
class HookTable:
    """Exact totals of a statistic over a partition family, per n.

    ``values`` maps (statistic, t, n) -> count; statistics without a hook
    length use t = 0.
    """

    family: str
    n_max: int
    t_max: int
    values: dict[tuple[str, int, int], int] = field(default_factory=dict)

    def get(self, statistic: str, t: int, n: int) -> int:
        if n > self.n_max or n < 0:
            raise KeyError(f"n={n} outside table range 0..{self.n_max}")
        if statistic not in T_STATISTICS:
            t = 0
        elif t > self.t_max or t < 1:
            raise KeyError(f"t={t} outside table range 1..{self.t_max}")
        key = (statistic, t, n)
        if key not in self.values:
            raise KeyError(f"{statistic} not tabulated for family {self.family}")
        return self.values[key]

    def series(self, statistic: str, t: int = 0) -> list[int]:
        return [self.get(statistic, t, n) for n in range(self.n_max + 1)]

    def records(self) -> list[tuple[str, str, int, int, int]]:
        return sorted((self.family, s, t, n, c) for (s, t, n), c in self.values.items())

    def merge(self, other: HookTable) -> HookTable:
        """Combine two partial tables over disjoint parts of the family."""
        if (self.family, self.n_max, self.t_max) != (other.family, other.n_max, other.t_max):
            raise ValueError("tables differ in shape")
        vals = dict(self.values)
        for k, v in other.values.items():
            vals[k] = vals.get(k, 0) + v
        return HookTable(self.family, self.n_max, self.t_max, vals)


def _generic_table(family: str, n_max: int, t_max: int) -> HookTable:
    vals: dict[tuple[str, int, int], int] = {}
    for n in range(n_max + 1):
        acc: Counter = Counter()
        for lam in _raw_family(family, n):
            for key, v in _raw_stats(lam, t_max).items():
                acc[key] += v
        for s in ("count", "parts", "part_sizes", "gaps_1", "gaps_2"):
            vals[(s, 0, n)] = acc.get((s, 0), 0)
        for t in range(1, t_max + 1):
            vals[("hooks_eq_t", t, n)] = acc.get(("hooks_eq_t", t), 0)
            vals[("hooks_div_t", t, n)] = acc.get(("hooks_div_t", t), 0)
    return HookTable(family, n_max, t_max, vals)


class _Packer:
    """Field layout for the packed per-node counters of the prefix-tree fold."""

    def __init__(self, n_max: int, t_max: int):
        self.T = t_max
        # totals never exceed n * p(n); size the fields from that bound
        bound = (n_max + 1) * _p_upper(n_max)
        self.W = max(32, bound.bit_length() + 2)
        self.mask_field = (1 << self.W) - 1
        T, W = self.T, self.W
        self.window = (1 << T) - 1
        self.spread = [0] * (1 << T)
        self.spread_rev = [0] * (1 << T)
        for w in range(1 << T):
            v = r = 0
            for i in range(T):
                if (w >> i) & 1:
                    v |= 1 << (W * i)
                    # bit i of the window below the new bead sits at distance T - i
                    r |= 1 << (W * (T - 1 - i))
            self.spread[w] = v
            self.spread_rev[w] = r
        self.f_count = T
        self.f_parts = T + 1
        self.f_sizes = T + 2
        self.f_g1 = T + 3
        self.f_g2 = T + 4

    def unit(self, f: int) -> int:
        return 1 << (self.W * f)

    def delta_table(self, n_max: int, odd: bool) -> list[list[int]]:
        """delta[last][p]: counter change for appending part p below a last part `last`."""
        u = self.unit
        table = []
        for last in range(n_max + 1):
            row = []
            for p in range(n_max + 1):
                if p == 0:
                    row.append(0)
                    continue
                d = u(self.f_parts)
                if p != last:
                    d += u(self.f_sizes)
                for j, f in ((1, self.f_g1), (2, self.f_g2)):
                    k = (last - p == j and last > 0) - (last == j) + (p == j)
                    d += k * u(f)
                if p <= self.T:
                    # the moved bead and the gap it leaves are counted by both window terms
                    d -= u(p - 1)
                row.append(d)
            table.append(row)
        return table

    def unpack(self, v: int) -> list[int]:
        return [(v >> (self.W * i)) & self.mask_field for i in range(self.T + 5)]


@lru_cache(maxsize=64)
def _p_upper(n: int) -> int:
    p = [1] + [0] * n
    for j in range(1, n + 1):
        for k in range(j, n + 1):
            p[k] += p[k - j]
    return p[n]


def _fold_subtree(args) -> list[int]:
    family, n_max, t_max, first_parts = args
    odd = family == "odd"
    pk = _Packer(n_max, t_max)
    T = pk.T
    spread, spread_rev, window = pk.spread, pk.spread_rev, pk.window
    delta = pk.delta_table(n_max, odd)
    K = n_max + T + 2
    tot = [0] * (n_max + 1)
    step = 2 if odd else 1
    limit = max(sys.getrecursionlimit(), 4 * n_max + 200)
    sys.setrecursionlimit(limit)

    def dfs(B: int, H: int, l: int, s: int, last: int) -> None:
        tot[s] += H
        x = K - l - 1
        top = min(last if odd else last - 1, n_max - s)
        if odd and top % 2 == 0:
            top -= 1
        drow = delta[last]
        for p in range(top, 0, -step):
            y = x + p
            B2 = B ^ (1 << x) ^ (1 << y)
            H2 = (H + spread[(B2 >> (x + 1)) & window] - spread[(B >> (y + 1)) & window]
                  + spread_rev[(~B2 >> (y - T)) & window] + drow[p])
            dfs(B2, H2, l + 1, s + p, p)

    root_B = (1 << K) - 1
    root_H = pk.unit(pk.f_count)
    if first_parts is None:
        tot[0] += root_H
        first_parts = [p for p in range(n_max, 0, -1) if not odd or p % 2]
    x = K - 1
    for p in first_parts:
        y = x + p
        B2 = root_B ^ (1 << x) ^ (1 << y)
        H2 = (root_H + spread[(B2 >> (x + 1)) & window] - spread[(root_B >> (y + 1)) & window]
              + spread_rev[(~B2 >> (y - T)) & window] + delta[0][p])
        dfs(B2, H2, 1, p, p)
    return tot


def _fast_table(family: str, n_max: int, t_max: int, threads: int) -> HookTable:
    odd = family == "odd"
    pk = _Packer(n_max, t_max)
    firsts = [p for p in range(n_max, 0, -1) if not odd or p % 2]
    if threads > 1 and len(firsts) > 1:
        # round-robin so the heavy large-first-part subtrees spread out
        chunks = [firsts[i::threads] for i in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(_fold_subtree, [(family, n_max, t_max, c) for c in chunks if c]))
        tot = [sum(col) for col in zip(*parts)]
        tot[0] += pk.unit(pk.f_count)
    else:
        tot = _fold_subtree((family, n_max, t_max, None))
    vals: dict[tuple[str, int, int], int] = {}
    for n in range(n_max + 1):
        f = pk.unpack(tot[n])
        for t in range(1, t_max + 1):
            vals[("hooks_eq_t", t, n)] = f[t - 1]
        vals[("count", 0, n)] = f[pk.f_count]
        vals[("parts", 0, n)] = f[pk.f_parts]
        vals[("part_sizes", 0, n)] = f[pk.f_sizes]
        vals[("gaps_1", 0, n)] = f[pk.f_g1]
        vals[("gaps_2", 0, n)] = f[pk.f_g2]
    return HookTable(family, n_max, t_max, vals)


TABLE_KIND = "hooktable"
TABLE_VERSION = 1


def _table_path(cache_dir: Path, family: str, n_max: int, t_max: int, full: bool) -> Path:
    tag = "full" if full else "fast"
    return Path(cache_dir) / f"{TABLE_KIND}-{family}-{tag}-n{n_max}-t{t_max}.tsv"


def save_hook_table(table: HookTable, path: Path) -> None:
    header = {"family": table.family, "n_max": table.n_max, "t_max": table.t_max}
    rows = [(s, t, n, c) for (_, s, t, n, c) in table.records()]
    cache_store.write_table(path, TABLE_KIND, TABLE_VERSION, header, rows)


def load_hook_table(path: Path) -> HookTable:
    header, rows = cache_store.read_table(path, TABLE_KIND, TABLE_VERSION)
    vals = {(s, int(t), int(n)): int(c) for s, t, n, c in rows}
    return HookTable(header["family"], int(header["n_max"]), int(header["t_max"]), vals)


def build_hook_table(family: str, n_max: int, t_max: int = 10, *, method: str = "auto",
                     threads: int = 1, cache_dir: str | os.PathLike | None = None) -> HookTable:
    """Exact totals for every statistic over family, for 0 <= n <= n_max and 1 <= t <= t_max.

    ``method`` is "fold" (prefix-tree fold; odd and distinct only, t_max <= 16,
    no hooks_div_t), "direct" (per-partition hook multisets; everything) or
    "auto" (fold where possible).
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if n_max < 0 or t_max < 1:
        raise ValueError("need n_max >= 0 and t_max >= 1")
    foldable = family in ("odd", "distinct") and t_max <= _FAST_T_LIMIT
    if method == "fold" and not foldable:
        raise ValueError("the fold handles odd/distinct families with t_max <= 16 only")
    if method not in ("auto", "fold", "direct"):
        raise ValueError(f"unknown method {method!r}")
    fast = foldable and method != "direct"
    path = _table_path(Path(cache_dir), family, n_max, t_max, not fast) if cache_dir else None
    if path is not None and path.exists():
        try:
            return load_hook_table(path)
        except cache_store.CacheCorruptError:
            path.unlink()
    table = _fast_table(family, n_max, t_max, threads) if fast else _generic_table(family, n_max, t_max)
    if path is not None:
        save_hook_table(table, path)
    return table


_TABLES: dict[tuple[str, bool], HookTable] = {}


def hook_table(family: str, n_max: int, t_max: int = 10, need_div: bool = False,
               threads: int = 1, cache_dir=None) -> HookTable:
    """Memoised :func:`build_hook_table`; reuses any larger table already built.

    Tables with hooks_div_t (``need_div``) always come from the direct path.
    """
    key = (family, need_div)
    have = _TABLES.get(key)
    if have is not None and have.n_max >= n_max and have.t_max >= t_max:
        return have
    if have is not None:
        n_max, t_max = max(n_max, have.n_max), max(t_max, have.t_max)
    method = "direct" if need_div or t_max > _FAST_T_LIMIT else "auto"
    table = build_hook_table(family, n_max, t_max, method=method, threads=threads, cache_dir=cache_dir)
    _TABLES[key] = table
    return table


def stat_total(family: str, statistic: str, t: int, n: int, **kw) -> int:
    """Total of statistic over all partitions of n in family."""
    if statistic not in STATISTICS:
        raise ValueError(f"unknown statistic {statistic!r}; expected one of {STATISTICS}")
    if statistic in T_STATISTICS and t < 1:
        raise ValueError("hook statistics need t >= 1")
    if n < 0:
        raise ValueError("n must be non-negative")
    if statistic in T_STATISTICS:
        table = hook_table(family, n, max(t, 10), need_div=statistic == "hooks_div_t", **kw)
    else:
        table = hook_table(family, n, 10, **kw)
    return table.get(statistic, t, n)


# -- Andrews-Beck type counts ---------------------------------------------------


def _is_beck_c(lam: tuple[int, ...], mult: Counter) -> bool:
    counts = list(mult.values())
    return counts.count(3) == 1 and all(m in (1, 3) for m in counts)


def beck_c(n: int) -> int:
    """Partitions of n with exactly one part of multiplicity 3 and all others of multiplicity 1."""
    return _all_partition_tallies(n)["c"]


def beck_w(n: int) -> int:
    """Different part sizes > 1, summed over odd partitions of n whose number of 1s is 0 or 3 mod 4."""
    total = 0
    for lam in _odd(n, n):
        if lam.count(1) % 4 in (0, 3):
            total += len({p for p in lam if p > 1})
    return total


def _ell1_condition(lam: tuple[int, ...], mult: Counter) -> bool:
    triples = [p for p, m in mult.items() if m == 3]
    if len(triples) != 1 or any(m not in (1, 3) for m in mult.values()):
        return False
    r = triples[0]
    others = sorted(p for p in mult if p != r)
    if r == 1:
        if len(lam) < 5 or len(others) < 2 or others[1] - others[0] != 1:
            return False
        return 2 not in mult or 4 in mult
    if r == 2:
        if not (len(lam) == 3 or len(lam) >= 5):
            return False
        if 1 in mult:
            return 3 in mult
        if len(others) < 2:
            return len(lam) == 3
        return others[1] - others[0] in (1, 2)
    return True


def _ell2_condition(lam: tuple[int, ...], mult: Counter) -> bool:
    m3 = mult.get(3, 0)
    if m3 < 2:
        return False
    if m3 == 2 and not lam[-1] < 3:
        return False
    if any(m > 1 for p, m in mult.items() if p != 3):
        return False
    if 1 in mult and 2 in mult:
        return False
    big = [p for p in mult if p > 4]
    if not big:
        return False
    s = min(big)
    low_sum = sum(p for p in lam if p <= 3)
    return 5 <= s <= low_sum - 2


def _ell2_alt_condition(lam: tuple[int, ...], mult: Counter) -> bool:
    if mult.get(1, 0) < 2 or 2 in mult or 3 in mult:
        return False
    big = [p for p in mult if p > 4]
    if not big:
        return False
    s = min(big)
    if mult[s] != 2:
        return False
    return all(m == 1 for p, m in mult.items() if p not in (1, s))


_INTERPRETATIONS = {
    "ell1": _ell1_condition,
    "ell2": _ell2_condition,
    "ell2_alt": _ell2_alt_condition,
}
EXCESS_KINDS = tuple(_INTERPRETATIONS) + ("w",)


@lru_cache(maxsize=256)
def _all_partition_tallies(n: int) -> dict[str, int]:
    """One pass over all partitions of n, counting every multiplicity-based description."""
    tally = dict.fromkeys(("c",) + tuple(_INTERPRETATIONS), 0)
    for asc in _all_ascending(n):
        lam = tuple(reversed(asc))
        mult = Counter(lam)
        if _is_beck_c(lam, mult):
            tally["c"] += 1
        for kind, cond in _INTERPRETATIONS.items():
            if cond(lam, mult):
                tally[kind] += 1
    return tally


def excess_interpretation_counts(kind: str, n: int) -> int:
    """Count partitions of n matching a combinatorial description of a bias excess.

    ``ell1``: the gaps-of-size-1 excess (distinct minus odd), valid for n >= 5.
    ``ell2`` / ``ell2_alt``: two descriptions of the gaps-of-size-2 excess (odd
    minus distinct), valid for n not in {2, 6}. ``w``: the hooks-of-length-2
    excess, equal to :func:`beck_w`.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if kind == "w":
        return beck_w(n)
    if kind not in _INTERPRETATIONS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {EXCESS_KINDS}")
    return _all_partition_tallies(n)[kind]
