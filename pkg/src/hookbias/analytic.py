"""Exact distinct-part counts and the real-analytic side: Bessel bounds, envelopes, main terms.

Quantities that grow like e^x are carried as natural logarithms wherever the
float range could be exceeded; plain floats are returned only when they fit.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterator

import numpy as np

from hookbias import cache as cache_store

LOG_FLOAT_MAX = math.log(1.7976931348623157e308)
I1_MAX_X = 800.0


# -- exact counts -----------------------------------------------------------------


@dataclass(frozen=True)
class DistinctCountTable:
    """rho(n, m) for n = 0..n_max: partitions of n into distinct parts all >= m."""

    m: int
    values: tuple[int, ...]

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        if n < 0:
            return 0
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


def _distinct_dp(m: int, n_max: int) -> list[int]:
    arr = np.zeros(n_max + 1, dtype=object)
    arr[0] = 1
    for k in range(m, n_max + 1):
        # right-hand side is evaluated before assignment, so each part is used at most once
        arr[k:] = arr[k:] + arr[: n_max + 1 - k]
    return [int(x) for x in arr]


RHO_KIND = "rho"
RHO_VERSION = 1


def _rho_path(cache_dir, m: int, n_max: int) -> Path:
    return Path(cache_dir) / f"{RHO_KIND}-m{m}-n{n_max}.tsv"


def _find_cached(cache_dir, m: int, n_max: int) -> DistinctCountTable | None:
    d = Path(cache_dir)
    if not d.is_dir():
        return None
    best = None
    for path in d.glob(f"{RHO_KIND}-m{m}-n*.tsv"):
        try:
            size = int(path.stem.rsplit("-n", 1)[1])
        except ValueError:
            continue
        if size >= n_max and (best is None or size < best[0]):
            best = (size, path)
    if best is None:
        return None
    try:
        header, rows = cache_store.read_table(best[1], RHO_KIND, RHO_VERSION)
        if int(header["m"]) != m or int(header["n_max"]) != best[0]:
            raise cache_store.CacheCorruptError("header does not match file name")
        vals = [int(c) for _, n, c in rows]
        if [int(n) for _, n, _ in rows] != list(range(len(vals))):
            raise cache_store.CacheCorruptError("rows out of order")
    except (cache_store.CacheCorruptError, KeyError, ValueError):
        best[1].unlink()
        return None
    return DistinctCountTable(m, tuple(vals[: n_max + 1]))


@lru_cache(maxsize=32)
def _distinct_counts_memo(m: int, n_max: int) -> DistinctCountTable:
    return DistinctCountTable(m, tuple(_distinct_dp(m, n_max)))


def distinct_counts(m: int, n_max: int, cache_dir: str | os.PathLike | None = None) -> DistinctCountTable:
    """Exact rho(n, m) for 0 <= n <= n_max by a 0/1 knapsack over parts m..n_max."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if cache_dir is None:
        return _distinct_counts_memo(m, n_max)
    hit = _find_cached(cache_dir, m, n_max)
    if hit is not None:
        return hit
    table = _distinct_counts_memo(m, n_max)
    cache_store.write_table(_rho_path(cache_dir, m, n_max), RHO_KIND, RHO_VERSION,
                            {"m": m, "n_max": n_max}, [(m, n, c) for n, c in enumerate(table.values)])
    return table


def q_counts(n_max: int, **kw) -> DistinctCountTable:
    return distinct_counts(1, n_max, **kw)


def iter_rho_tables(n_max: int) -> Iterator[DistinctCountTable]:
    """Yield rho(., m) for m = n_max + 1 down to 1, using rho(n, m) = rho(n, m + 1) + rho(n - m, m + 1)."""
    cur = [1] + [0] * n_max
    yield DistinctCountTable(n_max + 1, tuple(cur))
    for m in range(n_max, 0, -1):
        nxt = cur[:]
        for n in range(m, n_max + 1):
            nxt[n] += cur[n - m]
        cur = nxt
        yield DistinctCountTable(m, tuple(cur))


def partition_counts(n_max: int) -> list[int]:
    """p(n) for n <= n_max by Euler's pentagonal recurrence."""
    p = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            s = 1 if k % 2 else -1
            total += s * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += s * p[n - g2]
            k += 1
        p[n] = total
    return p


# -- Bessel function I_1 ----------------------------------------------------------


def _check_i1_domain(x: float) -> None:
    if not (0 < x <= I1_MAX_X) or math.isnan(x):
        raise ValueError(f"x must lie in (0, {I1_MAX_X}], got {x}")


def log_bessel_i1(x: float) -> float:
    """log I_1(x) from the ascending series sum_k (x/2)^(2k+1) / (k! (k+1)!), summed with rescaling."""
    _check_i1_domain(x)
    half = x / 2.0
    sq = half * half
    term, total, log_scale = half, half, 0.0
    k = 0
    while True:
        term *= sq / ((k + 1) * (k + 2))
        k += 1
        total += term
        if term < total * 1e-17:
            break
        if total > 1e280:
            term *= 1e-280
            total *= 1e-280
            log_scale += 280 * math.log(10.0)
    return math.log(total) + log_scale


def bessel_i1(x: float) -> float:
    lv = log_bessel_i1(x)
    if lv > LOG_FLOAT_MAX:
        raise OverflowError(f"I_1({x}) exceeds the float range; use log_bessel_i1")
    if x < 1e-3:
        # summing directly keeps full relative precision near 0
        half = x / 2.0
        return half * (1.0 + half * half / 2.0 + half ** 4 / 12.0)
    return math.exp(lv)


@dataclass(frozen=True)
class BesselBounds:
    lower: float
    upper: float
    log_lower: float
    log_upper: float


def bessel_bounds(x: float) -> BesselBounds:
    """Closed-form lower/upper bounds for I_1(x), valid for x > 3."""
    if not x > 3:
        raise ValueError("bounds hold only for x > 3")
    log_base = x - 0.5 * math.log(2 * math.pi * x)
    # e^{-x} relative to e^{x} is e^{-2x}
    tail = 2.0 * math.exp(-2.0 * x)
    lo_factor = 1.0 - 2.0 / x - tail
    hi_factor = 1.0 + 2.0 / x + tail
    log_lo = log_base + math.log(lo_factor)
    log_hi = log_base + math.log(hi_factor)
    lo = math.exp(log_lo) if log_lo < LOG_FLOAT_MAX else math.inf
    hi = math.exp(log_hi) if log_hi < LOG_FLOAT_MAX else math.inf
    return BesselBounds(lo, hi, log_lo, log_hi)


# -- envelope for q(n) ------------------------------------------------------------


@dataclass(frozen=True)
class Envelope:
    n: int
    mu: float
    main: float
    err_bound: float
    simple_bound: float | None
    log_main: float
    log_err_bound: float


def envelope_mu(n: int) -> float:
    return math.pi / (6 * math.sqrt(2)) * math.sqrt(24 * n + 1)


def bb_envelope(n: int) -> Envelope:
    """Main Bessel term for q(n) and the bound on its error.

    ``simple_bound`` is (11/10) e^mu / mu^2, reported only where it applies (mu > 9).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    mu = envelope_mu(n)
    c = math.pi ** 2 / (6 * math.sqrt(2))
    log_main = math.log(c / mu) + log_bessel_i1(mu)
    log_err = math.log(0.9 * c) + mu - 2 * math.log(mu) + math.log1p(5 * mu * mu * math.exp(-mu))
    simple = None
    if mu > 9:
        log_simple = math.log(1.1) + mu - 2 * math.log(mu)
        simple = math.exp(log_simple) if log_simple < LOG_FLOAT_MAX else math.inf
    main = math.exp(log_main) if log_main < LOG_FLOAT_MAX else math.inf
    err = math.exp(log_err) if log_err < LOG_FLOAT_MAX else math.inf
    return Envelope(n, mu, main, err, simple, log_main, log_err)


# -- circle-method main terms -------------------------------------------------------


@dataclass(frozen=True)
class AsymptoticParams:
    """Constants of a product F(q) = L(q) * xi(q) with xi ~ K z^beta e^{A/z} and z L(e^{-z}) -> alpha0."""

    name: str
    K: float
    A: float
    B: float
    beta: float
    alpha0: float


def _distinct_family(name: str, alpha0: float) -> AsymptoticParams:
    return AsymptoticParams(name, 1 / math.sqrt(2), math.pi ** 2 / 12, 1.0, 0.0, alpha0)


LOG2 = math.log(2.0)
PRESETS: dict[str, AsymptoticParams] = {
    p.name: p
    for p in (
        _distinct_family("a1", 0.5),
        _distinct_family("b1", LOG2),
        _distinct_family("a2", 0.75),
        _distinct_family("b2", 0.5),
        _distinct_family("a3", 2 / 3),
        _distinct_family("b3", LOG2 - 0.125),
        _distinct_family("diff1", LOG2 - 0.5),
        _distinct_family("diff2", 0.25),
        _distinct_family("diff3", 19 / 24 - LOG2),
    )
}


def wright_prefactor(params: AsymptoticParams) -> float:
    """Constant c with main term = c * n^((2B - 2beta - 3)/4) * e^{2 sqrt(A n)}."""
    p = params
    return p.K * p.alpha0 * math.sqrt(p.A) ** (p.beta - p.B + 0.5) / (2 * math.sqrt(math.pi))


def log_wright_main(params: AsymptoticParams, n: int) -> tuple[float, int]:
    """(log |main term|, sign) at n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    c = wright_prefactor(params)
    if c == 0:
        return -math.inf, 0
    expo = (2 * params.B - 2 * params.beta - 3) / 4
    log_mag = math.log(abs(c)) + 2 * math.sqrt(params.A * n) + expo * math.log(n)
    return log_mag, 1 if c > 0 else -1


def wright_main(params: AsymptoticParams | str, n: int) -> float:
    if isinstance(params, str):
        params = PRESETS[params]
    log_mag, sign = log_wright_main(params, n)
    if log_mag > LOG_FLOAT_MAX:
        raise OverflowError("main term exceeds the float range; use log_wright_main")
    return sign * math.exp(log_mag)


def log_ratio_to_main(params: AsymptoticParams | str, n: int, exact: int) -> float:
    """log(exact / main term) for a positive exact coefficient, safe for huge exact values."""
    if isinstance(params, str):
        params = PRESETS[params]
    if exact <= 0:
        raise ValueError("exact value must be positive")
    log_mag, sign = log_wright_main(params, n)
    if sign <= 0:
        raise ValueError("main term is not positive")
    return _log_int(exact) - log_mag


def _log_int(v: int) -> float:
    bits = v.bit_length()
    if bits < 1000:
        return math.log(v)
    shift = bits - 64
    return math.log(v >> shift) + shift * LOG2


# -- Laurent-limit spot checks ------------------------------------------------------

LAURENT_NAMES = ("Lo2", "Ld2", "Lo3", "Rd3", "LambertSum")


def _one_minus_q_pow(k: int, z: float) -> float:
    """1 - e^{-kz} without cancellation."""
    return -math.expm1(-k * z)


def laurent_limit(name: str, z: float) -> float:
    """z * L(e^{-z}); tends to the leading Laurent coefficient as z -> 0+."""
    if not 0 < z <= 1:
        raise ValueError("z must lie in (0, 1]")
    q = math.exp(-z)
    if name == "Lo2":
        val = q ** 2 * (1 + q + q ** 3) / _one_minus_q_pow(4, z)
    elif name == "Ld2":
        val = q ** 2 / _one_minus_q_pow(2, z)
    elif name == "Lo3":
        val = (q ** 3 * (1 + q ** 3) / ((1 + q) * _one_minus_q_pow(4, z))
               + q ** 6 / _one_minus_q_pow(4, z) + q ** 3 / _one_minus_q_pow(6, z))
    elif name == "Rd3":
        val = -q ** 2 / (_one_minus_q_pow(4, z) * (1 + q)) - q / (1 + q)
    elif name == "LambertSum":
        # terms fall below 1e-18 relative once n z > 42
        n = np.arange(1, int(42 / z) + 2, dtype=np.float64)
        e = np.exp(-n * z)
        val = float(np.sum(e / (1 + e)))
    else:
        raise ValueError(f"unknown function {name!r}; expected one of {LAURENT_NAMES}")
    return z * val


LAURENT_LIMITS = {"Lo2": 0.75, "Ld2": 0.5, "Lo3": 2 / 3, "Rd3": -0.125, "LambertSum": LOG2}
