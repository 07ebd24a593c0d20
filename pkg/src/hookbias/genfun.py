"""Closed-form generating functions for hook and gap totals, plus identity checkers.

Every named series is assembled from the exact builders in :mod:`hookbias.qseries`.
Notation used in comments: P = (-q;q)_inf and T_s = (-q^s;q)_inf.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from hookbias import partitions
from hookbias.qseries import (
    QSeries,
    arithmetic,
    lambert,
    monomial,
    pochhammer,
    polynomial,
    qs_inv,
    qs_mul,
    qs_pow,
    qs_sum,
)

INF = float("inf")

# Polynomials appearing in the q^76-onward positivity argument for the t = 3 bias.
# F_COEFFS[k] is the coefficient of q^(25 + k); G_TERMS and P_TERMS map exponent -> coefficient.
F_COEFFS = (1, 1, 1, 3, 5, 3, 6, 7, 5, 8, 7, 7, 9, 8, 7, 7, 6, 6, 5, 4, 3, 3, 2, 1, 1, 1, 1)
F_LOW = 25
G_TERMS = {9: 1, 12: 1, 13: 1, 14: 1, 15: 2, 16: 1, 17: 1, 18: 2, 19: 1, 20: 2, 21: 2, 22: 1}
P_TERMS = {
    9: 1, 12: 1, 13: 1, 14: 1, 15: 2, 16: 2, 17: 2, 18: 3, 19: 2, 20: 4, 21: 5, 22: 4,
    23: 4, 24: 5, 25: 5, 26: 5, 27: 6, 28: 5, 29: 4, 30: 6, 31: 4, 32: 3, 33: 5, 34: 2,
    35: 3, 36: 3, 38: 1, 39: 1,
}


@dataclass(frozen=True)
class NamedSeries:
    name: str
    series: QSeries
    description: str

    def __getitem__(self, n: int):
        return self.series[n]

    @property
    def order(self) -> int:
        return self.series.order


@dataclass
class CheckReport:
    """Outcome of a coefficientwise verification.

    ``failures`` lists (sub-check, exponent, detail) for every offending coefficient.
    """

    name: str
    order: int
    passed: bool = True
    failures: list[tuple[str, int, str]] = field(default_factory=list)
    notes: dict[str, object] = field(default_factory=dict)

    def fail(self, check: str, n: int, detail: str) -> None:
        self.passed = False
        self.failures.append((check, n, detail))

    def compare(self, check: str, lhs: QSeries, rhs: QSeries) -> None:
        for n, (x, y) in enumerate(zip(lhs, rhs)):
            if x != y:
                self.fail(check, n, f"{x} != {y}")


# -- small builders -----------------------------------------------------------


def _P(order: int) -> QSeries:
    return pochhammer(-1, 1, 1, INF, order)


def _T(s: int, order: int) -> QSeries:
    return pochhammer(-1, s, 1, INF, order)


def _geo_inv(k: int, order: int) -> QSeries:
    """1 / (1 - q^k)."""
    return arithmetic(0, k, order)


def _poly(terms: dict[int, int], order: int) -> QSeries:
    return polynomial(terms, order)


def _mul(*factors: QSeries) -> QSeries:
    out = factors[0]
    for f in factors[1:]:
        out = qs_mul(out, f)
    return out


def _times_one_plus(s: QSeries, k: int) -> QSeries:
    """s * (1 + q^k) by shifted add."""
    return s + s.shift(k)


def tail_products(s_min: int, order: int) -> dict[int, QSeries]:
    """T_s for every s >= s_min up to order + 1, via T_s = (1 + q^s) T_{s+1} from T_{order+1} = 1.

    Keys s > order + 1 are absent; those products are 1 at this order.
    """
    top = max(order + 1, s_min)
    out = {s: QSeries.one(order) for s in range(order + 1, top + 1)}
    for s in range(order, s_min - 1, -1):
        out[s] = _times_one_plus(out[s + 1], s)
    return out


def fpoly(order: int) -> QSeries:
    return _poly({F_LOW + k: c for k, c in enumerate(F_COEFFS)}, order)


def gpoly(order: int) -> QSeries:
    return _poly(G_TERMS, order)


def ppoly(order: int) -> QSeries:
    return _poly(P_TERMS, order)


# -- named series ---------------------------------------------------------------


def _a2(N: int) -> QSeries:
    inner = monomial(2, N) + _mul(monomial(3, N), _geo_inv(2, N)) + _mul(monomial(6, N), _geo_inv(4, N))
    return qs_mul(qs_inv(pochhammer(1, 1, 2, INF, N)), inner)


def _b2(N: int) -> QSeries:
    return _mul(monomial(2, N), _geo_inv(1, N), _T(2, N))


def _diff2(N: int) -> QSeries:
    return _mul(_poly({3: 1, 6: 1}, N), _geo_inv(2, N), _T(3, N))


def _a3(N: int) -> QSeries:
    first = _mul(_T(3, N), _poly({3: 1, 6: 1}, N), _geo_inv(2, N))
    second = _mul(_P(N), _mul(monomial(6, N), _geo_inv(4, N)) + _mul(monomial(3, N), _geo_inv(6, N)))
    return first + second


def _b3(N: int) -> QSeries:
    return _mul(_P(N), lambert(1, 2, N)) - _mul(monomial(2, N), _geo_inv(2, N), _T(3, N))


def _Aq(N: int) -> QSeries:
    head = lambert(4, 1, N) - lambert(4, 4, N)
    return _mul(_P(N), head) - _mul(_T(4, N), _poly({4: 1, 5: 1, 7: 2, 8: 1}, N))


def _Bq(N: int) -> QSeries:
    T9 = _T(9, N)
    tail = (_mul(_poly({41: 1, 43: 1, 44: 1, 46: 1}, N), _geo_inv(3, N))
            + _mul(_poly({44: 1, 47: 1, 49: 1, 52: 1}, N), _geo_inv(5, N)))
    return _mul(_P(N), lambert(6, 4, N)) + _mul(T9, tail) + _mul(T9, fpoly(N) - gpoly(N))


def _H1(N: int) -> QSeries:
    T = tail_products(4, N)
    one = QSeries.one(N)
    terms = [monomial(6, N), _mul(monomial(10, N), T.get(4, one)), _mul(monomial(12, N), T.get(5, one))]
    for s in range(5, N // 2 + 1):
        terms.append(T[s].shift(2 * s))
    for s in range(6, N // 2 + 1):
        terms.append(qs_mul(T[s], _poly({2 * s + 1: 1, 2 * s + 2: 1, 3 * s: 1}, N)))
    return qs_sum(terms)


def _H2(N: int) -> QSeries:
    return _mul(_P(N), monomial(4, N), _geo_inv(4, N)) - _mul(_T(3, N), monomial(2, N), _geo_inv(2, N))


def _ell1diff(N: int) -> QSeries:
    inner = lambert(1, 1, N) - _mul(monomial(2, N), _geo_inv(2, N)) - monomial(1, N)
    return qs_mul(_P(N), inner)


def _w(N: int) -> QSeries:
    return _mul(_poly({0: 1, 3: 1}, N), _geo_inv(4, N), qs_inv(pochhammer(1, 3, 2, INF, N)),
                monomial(3, N), _geo_inv(2, N))


def _a1(N: int) -> QSeries:
    return _mul(_P(N), monomial(1, N), _geo_inv(2, N))


def _b1(N: int) -> QSeries:
    return qs_mul(_P(N), lambert(1, 1, N))


def _gaps1_odd(N: int) -> QSeries:
    return qs_mul(_P(N), monomial(1, N))


def _gaps1_distinct(N: int) -> QSeries:
    return _b1(N) - _b2(N)


def _gaps2_odd(N: int) -> QSeries:
    return _mul(_P(N), monomial(4, N), _geo_inv(4, N))


def _gaps2_distinct(N: int) -> QSeries:
    return _mul(_T(3, N), monomial(2, N), _geo_inv(2, N))


_BUILDERS: dict[str, tuple[Callable[[int], QSeries], str]] = {
    "a2": (_a2, "total hooks of length 2 over odd partitions"),
    "b2": (_b2, "total hooks of length 2 over distinct partitions"),
    "a3": (_a3, "total hooks of length 3 over odd partitions"),
    "b3": (_b3, "total hooks of length 3 over distinct partitions"),
    "diff2": (_diff2, "a2 - b2 in closed form"),
    "Aq": (_Aq, "first half of the a3 - b3 split, non-negative past q^7"),
    "Bq": (_Bq, "second half of the a3 - b3 split"),
    "fpoly": (fpoly, "degree-51 polynomial of the shifted rho inequality, right-hand weights"),
    "gpoly": (gpoly, "degree-22 polynomial of the shifted rho inequality, left-hand weights"),
    "ppoly": (ppoly, "degree-39 polynomial linking the two forms of the B(q) tail"),
    "H1": (_H1, "positive part of the gaps-of-size-1 excess"),
    "H2": (_H2, "gaps-of-size-2 excess, odd minus distinct"),
    "ell1diff": (_ell1diff, "gaps-of-size-1 excess, distinct minus odd"),
    "w": (_w, "different part sizes > 1 over odd partitions with m(1) = 0, 3 mod 4"),
    "a1": (_a1, "total hooks of length 1 over odd partitions (= distinct part sizes)"),
    "b1": (_b1, "total hooks of length 1 over distinct partitions (= number of parts)"),
    "gaps1_odd": (_gaps1_odd, "total gaps of size 1 over odd partitions"),
    "gaps1_distinct": (_gaps1_distinct, "total gaps of size 1 over distinct partitions"),
    "gaps2_odd": (_gaps2_odd, "total gaps of size 2 over odd partitions"),
    "gaps2_distinct": (_gaps2_distinct, "total gaps of size 2 over distinct partitions"),
}
NAMES = tuple(_BUILDERS)


@lru_cache(maxsize=128)
def build(name: str, order: int) -> NamedSeries:
    """Exact coefficients of a named generating function through q^order."""
    if order < 0:
        raise ValueError("order must be non-negative")
    try:
        fn, desc = _BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown series {name!r}; expected one of {NAMES}") from None
    return NamedSeries(name, fn(order), desc)


# -- verifications ----------------------------------------------------------------


def check_bisection(order: int) -> CheckReport:
    """Verify the A(q) + B(q) split of a3 - b3 and the positivity facts it rests on."""
    if order < 76:
        raise ValueError("order must be at least 76")
    N = order
    rep = CheckReport("bisection", N)
    A, B = build("Aq", N).series, build("Bq", N).series
    diff = build("a3", N).series - build("b3", N).series
    rep.compare("split", A + B, diff)
    negA = A.negative_exponents()
    rep.notes["A_negative"] = negA
    for n in negA:
        if n not in (5, 7):
            rep.fail("A_nonneg", n, f"coefficient {A[n]}")
    tail = qs_mul(_T(9, N), fpoly(N) - gpoly(N))
    rep.notes["fg_negative"] = tail.negative_exponents()
    for n in rep.notes["fg_negative"]:
        if n >= 76:
            rep.fail("fg_tail_nonneg", n, f"coefficient {tail[n]}")
    helper = qs_mul(_T(3, N), _poly({16: 1, 17: 1, 18: 1}, N)) - qs_mul(_T(9, N), ppoly(N))
    rep.compare("helper", helper, tail)
    # moving the m >= 4 Lambert terms from q^{4m} to q^{6m}
    lhs = qs_mul(_P(N), lambert(4, 4, N))
    rhs = (qs_mul(_P(N), lambert(6, 4, N))
           + qs_mul(_T(3, N), _poly({16: 1, 17: 1, 18: 1}, N) + _mul(monomial(19, N), _geo_inv(5, N))))
    rep.compare("lambert_shift", lhs, rhs)
    return rep


def _h_identity_rhs(N: int) -> QSeries:
    """(1 + q^4) * sum_{k>=7} q^k * sum_{j=5}^{k-2} q^j T_{j+1}, summed literally."""
    T = tail_products(6, N)
    inner = QSeries.zero(N)
    outer = QSeries.zero(N)
    for k in range(7, N + 1):
        j = k - 2
        inner = inner + T[j + 1].shift(j)
        outer = outer + inner.shift(k)
    return _times_one_plus(outer, 4)


def check_gap_series(order: int) -> CheckReport:
    """Verify the rewrites behind the two gap-bias theorems and their exceptional sets."""
    if order < 10:
        raise ValueError("order must be at least 10")
    N = order
    rep = CheckReport("gap_series", N)
    ell1 = build("ell1diff", N).series
    direct = build("gaps1_distinct", N).series - build("gaps1_odd", N).series
    rep.compare("ell1_from_totals", ell1, direct)
    alt = qs_mul(_P(N), lambert(3, 1, N) - qs_mul(monomial(2, N), qs_inv(_poly({0: 1, 1: 1}, N))))
    rep.compare("ell1_rewrite", ell1, alt)
    split = _poly({2: -1, 3: 1, 4: -1}, N) + build("H1", N).series + qs_mul(_P(N), lambert(3, 3, N))
    rep.compare("ell1_H1", ell1, split)
    neg1 = {n: ell1[n] for n in ell1.negative_exponents()}
    rep.notes["ell1_negative"] = neg1
    if neg1 != {n: -1 for n in (2, 4) if n <= N}:
        rep.fail("ell1_exceptions", min(neg1, default=-1), f"negative set {neg1}")
    H2 = build("H2", N).series
    direct2 = build("gaps2_odd", N).series - build("gaps2_distinct", N).series
    rep.compare("ell2_from_totals", H2, direct2)
    rep.compare("H_identity", H2 + _poly({2: 1, 6: 1}, N), _h_identity_rhs(N))
    T = tail_products(6, N)
    ksum = qs_sum([QSeries.zero(N)] + [T[k + 1].shift(2 * k) for k in range(5, N // 2 + 1)])
    closed = _mul(monomial(2, N), _geo_inv(1, N), _poly({0: 1, 4: 1}, N), ksum)
    rep.compare("H_closed_form", H2 + _poly({2: 1, 6: 1}, N), closed)
    neg2 = {n: H2[n] for n in H2.negative_exponents()}
    rep.notes["ell2_negative"] = neg2
    if neg2 != {n: -1 for n in (2, 6) if n <= N}:
        rep.fail("ell2_exceptions", min(neg2, default=-1), f"negative set {neg2}")
    return rep


# -- hook-product identities ------------------------------------------------------

IDENTITIES = ("NO", "Han1", "Han2")


def _scaled_product(coeff_of: Callable[[int], int], start: int, step: int, order: int) -> QSeries:
    """prod_{k>=1} (1 + c_k q^(start + step*(k-1))) with integer c_k."""
    arr = [0] * (order + 1)
    arr[0] = 1
    k, e = 1, start
    while e <= order:
        c = coeff_of(k)
        if c:
            for i in range(order, e - 1, -1):
                arr[i] += c * arr[i - e]
        k += 1
        e += step
    return QSeries(arr, order)


def _identity_lhs(weight: Callable[[dict[int, int]], Fraction], order: int) -> QSeries:
    coeffs = []
    for n in range(order + 1):
        total = Fraction(0)
        for lam in partitions.enumerate_partitions("all", n):
            total += weight(partitions.hook_multiset(lam))
        coeffs.append(total)
    return QSeries(coeffs, order, rational=True)


def _identity_sides(which: str, params: dict[str, int], order: int) -> tuple[QSeries, QSeries]:
    N = order
    euler = pochhammer(1, 1, 1, INF, N)  # (x; x)_inf
    if which == "NO":
        z = params["z"]

        def weight(hooks):
            w = Fraction(1)
            for h, mult in hooks.items():
                w *= (1 - Fraction(z, h * h)) ** mult
            return w

        return _identity_lhs(weight, N), qs_pow(euler, z - 1)
    if which == "Han1":
        t, y = params["t"], params["y"]

        def weight(hooks):
            return Fraction(y) ** hooks.get(t, 0)

        num = qs_pow(_scaled_product(lambda k: y - 1, t, t, N), t)
        return _identity_lhs(weight, N), qs_mul(num, qs_inv(euler))
    if which == "Han2":
        t, y, z = params["t"], params["y"], params["z"]

        def weight(hooks):
            w = Fraction(1)
            for h, mult in hooks.items():
                if h % t == 0:
                    w *= (y - Fraction(t * y * z, h * h)) ** mult
            return w

        num = qs_pow(pochhammer(1, t, t, INF, N), t)
        den = qs_pow(_scaled_product(lambda k: -(y ** k), t, t, N), t - z)
        rhs = _mul(num, qs_inv(den), qs_inv(euler))
        return _identity_lhs(weight, N), rhs
    raise ValueError(f"unknown identity {which!r}; expected one of {IDENTITIES}")


_IDENTITY_PARAMS = {"NO": ("z",), "Han1": ("t", "y"), "Han2": ("t", "y", "z")}


def check_identity(which: str, params: dict[str, int], order: int = 15) -> CheckReport:
    """Compare the hook-product sum over all partitions with its infinite-product form.

    The sum side enumerates every partition of n <= order in exact rational
    arithmetic, so order is capped at 20.
    """
    if which not in _IDENTITY_PARAMS:
        raise ValueError(f"unknown identity {which!r}; expected one of {IDENTITIES}")
    missing = [k for k in _IDENTITY_PARAMS[which] if k not in params]
    if missing:
        raise ValueError(f"{which} needs parameters {missing}")
    if not 0 <= order <= 20:
        raise ValueError("order must be in 0..20")
    if "t" in params and params["t"] < 1:
        raise ValueError("t must be positive")
    lhs, rhs = _identity_sides(which, params, order)
    label = which + "(" + ", ".join(f"{k}={params[k]}" for k in _IDENTITY_PARAMS[which]) + ")"
    rep = CheckReport(label, order)
    rep.compare("sum_vs_product", lhs, rhs.to_rational())
    return rep
