"""Truncated formal power series in q with exact coefficients.

A :class:`QSeries` holds the coefficients of q^0 .. q^order. Coefficients are
Python ints (integer mode) or :class:`fractions.Fraction` (rational mode).
Every operation requires both operands to share the same truncation order.

Large integer products use Kronecker substitution: both coefficient vectors
are packed into single big integers, multiplied once, and unpacked. Sparse
operands (a handful of nonzero terms) take a shifted-add path instead.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

Coeff = Union[int, Fraction]

_SPARSE_LIMIT = 48
_SCHOOLBOOK_LIMIT = 40


class OrderMismatchError(ValueError):
    pass


class NotInvertibleError(ZeroDivisionError):
    pass


class DivergentProductError(ValueError):
    pass


class QSeries:
    """Immutable truncated power series sum_{k<=order} c_k q^k."""

    __slots__ = ("coeffs", "order", "rational")

    def __init__(self, coeffs: Iterable[Coeff], order: int | None = None, rational: bool | None = None):
        cs = list(coeffs)
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        elif len(cs) < order + 1:
            cs.extend([0] * (order + 1 - len(cs)))
        if rational is None:
            rational = any(isinstance(c, Fraction) for c in cs)
        if rational:
            cs = [Fraction(c) for c in cs]
        else:
            for c in cs:
                if not isinstance(c, (int, np.integer)):
                    raise TypeError(f"integer-mode coefficient expected, got {type(c).__name__}")
            cs = [int(c) for c in cs]
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "rational", rational)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def one(cls, order: int) -> QSeries:
        return cls([1], order)

    @classmethod
    def zero(cls, order: int) -> QSeries:
        return cls([], order)

    @classmethod
    def from_terms(cls, terms: Mapping[int, Coeff], order: int) -> QSeries:
        """Build from a sparse {exponent: coefficient} map, dropping exponents above order."""
        cs: list[Coeff] = [0] * (order + 1)
        for e, c in terms.items():
            if e < 0:
                raise ValueError("negative exponent")
            if e <= order:
                cs[e] += c
        return cls(cs, order)

    # -- basic protocol -------------------------------------------------------

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, QSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        shown = [f"{c}*q^{k}" for k, c in enumerate(self.coeffs) if c][:8]
        body = " + ".join(shown) if shown else "0"
        if sum(1 for c in self.coeffs if c) > 8:
            body += " + ..."
        return f"QSeries({body} + O(q^{self.order + 1}))"

    def __add__(self, other: QSeries) -> QSeries:
        return qs_add(self, other)

    def __sub__(self, other: QSeries) -> QSeries:
        return qs_sub(self, other)

    def __mul__(self, other) -> QSeries:
        if isinstance(other, QSeries):
            return qs_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self) -> QSeries:
        return QSeries([-c for c in self.coeffs], self.order, self.rational)

    # -- derived operations ---------------------------------------------------

    def scale(self, c: Coeff) -> QSeries:
        return QSeries([c * x for x in self.coeffs], self.order)

    def shift(self, k: int) -> QSeries:
        """Multiply by q^k (k >= 0), keeping the order."""
        if k < 0:
            raise ValueError("shift must be non-negative")
        if k > self.order:
            return QSeries([], self.order, self.rational)
        return QSeries([0] * k + list(self.coeffs[: self.order + 1 - k]), self.order, self.rational)

    def truncate(self, order: int) -> QSeries:
        if order > self.order:
            raise OrderMismatchError(f"cannot extend order {self.order} to {order}")
        return QSeries(self.coeffs[: order + 1], order, self.rational)

    def to_rational(self) -> QSeries:
        return QSeries(self.coeffs, self.order, rational=True)

    def nonzero_terms(self) -> dict[int, Coeff]:
        return {k: c for k, c in enumerate(self.coeffs) if c}

    def negative_exponents(self) -> list[int]:
        return [k for k, c in enumerate(self.coeffs) if c < 0]


def _check_orders(a: QSeries, b: QSeries) -> None:
    if a.order != b.order:
        raise OrderMismatchError(f"orders differ: {a.order} vs {b.order}")


def qs_add(a: QSeries, b: QSeries) -> QSeries:
    _check_orders(a, b)
    return QSeries([x + y for x, y in zip(a.coeffs, b.coeffs)], a.order)


def qs_sub(a: QSeries, b: QSeries) -> QSeries:
    _check_orders(a, b)
    return QSeries([x - y for x, y in zip(a.coeffs, b.coeffs)], a.order)


def qs_sum(terms: Sequence[QSeries]) -> QSeries:
    if not terms:
        raise ValueError("empty sum")
    acc = terms[0]
    for t in terms[1:]:
        acc = qs_add(acc, t)
    return acc


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    _check_orders(a, b)
    n = a.order
    if a.rational or b.rational:
        return QSeries(_schoolbook(a.coeffs, b.coeffs, n), n, rational=True)
    nz_a = [(k, c) for k, c in enumerate(a.coeffs) if c]
    nz_b = [(k, c) for k, c in enumerate(b.coeffs) if c]
    if not nz_a or not nz_b:
        return QSeries.zero(n)
    if len(nz_a) > len(nz_b):
        a, b, nz_a, nz_b = b, a, nz_b, nz_a
    if len(nz_a) <= _SPARSE_LIMIT:
        return QSeries(_sparse_mul(nz_a, b.coeffs, n), n)
    if n < _SCHOOLBOOK_LIMIT:
        return QSeries(_schoolbook(a.coeffs, b.coeffs, n), n)
    return QSeries(_kronecker_mul(a.coeffs, b.coeffs, n), n)


def _schoolbook(a: Sequence[Coeff], b: Sequence[Coeff], n: int) -> list[Coeff]:
    out: list[Coeff] = [0] * (n + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(n + 1 - i):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


def _sparse_mul(nz: list[tuple[int, int]], dense: Sequence[int], n: int) -> list[int]:
    out = np.zeros(n + 1, dtype=object)
    src = np.array(dense, dtype=object)
    for k, c in nz:
        if c == 1:
            out[k:] += src[: n + 1 - k]
        elif c == -1:
            out[k:] -= src[: n + 1 - k]
        else:
            out[k:] += c * src[: n + 1 - k]
    return [int(x) for x in out]


def _pack(vals: Sequence[int], width: int) -> int:
    return int.from_bytes(b"".join(v.to_bytes(width, "little") for v in vals), "little")


def _unpack(x: int, width: int, count: int) -> list[int]:
    raw = x.to_bytes(width * count, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") for i in range(count)]


def _kronecker_mul(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    a = a[: n + 1]
    b = b[: n + 1]
    bits = max(abs(x).bit_length() for x in a) + max(abs(x).bit_length() for x in b)
    width = (bits + (n + 1).bit_length() + 8) // 8 + 1
    a_pos = [x if x > 0 else 0 for x in a]
    a_neg = [-x if x < 0 else 0 for x in a]
    b_pos = [x if x > 0 else 0 for x in b]
    b_neg = [-x if x < 0 else 0 for x in b]
    mask = (1 << (8 * width * (n + 1))) - 1

    def prod(u, v):
        if not any(u) or not any(v):
            return None
        return _unpack((_pack(u, width) * _pack(v, width)) & mask, width, n + 1)

    out = [0] * (n + 1)
    for u, v, sgn in ((a_pos, b_pos, 1), (a_neg, b_neg, 1), (a_pos, b_neg, -1), (a_neg, b_pos, -1)):
        r = prod(u, v)
        if r is None:
            continue
        if sgn > 0:
            out = [o + x for o, x in zip(out, r)]
        else:
            out = [o - x for o, x in zip(out, r)]
    return out


def qs_inv(a: QSeries) -> QSeries:
    """Multiplicative inverse; the constant term must be +-1 (or nonzero in rational mode)."""
    a0 = a.coeffs[0]
    n = a.order
    if a.rational:
        if a0 == 0:
            raise NotInvertibleError("constant term is zero")
        inv0 = 1 / a0
        out: list[Coeff] = [Fraction(0)] * (n + 1)
        out[0] = inv0
        nz = [(k, c) for k, c in enumerate(a.coeffs) if c and k]
        for m in range(1, n + 1):
            s = Fraction(0)
            for k, c in nz:
                if k > m:
                    break
                s += c * out[m - k]
            out[m] = -s * inv0
        return QSeries(out, n, rational=True)
    if a0 not in (1, -1):
        raise NotInvertibleError(f"constant term {a0} is not a unit in Z[[q]]")
    nz = [(k, c) for k, c in enumerate(a.coeffs) if c and k]
    if len(nz) <= _SPARSE_LIMIT:
        out_i = [0] * (n + 1)
        out_i[0] = a0
        for m in range(1, n + 1):
            s = 0
            for k, c in nz:
                if k > m:
                    break
                s += c * out_i[m - k]
            out_i[m] = -s * a0
        return QSeries(out_i, n)
    # Newton iteration x <- x (2 - a x), doubling the correct prefix each round
    x = QSeries([a0], 0)
    prec = 0
    while prec < n:
        prec = min(2 * prec + 1, n)
        ap = a.truncate(prec)
        xp = QSeries(x.coeffs, prec)
        two = QSeries([2], prec)
        x = qs_mul(xp, qs_sub(two, qs_mul(ap, xp)))
    return x


def qs_pow(a: QSeries, e: int) -> QSeries:
    """Integer power; negative exponents go through qs_inv."""
    if e < 0:
        return qs_pow(qs_inv(a), -e)
    result = QSeries.one(a.order) if not a.rational else QSeries([Fraction(1)], a.order)
    base = a
    while e:
        if e & 1:
            result = qs_mul(result, base)
        e >>= 1
        if e:
            base = qs_mul(base, base)
    return result


# -- builders -----------------------------------------------------------------


def polynomial(terms: Mapping[int, int] | Sequence[int], order: int) -> QSeries:
    if isinstance(terms, Mapping):
        return QSeries.from_terms(terms, order)
    return QSeries.from_terms(dict(enumerate(terms)), order)


def monomial(k: int, order: int, coeff: int = 1) -> QSeries:
    return QSeries.from_terms({k: coeff}, order)


def _validate_order(order: int) -> None:
    if order < 0:
        raise ValueError("order must be non-negative")


@lru_cache(maxsize=256)
def pochhammer(sign: int, j: int, step: int, count: float | int, order: int) -> QSeries:
    """(sign*q^j; q^step)_count truncated at order.

    Each factor is 1 - sign*q^(j + step*i). ``count`` may be ``math.inf``.
    Factors whose exponent exceeds order are skipped.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    _validate_order(order)
    if step < 1:
        raise ValueError("step must be positive")
    infinite = count == float("inf")
    if infinite and j == 0:
        raise DivergentProductError("(a; q)_inf with a = +-1 has a constant factor and does not converge formally")
    if not infinite and (count < 0 or int(count) != count):
        raise ValueError("count must be a non-negative integer or inf")
    arr = np.zeros(order + 1, dtype=object)
    arr[0] = 1
    if not infinite:
        # finite products may include a constant factor (j = 0)
        exps = [j + step * i for i in range(int(count))]
    else:
        exps = range(j, order + 1, step)
    c = -sign
    for e in exps:
        if e == 0:
            arr = arr * (1 + c)
            continue
        if e > order:
            if infinite:
                break
            continue
        if c == 1:
            arr[e:] = arr[e:] + arr[: order + 1 - e]
        else:
            arr[e:] = arr[e:] - arr[: order + 1 - e]
    return QSeries([int(x) for x in arr], order)


def arithmetic(start: int, step: int, order: int) -> QSeries:
    """sum_{k>=0} q^(start + step*k), i.e. q^start / (1 - q^step)."""
    _validate_order(order)
    if step < 1 or start < 0:
        raise ValueError("need step >= 1 and start >= 0")
    arr = [0] * (order + 1)
    for e in range(start, order + 1, step):
        arr[e] = 1
    return QSeries(arr, order)


def geometric(j: int, order: int) -> QSeries:
    """sum_{k>=1} q^(j*k) = q^j / (1 - q^j)."""
    if j < 1:
        raise ValueError("j must be >= 1")
    return arithmetic(j, j, order)


def lambert(a: int, m0: int, order: int) -> QSeries:
    """sum_{m>=m0} q^(a*m) / (1 + q^m), expanded exactly as alternating geometric series."""
    _validate_order(order)
    if a < 1 or m0 < 1:
        raise ValueError("need a >= 1 and m0 >= 1")
    arr = np.zeros(order + 1, dtype=np.int64)
    m = m0
    while a * m <= order:
        arr[a * m:: 2 * m] += 1
        arr[(a + 1) * m:: 2 * m] -= 1
        m += 1
    return QSeries([int(x) for x in arr], order)
