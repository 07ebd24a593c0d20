"""Effective thresholds for linear inequalities in q(n) and rho(n, m), and exhaustive checks below them.

An inequality sum_k alpha_k rho(n + mu_k, m) <= sum_l beta_l rho(n + nu_l, m)
holds for n > N(A, B, C; eps, L), where eps is the relative surplus of the
right-hand weights and L bounds the largest left shift. Below N every n is
checked with exact integers.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from hookbias import analytic

DEFAULT_CAP = 10_000
N_FLOOR = 26.0
_NB_CONST = 910787328 / 10000


@dataclass(frozen=True)
class InequalitySpec:
    """sum(a * rho(n + s, m) for a, s in lhs) <= sum(b * rho(n + s, m) for b, s in rhs)."""

    lhs: tuple[tuple[Fraction, int], ...]
    rhs: tuple[tuple[Fraction, int], ...]
    m: int = 1

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple((Fraction(a), int(s)) for a, s in self.lhs))
        object.__setattr__(self, "rhs", tuple((Fraction(b), int(s)) for b, s in self.rhs))
        if self.m < 1:
            raise ValueError("m must be >= 1")
        for side, terms in (("lhs", self.lhs), ("rhs", self.rhs)):
            if not terms:
                raise ValueError(f"{side} must have at least one term")
            shifts = [s for _, s in terms]
            if any(c <= 0 for c, _ in terms):
                raise ValueError(f"{side} weights must be positive")
            if shifts[0] < 0 or any(x >= y for x, y in zip(shifts, shifts[1:])):
                raise ValueError(f"{side} shifts must be non-negative and strictly increasing")
        if self.alpha_sum >= self.beta_sum:
            raise ValueError("left-hand weights must sum to less than right-hand weights")

    @property
    def alpha_sum(self) -> Fraction:
        return sum((a for a, _ in self.lhs), Fraction(0))

    @property
    def beta_sum(self) -> Fraction:
        return sum((b for b, _ in self.rhs), Fraction(0))

    @property
    def epsilon(self) -> Fraction:
        return (self.beta_sum - self.alpha_sum) / self.alpha_sum

    @property
    def L(self) -> int:
        return self.lhs[-1][1] + self.m * (self.m - 1) // 2

    @property
    def max_shift(self) -> int:
        return max(self.lhs[-1][1], self.rhs[-1][1])

    def to_dict(self) -> dict:
        return {
            "lhs": [[str(a), s] for a, s in self.lhs],
            "rhs": [[str(b), s] for b, s in self.rhs],
            "m": self.m,
        }

    @classmethod
    def from_dict(cls, d: dict) -> InequalitySpec:
        return cls(tuple((Fraction(a), s) for a, s in d["lhs"]),
                   tuple((Fraction(b), s) for b, s in d["rhs"]), int(d["m"]))


def cancel(spec: InequalitySpec) -> InequalitySpec:
    """Remove the common weight at every shift present on both sides.

    The inequality is unchanged for every n; eps can only grow and L only shrink.
    Raises ValueError when the left side cancels completely (the inequality is then trivial).
    """
    left = dict((s, a) for a, s in spec.lhs)
    right = dict((s, b) for b, s in spec.rhs)
    for s in set(left) & set(right):
        common = min(left[s], right[s])
        left[s] -= common
        right[s] -= common
    lhs = tuple((a, s) for s, a in sorted(left.items()) if a > 0)
    rhs = tuple((b, s) for s, b in sorted(right.items()) if b > 0)
    if not lhs:
        raise ValueError("left-hand side cancels completely; the inequality holds trivially")
    return InequalitySpec(lhs, rhs, spec.m)


def paper_t3_spec() -> InequalitySpec:
    """The rho(n, 9) inequality equivalent to non-negativity of (-q^9;q)_inf (f - g) past q^75."""
    from hookbias.genfun import F_COEFFS, F_LOW, G_TERMS

    f = {j: F_COEFFS[24 + j - F_LOW] for j in range(1, 28)}     # f(q) = q^24 sum f_j q^j
    g = {j: G_TERMS.get(8 + j, 0) for j in range(1, 15)}        # g(q) = q^8 sum g_j q^j
    lhs = [(Fraction(g[15 - k]), k + 28) for k in range(1, 15) if g[15 - k]]
    rhs = [(Fraction(f[28 - l]), l - 1) for l in range(1, 28) if f[28 - l]]
    return InequalitySpec(tuple(lhs), tuple(rhs), m=9)


PAPER_T3_ABC = (180.0, 7.0, 471177.0)


# -- thresholds -----------------------------------------------------------------


@dataclass(frozen=True)
class Thresholds:
    N_A: float
    N_B: float
    N_C: float
    N_D: float
    N: float


def _check_abc(A: float, B: float, C: float) -> float:
    if min(A, B, C) <= 0:
        raise ValueError("A, B, C must be positive")
    # exact test: float rounding can push e.g. (2, 3, 6) just below 1
    exact = 1 / Fraction(A) + 1 / Fraction(B) + 1 / Fraction(C)
    if exact >= 1:
        raise ValueError(f"need 1/A + 1/B + 1/C < 1, got {float(exact)}")
    return 1 / A + 1 / B + 1 / C


def thresholds(A: float, B: float, C: float, eps: float, L: int) -> Thresholds:
    """The four closed-form thresholds and N = max(N_A, N_B, N_C, N_D, 26)."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    if L < 1:
        raise ValueError("L must be >= 1")
    D = _check_abc(A, B, C)
    eps = float(eps)
    shift = L + 1 / 24
    lr = math.log((2 + eps) / eps)
    n_a = math.exp(math.log(12) + 2 * math.log(A) + 2 * lr - 2 * math.log(math.pi)) - shift
    n_b = math.exp(math.log(_NB_CONST) + 4 * math.log(B) + 4 * lr - 8 * math.log(math.pi)) - shift
    n_c = 3 / (4 * math.pi ** 2) * math.log(2 * C * (2 + eps) * (1 + L) / eps) ** 2 - 1 / 24
    gap = math.log((1 + eps) / (1 + D * eps))
    if gap <= 0:
        raise ValueError("1/A + 1/B + 1/C is too close to 1 for a finite N_D")
    n_d = L * L * math.pi ** 2 / (12 * gap ** 2) - 1 / 24
    return Thresholds(n_a, n_b, n_c, n_d, max(n_a, n_b, n_c, n_d, N_FLOOR))


@dataclass(frozen=True)
class OptimizeResult:
    A: float
    B: float
    C: float
    N: float
    evaluations: int


def optimize_abc(eps: float, L: int, budget: int = 100_000) -> OptimizeResult:
    """Deterministic search for (A, B, C) minimising N.

    A log-spaced grid over [1.05, 1e7]^3 uses half the budget; coordinate
    descent with shrinking multiplicative steps spends the rest.
    """
    if budget < 8:
        raise ValueError("budget must be at least 8")
    lo, hi = math.log(1.05), math.log(1e7)
    evals = 0

    def score(a: float, b: float, c: float) -> float:
        nonlocal evals
        evals += 1
        try:
            return thresholds(a, b, c, eps, L).N
        except ValueError:
            return math.inf

    g = max(2, int((budget // 2) ** (1 / 3)))
    axis = [math.exp(lo + (hi - lo) * i / (g - 1)) for i in range(g)]
    best = (math.inf, 4.0, 4.0, 4.0)
    for a in axis:
        for b in axis:
            for c in axis:
                s = score(a, b, c)
                if s < best[0]:
                    best = (s, a, b, c)
    if best[0] == math.inf:
        best = (score(4.0, 4.0, 4.0), 4.0, 4.0, 4.0)
    step = (hi - lo) / (g - 1)
    while evals + 6 <= budget and step > 1e-12:
        improved = False
        for i in range(3):
            for sgn in (1, -1):
                cand = list(best[1:])
                cand[i] = min(max(cand[i] * math.exp(sgn * step), 1.0 + 1e-12), 1e7)
                s = score(*cand)
                if s < best[0]:
                    best = (s, *cand)
                    improved = True
        if not improved:
            step /= 2
    return OptimizeResult(best[1], best[2], best[3], best[0], evals)


# -- certificates -----------------------------------------------------------------


@dataclass
class Certificate:
    spec: InequalitySpec
    epsilon: float
    L: int
    abc: tuple[float, float, float]
    thresholds: Thresholds
    N: float
    verified_from: int
    verified_to: int
    violations: list[int] = field(default_factory=list)
    complete: bool = False

    @property
    def ok_above(self) -> int | None:
        """Smallest n from which the inequality is established (None if the range check is capped)."""
        if not self.complete:
            return None
        return max(self.violations) + 1 if self.violations else self.verified_from

    def to_dict(self) -> dict:
        from hookbias import __version__

        return {
            "tool": "hookbias",
            "version": __version__,
            "spec": self.spec.to_dict(),
            "epsilon": self.epsilon,
            "L": self.L,
            "abc": list(self.abc),
            "thresholds": asdict(self.thresholds),
            "N": self.N,
            "verified_from": self.verified_from,
            "verified_to": self.verified_to,
            "complete": self.complete,
            "violations": self.violations,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> Certificate:
        return cls(
            spec=InequalitySpec.from_dict(d["spec"]),
            epsilon=float(d["epsilon"]),
            L=int(d["L"]),
            abc=tuple(d["abc"]),
            thresholds=Thresholds(**d["thresholds"]),
            N=float(d["N"]),
            verified_from=int(d["verified_from"]),
            verified_to=int(d["verified_to"]),
            violations=list(d["violations"]),
            complete=bool(d["complete"]),
        )


def _integer_weights(terms: Sequence[tuple[Fraction, int]], denom: int) -> list[tuple[int, int]]:
    return [(int(a * denom), s) for a, s in terms]


def _check_range(args) -> list[int]:
    lhs, rhs, values, start, stop = args
    bad = []
    for n in range(start, stop + 1):
        left = sum(a * values[n + s] for a, s in lhs)
        right = sum(b * values[n + s] for b, s in rhs)
        if left > right:
            bad.append(n)
    return bad


def violations(spec: InequalitySpec, start: int, stop: int, *, threads: int = 1,
               cache_dir=None) -> list[int]:
    """Every n in [start, stop] where the inequality fails, by exact integer arithmetic."""
    if stop < start:
        return []
    denom = math.lcm(*(c.denominator for c, _ in spec.lhs + spec.rhs))
    lhs = _integer_weights(spec.lhs, denom)
    rhs = _integer_weights(spec.rhs, denom)
    table = analytic.distinct_counts(spec.m, stop + spec.max_shift, cache_dir=cache_dir).values
    if threads <= 1:
        return _check_range((lhs, rhs, table, start, stop))
    size = -(-(stop - start + 1) // threads)
    chunks = [(lhs, rhs, table, a, min(a + size - 1, stop)) for a in range(start, stop + 1, size)]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return sorted(n for part in ex.map(_check_range, chunks) for n in part)


def certify(spec: InequalitySpec, abc: Iterable[float] | None = None, *, verified_from: int = 0,
            long: bool = False, cap: int = DEFAULT_CAP, threads: int = 1, budget: int = 100_000,
            cache_dir=None) -> Certificate:
    """Threshold N for spec plus an exhaustive exact check of [verified_from, floor(N)].

    Without ``long`` the check stops at ``cap``; the certificate then reports
    ``complete = False``.
    """
    eps = float(spec.epsilon)
    L = spec.L
    if abc is None:
        res = optimize_abc(eps, L, budget)
        A, B, C = res.A, res.B, res.C
    else:
        A, B, C = (float(x) for x in abc)
    th = thresholds(A, B, C, eps, L)
    top = math.floor(th.N)
    stop = top if long else min(top, cap)
    bad = violations(spec, verified_from, stop, threads=threads, cache_dir=cache_dir)
    return Certificate(spec, eps, L, (A, B, C), th, th.N, verified_from, stop, bad, complete=stop == top)
