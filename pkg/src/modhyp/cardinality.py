"""Closed-form cardinalities of planar sumsets and difference sets at prime
powers, their multiplicative composition over the factorization of n, and
the exact sum/difference dominance ratio.

Every count is an exact integer and every ratio an exact rational, so the
dominance boundary at ratio 1 is decided without any rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import _legendre_unchecked, factorize, is_prime
from .hyperbola import (
    DEFAULT_BUDGET,
    EnumerationBudgetError,
    HyperbolaSpec,
    signed_sumset,
)

__all__ = [
    "CardinalityReport",
    "DIFFERENCE",
    "FactorCount",
    "METHOD_CLOSED_FORM_ODD",
    "METHOD_CLOSED_FORM_P2",
    "METHOD_FULL_COVERAGE",
    "METHOD_ORACLE",
    "METHOD_SMALL_POWER",
    "PartialResultError",
    "RatioValue",
    "SUM",
    "card_S2_components",
    "card_S2_pp",
    "card_signed_sumset",
    "ratio_c2",
    "ratio_c2_pp",
]

SUM = "sum"
DIFFERENCE = "difference"

METHOD_CLOSED_FORM_P2 = "closed-form-p2"
METHOD_CLOSED_FORM_ODD = "closed-form-odd-p"
METHOD_SMALL_POWER = "small-power-table"
METHOD_FULL_COVERAGE = "full-coverage-d>2"
METHOD_ORACLE = "oracle"


@dataclass(frozen=True)
class FactorCount:
    """One prime-power factor's count and the method that produced it."""

    p: int
    t: int
    count: int
    method: str


@dataclass(frozen=True)
class CardinalityReport:
    """Per-prime-power counts and their product for one signed-sumset spec."""

    spec: HyperbolaSpec
    per_factor: tuple[FactorCount, ...]
    total: int


@dataclass(frozen=True)
class RatioValue:
    """Exact dominance ratio: |sumset| over |difference set|."""

    numerator: int
    denominator: int
    value: Fraction


class PartialResultError(RuntimeError):
    """Some factors needed the enumeration oracle but exceeded the budget."""

    def __init__(
        self,
        computed: tuple[FactorCount, ...],
        uncomputed: tuple[tuple[int, int], ...],
    ) -> None:
        missing = ", ".join(f"{p}^{t}" for p, t in uncomputed)
        super().__init__(f"budget exhausted before computing factors: {missing}")
        self.computed = computed
        self.uncomputed = uncomputed


def _exact_div(num: int, den: int, where: str) -> int:
    if num % den:
        raise ArithmeticError(f"non-integral count in {where}")
    return num // den


def _p2_count(a: int, t: int, q: int, kind: str) -> int:
    if t <= 4:
        if kind == DIFFERENCE:
            # small-power difference counts come from the reflected sumset
            a = (q - a) % q
        if t <= 2:
            return 1
        if t == 3:
            return 2 if a % 4 == 1 else 1
        return 2
    r = a % 8
    long_branch = (r == 7) if kind == DIFFERENCE else (r == 1)
    mid_branch = (r in (1, 5)) if kind == DIFFERENCE else (r in (3, 7))
    if long_branch:
        return _exact_div((1 << (t - 4)) + (-1) ** (t - 1) + 9, 3, f"p=2, t={t}")
    return 1 << (t - 3) if mid_branch else 1 << (t - 4)


def _odd_big_value(p: int, t: int) -> int:
    pt1 = p ** (t - 1)
    num = (p - 3) * (p + 1) * pt1 + 2 * pt1 + 3 * (p + 1) + (-1) ** (t - 1) * (p - 1)
    return _exact_div(num, 2 * (p + 1), f"p={p}, t={t}")


def card_S2_pp(a: int, p: int, t: int, kind: str) -> int:
    """Exact planar sumset or difference-set cardinality at p^t.

    kind is "sum" or "difference".  p = 2 splits on a mod 8 (with the
    stated small-power values for t <= 4); odd p splits on p mod 4 and the
    Legendre symbol of a.  Divisibility of each formula is checked, so a
    non-integral branch value can never escape.
    """
    if kind not in (SUM, DIFFERENCE):
        raise ValueError(f"kind must be {SUM!r} or {DIFFERENCE!r}")
    if t < 1:
        raise ValueError("exponent t must be >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if math.gcd(a, p) != 1:
        raise ValueError(f"a = {a} must be a unit at p = {p}")
    q = p**t
    a %= q
    if p == 2:
        return _p2_count(a, t, q, kind)
    eps = _legendre_unchecked(a, p)
    if kind == SUM:
        big = eps == 1
    else:
        big = (p % 4 == 1) == (eps == 1)
    if big:
        return _odd_big_value(p, t)
    return (p - 1) * p ** (t - 1) // 2


def card_S2_components(a: int, p: int, t: int) -> tuple[int, int]:
    """Split the sumset count at odd p^t by divisibility of k^2 - a.

    Returns (s1, s2): s1 counts residues k for which k^2 - a is a square
    coprime to p, s2 those for which it is a square divisible by p.
    Their sum equals the sumset cardinality.  Defined for odd p only.
    """
    if p == 2:
        raise ValueError("components are defined for odd p only")
    if t < 1:
        raise ValueError("exponent t must be >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if math.gcd(a, p) != 1:
        raise ValueError(f"a = {a} must be a unit at p = {p}")
    if _legendre_unchecked(a, p) == -1:
        return (p - 1) * p ** (t - 1) // 2, 0
    s1 = (p - 3) * p ** (t - 1) // 2
    num = 2 * p ** (t - 1) + 3 * (p + 1) + (-1) ** (t - 1) * (p - 1)
    s2 = _exact_div(num, 2 * (p + 1), f"components p={p}, t={t}")
    return s1, s2


def card_signed_sumset(
    spec: HyperbolaSpec, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> CardinalityReport:
    """Per-prime-power counts of the signed sumset, composed by product.

    d = 2 resolves every factor in closed form (m in {0, 2} counts the
    sumset, m = 1 the difference set; the m = 0 set is a negation, so its
    cardinality matches m = 2).  For d > 2, factors with p > 7 have full
    coverage (count p^t, independent of m); factors with p <= 7 fall back
    to the enumeration oracle, budget permitting.

    Raises:
        PartialResultError: oracle fallback was needed but the budget ran
            out; the error lists computed and uncomputed factors.
    """
    done: list[FactorCount] = []
    blocked: list[tuple[int, int]] = []
    for p, t in factorize(spec.n).factors:
        q = p**t
        if spec.d == 2:
            kind = DIFFERENCE if spec.m == 1 else SUM
            if p == 2:
                method = METHOD_SMALL_POWER if t <= 4 else METHOD_CLOSED_FORM_P2
            else:
                method = METHOD_CLOSED_FORM_ODD
            done.append(FactorCount(p, t, card_S2_pp(spec.a, p, t, kind), method))
        elif p > 7:
            done.append(FactorCount(p, t, q, METHOD_FULL_COVERAGE))
        else:
            sub = HyperbolaSpec(spec.d, spec.m, spec.a % q, q)
            try:
                attained = signed_sumset(sub, budget=budget, workers=workers)
            except EnumerationBudgetError:
                blocked.append((p, t))
                continue
            done.append(FactorCount(p, t, len(attained), METHOD_ORACLE))
    if blocked:
        raise PartialResultError(tuple(done), tuple(blocked))
    total = math.prod(fc.count for fc in done)
    return CardinalityReport(spec, tuple(done), total)


def ratio_c2_pp(a: int, p: int, t: int) -> Fraction:
    """Per-prime-power dominance ratio |sumset| / |difference set|."""
    return Fraction(card_S2_pp(a, p, t, SUM), card_S2_pp(a, p, t, DIFFERENCE))


def ratio_c2(a: int, n: int) -> RatioValue:
    """The exact dominance ratio at modulus n, from closed forms only.

    Multiplicative over the prime powers of n; factors p = 1 (mod 4)
    contribute exactly 1.  n = 1 is the empty product, ratio 1/1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if math.gcd(a, n) != 1:
        raise ValueError(f"a = {a} must be coprime to n = {n}")
    num = den = 1
    for p, t in factorize(n).factors:
        num *= card_S2_pp(a, p, t, SUM)
        den *= card_S2_pp(a, p, t, DIFFERENCE)
    return RatioValue(num, den, Fraction(num, den))
