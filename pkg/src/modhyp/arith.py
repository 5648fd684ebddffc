"""Exact modular arithmetic kernels.

Factorization, Chinese-remainder recombination, Legendre symbols,
squareness tests and square roots modulo prime powers, and the closed-form
count of distinct squares modulo a prime power.  Everything is exact
integer arithmetic and every algorithm is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

__all__ = [
    "PrimeFactorization",
    "ResidueClass",
    "count_squares_mod_pp",
    "crt_combine",
    "euler_phi",
    "factorize",
    "is_prime",
    "is_square_mod_pp",
    "legendre",
    "primes_up_to",
    "sqrt_mod_pp",
]

# Witness set making Miller-Rabin deterministic for all n < 3.3 * 10^24
# (covers 64-bit inputs with a wide margin).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, ascending (sieve of Eratosthenes)."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


_TRIAL_PRIMES = primes_up_to(10_000)


@lru_cache(maxsize=1 << 16)
def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with a fixed witness set)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise ValueError(f"{n} exceeds the deterministic witness range")
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for w in _MR_WITNESSES:
        x = pow(w, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """A nontrivial factor of an odd composite n, by Brent's cycle method.

    The polynomial increment c is swept deterministically, so repeated
    calls always split n the same way.
    """
    for c in range(1, 1000):
        y, r, q = 2, 1, 1
        g = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"failed to split {n}")  # pragma: no cover


@dataclass(frozen=True)
class PrimeFactorization:
    """A positive integer with its canonical prime factorization.

    Factors are (prime, exponent) pairs with strictly increasing primes;
    their product must reassemble n, and each prime is re-checked with the
    deterministic primality test on construction.
    """

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        prev, acc = 1, 1
        for p, e in self.factors:
            if p <= prev:
                raise ValueError("primes must be strictly increasing")
            if e < 1:
                raise ValueError(f"exponent of {p} must be >= 1")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            prev = p
            acc *= p**e
        if acc != self.n:
            raise ValueError(f"factors reassemble to {acc}, not {self.n}")


@lru_cache(maxsize=1 << 14)
def factorize(n: int) -> PrimeFactorization:
    """Canonical factorization of n >= 1 (trial division, then Brent rho).

    n = 1 yields an empty factor list.
    """
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    original = n
    counts: dict[int, int] = {}
    for p in _TRIAL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if is_prime(m):
                counts[m] = counts.get(m, 0) + 1
            else:
                d = _brent_rho(m)
                stack += [d, m // d]
    return PrimeFactorization(original, tuple(sorted(counts.items())))


def euler_phi(n: int) -> int:
    """Euler's totient of n >= 1."""
    out = 1
    for p, e in factorize(n).factors:
        out *= (p - 1) * p ** (e - 1)
    return out


@dataclass(frozen=True)
class ResidueClass:
    """An integer residue in [0, modulus)."""

    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"{self.value} is not reduced modulo {self.modulus}")

    @classmethod
    def reduce(cls, value: int, modulus: int) -> "ResidueClass":
        return cls(value % modulus, modulus)


def crt_combine(residues: Iterable[ResidueClass]) -> ResidueClass:
    """Combine congruences with pairwise-coprime moduli into one.

    Returns the unique residue modulo the product of the moduli that is
    congruent to every input.  An empty input yields 0 mod 1.

    Raises:
        ValueError: if the moduli are not pairwise coprime.
    """
    value, modulus = 0, 1
    for r in residues:
        g = math.gcd(modulus, r.modulus)
        if g != 1:
            raise ValueError(f"moduli are not pairwise coprime (shared factor {g})")
        shift = (r.value - value) * pow(modulus, -1, r.modulus) % r.modulus
        value += modulus * shift
        modulus *= r.modulus
    return ResidueClass(value % modulus, modulus)


def legendre(a: int, p: int) -> int:
    """Legendre symbol of a at the odd prime p: 1, -1, or 0 when p | a."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    return _legendre_unchecked(a, p)


def _legendre_unchecked(a: int, p: int) -> int:
    # Euler's criterion; caller guarantees p is an odd prime.
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _sqrt_mod_odd_prime(a: int, p: int) -> int | None:
    """One square root of a modulo an odd prime p, or None (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if _legendre_unchecked(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while _legendre_unchecked(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, x = 0, t
        while x != 1:
            x = x * x % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def sqrt_mod_pp(a: int, p: int, t: int) -> list[int]:
    """All x in [0, p^t) with x^2 = a (mod p^t), for gcd(a, p) = 1.

    Sorted ascending.  Root counts: 0 or 2 for odd p; for p = 2 exactly
    one root at t = 1, two when a = 1 (mod 4) at t = 2, and four when
    a = 1 (mod 8) at t >= 3 (empty otherwise).

    Odd p lifts a Tonelli-Shanks root by Newton iteration; p = 2 lifts
    bit by bit from the residue 1 modulo 8.
    """
    if t < 1:
        raise ValueError("exponent t must be >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if math.gcd(a, p) != 1:
        raise ValueError(f"a = {a} must be coprime to p = {p}")
    q = p**t
    a %= q
    if p == 2:
        if t == 1:
            return [1]
        if t == 2:
            return [1, 3] if a % 4 == 1 else []
        if a % 8 != 1:
            return []
        r = 1
        for j in range(3, t):
            if (r * r - a) % (1 << (j + 1)):
                r += 1 << (j - 1)
        half = q >> 1
        return sorted({r, q - r, (r + half) % q, (q - r + half) % q})
    r = _sqrt_mod_odd_prime(a, p)
    if r is None:
        return []
    k = 1
    while k < t:
        k = min(2 * k, t)
        modulus = p**k
        r = (r + (a - r * r) * pow(2 * r, -1, modulus)) % modulus
    return sorted({r, q - r})


def is_square_mod_pp(a: int, p: int, t: int) -> bool:
    """Whether x^2 = a (mod p^t) is solvable; a may share factors with p.

    Writing a = p^s * u with u a unit, the congruence is solvable exactly
    when a = 0 (mod p^t), or s is even and u is a square mod p^(t-s).
    """
    if t < 1:
        raise ValueError("exponent t must be >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a %= p**t
    if a == 0:
        return True
    s = 0
    while a % p == 0:
        a //= p
        s += 1
    if s % 2:
        return False
    rem = t - s
    if p == 2:
        if rem == 1:
            return True
        if rem == 2:
            return a % 4 == 1
        return a % 8 == 1
    return _legendre_unchecked(a, p) == 1


def count_squares_mod_pp(p: int, t: int) -> int:
    """Number of distinct values of k^2 mod p^t, k over all residues.

    Evaluated from the closed forms; the divisibility of each formula is
    checked so a non-integral value can never escape silently.
    """
    if t < 1:
        raise ValueError("exponent t must be >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        num = (1 << t) + (-1) ** (t - 1) + 9
        den = 6
    else:
        num = 2 * p ** (t + 1) + (-1) ** (t - 1) * (p - 1) + 3 * (p + 1)
        den = 4 * (p + 1)
    if num % den:  # pragma: no cover - the closed forms are exact
        raise ArithmeticError(f"non-integral square count at p={p}, t={t}")
    return num // den
