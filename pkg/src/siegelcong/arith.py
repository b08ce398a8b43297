"""Exact integer and rational arithmetic used throughout the package.

Rationals are plain :class:`fractions.Fraction` values, which are always
stored in lowest terms with a positive denominator.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Union[int, Fraction]

# Deterministic for n < 3317044064679887385961981 (first 13 primes as bases).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_DETERMINISTIC_BOUND = 3317044064679887385961981

_TRIAL_BOUND = 1000


def _small_primes(bound: int) -> list[int]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


SMALL_PRIMES = _small_primes(_TRIAL_BOUND)
_SMALL_PRIME_SET = frozenset(SMALL_PRIMES)


class PrimalityError(ValueError):
    """Raised when primality cannot be decided deterministically."""


def as_fraction(x: Rational) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def format_rational(x: Rational) -> str:
    """Render as ``num/den``, or ``num`` when the denominator is 1."""
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text or any(ch.isspace() for ch in text):
        raise ValueError(f"malformed rational {text!r}")
    num, sep, den = text.partition("/")
    try:
        if sep:
            d = int(den)
            if d <= 0:
                raise ValueError
            return Fraction(int(num), d)
        return Fraction(int(num))
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None


def _strong_probable_prime(n: int) -> bool:
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _lucas_certify(n: int) -> bool:
    """Prove n prime from the complete factorization of n - 1."""
    for q, _ in factorize(n - 1):
        for a in range(2, 1000):
            if pow(a, n - 1, n) != 1:
                return False
            if math.gcd(pow(a, (n - 1) // q, n) - 1, n) == 1:
                break
        else:
            raise PrimalityError(f"no Lucas witness found for {n}")
    return True


def is_prime(n: int) -> bool:
    """Deterministic primality test.

    Miller-Rabin with a witness set proven correct below
    ``MR_DETERMINISTIC_BOUND``; above it, numbers that pass are certified by
    a Lucas test on the factored n - 1.
    """
    if n < 2:
        return False
    if n <= _TRIAL_BOUND:
        return n in _SMALL_PRIME_SET
    for p in SMALL_PRIMES[:25]:
        if n % p == 0:
            return False
    if not _strong_probable_prime(n):
        return False
    if n < MR_DETERMINISTIC_BOUND:
        return True
    return _lucas_certify(n)


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p} is not prime")


def ord_p(x: Rational, p: int) -> float | int:
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    _require_prime(p)
    x = as_fraction(x)
    if x == 0:
        return math.inf
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _brent(n: int, rng: random.Random) -> int:
    """Return a non-trivial factor of the odd composite n (Brent's rho)."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            # batch overshot; backtrack one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        # cycle closed without a split: restart with fresh parameters


def _split_into(n: int, out: dict[int, int], rng: random.Random) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split_into(r, out, rng)
        _split_into(r, out, rng)
        return
    d = _brent(n, rng)
    _split_into(d, out, rng)
    _split_into(n // d, out, rng)


@lru_cache(maxsize=65536)
def _factor_cached(n: int) -> tuple[tuple[int, int], ...]:
    found: dict[int, int] = {}
    m = n
    for p in SMALL_PRIMES:
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    if m > 1:
        if m < _TRIAL_BOUND * _TRIAL_BOUND:
            found[m] = found.get(m, 0) + 1
        else:
            # seeded by n so repeated runs take the same path
            _split_into(m, found, random.Random(n))
    return tuple(sorted(found.items()))


def factorize(n: int) -> list[tuple[int, int]]:
    """Complete factorization of n >= 1 as sorted ``(prime, exponent)`` pairs."""
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    return list(_factor_cached(n))


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def sigma(w: int, n: int) -> int:
    """Divisor power sum: sum of d**w over the positive divisors d of n."""
    if n < 1:
        raise ValueError("sigma requires n >= 1")
    if w < 0:
        raise ValueError("sigma requires w >= 0")
    total = 1
    for p, e in factorize(n):
        pw = p**w
        total *= sum(pw**i for i in range(e + 1))
    return total


def moebius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D | n)."""
    if n == 0:
        return 1 if abs(D) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if D < 0:
            result = -result
    twos = (n & -n).bit_length() - 1
    n >>= twos
    if twos:
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5) and twos % 2:
            result = -result
    # Jacobi symbol (D | n) for odd positive n
    a = D % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(abs(n))) if n else False


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def fundamental_decomposition(N: int) -> tuple[int, int]:
    """Write -N = d * f**2 with d a negative fundamental discriminant.

    Requires N > 0 and -N congruent to 0 or 1 mod 4.
    """
    if N <= 0 or (-N) % 4 not in (0, 1):
        raise ValueError(f"-{N} is not a discriminant")
    core, root = 1, 1
    for p, e in factorize(N):
        root *= p ** (e // 2)
        if e % 2:
            core *= p
    # -core is squarefree; it is fundamental iff -core = 1 mod 4
    if (-core) % 4 == 1:
        return -core, root
    return -4 * core, root // 2
