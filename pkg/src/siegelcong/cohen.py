"""Cohen's H-function and the local polynomials S_{N,q}(X) that build it.

For a discriminant -N = d f^2 and a prime q with e = ord_q(f), the local
polynomial is defined by

    S_0 = 1,  S_1 = X - chi_d(q) q^(k-2),  S_e = X S_(e-1) - q^(2k-3) S_(e-2),

and evaluating at the Eisenstein eigenvalue X = 1 + q^(2k-3) gives the local
factor of the rank-2 Siegel Eisenstein coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import Rational, factorize, fundamental_decomposition, is_prime, kronecker
from .bernoulli import L_neg, zeta_neg


def is_discriminant_value(N: int) -> bool:
    """True when N > 0 and -N is a discriminant (N = 0, 3 mod 4)."""
    return N > 0 and N % 4 in (0, 3)


@dataclass(frozen=True)
class LocalPoly:
    """Integer polynomial in ascending-degree coefficient order."""

    coeffs: tuple[int, ...]
    N: int
    q: int
    k: int
    e: int

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: Rational):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def _local_coeffs(e: int, chi_q: int, q: int, k: int) -> tuple[int, ...]:
    prev: list[int] = [1]
    if e == 0:
        return (1,)
    cur = [-chi_q * q ** (k - 2), 1]
    qq = q ** (2 * k - 3)
    for _ in range(e - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= qq * c
        prev, cur = cur, nxt
    return tuple(cur)


def local_poly(N: int, q: int, k: int) -> LocalPoly:
    if not is_discriminant_value(N):
        raise ValueError(f"-{N} is not a discriminant")
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    d, f = fundamental_decomposition(N)
    e = 0
    while f % q == 0:
        f //= q
        e += 1
    return LocalPoly(_local_coeffs(e, kronecker(d, q), q, k), N, q, k, e)


@lru_cache(maxsize=None)
def siegel_factor(N: int, k: int) -> int:
    """Product over q | N of S_{N,q}(1 + q^(2k-3))."""
    if not is_discriminant_value(N):
        raise ValueError(f"-{N} is not a discriminant")
    total = 1
    for q, _ in factorize(N):
        total *= local_poly(N, q, k)(1 + q ** (2 * k - 3))
    return total


@lru_cache(maxsize=None)
def cohen_H(r: int, N: int) -> Fraction:
    """Cohen's H(r, N) for odd r >= 3.

    H(r, 0) = zeta(1 - 2r); otherwise L(1 - r, chi_d) times the square-part
    factor, and zero off the discriminants.
    """
    if r < 3 or r % 2 == 0:
        raise ValueError("cohen_H requires odd r >= 3")
    if N < 0:
        raise ValueError("cohen_H requires N >= 0")
    if N == 0:
        return zeta_neg(2 * r)
    if not is_discriminant_value(N):
        return Fraction(0)
    d, _ = fundamental_decomposition(N)
    return L_neg(r, d) * siegel_factor(N, r + 1)
