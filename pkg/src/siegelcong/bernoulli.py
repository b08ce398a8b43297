"""Bernoulli numbers, generalized Bernoulli numbers for quadratic characters,
and L-values at non-positive integers."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .arith import Rational, as_fraction, is_fundamental_discriminant, kronecker

_table: list[Fraction] = [Fraction(1)]
_table_lock = threading.Lock()


def _extend_table(n: int) -> None:
    with _table_lock:
        for m in range(len(_table), n + 1):
            # sum_{i=0}^{m} C(m+1, i) B_i = 0
            s = sum(comb(m + 1, i) * _table[i] for i in range(m))
            _table.append(-s / (m + 1))


def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError("bernoulli requires n >= 0")
    if n >= len(_table):
        _extend_table(n)
    return _table[n]


def bernoulli_table(n: int) -> list[Fraction]:
    """B_0, ..., B_n."""
    bernoulli(n)
    return _table[: n + 1]


def bernoulli_poly(n: int, x: Rational) -> Fraction:
    x = as_fraction(x)
    B = bernoulli_table(n)
    return sum((comb(n, i) * B[i] * x ** (n - i) for i in range(n + 1)), Fraction(0))


@dataclass(frozen=True)
class QuadChar:
    """Quadratic character n -> kronecker(D, n) of a fundamental discriminant D."""

    D: int

    def __post_init__(self):
        if not is_fundamental_discriminant(self.D):
            raise ValueError(f"{self.D} is not a fundamental discriminant")

    @property
    def conductor(self) -> int:
        return abs(self.D)

    @property
    def parity(self) -> int:
        return 1 if self.D > 0 else -1

    def __call__(self, n: int) -> int:
        return kronecker(self.D, n)


def _as_char(chi: QuadChar | int) -> QuadChar:
    return chi if isinstance(chi, QuadChar) else QuadChar(chi)


@lru_cache(maxsize=None)
def _gen_bernoulli(n: int, D: int) -> Fraction:
    f = abs(D)
    chi = [kronecker(D, a) for a in range(f + 1)]
    # B_{n,chi} = sum_i C(n,i) B_i f^(i-1) sum_a chi(a) a^(n-i)
    power_sums = [sum(chi[a] * a**j for a in range(1, f + 1)) for j in range(n + 1)]
    B = bernoulli_table(n)
    total = Fraction(0)
    for i in range(n + 1):
        if B[i] and power_sums[n - i]:
            total += comb(n, i) * B[i] * Fraction(f) ** (i - 1) * power_sums[n - i]
    return total


def gen_bernoulli(n: int, chi: QuadChar | int) -> Fraction:
    """Generalized Bernoulli number B_{n,chi}."""
    if n < 1:
        raise ValueError("gen_bernoulli requires n >= 1")
    chi = _as_char(chi)
    if (n % 2 == 0) != (chi.parity == 1):
        return Fraction(0)
    return _gen_bernoulli(n, chi.D)


def zeta_neg(k: int) -> Fraction:
    """zeta(1 - k) for even k >= 2."""
    if k < 2 or k % 2:
        raise ValueError("zeta_neg requires even k >= 2")
    return -bernoulli(k) / k


def L_neg(n: int, chi: QuadChar | int) -> Fraction:
    """L(1 - n, chi) for n >= 1."""
    return -gen_bernoulli(n, chi) / n
