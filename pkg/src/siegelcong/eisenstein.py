"""Fourier coefficients of the normalized degree-2 Siegel Eisenstein series.

G_k = (1/2) zeta(1-k) zeta(3-2k) E_k has coefficients

* rank 0:  (1/2) zeta(1-k) zeta(3-2k)
* rank 1:  zeta(3-2k) sigma_{k-1}(n)
* rank 2:  H(k-1, det 2T)                                   ("det-only")
           sum_{e | content T} e^(k-1) H(k-1, det 2T / e^2) ("content-sum")

The two rank-2 variants agree whenever the content of T is 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import divisors, is_prime, ord_p, sigma
from .bernoulli import zeta_neg
from .cohen import cohen_H
from .quadform import HalfIntSym, TIndexedSeries, enumerate_reduced

VARIANTS = ("content-sum", "det-only")


@dataclass(frozen=True)
class EisensteinSpec:
    k: int
    variant: str = "content-sum"

    def __post_init__(self):
        if self.k < 4 or self.k % 2:
            raise ValueError(f"weight must be even and >= 4, got {self.k}")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")


def rank0_coeff(k: int) -> Fraction:
    return zeta_neg(k) * zeta_neg(2 * k - 2) / 2


def rank1_coeff(k: int, n: int) -> Fraction:
    return zeta_neg(2 * k - 2) * sigma(k - 1, n)


def rank2_coeff(spec: EisensteinSpec, T: HalfIntSym) -> Fraction:
    N = T.det2
    if spec.variant == "det-only":
        return cohen_H(spec.k - 1, N)
    return sum(
        (e ** (spec.k - 1) * cohen_H(spec.k - 1, N // (e * e)) for e in divisors(T.content)),
        Fraction(0),
    )


def coeff(spec: EisensteinSpec, T: HalfIntSym | int | None) -> Fraction:
    """Coefficient at T.

    ``T`` may be a matrix of any rank, a positive int (the rank-1 invariant
    n), or ``None`` for the constant term.
    """
    if T is None:
        return rank0_coeff(spec.k)
    if isinstance(T, int):
        if T < 1:
            raise ValueError("rank-1 index must be positive")
        return rank1_coeff(spec.k, T)
    r = T.rank
    if r == 0:
        return rank0_coeff(spec.k)
    if r == 1:
        return rank1_coeff(spec.k, T.rank1_invariant())
    return rank2_coeff(spec, T)


def expansion(spec: EisensteinSpec, max_det: int) -> TIndexedSeries:
    if max_det < 3:
        raise ValueError("max_det must be at least 3")
    zeta_odd = zeta_neg(2 * spec.k - 2)
    return TIndexedSeries(
        k=spec.k,
        max_det=max_det,
        variant=spec.variant,
        rank0=rank0_coeff(spec.k),
        rank1={n: zeta_odd * sigma(spec.k - 1, n) for n in range(1, max_det + 1)},
        rank2={T.as_tuple(): rank2_coeff(spec, T) for T in enumerate_reduced(max_det)},
    )


@dataclass
class IntegralityReport:
    k: int
    p: int
    max_det: int
    checked: int = 0
    violations: list[tuple[tuple, Fraction, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_integrality(spec: EisensteinSpec, p: int, max_det: int) -> IntegralityReport:
    """Scan every coefficient up to max_det for p in a denominator."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p - 1 <= 2 * spec.k - 2:
        raise ValueError(f"integrality needs p - 1 > 2k - 2 (p={p}, k={spec.k})")
    report = IntegralityReport(spec.k, p, max_det)
    for key, value in expansion(spec, max_det).items():
        report.checked += 1
        v = ord_p(value, p)
        if v < 0:
            report.violations.append((key, value, v))
    return report


def degenerate_vanishing(spec: EisensteinSpec, p: int, max_det: int) -> bool:
    """True iff every rank-0 and rank-1 coefficient up to max_det lies in pZ_(p)."""
    if ord_p(rank0_coeff(spec.k), p) < 1:
        return False
    zeta_odd = zeta_neg(2 * spec.k - 2)
    return all(ord_p(zeta_odd * sigma(spec.k - 1, n), p) >= 1 for n in range(1, max_det + 1))

