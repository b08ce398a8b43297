"""Saito-Kurokawa coefficients from half-integral weight data and Hecke
eigenvalues, Maass-relation validation, and congruence checks between
truncated Siegel expansions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .arith import (
    Rational,
    as_fraction,
    divisors,
    factorize,
    format_rational,
    fundamental_decomposition,
    is_fundamental_discriminant,
    is_prime,
    kronecker,
    ord_p,
    parse_rational,
)
from .bernoulli import bernoulli, gen_bernoulli
from .cohen import cohen_H, is_discriminant_value, local_poly
from .eisenstein import EisensteinSpec, expansion
from .quadform import HalfIntSym, TIndexedSeries, enumerate_reduced


class MissingDataError(KeyError):
    pass


class NonIntegralError(ValueError):
    """A coefficient is not p-integral, so congruence mod p is undefined."""


@dataclass
class HalfIntegralData:
    """Coefficients a_h(N) of a weight k - 1/2 plus-space form, N = 0, 3 mod 4."""

    k: int
    values: dict[int, Fraction]
    bound: int

    def __post_init__(self):
        for N in self.values:
            if not is_discriminant_value(N):
                raise ValueError(f"N = {N} violates the plus-space support condition")

    def __getitem__(self, N: int) -> Fraction:
        try:
            return self.values[N]
        except KeyError:
            raise MissingDataError(f"half-integral coefficient a_h({N}) not supplied") from None

    @classmethod
    def from_function(cls, k: int, fn: Callable[[int], Rational], bound: int) -> "HalfIntegralData":
        vals = {N: as_fraction(fn(N)) for N in range(3, bound + 1) if is_discriminant_value(N)}
        return cls(k, vals, bound)

    @classmethod
    def loads(cls, k: int, text: str) -> "HalfIntegralData":
        vals = _parse_pairs(text)
        return cls(k, vals, max(vals, default=0))


@dataclass
class EigenData:
    """Hecke eigenvalues a_phi(q) of a level-1 eigenform of weight 2k - 2."""

    weight: int
    values: dict[int, Fraction]

    def __post_init__(self):
        for q in self.values:
            if not is_prime(q):
                raise ValueError(f"eigenvalue key {q} is not prime")

    def __getitem__(self, q: int) -> Fraction:
        try:
            return self.values[q]
        except KeyError:
            raise MissingDataError(f"eigenvalue a_phi({q}) not supplied") from None

    @classmethod
    def from_function(cls, weight: int, fn: Callable[[int], Rational], bound: int) -> "EigenData":
        return cls(weight, {q: as_fraction(fn(q)) for q in range(2, bound + 1) if is_prime(q)})

    @classmethod
    def loads(cls, weight: int, text: str) -> "EigenData":
        return cls(weight, _parse_pairs(text))


def _parse_pairs(text: str) -> dict[int, Fraction]:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<key> <value>': {raw!r}")
        out[int(parts[0])] = parse_rational(parts[1])
    return out


def pseudo_eisenstein_data(k: int, bound: int) -> tuple[HalfIntegralData, EigenData]:
    """Cohen H-values and the eigenvalues 1 + q^(2k-3) of the weight 2k-2 Eisenstein series."""
    h = HalfIntegralData.from_function(k, lambda N: cohen_H(k - 1, N), bound)
    phi = EigenData.from_function(2 * k - 2, lambda q: 1 + q ** (2 * k - 3), bound)
    return h, phi


def _primitive_coeff(N: int, h: HalfIntegralData, phi: EigenData, k: int) -> Fraction:
    d, f = fundamental_decomposition(N)
    value = h[-d]
    for q, _ in factorize(f):
        value *= local_poly(N, q, k)(phi[q])
    return value


def sk_coeff(T: HalfIntSym, h: HalfIntegralData, phi: EigenData, k: int) -> Fraction:
    """Saito-Kurokawa coefficient at a positive-definite T.

    c(N) = a_h(|d|) * prod_{q | f} S_{N,q}(a_phi(q)) with -N = d f^2, summed
    over the content as sum_{e | content} e^(k-1) c(det2 / e^2).
    """
    if T.rank != 2:
        raise ValueError("sk_coeff needs a positive-definite T")
    N = T.det2
    return sum(
        (e ** (k - 1) * _primitive_coeff(N // (e * e), h, phi, k) for e in divisors(T.content)),
        Fraction(0),
    )


def sk_expansion(
    h: HalfIntegralData,
    phi: EigenData,
    k: int,
    max_det: int,
    degenerate: bool = False,
    variant: str = "sk",
) -> TIndexedSeries:
    """Rank-2 SK coefficients up to max_det; with ``degenerate`` the cuspidal
    zeros at rank 0 and rank 1 are included as well."""
    series = TIndexedSeries(k=k, max_det=max_det, variant=variant)
    if degenerate:
        series.rank0 = Fraction(0)
        series.rank1 = {n: Fraction(0) for n in range(1, max_det + 1)}
    cache: dict[tuple[int, int], Fraction] = {}
    for T in enumerate_reduced(max_det):
        key = (T.det2, T.content)
        if key not in cache:
            cache[key] = sk_coeff(T, h, phi, k)
        series.rank2[T.as_tuple()] = cache[key]
    return series


def validate_maass_relations(h: HalfIntegralData, phi: EigenData, k: int, bound: int) -> bool:
    """Check a_h(N q^2) = a_h(N)(a_phi(q) - (-N|q) q^(k-2)) - q^(2k-3) a_h(N/q^2).

    Runs over discriminant values N and primes q with N q^2 <= bound; a_h at a
    non-integral or non-discriminant argument reads as 0.
    """

    def a(M: Fraction | int) -> Fraction:
        if isinstance(M, Fraction):
            if M.denominator != 1:
                return Fraction(0)
            M = M.numerator
        return h[M] if is_discriminant_value(M) else Fraction(0)

    for N in range(3, bound // 4 + 1):
        if not is_discriminant_value(N):
            continue
        q = 2
        while N * q * q <= bound:
            if is_prime(q):
                lhs = a(N * q * q)
                rhs = a(N) * (phi[q] - kronecker(-N, q) * q ** (k - 2)) - q ** (2 * k - 3) * a(
                    Fraction(N, q * q)
                )
                if lhs != rhs:
                    return False
            q += 1
    return True


# -- congruences ------------------------------------------------------------


@dataclass
class Failure:
    key: tuple
    lhs: Fraction
    rhs: Fraction
    ord_gap: float

    def to_json(self) -> dict:
        return {
            "key": list(self.key),
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "ord": self.ord_gap,
        }


@dataclass
class CongruenceReport:
    ok: bool = True
    checked: int = 0
    first_failure: Failure | None = None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checked": self.checked,
            "first_failure": None if self.first_failure is None else self.first_failure.to_json(),
        }


def congruence_check(lhs: TIndexedSeries, rhs: TIndexedSeries, p: int) -> CongruenceReport:
    """Check ord_p(lhs - rhs) >= 1 on every key present in both series.

    Keys are visited in canonical order, so ``first_failure`` is the smallest
    failing key. Raises :class:`NonIntegralError` if a compared value is not
    p-integral.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if lhs.k != rhs.k:
        raise ValueError(f"weight mismatch: {lhs.k} vs {rhs.k}")
    report = CongruenceReport()
    for key, x in lhs.items():
        y = rhs.get(key)
        if y is None:
            continue
        for value in (x, y):
            if ord_p(value, p) < 0:
                raise NonIntegralError(f"coefficient {format_rational(value)} at {key} is not {p}-integral")
        report.checked += 1
        gap = ord_p(x - y, p)
        if gap < 1 and report.first_failure is None:
            report.ok = False
            report.first_failure = Failure(key, x, y, gap)
    return report


@dataclass
class Stage:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerifyReport:
    k: int
    p: int
    D: int
    stages: list[Stage] = field(default_factory=list)
    congruence: CongruenceReport | None = None

    @property
    def ok(self) -> bool:
        return bool(self.stages) and all(s.ok for s in self.stages)

    @property
    def failed_stage(self) -> str | None:
        return next((s.name for s in self.stages if not s.ok), None)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "p": self.p,
            "D": self.D,
            "ok": self.ok,
            "stages": [{"name": s.name, "ok": s.ok, "detail": s.detail} for s in self.stages],
            "congruence": None if self.congruence is None else self.congruence.to_json(),
        }


def theorem_sk_verify(
    k: int,
    p: int,
    D: int,
    max_det: int,
    h: HalfIntegralData | None = None,
    phi: EigenData | None = None,
) -> VerifyReport:
    """Check the congruence hypotheses in order, then compare an SK series
    with G_k mod p on all keys up to max_det.

    Without ``h``/``phi`` the Cohen series and Eisenstein eigenvalues are used.
    Stops at the first failing stage.
    """
    report = VerifyReport(k, p, D)

    def stage(name: str, ok: bool, detail: str = "") -> bool:
        report.stages.append(Stage(name, ok, detail))
        return ok

    if not stage("p prime", is_prime(p)):
        return report
    if not stage("D fundamental", is_fundamental_discriminant(D)):
        return report
    if not stage("p >= 7", p >= 7):
        return report
    if not stage("p - 1 > 2k - 2", p - 1 > 2 * k - 2, f"{p - 1} vs {2 * k - 2}"):
        return report
    v = ord_p(bernoulli(2 * k - 2), p)
    if not stage("ord_p(B_{2k-2}) > 0", v > 0, f"ord = {v}"):
        return report
    v = ord_p(gen_bernoulli(k - 1, D), p)
    if not stage("ord_p(B_{k-1,chi_D}) = 0", v == 0, f"ord = {v}"):
        return report
    if h is None or phi is None:
        h0, phi0 = pseudo_eisenstein_data(k, max_det)
        h = h if h is not None else h0
        phi = phi if phi is not None else phi0
    target = expansion(EisensteinSpec(k), max_det)
    try:
        lift = sk_expansion(h, phi, k, max_det, degenerate=True)
        cong = congruence_check(lift, target, p)
    except (MissingDataError, NonIntegralError) as exc:
        stage("congruence", False, str(exc))
        return report
    report.congruence = cong
    detail = f"{cong.checked} keys"
    if cong.first_failure is not None:
        detail += f", first failure at {cong.first_failure.key}"
    stage("congruence", cong.ok, detail)
    return report
