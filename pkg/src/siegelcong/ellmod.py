"""Level-1 elliptic modular forms: q-expansions, the Miller basis, Hecke
matrices, and counting cusp eigen-systems congruent to the Eisenstein one.

All arithmetic is exact. Hecke matrices are integral on the Miller basis, so
the mod-p work happens over the prime field with plain integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import format_rational, is_prime, ord_p, sigma
from .bernoulli import zeta_neg


@dataclass(frozen=True)
class QExpansion:
    weight: int
    coeffs: tuple[Fraction, ...]

    @property
    def precision(self) -> int:
        """Index of the last known coefficient."""
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __add__(self, other: "QExpansion") -> "QExpansion":
        if self.weight != other.weight:
            raise ValueError("cannot add forms of different weight")
        P = min(self.precision, other.precision)
        return QExpansion(self.weight, tuple(self.coeffs[i] + other.coeffs[i] for i in range(P + 1)))

    def __mul__(self, other):
        if isinstance(other, QExpansion):
            P = min(self.precision, other.precision)
            out = [Fraction(0)] * (P + 1)
            for i, x in enumerate(self.coeffs[: P + 1]):
                if x:
                    for j in range(P + 1 - i):
                        out[i + j] += x * other.coeffs[j]
            return QExpansion(self.weight + other.weight, tuple(out))
        return QExpansion(self.weight, tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def dumps(self) -> str:
        return "".join(f"{n} {format_rational(c)}\n" for n, c in enumerate(self.coeffs))


def dim_modular_forms(w: int) -> int:
    if w < 0 or w % 2:
        return 0
    if w % 12 == 2:
        return w // 12
    return w // 12 + 1


def dim_cusp_forms(w: int) -> int:
    if w < 12:
        return 0
    return dim_modular_forms(w) - 1


def eis1_q(w: int, P: int) -> QExpansion:
    """zeta(1-w)/2 + sum_{n>=1} sigma_{w-1}(n) q^n."""
    if w < 4 or w % 2:
        raise ValueError("weight must be even and >= 4")
    return QExpansion(w, (zeta_neg(w) / 2,) + tuple(Fraction(sigma(w - 1, n)) for n in range(1, P + 1)))


# -- integer series helpers -------------------------------------------------


def _mul(f: Sequence[int], g: Sequence[int], P: int) -> list[int]:
    out = [0] * (P + 1)
    for i, x in enumerate(f[: P + 1]):
        if x:
            for j, y in enumerate(g[: P + 1 - i]):
                out[i + j] += x * y
    return out


def _pow(f: Sequence[int], e: int, P: int) -> list[int]:
    out = [1] + [0] * P
    for _ in range(e):
        out = _mul(out, f, P)
    return out


def _E4(P: int) -> list[int]:
    return [1] + [240 * sigma(3, n) for n in range(1, P + 1)]


def _E6(P: int) -> list[int]:
    return [1] + [-504 * sigma(5, n) for n in range(1, P + 1)]


def _delta(P: int) -> list[int]:
    e4, e6 = _E4(P), _E6(P)
    e4cubed = _mul(_mul(e4, e4, P), e4, P)
    e6sq = _mul(e6, e6, P)
    return [(x - y) // 1728 for x, y in zip(e4cubed, e6sq)]


def _miller_int(w: int, P: int) -> list[list[int]]:
    d = dim_modular_forms(w)
    if d == 0:
        return []
    if w == 0:
        return [[1] + [0] * P]
    if P < d:
        raise ValueError(f"precision {P} must be at least dim M_{w} = {d}")
    r = w % 12
    e4, e6 = _E4(P), _E6(P)
    head = {
        0: [1] + [0] * P,
        2: _mul(_mul(e4, e4, P), e6, P),
        4: e4,
        6: e6,
        8: _mul(e4, e4, P),
        10: _mul(e4, e6, P),
    }[r]
    n = d - 1
    delta = _delta(P)
    e6sq = _mul(e6, e6, P)
    basis = []
    for j in range(d):
        g = _mul(_mul(_pow(delta, j, P), _pow(e6sq, n - j, P), P), head, P)
        basis.append(g)
    for i in range(1, d):
        for j in range(i):
            c = basis[j][i]
            if c:
                basis[j] = [x - c * y for x, y in zip(basis[j], basis[i])]
    return basis


def miller_basis(w: int, P: int) -> list[QExpansion]:
    """Integral echelon basis of M_w: element i is q^i + O(q^d), d = dim M_w."""
    if w % 2 or w < 0:
        raise ValueError("weight must be even and non-negative")
    return [QExpansion(w, tuple(Fraction(x) for x in g)) for g in _miller_int(w, P)]


def cusp_basis(w: int, P: int) -> list[list[int]]:
    """Cuspidal part of the Miller basis as integer coefficient lists."""
    return _miller_int(w, P)[1:] if w >= 12 else []


# -- Hecke operators --------------------------------------------------------


@dataclass(frozen=True)
class HeckeMatrix:
    """Matrix of T_ell on the cuspidal Miller basis f_1..f_n.

    Row i holds the coordinates of T_ell f_i, so T_ell acts on coordinate row
    vectors by right multiplication.
    """

    ell: int
    weight: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __matmul__(self, other: "HeckeMatrix") -> list[list[int]]:
        return _matmul(self.rows, other.rows)


def _matmul(A, B) -> list[list[int]]:
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def hecke_matrix(w: int, ell: int, P: int | None = None) -> HeckeMatrix:
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    n = dim_cusp_forms(w)
    if P is None:
        P = max(ell * n, dim_modular_forms(w))
    if P < ell * n:
        raise ValueError(f"precision {P} too small for T_{ell} on S_{w}; need {ell * n}")
    basis = cusp_basis(w, P)
    wpow = ell ** (w - 1)
    rows = []
    for f in basis:
        row = []
        for m in range(1, n + 1):
            v = f[ell * m]
            if m % ell == 0:
                v += wpow * f[m // ell]
            row.append(v)
        rows.append(tuple(row))
    return HeckeMatrix(ell, w, tuple(rows))


def charpoly(rows: Sequence[Sequence[int]]) -> list[int]:
    """Characteristic polynomial det(X - A), ascending coefficients (Faddeev-LeVerrier)."""
    n = len(rows)
    A = [[Fraction(x) for x in r] for r in rows]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        AM = _matmul(A, M)
        M = [[AM[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        AM = _matmul(A, M)
        coeffs[n - k] = -sum(AM[i][i] for i in range(n)) / k
    assert all(c.denominator == 1 for c in coeffs)
    return [c.numerator for c in coeffs]


def _det(mat: list[list[int]]) -> int:
    """Bareiss fraction-free determinant."""
    m = [row[:] for row in mat]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Resultant of two integer polynomials (ascending coefficients) via the Sylvester matrix."""
    m, n = len(f) - 1, len(g) - 1
    F, G = list(reversed(f)), list(reversed(g))
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + F + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + G + [0] * (size - n - 1 - i))
    return _det(rows)


def discriminant(f: Sequence[int]) -> int:
    """Discriminant of an integer polynomial of degree >= 1; 1 for degree 1."""
    n = len(f) - 1
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    df = [i * c for i, c in enumerate(f)][1:]
    res = resultant(f, df)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res // f[-1]


# -- mod-p eigen-system counting --------------------------------------------


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    m = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                c = m[r][col]
                m[r] = [(x - c * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def _primes_upto(bound: int) -> list[int]:
    return [q for q in range(2, bound + 1) if is_prime(q)]


def count_congruent_systems(w: int, p: int, ell_bound: int = 20, P: int | None = None) -> int:
    """Number of eigen-systems of S_w congruent mod p to the Eisenstein system.

    Counted with multiplicity: the dimension over F_p of the joint
    generalized eigenspace of T_ell for eigenvalue 1 + ell^(w-1), over all
    primes ell <= ell_bound with ell != p.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p in (2, 3):
        raise ValueError("p = 2, 3 are not supported")
    n = dim_cusp_forms(w)
    if n == 0:
        return 0
    ells = [q for q in _primes_upto(ell_bound) if q != p]
    if not ells:
        raise ValueError("ell_bound admits no Hecke operators")
    if P is None:
        P = max(ells) * n
    stacked: list[list[int]] = []
    for ell in ells:
        M = hecke_matrix(w, ell, P)
        lam = (1 + pow(ell, w - 1, p)) % p
        # column-vector action is the transpose of the row convention
        A = [[(M.rows[j][i] - (lam if i == j else 0)) % p for j in range(n)] for i in range(n)]
        power = [[int(i == j) for j in range(n)] for i in range(n)]
        for _ in range(n):
            power = [[x % p for x in r] for r in _matmul(power, A)]
        stacked.extend(power)
    return n - _rank_mod_p(stacked, p)


def hecke_discriminant(w: int) -> int:
    """Discriminant of the characteristic polynomial of T_2 on S_w (1 if dim <= 1)."""
    n = dim_cusp_forms(w)
    if n <= 1:
        return 1
    return discriminant(charpoly(hecke_matrix(w, 2).rows))


def hecke_field_separability(w: int, p: int) -> bool:
    """True iff p does not divide the discriminant of the T_2 characteristic polynomial."""
    disc = hecke_discriminant(w)
    return disc != 0 and ord_p(disc, p) == 0
