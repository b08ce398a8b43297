"""Half-integral symmetric 2x2 matrices and truncated Siegel Fourier expansions.

A triple ``(a, b, c)`` stands for ``T = [[a, b/2], [b/2, c]]``; ``det2`` is
``det(2T) = 4ac - b**2``. Positive-definite triples are reduced to
canonical representatives for proper (SL_2(Z)) equivalence.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, TextIO

from .arith import format_rational, parse_rational


@dataclass(frozen=True, order=True)
class HalfIntSym:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a < 0 or self.c < 0 or 4 * self.a * self.c - self.b**2 < 0:
            raise ValueError(f"{self.as_tuple()} is not positive semi-definite")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def det2(self) -> int:
        return 4 * self.a * self.c - self.b**2

    @property
    def rank(self) -> int:
        if self.det2 > 0:
            return 2
        return 0 if self.a == self.b == self.c == 0 else 1

    @property
    def content(self) -> int:
        if self.rank == 0:
            raise ValueError("content of the zero matrix is undefined")
        return math.gcd(self.a, self.b, self.c)

    def rank1_invariant(self) -> int:
        """The n with tS T S = diag(n, 0) for some S in GL_2(Z)."""
        if self.rank != 1:
            raise ValueError("rank1_invariant requires a rank-1 matrix")
        return math.gcd(self.a, self.b, self.c)

    def transform(self, S: tuple[int, int, int, int]) -> "HalfIntSym":
        """Return tS T S for S = [[p, q], [r, s]]."""
        p, q, r, s = S
        a, b, c = self.a, self.b, self.c
        return HalfIntSym(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if self.rank != 2 or not abs(b) <= a <= c:
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def reduce(self) -> "HalfIntSym":
        """Canonical representative of the proper equivalence class (rank 2)."""
        if self.rank != 2:
            raise ValueError("reduce requires a positive-definite matrix")
        a, b, c = self.a, self.b, self.c
        while True:
            if c < a:
                a, b, c = c, -b, a
                continue
            if b > a or b <= -a:
                # translate b into (-a, a]
                t = (a - b) // (2 * a)
                c = a * t * t + b * t + c
                b = b + 2 * a * t
                continue
            break
        if a == c and b < 0:
            b = -b
        return HalfIntSym(a, b, c)

    def sort_key(self) -> tuple[int, int, int]:
        return (self.det2, self.a, self.b)


def enumerate_reduced(max_det: int) -> list[HalfIntSym]:
    """All reduced positive-definite triples with det2 <= max_det, sorted by (det2, a, b)."""
    out = []
    a = 1
    while 3 * a * a <= max_det:
        for b in range(-a + 1, a + 1):
            c = a
            while 4 * a * c - b * b <= max_det:
                if not (c == a and b < 0):
                    out.append(HalfIntSym(a, b, c))
                c += 1
        a += 1
    out.sort(key=HalfIntSym.sort_key)
    return out


def reduced_of_det(N: int) -> list[HalfIntSym]:
    return [T for T in enumerate_reduced(N) if T.det2 == N]


# -- truncated expansions ---------------------------------------------------


@dataclass
class TIndexedSeries:
    """Truncated Siegel Fourier expansion on canonical representatives.

    ``rank0`` may be ``None`` when the series carries no constant term;
    rank-1 coefficients are keyed by the invariant n, rank-2 ones by reduced
    ``(a, b, c)`` tuples.
    """

    k: int
    max_det: int
    variant: str = "content-sum"
    rank0: Fraction | None = None
    rank1: dict[int, Fraction] = field(default_factory=dict)
    rank2: dict[tuple[int, int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        for key in self.rank1:
            if key < 1:
                raise ValueError(f"rank-1 key {key} must be positive")
        for key in self.rank2:
            if not HalfIntSym(*key).is_reduced():
                raise ValueError(f"rank-2 key {key} is not reduced")

    def __len__(self) -> int:
        return (self.rank0 is not None) + len(self.rank1) + len(self.rank2)

    def items(self) -> Iterator[tuple[tuple, Fraction]]:
        """Entries in canonical order: rank 0, rank 1 by n, rank 2 by (det2, a, b)."""
        if self.rank0 is not None:
            yield ("rank0",), self.rank0
        for n in sorted(self.rank1):
            yield ("rank1", n), self.rank1[n]
        for key in sorted(self.rank2, key=lambda t: HalfIntSym(*t).sort_key()):
            yield ("rank2",) + key, self.rank2[key]

    def get(self, key: tuple) -> Fraction | None:
        kind = key[0]
        if kind == "rank0":
            return self.rank0
        if kind == "rank1":
            return self.rank1.get(key[1])
        return self.rank2.get(tuple(key[1:]))

    # text format
    def dumps(self) -> str:
        lines = [f"k {self.k} maxdet {self.max_det} variant {self.variant}"]
        for key, value in self.items():
            lines.append(" ".join(str(x) for x in key) + " " + format_rational(value))
        return "\n".join(lines) + "\n"

    def dump(self, fh: TextIO) -> None:
        fh.write(self.dumps())

    @classmethod
    def loads(cls, text: str) -> "TIndexedSeries":
        series = None
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            try:
                if series is None:
                    if len(parts) != 6 or parts[0] != "k" or parts[2] != "maxdet" or parts[4] != "variant":
                        raise ValueError("bad header")
                    series = cls(int(parts[1]), int(parts[3]), parts[5])
                elif parts[0] == "rank0" and len(parts) == 2:
                    series.rank0 = parse_rational(parts[1])
                elif parts[0] == "rank1" and len(parts) == 3:
                    n = int(parts[1])
                    if n < 1:
                        raise ValueError("rank-1 index must be positive")
                    series.rank1[n] = parse_rational(parts[2])
                elif parts[0] == "rank2" and len(parts) == 5:
                    key = (int(parts[1]), int(parts[2]), int(parts[3]))
                    if not HalfIntSym(*key).is_reduced():
                        raise ValueError(f"{key} is not reduced")
                    series.rank2[key] = parse_rational(parts[4])
                else:
                    raise ValueError("unrecognized line")
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}: {raw!r}") from None
        if series is None:
            raise ValueError("missing header line")
        return series

    @classmethod
    def load(cls, fh: TextIO) -> "TIndexedSeries":
        return cls.loads(fh.read())

    # JSON mirror
    def to_json(self) -> dict:
        return {
            "k": self.k,
            "maxdet": self.max_det,
            "variant": self.variant,
            "rank0": None if self.rank0 is None else format_rational(self.rank0),
            "rank1": {str(n): format_rational(v) for n, v in sorted(self.rank1.items())},
            "rank2": [
                [*key[1:], format_rational(v)] for key, v in self.items() if key[0] == "rank2"
            ],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "TIndexedSeries":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            k=int(data["k"]),
            max_det=int(data["maxdet"]),
            variant=data["variant"],
            rank0=None if data["rank0"] is None else parse_rational(data["rank0"]),
            rank1={int(n): parse_rational(v) for n, v in data["rank1"].items()},
            rank2={(int(a), int(b), int(c)): parse_rational(v) for a, b, c, v in data["rank2"]},
        )
