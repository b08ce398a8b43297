"""Congruence-prime discovery: scan weights for primes meeting the
hypotheses of the Siegel Eisenstein congruence and assemble the congruence table."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .arith import factorize, is_prime, ord_p
from .bernoulli import bernoulli, gen_bernoulli
from .ellmod import count_congruent_systems, hecke_field_separability

DEFAULT_D_LIST = (-3, -4, -8, -7, -11, -19)


def candidate_primes(k: int) -> list[int]:
    """Primes p >= 7 with p - 1 > 2k - 2 dividing the numerator of B_{2k-2}."""
    if k < 4 or k % 2:
        raise ValueError("k must be even and >= 4")
    num = abs(bernoulli(2 * k - 2).numerator)
    return [p for p, _ in factorize(num) if p >= 7 and p - 1 > 2 * k - 2]


def check_nonvanishing(k: int, p: int, D: int) -> bool:
    """True iff B_{k-1,chi_D} is a p-adic unit."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return ord_p(gen_bernoulli(k - 1, D), p) == 0


@dataclass
class SearchRow:
    k: int
    primes: list[int] = field(default_factory=list)
    chi: dict[int, int] = field(default_factory=dict)
    t: dict[int, int] = field(default_factory=dict)
    hecke_separable: dict[int, bool] = field(default_factory=dict)

    @property
    def weight(self) -> int:
        return 2 * self.k - 2

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "2k-2": self.weight,
            "primes": self.primes,
            "chi": {str(p): self.chi[p] for p in self.primes},
            "t": {str(p): self.t[p] for p in self.primes},
            "hecke_separable": {str(p): self.hecke_separable[p] for p in self.primes},
        }


def search_row(k: int, D_list=DEFAULT_D_LIST, ell_bound: int = 20) -> SearchRow:
    row = SearchRow(k)
    w = 2 * k - 2
    for p in candidate_primes(k):
        D = next((D for D in D_list if check_nonvanishing(k, p, D)), None)
        if D is None:
            continue
        row.primes.append(p)
        row.chi[p] = D
        row.t[p] = count_congruent_systems(w, p, ell_bound)
        row.hecke_separable[p] = hecke_field_separability(w, p)
    return row


def table1(k_min: int, k_max: int, D_list=DEFAULT_D_LIST, ell_bound: int = 20) -> list[SearchRow]:
    """Rows for every even k in [k_min, k_max] that has at least one admissible prime."""
    if k_min % 2 or k_max % 2:
        raise ValueError("k range must have even endpoints")
    rows = [search_row(k, D_list, ell_bound) for k in range(max(k_min, 4), k_max + 1, 2)]
    return [row for row in rows if row.primes]


def _collapse(values: list) -> str:
    distinct = list(dict.fromkeys(values))
    return ", ".join(str(v) for v in distinct)


def format_table(rows: list[SearchRow]) -> str:
    """Aligned plain-text table with rows k, 2k-2, p, chi, t."""
    labels = ["k", "2k-2", "p", "chi", "t"]
    columns = [
        [
            str(r.k),
            str(r.weight),
            ", ".join(str(p) for p in r.primes),
            _collapse([f"chi_{{{r.chi[p]}}}" for p in r.primes]),
            _collapse([r.t[p] for p in r.primes]),
        ]
        for r in rows
    ]
    label_w = max(len(s) for s in labels)
    widths = [max(len(cell) for cell in col) for col in columns]
    lines = []
    for i, label in enumerate(labels):
        cells = [col[i].center(w) for col, w in zip(columns, widths)]
        lines.append(" | ".join([label.ljust(label_w)] + cells).rstrip())
    return "\n".join(lines) + "\n"


def table_json(rows: list[SearchRow]) -> str:
    return json.dumps([r.to_json() for r in rows], indent=2, sort_keys=True) + "\n"
