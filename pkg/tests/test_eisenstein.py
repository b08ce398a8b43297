from fractions import Fraction
from math import gcd

import pytest

from siegelcong.arith import fundamental_decomposition, is_prime, kronecker, ord_p
from siegelcong.bernoulli import L_neg, bernoulli
from siegelcong.cohen import cohen_H
from siegelcong.eisenstein import (
    EisensteinSpec,
    check_integrality,
    coeff,
    degenerate_vanishing,
    expansion,
)
from siegelcong.quadform import HalfIntSym, enumerate_reduced


def H_oracle(r, N):
    """H(r, N) from the fundamental L-value and the Moebius divisor sum."""
    if N == 0:
        return -bernoulli(2 * r) / (2 * r)
    if N % 4 in (1, 2):
        return Fraction(0)
    D, f = fundamental_decomposition(N)
    k = r + 1
    total = 0
    for d in range(1, f + 1):
        if f % d:
            continue
        sq = [q for q in range(2, d + 1) if d % (q * q) == 0]
        if sq:
            continue
        mu = (-1) ** sum(1 for q in range(2, d + 1) if d % q == 0 and is_prime(q))
        e = f // d
        total += mu * kronecker(D, d) * d ** (k - 2) * sum(x ** (2 * k - 3) for x in range(1, e + 1) if e % x == 0)
    return L_neg(r, D) * total


def content_sum_oracle(k, T):
    a, b, c = T
    g = gcd(gcd(a, b), c)
    N = 4 * a * c - b * b
    return sum((e ** (k - 1) * H_oracle(k - 1, N // (e * e)) for e in range(1, g + 1) if g % e == 0), Fraction(0))


def test_k10_examples():
    spec = EisensteinSpec(10)
    assert coeff(spec, None) == Fraction(43867, 3792096)
    assert coeff(spec, 1) == Fraction(-43867, 14364)
    assert coeff(spec, HalfIntSym(1, 0, 1)) == Fraction(1385, 2)
    assert coeff(spec, HalfIntSym(1, 1, 1)) == cohen_H(9, 3)
    assert coeff(spec, HalfIntSym(0, 0, 0)) == coeff(spec, None)
    assert coeff(spec, HalfIntSym(4, 4, 1)) == coeff(spec, 1)


def test_rank1_via_invariant():
    spec = EisensteinSpec(12)
    for n in range(1, 30):
        T = HalfIntSym(n * 4, n * 4, n)  # n (2, 1)(2, 1)^t
        assert coeff(spec, T) == coeff(spec, n)


def test_spec_validation():
    for bad in (2, 3, 11):
        with pytest.raises(ValueError):
            EisensteinSpec(bad)
    with pytest.raises(ValueError):
        EisensteinSpec(10, "bogus")
    with pytest.raises(ValueError):
        coeff(EisensteinSpec(10), 0)


def test_expansion_entry_count():
    for max_det in (3, 4, 50, 400):
        s = expansion(EisensteinSpec(10), max_det)
        assert len(list(s.items())) == 1 + max_det + len(enumerate_reduced(max_det))
    with pytest.raises(ValueError):
        expansion(EisensteinSpec(10), 2)


def test_content_sum_matches_oracle():
    for k in (4, 10, 12):
        for T in enumerate_reduced(300):
            assert coeff(EisensteinSpec(k), T) == content_sum_oracle(k, T.as_tuple()), (k, T)


def test_variants_agree_on_primitive_forms():
    for k in (10, 12):
        cs, do = EisensteinSpec(k, "content-sum"), EisensteinSpec(k, "det-only")
        for T in enumerate_reduced(2000):
            if T.content == 1:
                assert coeff(cs, T) == coeff(do, T)


def test_variants_disagree_on_imprimitive_form():
    T = HalfIntSym(2, 2, 2)
    cs = coeff(EisensteinSpec(10, "content-sum"), T)
    do = coeff(EisensteinSpec(10, "det-only"), T)
    assert do == cohen_H(9, 12)
    assert cs == cohen_H(9, 12) + 2**9 * cohen_H(9, 3)
    assert cs != do


def test_det_only_depends_only_on_det():
    spec = EisensteinSpec(10, "det-only")
    seen = {}
    for T in enumerate_reduced(500):
        v = coeff(spec, T)
        assert seen.setdefault(T.det2, v) == v


def test_check_integrality_examples():
    r = check_integrality(EisensteinSpec(10), 43867, 400)
    assert r.ok and r.checked == 1 + 400 + len(enumerate_reduced(400))
    assert check_integrality(EisensteinSpec(4), 11, 100).ok
    with pytest.raises(ValueError):
        check_integrality(EisensteinSpec(10), 7, 50)
    with pytest.raises(ValueError):
        check_integrality(EisensteinSpec(10), 21, 50)


def test_integrality_detects_small_prime_denominators():
    # p = 2k - 1 is excluded by the hypothesis and shows up in denominators
    spec = EisensteinSpec(4)
    denoms = [v.denominator for _, v in expansion(spec, 50).items()]
    assert any(d % 7 == 0 for d in denoms)


def test_degenerate_vanishing_examples():
    assert degenerate_vanishing(EisensteinSpec(10), 43867, 400)
    assert not degenerate_vanishing(EisensteinSpec(10), 5, 400)


def test_degenerate_vanishing_matches_direct_scan():
    for k, p in ((12, 691), (12, 131), (12, 593), (16, 1721), (10, 43867)):
        s = expansion(EisensteinSpec(k), 100)
        direct = ord_p(s.rank0, p) >= 1 and all(ord_p(v, p) >= 1 for v in s.rank1.values())
        assert degenerate_vanishing(EisensteinSpec(k), p, 100) == direct
