import random
from fractions import Fraction

import pytest

from siegelcong.cohen import cohen_H
from siegelcong.eisenstein import EisensteinSpec, coeff, expansion
from siegelcong.quadform import HalfIntSym, TIndexedSeries, enumerate_reduced
from siegelcong.sklift import (
    EigenData,
    HalfIntegralData,
    MissingDataError,
    NonIntegralError,
    congruence_check,
    pseudo_eisenstein_data,
    sk_coeff,
    sk_expansion,
    theorem_sk_verify,
    validate_maass_relations,
)


@pytest.fixture(scope="module")
def pseudo10():
    return pseudo_eisenstein_data(10, 2000)


def test_sk_coeff_examples(pseudo10):
    h, phi = pseudo10
    assert sk_coeff(HalfIntSym(1, 0, 1), h, phi, 10) == Fraction(1385, 2)
    assert sk_coeff(HalfIntSym(1, 0, 4), h, phi, 10) == Fraction(1385, 2) * 131073
    one = HalfIntegralData.from_function(10, lambda N: 1 if N == 3 else 0, 10)
    assert sk_coeff(HalfIntSym(1, 1, 1), one, phi, 10) == 1
    with pytest.raises(ValueError):
        sk_coeff(HalfIntSym(1, 2, 1), h, phi, 10)


def test_sk_coeff_missing_data():
    h = HalfIntegralData(10, {3: Fraction(1)}, 3)
    phi = EigenData(18, {})
    with pytest.raises(MissingDataError):
        sk_coeff(HalfIntSym(1, 0, 1), h, phi, 10)
    with pytest.raises(MissingDataError):
        sk_coeff(HalfIntSym(1, 1, 3), HalfIntegralData(10, {3: Fraction(1)}, 3), phi, 10)


def test_data_validation():
    with pytest.raises(ValueError):
        HalfIntegralData(10, {5: Fraction(1)}, 5)
    with pytest.raises(ValueError):
        EigenData(18, {4: Fraction(1)})
    assert HalfIntegralData.loads(10, "3 1/2\n# note\n4 -7\n").values == {3: Fraction(1, 2), 4: -7}
    with pytest.raises(ValueError):
        EigenData.loads(18, "2 1 3\n")


def test_pseudo_lift_equals_eisenstein(pseudo10):
    for k in range(4, 21, 2):
        h, phi = pseudo10 if k == 10 else pseudo_eisenstein_data(k, 1000)
        spec = EisensteinSpec(k)
        for T in enumerate_reduced(1000):
            if T.content == 1:
                assert sk_coeff(T, h, phi, k) == coeff(spec, T)


def test_maass_relations(pseudo10):
    h, phi = pseudo10
    assert validate_maass_relations(h, phi, 10, 2000)
    bad = dict(h.values)
    bad[12] += 1
    assert not validate_maass_relations(HalfIntegralData(10, bad, h.bound), phi, 10, 2000)
    # no N q^2 fits under the bound
    assert validate_maass_relations(HalfIntegralData(10, {3: Fraction(5)}, 4), EigenData(18, {}), 10, 4)


def perturbed(series, key, delta):
    text = series.dumps()
    out = TIndexedSeries.loads(text)
    if key[0] == "rank0":
        out.rank0 += delta
    elif key[0] == "rank1":
        out.rank1[key[1]] += delta
    else:
        out.rank2[key[1:]] += delta
    return out


def test_congruence_check_self_and_lift():
    G = expansion(EisensteinSpec(10), 200)
    assert congruence_check(G, G, 43867).ok
    h, phi = pseudo_eisenstein_data(10, 200)
    lift = sk_expansion(h, phi, 10, 200, degenerate=True)
    r = congruence_check(lift, G, 43867)
    assert r.ok and r.checked == 1 + 200 + len(enumerate_reduced(200))


def test_congruence_check_first_failure():
    G = expansion(EisensteinSpec(10), 100)
    H = perturbed(perturbed(G, ("rank2", 2, 1, 3), 1), ("rank2", 3, 1, 3), 1)
    r = congruence_check(G, H, 43867)
    assert not r.ok
    assert r.first_failure.key == ("rank2", 2, 1, 3)
    assert r.first_failure.ord_gap == 0
    assert r.to_json()["first_failure"]["key"] == ["rank2", 2, 1, 3]
    # multiples of p stay congruent
    assert congruence_check(G, perturbed(G, ("rank1", 5), 43867), 43867).ok


def test_congruence_check_symmetry_and_transitivity():
    rng = random.Random(5)
    p = 43867
    G = expansion(EisensteinSpec(10), 60)
    keys = [key for key, _ in G.items()]
    for _ in range(20):
        A = perturbed(G, rng.choice(keys), p * rng.randint(-5, 5))
        B = perturbed(A, rng.choice(keys), p * rng.randint(-5, 5))
        C = perturbed(B, rng.choice(keys), rng.choice([0, 1]))
        assert congruence_check(A, B, p).ok and congruence_check(B, A, p).ok
        assert congruence_check(A, C, p).ok == congruence_check(C, A, p).ok == congruence_check(B, C, p).ok


def test_congruence_check_errors():
    G = expansion(EisensteinSpec(10), 20)
    with pytest.raises(NonIntegralError):
        congruence_check(G, G, 7)
    with pytest.raises(ValueError):
        congruence_check(G, expansion(EisensteinSpec(12), 20), 43867)
    with pytest.raises(ValueError):
        congruence_check(G, G, 10)


def test_theorem_sk_verify_examples():
    r = theorem_sk_verify(10, 43867, -4, 400)
    assert r.ok and r.failed_stage is None
    assert r.congruence.checked == 1 + 400 + len(enumerate_reduced(400))
    assert theorem_sk_verify(10, 11, -4, 50).failed_stage == "p - 1 > 2k - 2"
    assert theorem_sk_verify(12, 131, -4, 200).ok
    assert theorem_sk_verify(10, 43867, -12, 50).failed_stage == "D fundamental"
    assert theorem_sk_verify(10, 43868, -4, 50).failed_stage == "p prime"
    assert theorem_sk_verify(10, 5, -4, 50).failed_stage == "p >= 7"
    assert theorem_sk_verify(12, 691, -4, 50).failed_stage == "ord_p(B_{2k-2}) > 0"
    assert theorem_sk_verify(10, 43867, -4, 50).to_json()["stages"][-1]["name"] == "congruence"


def test_theorem_sk_verify_missing_data_fails_cleanly():
    h = HalfIntegralData(10, {3: cohen_H(9, 3)}, 3)
    r = theorem_sk_verify(10, 43867, -4, 50, h=h)
    assert r.failed_stage == "congruence"


def test_congruence_propagates_through_lift():
    # h' = h mod p and phi' = phi mod p give lifts congruent mod p
    rng = random.Random(8)
    p, k = 43867, 10
    h, phi = pseudo_eisenstein_data(k, 300)
    for _ in range(5):
        h2 = HalfIntegralData(k, {N: v + p * rng.randint(-3, 3) for N, v in h.values.items()}, h.bound)
        phi2 = EigenData(phi.weight, {q: v + p * rng.randint(-3, 3) for q, v in phi.values.items()})
        a = sk_expansion(h, phi, k, 300, degenerate=True)
        b = sk_expansion(h2, phi2, k, 300, degenerate=True)
        assert congruence_check(a, b, p).ok
