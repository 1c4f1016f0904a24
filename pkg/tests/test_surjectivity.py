import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from mallegl2.curves import WeierstrassCurve
from mallegl2.errors import BadReductionError, UnsupportedPrimeError
from mallegl2.finite_linear import DiscClass, enumerate_gl2, invariants_of
from mallegl2.ntheory import primes_up_to
from mallegl2.surjectivity import (
    certify,
    count_points,
    f13_eval,
    frobenius_samples,
    kills_borel_and_split_normalizer,
    kills_exceptional,
    kills_nonsplit_normalizer,
    serre_test,
    thirteen_family_scan,
)
from oracles import naive_point_count
from subgroups import borel, is_subgroup, nonsplit_cartan_normalizer, split_cartan_normalizer


def test_count_points_examples():
    assert count_points(WeierstrassCurve(1, 1), 5) == (9, -3)
    assert count_points(WeierstrassCurve(0, 1), 5) == (6, 0)
    _, a = count_points(WeierstrassCurve(1, 1), 101)
    assert abs(a) <= 20


def test_count_points_errors():
    with pytest.raises(BadReductionError):
        count_points(WeierstrassCurve(1, 1), 31)
    with pytest.raises(UnsupportedPrimeError):
        count_points(WeierstrassCurve(1, 1), 3)


def test_count_points_matches_naive_small():
    rng = random.Random(7)
    for _ in range(10):
        A, B = rng.randint(-50, 50), rng.randint(-50, 50)
        c = WeierstrassCurve(A, B)
        if c.delta_f == 0:
            continue
        for p in primes_up_to(60):
            if p < 5 or c.delta_f % p == 0:
                continue
            n, a = count_points(c, p)
            assert n == naive_point_count(A, B, p)
            assert a * a <= 4 * p


def test_frobenius_samples_examples():
    (s,) = frobenius_samples(WeierstrassCurve(1, 1), 13, 5)
    assert (s.p, s.a_p, s.p_mod_ell) == (5, -3, 5)
    assert s.inv.disc == 2 and s.disc_class_mod_ell is DiscClass.NONSQUARE
    assert s.u_mod_ell == 7
    assert frobenius_samples(WeierstrassCurve(1, 1), 13, 4) == []
    ps = [s.p for s in frobenius_samples(WeierstrassCurve(1, 1), 13, 31)]
    assert 31 not in ps and 13 not in ps and ps[-1] == 29


def test_certifies_positive_control():
    v = certify(WeierstrassCurve(1, 1), 13, 1000)
    assert v.certified and v.missing == []
    assert v.witnesses["W2"] == 5 and v.witnesses["W3"] == 5


def test_cm_negative_control():
    samples = frobenius_samples(WeierstrassCurve(0, 1), 13, 10_000)
    v = serre_test(samples, 13)
    assert v.status == "not_certified" and "W2" in v.missing
    assert all(s.a_p == 0 for s in samples if s.p % 3 == 2)
    assert all(s.disc_class_mod_ell is not DiscClass.NONSQUARE for s in samples if s.p % 3 == 1)


def test_empty_samples():
    v = serre_test([], 13)
    assert v.status == "not_certified" and v.missing == ["W1", "W2", "W3", "W4"]


def test_small_ell_rejected():
    with pytest.raises(UnsupportedPrimeError):
        serre_test([], 3)


def test_witnesses_satisfy_predicates():
    c = WeierstrassCurve(-7, 10)
    samples = frobenius_samples(c, 17, 1000)
    v = serre_test(samples, 17)
    by_p = {s.p: s for s in samples}
    assert kills_nonsplit_normalizer(by_p[v.witnesses["W1"]].inv)
    assert kills_borel_and_split_normalizer(by_p[v.witnesses["W2"]].inv)
    assert kills_exceptional(by_p[v.witnesses["W3"]].inv, 17)
    assert all(p in by_p for p in v.witnesses["W4"])


@settings(max_examples=25, deadline=None)
@given(st.integers(-30, 30).filter(bool), st.integers(1, 60), st.integers(5, 200))
def test_monotone(A, B, cut):
    c = WeierstrassCurve(A, B)
    if c.delta_f == 0:
        return
    samples = frobenius_samples(c, 13, 400)
    if serre_test(samples[:cut], 13).certified:
        assert serre_test(samples, 13).certified


@pytest.mark.parametrize("ell", [7, 13])
def test_explicit_subgroups_are_subgroups(ell):
    assert len(borel(ell)) == ell * (ell - 1) ** 2
    assert len(split_cartan_normalizer(ell)) == 2 * (ell - 1) ** 2
    assert len(nonsplit_cartan_normalizer(ell)) == 2 * (ell * ell - 1)
    if ell == 7:
        for h in (borel(ell), split_cartan_normalizer(ell), nonsplit_cartan_normalizer(ell)):
            assert is_subgroup(h)


@pytest.mark.parametrize("ell", [7, 13])
def test_subgroups_lack_their_witness(ell):
    assert not any(kills_borel_and_split_normalizer(invariants_of(m)) for m in borel(ell))
    assert not any(kills_borel_and_split_normalizer(invariants_of(m)) for m in split_cartan_normalizer(ell))
    assert not any(kills_nonsplit_normalizer(invariants_of(m)) for m in nonsplit_cartan_normalizer(ell))


def test_u_classification_ell7():
    for m in enumerate_gl2(7):
        small_order = m.projective_order() in (1, 2, 3, 4, 5, 7)
        assert small_order == (not kills_exceptional(invariants_of(m), 7))


@pytest.mark.parametrize(
    "t,expected", [(0, -525504), (1, -752355), (-1, -983115)]
)
def test_f13_values(t, expected):
    assert f13_eval(t) == expected


def test_f13_matches_sympy_expansion():
    x = sympy.symbols("t")
    poly = sympy.expand(-3 * (x**2 + x + 7) * (x**2 + 4) * (x**4 - 235 * x**3 + 1211 * x**2 - 1660 * x + 6256))
    for t in (Fraction(3, 7), Fraction(-11, 2), Fraction(100)):
        assert f13_eval(t) == Fraction(str(poly.subs(x, sympy.Rational(t.numerator, t.denominator))))


def _scan_oracle(A, bound):
    hits = []
    for s in range(1, bound + 1):
        for r in range(-bound, bound + 1):
            if sympy.gcd(r, s) != 1:
                continue
            q = sympy.Rational(r, s)
            v = sympy.Rational(int(f13_eval(Fraction(r, s)).numerator), int(f13_eval(Fraction(r, s)).denominator)) / A
            if v > 0 and sympy.sqrt(v).is_rational:
                hits.append(q)
    return hits


def test_thirteen_scan_examples():
    assert thirteen_family_scan(1, 10) == []
    assert _scan_oracle(1, 10) == []
    hits = thirteen_family_scan(f13_eval(0).numerator, 1)
    assert any(h.t == 0 and h.delta_sq == 1 for h in hits)
    assert thirteen_family_scan(1, 0) == []


def test_thirteen_scan_agrees_with_oracle():
    scaled = f13_eval(Fraction(2, 3)) * 3**8  # f13(2/3)/A = 1/81^2
    assert scaled.denominator == 1
    A = scaled.numerator
    ours = [h.t for h in thirteen_family_scan(A, 4)]
    assert Fraction(2, 3) in ours
    assert [Fraction(int(q.p), int(q.q)) for q in _scan_oracle(A, 4)] == ours
