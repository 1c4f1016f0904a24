import json
import math

import pytest

from mallegl2.errors import DomainError, InsufficientDataError
from mallegl2.finite_linear import inertia_generator
from mallegl2.harness import (
    FamilyConfig,
    FamilyRecord,
    count_below,
    distinctness_check,
    fit_exponent,
    parse_x,
    run_family,
    wild_constant,
)
from mallegl2.permrep import act, build_rep
from oracles import union_find_orbits


def _record(B, df, support, bound):
    return FamilyRecord(B, df, True, None, bound, tuple(support), None)


def test_parse_x():
    assert parse_x("10^3") == 1000
    assert parse_x("31**2") == 961
    assert parse_x(" 12345 ") == 12345
    assert parse_x("10^96") == 10**96
    with pytest.raises(DomainError):
        parse_x("1e96")


def test_config_validation():
    with pytest.raises(DomainError):
        FamilyConfig(13, 0)
    with pytest.raises(DomainError):
        FamilyConfig(13, 1, x_grid=("10^5", "10^4"))
    with pytest.raises(DomainError):
        FamilyConfig(13, 1, b_min=0)
    with pytest.raises(DomainError):
        FamilyConfig(13, 1, c_policy="huge")


def test_small_family_example():
    cfg = FamilyConfig(13, 1, "projective", b_max=4, x_grid=("31^12", "247^12"))
    rep = run_family(cfg)
    counted = lambda x: [r.B for r in rep.records if r.disc_bound is not None and r.disc_bound <= x]
    assert counted(31**12) == [1]
    assert counted(247**12) == [1, 3]
    assert [r.excluded_reason for r in rep.records] == [None, "non-squarefree", None, "non-squarefree"]
    assert rep.counts == [(31**12, 1), (247**12, 2)]
    assert rep.slope is None  # fewer than three grid points


def test_empty_budget_cannot_certify():
    rep = run_family(FamilyConfig(13, 1, "projective", b_max=1, budget=3))
    (r,) = rep.records
    assert r.excluded_reason == "not-certified" and r.disc_bound is None


def test_gating_is_rep_independent():
    nat = run_family(FamilyConfig(13, 1, "natural", b_max=50, budget=500))
    proj = run_family(FamilyConfig(13, 1, "projective", b_max=50, budget=500))
    assert {r.B for r in nat.counted} <= {r.B for r in proj.counted}


def test_disc_bound_uses_orbit_count_exponent():
    rep = run_family(FamilyConfig(13, 1, "natural", b_max=30, budget=300))
    perm = act(build_rep(13, "natural"), inertia_generator(13))
    k = perm.degree - union_find_orbits(perm.images)
    assert k == rep.inertia_ind == 144
    for r in rep.counted:
        assert r.disc_bound == abs(r.delta_f) ** k
        assert r.squarefree and r.certified
        assert math.prod(r.support) == abs(r.delta_f)


def test_wild_bound_policy():
    c = wild_constant(13, 14, "wild-bound")
    assert c == 2 ** (13 + 14 * 3) * 3 ** (13 + 14 * 2) * 13 ** (13 + 14 * 1)
    rep = run_family(FamilyConfig(13, 1, "projective", b_max=3, c_policy="wild-bound"))
    assert rep.records[0].disc_bound == c * 31**12


def test_count_below_examples():
    recs = [_record(1, 31, [31], 31**12), _record(3, 247, [13, 19], 247**12)]
    assert count_below(recs, 31**12) == 1
    assert count_below(recs, 30**12) == 0
    assert count_below(recs, 247**12) == 2
    assert count_below(recs, "247^12") == 2


def test_counts_monotone_in_x_and_range():
    grid = tuple(f"10^{k}" for k in (24, 36, 48, 60))
    small = run_family(FamilyConfig(13, 1, "projective", b_max=60, budget=300, x_grid=grid))
    large = run_family(FamilyConfig(13, 1, "projective", b_max=120, budget=300, x_grid=grid))
    cs = [n for _, n in small.counts]
    assert cs == sorted(cs)
    assert all(a <= b for (_, a), (_, b) in zip(small.counts, large.counts))


def test_fit_exponent_examples():
    fit = fit_exponent([(10**24, 10), (10**48, 100)])
    assert fit.value == pytest.approx(1 / 24, abs=1e-15)
    assert fit_exponent([(10, 5), (10**5, 5), (10**9, 5)]).value == 0
    pts = [(x, x ** (1 / 288)) for x in (10.0**50, 10.0**100, 10.0**200)]
    fit = fit_exponent(pts)
    assert abs(fit.value - 1 / 288) < 1e-12
    assert fit.stderr < 1e-12


def test_fit_exponent_insufficient():
    with pytest.raises(InsufficientDataError):
        fit_exponent([(10, 1)])
    with pytest.raises(InsufficientDataError):
        fit_exponent([(10, 0), (100, 3)])


def test_distinctness_examples():
    assert distinctness_check([_record(1, 31, [31], 1), _record(3, 247, [13, 19], 2)]).passed
    bad = distinctness_check([_record(1, 31, [31], 1), _record(5, 31, [31], 2)])
    assert not bad.passed and bad.offending == [(1, 5)]
    assert distinctness_check([]).passed


def test_parallel_matches_serial():
    kw = dict(ell=13, A=2, rep="projective", b_max=80, budget=300, x_grid=("10^24", "10^36", "10^48"))
    serial = run_family(FamilyConfig(**kw, threads=1)).dumps()
    parallel = run_family(FamilyConfig(**kw, threads=2)).dumps()
    assert serial == parallel


def test_report_json_round_trip():
    rep = run_family(FamilyConfig(13, 1, "projective", b_max=40, budget=200, x_grid=("10^12", "10^24", "10^36")))
    text = rep.dumps()
    obj = json.loads(text)
    assert set(obj) == {"config", "records", "counts", "slope", "distinctness"}
    assert "threads" not in obj["config"]
    assert json.dumps(obj, sort_keys=True, indent=2) == text
