"""Certify that the mod-l image of an elliptic curve is all of GL2(F_l).

Frobenius at a good prime p has trace a_p and determinant p in GL2(F_l). If
the image were a proper subgroup it would lie in a Borel subgroup, the
normalizer of a split or non-split Cartan subgroup, or an exceptional
subgroup (projective image A4, S4 or A5). Four witness classes rule these out:

  W1  disc = a_p^2 - 4p a nonzero square, a_p != 0        not in a non-split normalizer
  W2  disc a nonsquare, a_p != 0                          not Borel, not split normalizer
  W3  u = a_p^2/p not in {0, 1, 2, 4}, u^2 - 3u + 1 != 0  projective order > 5
  W4  the residues p mod l generate (Z/l)^*               determinant is surjective

Finding all four is a proof. Failing to find them at a finite budget proves
nothing, hence the verdict ``not_certified`` rather than "not surjective".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .curves import WeierstrassCurve
from .errors import BadReductionError, UnsupportedPrimeError
from .finite_linear import DiscClass, ElementInvariants, check_ell, invariants_from_trace_det
from .ntheory import primes_up_to, require_prime

DEFAULT_BUDGET = 1000
WITNESS_SLOTS = ("W1", "W2", "W3", "W4")


@lru_cache(maxsize=4096)
def _root_counts(p: int) -> np.ndarray:
    """1 + chi_p(v) for v in [0, p), i.e. the number of y with y^2 = v."""
    counts = np.zeros(p, dtype=np.int64)
    np.add.at(counts, (np.arange(p, dtype=np.int64) ** 2) % p, 1)
    return counts


@lru_cache(maxsize=8192)
def _cubic_part(A: int, p: int) -> np.ndarray:
    x = np.arange(p, dtype=np.int64)
    return (x * x % p * x + (A % p) * x) % p


def count_points(c: WeierstrassCurve, p: int) -> tuple[int, int]:
    """(#E(F_p), a_p) by summing the quadratic character over x."""
    require_prime(p, "p")
    if p in (2, 3):
        raise UnsupportedPrimeError("point counting needs p >= 5")
    if c.delta_E % p == 0:
        raise BadReductionError(f"p={p} divides the discriminant of {c}")
    values = (_cubic_part(c.A, p) + c.B % p) % p
    count = 1 + int(_root_counts(p)[values].sum())
    return count, p + 1 - count


@dataclass(frozen=True)
class FrobeniusSample:
    p: int
    a_p: int
    ell: int
    inv: ElementInvariants  # of any matrix with trace a_p and det p mod ell

    @property
    def p_mod_ell(self) -> int:
        return self.p % self.ell

    @property
    def disc_class_mod_ell(self) -> DiscClass:
        return self.inv.disc_class

    @property
    def u_mod_ell(self) -> int:
        return self.inv.u

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "a_p": self.a_p,
            "p_mod_ell": self.p_mod_ell,
            "disc_class_mod_ell": self.disc_class_mod_ell.value,
            "u_mod_ell": self.u_mod_ell,
        }


def frobenius_samples(c: WeierstrassCurve, ell: int, budget: int = DEFAULT_BUDGET) -> list[FrobeniusSample]:
    """Samples at every good prime 5 <= p <= budget other than ell, ascending."""
    check_ell(ell)
    c.check_nonsingular()
    df = c.delta_f
    out = []
    for p in primes_up_to(budget):
        if p < 5 or p == ell or df % p == 0:
            continue
        _, a_p = count_points(c, p)
        out.append(FrobeniusSample(p, a_p, ell, invariants_from_trace_det(a_p, p, ell)))
    return out


# Element-level witness predicates, shared by Frobenius samples and matrices.


def kills_nonsplit_normalizer(inv: ElementInvariants) -> bool:
    return inv.disc_class is DiscClass.SQUARE and inv.trace != 0


def kills_borel_and_split_normalizer(inv: ElementInvariants) -> bool:
    return inv.disc_class is DiscClass.NONSQUARE and inv.trace != 0


def kills_exceptional(inv: ElementInvariants, ell: int) -> bool:
    u = inv.u
    return u not in (0, 1, 2, 4) and (u * u - 3 * u + 1) % ell != 0


def _unit_subgroup(gens: Iterable[int], ell: int) -> set[int]:
    """Subgroup of (Z/ell)^* generated by gens."""
    group = {1}
    frontier = [1]
    gens = [g % ell for g in gens]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % ell
            if y not in group:
                group.add(y)
                frontier.append(y)
    return group


@dataclass
class SurjectivityVerdict:
    status: str
    witnesses: dict = field(default_factory=dict)
    missing: list[str] = field(default_factory=list)
    reason: str = ""
    budget: int = 0  # number of primes examined

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "witnesses": {k: self.witnesses.get(k) for k in WITNESS_SLOTS},
            "missing": list(self.missing),
            "budget": self.budget,
        }


def serre_test(samples: Sequence[FrobeniusSample], ell: int) -> SurjectivityVerdict:
    """Fold the samples into witnesses; certified iff all four slots fill.

    Each of W1-W3 records the first (smallest) prime satisfying it. W4 records
    the primes that each enlarged the generated subgroup of (Z/ell)^*.
    """
    check_ell(ell)
    if ell < 5:
        raise UnsupportedPrimeError("the maximal-subgroup criterion needs ell >= 5")
    found: dict = {}
    det_gens: list[int] = []
    generated = {1}
    for s in samples:
        inv = s.inv
        if "W1" not in found and kills_nonsplit_normalizer(inv):
            found["W1"] = s.p
        if "W2" not in found and kills_borel_and_split_normalizer(inv):
            found["W2"] = s.p
        if "W3" not in found and kills_exceptional(inv, ell):
            found["W3"] = s.p
        if len(generated) < ell - 1 and s.p_mod_ell not in generated:
            det_gens.append(s.p)
            generated = _unit_subgroup(det_gens, ell)
    if len(generated) == ell - 1:
        found["W4"] = det_gens
    missing = [k for k in WITNESS_SLOTS if k not in found]
    if missing:
        return SurjectivityVerdict(
            "not_certified", found, missing, "no witness for " + ", ".join(missing), len(samples)
        )
    return SurjectivityVerdict("certified", found, [], "", len(samples))


def certify(c: WeierstrassCurve, ell: int, budget: int = DEFAULT_BUDGET) -> SurjectivityVerdict:
    return serre_test(frobenius_samples(c, ell, budget), ell)


# Curves with a rational 13-isogeny have A = f13(t) * delta^2 for rational t, delta.


def f13_eval(t) -> Fraction:
    t = Fraction(t)
    return -3 * (t * t + t + 7) * (t * t + 4) * (t**4 - 235 * t**3 + 1211 * t**2 - 1660 * t + 6256)


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


@dataclass(frozen=True)
class ThirteenHit:
    t: Fraction
    delta_sq: Fraction

    def to_json(self) -> dict:
        return {"t": str(self.t), "delta_sq": str(self.delta_sq)}


def thirteen_family_scan(A: int, height_bound: int) -> list[ThirteenHit]:
    """Rationals t = r/s, |r|, s <= height_bound, with f13(t)/A a nonzero square.

    Results are ordered by (s, r).
    """
    if A == 0:
        raise ValueError("A must be nonzero")
    hits = []
    for s in range(1, height_bound + 1):
        for r in range(-height_bound, height_bound + 1):
            if math.gcd(r, s) != 1:
                continue
            t = Fraction(r, s)
            q = f13_eval(t) / A
            if q != 0 and _is_rational_square(q):
                hits.append(ThirteenHit(t, q))
    return hits
