"""Integer invariants of y^2 = x^3 + A x + B and a squarefree sieve over B.

``delta_f`` is the cubic discriminant 4A^3 + 27B^2; the curve discriminant is
``delta_E = -16 * delta_f``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError, SingularCurveError
from .ntheory import factorize, primes_up_to, require_prime, sqrt_mod_prime

# Primes below this bound are handled by the congruence pre-pass in sieve_family.
SIEVE_PRIME_BOUND = 10_000


@dataclass(frozen=True)
class WeierstrassCurve:
    A: int
    B: int

    @property
    def delta_f(self) -> int:
        return 4 * self.A**3 + 27 * self.B**2

    @property
    def delta_E(self) -> int:
        return -16 * self.delta_f

    def check_nonsingular(self) -> WeierstrassCurve:
        if self.delta_f == 0:
            raise SingularCurveError(f"y^2 = x^3 + {self.A}x + {self.B} is singular")
        return self


@dataclass(frozen=True)
class CurveInvariants:
    delta_f: int
    delta_E: int
    height: int
    squarefree_delta_f: bool
    factorization: dict[int, int] = field(default_factory=dict)


def curve_invariants(c: WeierstrassCurve) -> CurveInvariants:
    c.check_nonsingular()
    df = c.delta_f
    fac = factorize(df)
    return CurveInvariants(
        delta_f=df,
        delta_E=-16 * df,
        height=max(4 * abs(c.A) ** 3, 27 * c.B**2),
        squarefree_delta_f=all(e == 1 for e in fac.values()),
        factorization=fac,
    )


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise DomainError("valuation of 0 is infinite")
    n, v = abs(n), 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def j_valuation(c: WeierstrassCurve, p: int) -> int | float:
    """nu_p(j(E)) with j = 2^8 3^3 A^3 / delta_f up to sign; math.inf when j = 0."""
    require_prime(p, "p")
    c.check_nonsingular()
    if c.A == 0:
        return math.inf
    return valuation(2**8 * 3**3 * c.A**3, p) - valuation(c.delta_f, p)


def is_squarefree(n: int) -> bool:
    if n == 0:
        raise DomainError("squarefreeness of 0 is undefined")
    return all(e == 1 for e in factorize(n).values())


@dataclass(frozen=True)
class SieveRow:
    B: int
    delta_f: int
    squarefree: bool


@dataclass(frozen=True)
class SieveResult:
    A: int
    b_min: int
    b_max: int
    rows: list[SieveRow]
    skipped: list[int]  # B = 0 or singular

    @property
    def count(self) -> int:
        return len(self.rows)

    @property
    def squarefree_count(self) -> int:
        return sum(r.squarefree for r in self.rows)

    @property
    def density(self) -> float:
        return self.squarefree_count / self.count if self.rows else 0.0

    def summary_json(self) -> dict:
        return {
            "A": self.A,
            "range": [self.b_min, self.b_max],
            "count": self.count,
            "squarefree_count": self.squarefree_count,
            "density": self.density,
        }


def square_divisor_residues(A: int, p: int) -> list[int]:
    """Residues B mod p^2 with p^2 | 4A^3 + 27B^2, ascending."""
    m = p * p
    target = -4 * A**3
    if p <= 3 or A % p == 0:
        # p | 27 or p | A: the quadratic is degenerate mod p; enumerate
        return [b for b in range(m) if (27 * b * b - target) % m == 0]
    c = target * pow(27, -1, m) % m  # B^2 = c mod p^2, p does not divide c
    r = sqrt_mod_prime(c, p)
    if r is None:
        return []
    # Hensel: one Newton step lifts a simple root mod p to mod p^2
    r = (r - (r * r - c) * pow(2 * r, -1, m)) % m
    return sorted({r, (-r) % m})


def sieve_family(A: int, b_min: int, b_max: int) -> SieveResult:
    """Squarefree flags of delta_f(B) = 4A^3 + 27B^2 for B in [b_min, b_max].

    Small square divisors are found by congruence; values that survive are
    factored in full, so every verdict is exact.
    """
    if A == 0:
        raise DomainError("the family construction needs A != 0")
    if b_max < b_min:
        raise DomainError(f"empty B range [{b_min}, {b_max}]")
    size = b_max - b_min + 1
    marked = bytearray(size)
    largest = 4 * abs(A) ** 3 + 27 * max(b_min * b_min, b_max * b_max)
    bound = min(SIEVE_PRIME_BOUND, math.isqrt(largest) + 1)
    for p in primes_up_to(bound):
        m = p * p
        if m > largest:
            break
        for r in square_divisor_residues(A, p):
            start = b_min + (r - b_min) % m
            for b in range(start, b_max + 1, m):
                marked[b - b_min] = 1

    rows, skipped = [], []
    for i, b in enumerate(range(b_min, b_max + 1)):
        df = 4 * A**3 + 27 * b * b
        if b == 0 or df == 0:
            skipped.append(b)
            continue
        sf = False if marked[i] else is_squarefree(df)
        rows.append(SieveRow(b, df, sf))
    return SieveResult(A, b_min, b_max, rows, skipped)
