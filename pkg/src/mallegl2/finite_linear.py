"""Arithmetic in GL2(F_l) for a prime l.

Elements are immutable 2x2 matrices with entries reduced into [0, l-1], so
structural equality is matrix equality. Conjugacy-class representatives use the
usual four families (central, non-semisimple, split, non-split).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import ModulusMismatchError, NotInvertibleError, NotPrimeError
from .ntheory import require_prime

# Matrix kernel uses plain ints; keep l well inside word range.
MAX_ELL = 1 << 15


def check_ell(ell: int) -> int:
    """Validate l as a prime usable by the matrix kernel and return it."""
    require_prime(ell, "ell")
    if ell >= MAX_ELL:
        raise NotPrimeError(f"ell={ell} exceeds the supported bound {MAX_ELL}")
    return ell


class DiscClass(str, enum.Enum):
    ZERO = "zero"
    SQUARE = "nonzero-square"
    NONSQUARE = "nonsquare"


def disc_class(value: int, ell: int) -> DiscClass:
    """Classify a residue mod l as zero, a nonzero square, or a nonsquare."""
    value %= ell
    if value == 0:
        return DiscClass.ZERO
    if ell == 2 or pow(value, (ell - 1) // 2, ell) == 1:
        return DiscClass.SQUARE
    return DiscClass.NONSQUARE


@dataclass(frozen=True, slots=True)
class Gl2Element:
    """The matrix [[a, b], [c, d]] over F_ell."""

    a: int
    b: int
    c: int
    d: int
    ell: int

    @classmethod
    def of(cls, ell: int, a: int, b: int, c: int, d: int) -> Gl2Element:
        """Reduce entries mod ell and check invertibility."""
        m = cls(a % ell, b % ell, c % ell, d % ell, ell)
        if m.det == 0:
            raise NotInvertibleError(f"singular matrix {m.rows} mod {ell}")
        return m

    @classmethod
    def identity(cls, ell: int) -> Gl2Element:
        return cls(1, 0, 0, 1, ell)

    @classmethod
    def scalar(cls, ell: int, s: int) -> Gl2Element:
        return cls.of(ell, s, 0, 0, s)

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.ell

    @property
    def trace(self) -> int:
        return (self.a + self.d) % self.ell

    @property
    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def is_identity(self) -> bool:
        return self.key == (1, 0, 0, 1)

    def is_scalar(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def __mul__(self, other: Gl2Element) -> Gl2Element:
        return gl2_mul(self, other)

    def inverse(self) -> Gl2Element:
        p = self.ell
        inv = pow(self.det, -1, p)
        return Gl2Element(self.d * inv % p, -self.b * inv % p, -self.c * inv % p, self.a * inv % p, p)

    def __pow__(self, n: int) -> Gl2Element:
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Gl2Element.identity(self.ell), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def projective_key(self) -> tuple[int, int, int, int]:
        """Entries scaled so the first nonzero one (row-major) is 1."""
        p = self.ell
        lead = next(x for x in self.key if x)
        s = pow(lead, -1, p)
        return (self.a * s % p, self.b * s % p, self.c * s % p, self.d * s % p)

    def projective_canonical(self) -> Gl2Element:
        return Gl2Element(*self.projective_key(), self.ell)

    def order(self) -> int:
        """Multiplicative order in GL2(F_ell)."""
        one = Gl2Element.identity(self.ell)
        x, n = self, 1
        while x != one:
            x = x * self
            n += 1
        return n

    def projective_order(self) -> int:
        """Order of the image in PGL2(F_ell)."""
        x, n = self, 1
        while not x.is_scalar():
            x = x * self
            n += 1
        return n

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}


def inertia_generator(ell: int) -> Gl2Element:
    """The transvection [[1, 1], [0, 1]]; generates an l-Sylow subgroup."""
    return Gl2Element.of(ell, 1, 1, 0, 1)


def reflection(ell: int) -> Gl2Element:
    """diag(1, -1), the minimal-index witness for the natural action."""
    return Gl2Element.of(ell, 1, 0, 0, -1)


def gl2_order(ell: int) -> int:
    check_ell(ell)
    return (ell * ell - 1) * (ell * ell - ell)


def pgl2_order(ell: int) -> int:
    return gl2_order(ell) // (ell - 1)


def gl2_mul(m: Gl2Element, n: Gl2Element) -> Gl2Element:
    if m.ell != n.ell:
        raise ModulusMismatchError(f"cannot multiply elements mod {m.ell} and mod {n.ell}")
    p = m.ell
    return Gl2Element(
        (m.a * n.a + m.b * n.c) % p,
        (m.a * n.b + m.b * n.d) % p,
        (m.c * n.a + m.d * n.c) % p,
        (m.c * n.b + m.d * n.d) % p,
        p,
    )


@dataclass(frozen=True)
class ElementInvariants:
    trace: int
    det: int
    disc: int
    u: int
    disc_class: DiscClass


def invariants_from_trace_det(trace: int, det: int, ell: int) -> ElementInvariants:
    """Invariants of any element with the given trace and (nonzero) determinant."""
    trace %= ell
    det %= ell
    disc = (trace * trace - 4 * det) % ell
    u = trace * trace * pow(det, -1, ell) % ell
    return ElementInvariants(trace, det, disc, u, disc_class(disc, ell))


def invariants_of(m: Gl2Element) -> ElementInvariants:
    return invariants_from_trace_det(m.trace, m.det, m.ell)


def enumerate_gl2(ell: int) -> Iterator[Gl2Element]:
    """All of GL2(F_ell), lexicographic in (a, b, c, d)."""
    return iter(_gl2_elements(check_ell(ell)))


@lru_cache(maxsize=4)
def _gl2_elements(ell: int) -> tuple[Gl2Element, ...]:
    r = range(ell)
    return tuple(
        Gl2Element(a, b, c, d, ell)
        for a in r
        for b in r
        for c in r
        for d in r
        if (a * d - b * c) % ell
    )


def enumerate_pgl2(ell: int) -> Iterator[Gl2Element]:
    """Canonical representatives of PGL2(F_ell), lexicographic."""
    return iter(_pgl2_elements(check_ell(ell)))


@lru_cache(maxsize=4)
def _pgl2_elements(ell: int) -> tuple[Gl2Element, ...]:
    return tuple(m for m in _gl2_elements(ell) if next(x for x in m.key if x) == 1)


class ClassFamily(enum.IntEnum):
    CENTRAL = 0
    NON_SEMISIMPLE = 1
    SPLIT = 2
    NON_SPLIT = 3


@dataclass(frozen=True)
class ConjugacyClass:
    family: ClassFamily
    params: tuple[int, ...]
    rep: Gl2Element
    size: int


def conjugacy_class_reps(ell: int) -> list[ConjugacyClass]:
    """One representative per conjugacy class of GL2(F_ell), with class sizes.

    Ordered by (family, parameters):
      central       a*I                      size 1
      non-semisimple [[a, 1], [0, a]]        size l^2 - 1
      split         diag(a, b), a < b        size l(l + 1)
      non-split     companion of x^2 - t x + n, irreducible;  size l^2 - l
    """
    return list(_class_reps(check_ell(ell)))


@lru_cache(maxsize=16)
def _class_reps(ell: int) -> tuple[ConjugacyClass, ...]:
    out = []
    units = range(1, ell)
    for a in units:
        out.append(ConjugacyClass(ClassFamily.CENTRAL, (a,), Gl2Element(a, 0, 0, a, ell), 1))
    for a in units:
        out.append(
            ConjugacyClass(ClassFamily.NON_SEMISIMPLE, (a,), Gl2Element(a, 1, 0, a, ell), ell * ell - 1)
        )
    for a in units:
        for b in range(a + 1, ell):
            out.append(ConjugacyClass(ClassFamily.SPLIT, (a, b), Gl2Element(a, 0, 0, b, ell), ell * (ell + 1)))
    for t in range(ell):
        for n in units:
            if _is_irreducible_quadratic(t, n, ell):
                # companion matrix of x^2 - t x + n
                rep = Gl2Element(0, (-n) % ell, 1, t, ell)
                out.append(ConjugacyClass(ClassFamily.NON_SPLIT, (t, n), rep, ell * ell - ell))
    return tuple(out)


def _is_irreducible_quadratic(t: int, n: int, ell: int) -> bool:
    return all((x * x - t * x + n) % ell for x in range(ell))
