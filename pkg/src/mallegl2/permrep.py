"""Faithful transitive permutation representations of GL2(F_l) and PGL2(F_l).

Supported actions:
  natural     GL2 on nonzero column vectors (x, y), degree l^2 - 1
  projective  PGL2 on P^1(F_l), points [1:t] then [0:1], degree l + 1
  regular     left multiplication on the group itself
  coset       left multiplication on the left cosets gH of a subgroup H
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ClosureError, FaithfulnessError, ModulusMismatchError
from .finite_linear import (
    Gl2Element,
    _class_reps,
    _gl2_elements,
    _pgl2_elements,
    check_ell,
)

# Above this degree the regular action is evaluated through element orders.
REGULAR_SHORTCUT_DEGREE = 10_000


class Kind(str, enum.Enum):
    NATURAL = "natural"
    PROJECTIVE = "projective"
    REGULAR = "regular"
    COSET = "coset"


class Group(str, enum.Enum):
    GL2 = "GL2"
    PGL2 = "PGL2"


DEFAULT_GROUP = {
    Kind.NATURAL: Group.GL2,
    Kind.PROJECTIVE: Group.PGL2,
    Kind.REGULAR: Group.GL2,
    Kind.COSET: Group.GL2,
}


@dataclass(frozen=True)
class Perm:
    """A permutation of {0, ..., d-1}; images[i] is where i goes."""

    images: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: Perm) -> Perm:
        # (self * other)(i) = self(other(i)), matching left actions
        mine = self.images
        return Perm(tuple(mine[j] for j in other.images))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def fixed_points(self) -> int:
        return sum(1 for i, j in enumerate(self.images) if i == j)

    def cycle_type(self) -> dict[int, int]:
        """{cycle length: multiplicity}."""
        seen = bytearray(len(self.images))
        counts: dict[int, int] = {}
        for start in range(len(self.images)):
            if seen[start]:
                continue
            n, i = 0, start
            while not seen[i]:
                seen[i] = 1
                i = self.images[i]
                n += 1
            counts[n] = counts.get(n, 0) + 1
        return dict(sorted(counts.items()))


def orbit_count(p: Perm) -> int:
    """Number of cycles of p, fixed points included."""
    images = p.images
    seen = bytearray(len(images))
    cycles = 0
    for start in range(len(images)):
        if seen[start]:
            continue
        cycles += 1
        i = start
        while not seen[i]:
            seen[i] = 1
            i = images[i]
    return cycles


@dataclass(frozen=True, eq=False)
class PermAction:
    ell: int
    kind: Kind
    group: Group
    degree: int
    labels: tuple = field(repr=False)
    # coset actions: element key -> coset index; regular: element key -> position
    _index: dict = field(repr=False)
    subgroup: tuple[Gl2Element, ...] | None = field(default=None, repr=False)

    def point_index(self, label) -> int:
        return self._index[label]

    def _normalize(self, m: Gl2Element) -> Gl2Element:
        if m.ell != self.ell:
            raise ModulusMismatchError(f"element mod {m.ell} acting on a mod-{self.ell} representation")
        if self.group is Group.PGL2:
            return m.projective_canonical()
        return m


def _natural_labels(ell: int) -> tuple[tuple[int, int], ...]:
    return tuple((x, y) for x in range(ell) for y in range(ell) if (x, y) != (0, 0))


def _projective_labels(ell: int) -> tuple[tuple[int, int], ...]:
    return tuple((1, t) for t in range(ell)) + ((0, 1),)


def _projective_point(x: int, y: int, ell: int) -> int:
    """Label index of [x:y]."""
    if x:
        return y * pow(x, -1, ell) % ell
    return ell


def _group_elements(ell: int, group: Group) -> tuple[Gl2Element, ...]:
    return _gl2_elements(ell) if group is Group.GL2 else _pgl2_elements(ell)


def _key(m: Gl2Element, group: Group) -> tuple[int, int, int, int]:
    return m.key if group is Group.GL2 else m.projective_key()


def _check_subgroup(elements: Sequence[Gl2Element], ell: int, group: Group) -> tuple[Gl2Element, ...]:
    if not elements:
        raise ClosureError("subgroup element list is empty")
    for m in elements:
        if m.ell != ell:
            raise ModulusMismatchError(f"subgroup element mod {m.ell}, expected mod {ell}")
    keys = {_key(m, group) for m in elements}
    canon = tuple(Gl2Element(*k, ell) for k in sorted(keys))
    for m in canon:
        if _key(m.inverse(), group) not in keys:
            raise ClosureError(f"inverse of {m.rows} missing from subgroup")
        for n in canon:
            if _key(m * n, group) not in keys:
                raise ClosureError(f"product {m.rows} * {n.rows} missing from subgroup")
    return canon


def build_rep(
    ell: int,
    kind: Kind | str,
    group: Group | str | None = None,
    subgroup: Iterable[Gl2Element] | None = None,
) -> PermAction:
    """Construct a faithful transitive permutation representation."""
    check_ell(ell)
    kind = Kind(kind)
    group = DEFAULT_GROUP[kind] if group is None else Group(group)

    if kind is Kind.NATURAL:
        if group is not Group.GL2:
            raise FaithfulnessError("PGL2 has no action on nonzero vectors; use the projective kind")
        labels = _natural_labels(ell)
        rep = PermAction(ell, kind, group, len(labels), labels, {v: i for i, v in enumerate(labels)})
    elif kind is Kind.PROJECTIVE:
        if group is not Group.PGL2:
            raise FaithfulnessError("GL2 acts on P^1 with the scalars as kernel; use group PGL2")
        labels = _projective_labels(ell)
        rep = PermAction(ell, kind, group, len(labels), labels, {v: i for i, v in enumerate(labels)})
    elif kind is Kind.REGULAR:
        labels = _group_elements(ell, group)
        rep = PermAction(ell, kind, group, len(labels), labels, {m.key: i for i, m in enumerate(labels)})
    else:
        if subgroup is None:
            raise ClosureError("coset representation needs a subgroup element list")
        h = _check_subgroup(list(subgroup), ell, group)
        rep = _coset_rep(ell, group, h)
        _check_faithful(rep)
    return rep


def _coset_rep(ell: int, group: Group, h: tuple[Gl2Element, ...]) -> PermAction:
    index: dict[tuple, int] = {}
    labels: list[Gl2Element] = []

    def add_coset(g: Gl2Element) -> None:
        i = len(labels)
        labels.append(g)
        for x in h:
            index[_key(g * x, group)] = i

    add_coset(Gl2Element.identity(ell))
    for g in _group_elements(ell, group):
        if g.key not in index:
            add_coset(g)
    return PermAction(ell, Kind.COSET, group, len(labels), tuple(labels), index, h)


def _check_faithful(rep: PermAction) -> None:
    # the kernel is normal, so it is nontrivial iff it meets some class rep
    for cls in _class_reps(rep.ell):
        m = cls.rep
        if m.is_identity() or (rep.group is Group.PGL2 and m.is_scalar()):
            continue
        if act(rep, m).is_identity():
            raise FaithfulnessError(f"coset action has {m.rows} in its kernel")


def act(rep: PermAction, m: Gl2Element) -> Perm:
    """The permutation induced by m on the points of rep."""
    m = rep._normalize(m)
    p = rep.ell
    if rep.kind is Kind.NATURAL:
        idx = rep._index
        return Perm(
            tuple(idx[((m.a * x + m.b * y) % p, (m.c * x + m.d * y) % p)] for x, y in rep.labels)
        )
    if rep.kind is Kind.PROJECTIVE:
        return Perm(
            tuple(_projective_point((m.a * x + m.b * y) % p, (m.c * x + m.d * y) % p, p) for x, y in rep.labels)
        )
    idx = rep._index
    return Perm(tuple(idx[_key(m * g, rep.group)] for g in rep.labels))


def element_index(rep: PermAction, m: Gl2Element) -> int:
    """degree - number of orbits of m on the points."""
    if rep.kind is Kind.REGULAR and rep.degree > REGULAR_SHORTCUT_DEGREE:
        # left multiplication is free: every orbit has size ord(m)
        m = rep._normalize(m)
        order = m.order() if rep.group is Group.GL2 else m.projective_order()
        return rep.degree - rep.degree // order
    return rep.degree - orbit_count(act(rep, m))
