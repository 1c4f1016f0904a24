"""Malle indices and lower-bound exponents for permutation representations."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .finite_linear import Gl2Element, _class_reps, inertia_generator
from .permrep import Group, Kind, PermAction, build_rep, element_index


@dataclass(frozen=True)
class ExponentReport:
    ell: int
    kind: Kind
    group: Group
    degree: int
    malle_ind: int
    malle_a: Fraction
    inertia_ind: int
    lower_exponent: Fraction
    witness: Gl2Element

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "kind": self.kind.value,
            "group": self.group.value,
            "degree": self.degree,
            "malle_ind": self.malle_ind,
            "malle_a": fraction_json(self.malle_a),
            "inertia_ind": self.inertia_ind,
            "lower_exponent": fraction_json(self.lower_exponent),
            "witness": self.witness.to_json(),
        }


def fraction_json(q: Fraction) -> dict:
    return {"num": q.numerator, "den": q.denominator}


def dumps(obj) -> str:
    """Canonical JSON used for every machine-readable output."""
    return json.dumps(obj, sort_keys=True, indent=2)


def _nonidentity_class_reps(rep: PermAction):
    for cls in _class_reps(rep.ell):
        m = cls.rep
        if m.is_identity() or (rep.group is Group.PGL2 and m.is_scalar()):
            continue
        yield m


def malle_index(rep: PermAction) -> tuple[int, Gl2Element]:
    """Minimum index over nonidentity elements, and the first class rep attaining it.

    The index is a class function, so one representative per conjugacy class
    suffices. For PGL2 every class is the image of a GL2 class; scalars map to
    the identity and are skipped.
    """
    best, witness = None, None
    for m in _nonidentity_class_reps(rep):
        ind = element_index(rep, m)
        if best is None or ind < best:
            best, witness = ind, m
    if best is None:
        raise ValueError(f"group of rep {rep.kind.value} mod {rep.ell} is trivial")
    return best, witness


def inertia_exponent(rep: PermAction) -> int:
    """Index of the transvection [[1,1],[0,1]]: the exponent of a tame prime."""
    return element_index(rep, inertia_generator(rep.ell))


def exponent_report(ell: int, kind: Kind | str, group: Group | str | None = None, subgroup=None) -> ExponentReport:
    rep = build_rep(ell, kind, group, subgroup)
    ind, witness = malle_index(rep)
    k = inertia_exponent(rep)
    return ExponentReport(
        ell=ell,
        kind=rep.kind,
        group=rep.group,
        degree=rep.degree,
        malle_ind=ind,
        malle_a=Fraction(1, ind),
        inertia_ind=k,
        lower_exponent=Fraction(1, 2 * k),
        witness=witness,
    )
