"""Fixed-A family runs: sieve B, certify surjectivity, bound discriminants,
count below X and fit the growth exponent.

For each B with squarefree delta_f and a certified mod-l image, the field cut
out by the chosen permutation representation has discriminant at most
c_l * |delta_f|^k, where k is the index of the transvection in that
representation. Counting B whose bound is <= X gives a lower-bound count
that should grow like X^(1/(2k)).
"""

from __future__ import annotations

import math
import os
import re
from bisect import bisect_right
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .curves import WeierstrassCurve
from .errors import DomainError, InsufficientDataError
from .finite_linear import check_ell
from .malle import dumps, inertia_exponent
from .ntheory import factorize
from .permrep import Group, Kind, build_rep
from .surjectivity import DEFAULT_BUDGET, SurjectivityVerdict, certify

C_POLICIES = ("unit", "wild-bound")


def parse_x(text: str | int) -> int:
    """Parse an X value: a decimal integer, 'n^k' or 'n**k'."""
    if isinstance(text, int):
        return text
    s = text.strip().replace("**", "^")
    m = re.fullmatch(r"(\d+)\s*\^\s*(\d+)", s)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    if re.fullmatch(r"\d+", s):
        return int(s)
    raise DomainError(f"cannot parse X value {text!r}")


def _ilog(x: int, b: int) -> int:
    """Largest n with b**n <= x."""
    n = 0
    while x >= b:
        x //= b
        n += 1
    return n


def wild_constant(ell: int, degree: int, policy: str = "unit") -> int:
    """The constant c_l absorbing primes that may ramify wildly.

    'unit' takes c_l = 1. 'wild-bound' takes p^(d - 1 + d*floor(log_p d)) for
    each p dividing 6l, a ceiling on the exponent a wild prime can reach.
    """
    if policy == "unit":
        return 1
    if policy != "wild-bound":
        raise DomainError(f"unknown c_ell policy {policy!r}")
    c = 1
    for p in sorted({2, 3, ell}):
        c *= p ** (degree - 1 + degree * _ilog(degree, p))
    return c


@dataclass(frozen=True)
class FamilyConfig:
    ell: int
    A: int
    rep: Kind | str = Kind.PROJECTIVE
    b_max: int = 100
    b_min: int = 1
    budget: int = DEFAULT_BUDGET
    c_policy: str = "unit"
    x_grid: tuple[int, ...] = ()
    group: Group | str | None = None
    subgroup: tuple | None = None
    threads: int = 1  # execution detail; not part of the serialized report

    def __post_init__(self):
        check_ell(self.ell)
        if self.A == 0:
            raise DomainError("the family construction fixes A != 0")
        if self.b_min < 1 or self.b_max < self.b_min:
            raise DomainError(f"B range must be positive and nonempty, got [{self.b_min}, {self.b_max}]")
        if self.c_policy not in C_POLICIES:
            raise DomainError(f"unknown c_ell policy {self.c_policy!r}")
        grid = tuple(parse_x(x) for x in self.x_grid)
        if any(x <= 0 for x in grid) or any(a >= b for a, b in zip(grid, grid[1:])):
            raise DomainError("X grid must be positive and strictly increasing")
        object.__setattr__(self, "x_grid", grid)
        object.__setattr__(self, "rep", Kind(self.rep))


@dataclass(frozen=True)
class FamilyRecord:
    B: int
    delta_f: int
    squarefree: bool
    verdict: SurjectivityVerdict | None
    disc_bound: int | None
    support: tuple[int, ...]
    excluded_reason: str | None
    factorization: tuple[tuple[int, int], ...] = ()

    @property
    def certified(self) -> bool:
        return self.verdict is not None and self.verdict.certified

    def to_json(self) -> dict:
        return {
            "B": self.B,
            "delta_f": self.delta_f,
            "squarefree": self.squarefree,
            "certified": self.certified,
            "verdict": None if self.verdict is None else self.verdict.to_json(),
            "disc_bound": self.disc_bound,
            "support": list(self.support),
            "excluded_reason": self.excluded_reason,
            "factorization": [list(pe) for pe in self.factorization],
        }


@dataclass(frozen=True)
class SlopeFit:
    value: float
    stderr: float | None  # None when the fit has no residual degrees of freedom

    def to_json(self) -> dict:
        return {"value": _sig12(self.value), "stderr": None if self.stderr is None else _sig12(self.stderr)}


def _sig12(x: float) -> float:
    return float(f"{x:.12g}")


@dataclass(frozen=True)
class Distinctness:
    passed: bool
    offending: list[tuple[int, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"passed": self.passed, "offending_pairs": [list(p) for p in self.offending]}


@dataclass(frozen=True)
class FamilyReport:
    config: FamilyConfig
    inertia_ind: int
    degree: int
    c_ell: int
    records: list[FamilyRecord]
    counts: list[tuple[int, int]]
    slope: SlopeFit | None
    distinctness: Distinctness

    @property
    def counted(self) -> list[FamilyRecord]:
        return [r for r in self.records if r.disc_bound is not None]

    @property
    def certified_fraction(self) -> float:
        sf = [r for r in self.records if r.squarefree]
        return sum(r.certified for r in sf) / len(sf) if sf else 0.0

    def to_json(self) -> dict:
        cfg = self.config
        return {
            "config": {
                "ell": cfg.ell,
                "A": cfg.A,
                "rep": cfg.rep.value,
                "group": None if cfg.group is None else Group(cfg.group).value,
                "b_min": cfg.b_min,
                "b_max": cfg.b_max,
                "budget": cfg.budget,
                "c_policy": cfg.c_policy,
                "c_ell": self.c_ell,
                "degree": self.degree,
                "inertia_ind": self.inertia_ind,
                "x_grid": list(cfg.x_grid),
            },
            "records": [r.to_json() for r in self.records],
            "counts": [{"X": x, "count": n} for x, n in self.counts],
            "slope": None if self.slope is None else self.slope.to_json(),
            "distinctness": self.distinctness.to_json(),
        }

    def dumps(self) -> str:
        return dumps(self.to_json())


def _examine_b(args: tuple[int, int, int, int]) -> tuple:
    """Per-B unit of work; must stay top-level so worker processes can pickle it."""
    A, B, ell, budget = args
    curve = WeierstrassCurve(A, B)
    df = curve.delta_f
    if df == 0:
        return (B, df, False, None, (), "singular", ())
    fac = factorize(df)
    squarefree = all(e == 1 for e in fac.values())
    support, fac_items = tuple(fac), tuple(fac.items())
    if not squarefree:
        return (B, df, False, None, support, "non-squarefree", fac_items)
    verdict = certify(curve, ell, budget)
    return (B, df, True, verdict, support, None if verdict.certified else "not-certified", fac_items)


def _map_ordered(func, items: Sequence, threads: int) -> list:
    if threads <= 1 or len(items) < 2:
        return [func(x) for x in items]
    chunk = max(1, len(items) // (threads * 8))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items, chunksize=chunk))


def run_family(cfg: FamilyConfig) -> FamilyReport:
    rep = build_rep(cfg.ell, cfg.rep, cfg.group, cfg.subgroup)
    k = inertia_exponent(rep)
    c = wild_constant(cfg.ell, rep.degree, cfg.c_policy)

    jobs = [(cfg.A, b, cfg.ell, cfg.budget) for b in range(cfg.b_min, cfg.b_max + 1)]
    records = []
    for B, df, sf, verdict, support, reason, fac in _map_ordered(_examine_b, jobs, cfg.threads):
        bound = c * abs(df) ** k if reason is None else None
        records.append(FamilyRecord(B, df, sf, verdict, bound, support, reason, fac))

    bounds = sorted(r.disc_bound for r in records if r.disc_bound is not None)
    counts = [(x, bisect_right(bounds, x)) for x in cfg.x_grid]
    usable = [(x, n) for x, n in counts if n > 0]
    slope = fit_exponent(usable) if len(usable) >= 3 else None
    return FamilyReport(cfg, k, rep.degree, c, records, counts, slope, distinctness_check(records))


def count_below(report: FamilyReport | Iterable[FamilyRecord], X: int | str) -> int:
    """Number of records with disc_bound <= X (inclusive, exact)."""
    X = parse_x(X)
    if X <= 0:
        raise DomainError("X must be positive")
    records = report.records if isinstance(report, FamilyReport) else report
    return sum(1 for r in records if r.disc_bound is not None and r.disc_bound <= X)


def fit_exponent(points: Sequence[tuple[int | float, int | float]]) -> SlopeFit:
    """Least-squares slope of log(count) against log(X)."""
    pts = [(x, n) for x, n in points if n > 0 and x > 0]
    if len(pts) < 2:
        raise InsufficientDataError("need at least two points with positive counts")
    xs = [math.log(x) for x, _ in pts]
    ys = [math.log(n) for _, n in pts]
    m = len(pts)
    mx, my = math.fsum(xs) / m, math.fsum(ys) / m
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        raise InsufficientDataError("all X values coincide")
    slope = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx
    if m == 2:
        return SlopeFit(slope, None)
    intercept = my - slope * mx
    rss = math.fsum((y - intercept - slope * x) ** 2 for x, y in zip(xs, ys))
    return SlopeFit(slope, math.sqrt(rss / (m - 2) / sxx))


def distinctness_check(records: FamilyReport | Iterable[FamilyRecord]) -> Distinctness:
    """Counted records must have pairwise distinct delta_f and prime supports."""
    if isinstance(records, FamilyReport):
        records = records.records
    counted = [r for r in records if r.disc_bound is not None]
    offending = []
    seen_df: dict[int, int] = {}
    seen_support: dict[tuple, int] = {}
    for r in counted:
        clash = seen_df.get(abs(r.delta_f))
        if clash is None:
            clash = seen_support.get(r.support)
        if clash is not None:
            offending.append((clash, r.B))
        seen_df.setdefault(abs(r.delta_f), r.B)
        seen_support.setdefault(r.support, r.B)
    return Distinctness(not offending, offending)


def default_threads() -> int:
    return os.cpu_count() or 1
