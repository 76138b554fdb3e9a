"""Exact concept stability, its descendant-based upper bound, and ranking."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .lattice import Lattice, validate_lattice
from .pstruct import PatternStructure

RANK_KEYS = ("stability", "bound", "support")


@dataclass(frozen=True)
class ConceptStability:
    num: int
    den: int
    bound: Fraction
    md: int | None  # None when the concept has no direct descendant
    support: int

    @property
    def stability(self) -> Fraction:
        return Fraction(self.num, self.den)


@dataclass
class StabilityReport:
    entries: dict

    def __getitem__(self, cid: int) -> ConceptStability:
        return self.entries[cid]

    def __len__(self) -> int:
        return len(self.entries)

    def total_count(self) -> int:
        """Sum of the per-concept subset counts; equals 2**|G| on a valid lattice."""
        return sum(e.num for e in self.entries.values())


def _structural_problems(lat: Lattice) -> list[str]:
    problems = []
    for p, c in lat.covers:
        if not lat[c].extent < lat[p].extent:
            problems.append(f"edge {p}->{c} is not a strict extent inclusion")
    if len({c.extent for c in lat.concepts}) != len(lat.concepts):
        problems.append("duplicate extents")
    if lat[lat.top].extent != frozenset(lat.objects):
        problems.append("top extent is not the full object set")
    return problems


def minimal_delta(lat: Lattice, cid: int) -> int | None:
    """md(c): smallest extent difference to a direct descendant."""
    size = len(lat[cid].extent)
    kids = lat.children(cid)
    if not kids:
        return None
    return min(size - len(lat[d].extent) for d in kids)


def stability_bound(lat: Lattice, cid: int) -> Fraction:
    """``1 - 2**-md(c)``; 1 for a concept without descendants."""
    md = minimal_delta(lat, cid)
    if md is None:
        return Fraction(1)
    return 1 - Fraction(1, 2**md)


def stability_exact(ps: PatternStructure | None, lat: Lattice, full_check: bool = False) -> StabilityReport:
    """Exact stability of every concept by inclusion-exclusion over descendants.

    N(c) = 2**|Ext(c)| - sum of N(d) over all d strictly below c. Structural
    consistency is always checked; ``full_check`` also re-derives closures.
    """
    problems = _structural_problems(lat)
    if full_check and not problems:
        if ps is None:
            raise InputError("full_check needs the pattern structure")
        problems = validate_lattice(ps, lat)
    if problems:
        raise InputError("invalid lattice, run validate_lattice for details: " + problems[0])

    counts: list = [0] * len(lat)
    order = sorted(lat.concepts, key=lambda c: (len(c.extent), c.id))
    for c in order:
        below = lat.descendants(c.id)
        counts[c.id] = 2 ** len(c.extent) - sum(map(counts.__getitem__, below))
    entries = {}
    for c in lat.concepts:
        md = minimal_delta(lat, c.id)
        bound = Fraction(1) if md is None else 1 - Fraction(1, 2**md)
        entries[c.id] = ConceptStability(counts[c.id], 2 ** len(c.extent), bound, md, len(c.extent))
    return StabilityReport(entries)


def _as_fraction(theta) -> Fraction:
    if isinstance(theta, Fraction):
        return theta
    if isinstance(theta, float):
        return Fraction(repr(theta))
    return Fraction(theta)


def md_threshold(theta) -> float:
    """Minimal md a concept needs to pass the filter: ``-log2(1 - theta)``."""
    theta = _as_fraction(theta)
    if not 0 <= theta < 1:
        raise InputError(f"theta must lie in [0, 1), got {theta}")
    return -math.log2(1 - theta)


def stable_filter(lat: Lattice, theta, report: StabilityReport | None = None) -> list[int]:
    """Concepts whose bound reaches ``theta``.

    Every concept with stability >= theta is returned (plus some less stable
    ones). Concepts without descendants have bound 1 and always pass.
    """
    theta = _as_fraction(theta)
    if not 0 <= theta < 1:
        raise InputError(f"theta must lie in [0, 1), got {theta}")
    out = []
    for c in lat.concepts:
        bound = report[c.id].bound if report is not None else stability_bound(lat, c.id)
        if bound >= theta:
            out.append(c.id)
    return out


def rank_concepts(report: StabilityReport, lat: Lattice, key: str = "stability", include_empty: bool = False) -> list[int]:
    """Concept ids by decreasing ``key``; ties by support, then id.

    Concepts with an empty extent are left out unless ``include_empty``.
    """
    if key not in RANK_KEYS:
        raise InputError(f"unknown ranking key {key!r}; expected one of {RANK_KEYS}")

    def sort_key(c):
        e = report[c.id]
        value = e.stability if key == "stability" else e.bound if key == "bound" else e.support
        return (-value, -e.support, c.id)

    pool = [c for c in lat.concepts if include_empty or c.extent]
    return [c.id for c in sorted(pool, key=sort_key)]
