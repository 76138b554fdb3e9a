"""Concept lattice construction with AddIntent over an arbitrary description algebra.

Objects are inserted in the structure's object order; concept ids are handed
out at creation, so identical inputs give identical ids and cover edges.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterator

from .errors import ConceptLimitError, InputError
from .pstruct import PatternStructure, extent_to_intent, intent_to_extent

DEFAULT_MAX_CONCEPTS = 10**6


@dataclass(frozen=True)
class Concept:
    id: int
    extent: frozenset
    intent: Any

    @property
    def support(self) -> int:
        return len(self.extent)


@dataclass
class Lattice:
    concepts: list
    covers: frozenset
    top: int
    bottom: int
    objects: tuple = ()
    _up: dict = field(default_factory=dict, repr=False)
    _down: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.covers = frozenset(self.covers)
        self._up = {c.id: set() for c in self.concepts}
        self._down = {c.id: set() for c in self.concepts}
        for p, c in self.covers:
            self._up[c].add(p)
            self._down[p].add(c)

    def __len__(self) -> int:
        return len(self.concepts)

    def __iter__(self) -> Iterator[Concept]:
        return iter(self.concepts)

    def __getitem__(self, cid: int) -> Concept:
        if not isinstance(cid, int) or not 0 <= cid < len(self.concepts):
            raise InputError(f"unknown concept id {cid!r}")
        return self.concepts[cid]

    def parents(self, cid: int) -> list[int]:
        self[cid]
        return sorted(self._up[cid])

    def children(self, cid: int) -> list[int]:
        self[cid]
        return sorted(self._down[cid])

    def by_extent(self, extent) -> Concept | None:
        extent = frozenset(extent)
        for c in self.concepts:
            if c.extent == extent:
                return c
        return None

    def descendants(self, cid: int) -> set[int]:
        """All concepts strictly below ``cid``."""
        down = self._down
        seen: set = set(down[cid])
        stack = list(seen)
        while stack:
            for d in down[stack.pop()]:
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
        return seen


def build_lattice(ps: PatternStructure, max_concepts: int = DEFAULT_MAX_CONCEPTS) -> Lattice:
    """Complete concept lattice of ``ps`` via AddIntent.

    Raises ConceptLimitError once more than ``max_concepts`` concepts exist.
    """
    alg = ps.algebra
    meet, leq = alg.meet, alg.leq
    intents: list = []
    extents: list = []
    parents: list = []
    children: list = []
    index: dict = {}

    def create(extent: set, intent) -> int:
        if len(intents) >= max_concepts:
            raise ConceptLimitError(max_concepts)
        intents.append(intent)
        extents.append(extent)
        parents.append(set())
        children.append(set())
        cid = len(intents) - 1
        index[intent] = cid
        return cid

    def maximal_concept(intent, gen: int) -> int:
        climbing = True
        while climbing:
            climbing = False
            for p in sorted(parents[gen]):
                if leq(intent, intents[p]):
                    gen = p
                    climbing = True
                    break
        return gen

    def add_intent(intent, gen: int) -> int:
        hit = index.get(intent)
        if hit is not None:
            return hit
        gen = maximal_concept(intent, gen)
        if intents[gen] == intent:
            return gen
        new_parents: list = []
        for cand in sorted(parents[gen]):
            if not leq(intents[cand], intent):
                cand = add_intent(meet(intents[cand], intent), cand)
            keep = True
            for p in list(new_parents):
                if leq(intents[cand], intents[p]):
                    keep = False
                    break
                if leq(intents[p], intents[cand]):
                    new_parents.remove(p)
            if keep:
                new_parents.append(cand)
        new = create(set(extents[gen]), intent)
        for p in new_parents:
            parents[gen].discard(p)
            children[p].discard(gen)
            parents[new].add(p)
            children[p].add(new)
        parents[gen].add(new)
        children[new].add(gen)
        return new

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10_000 + 4 * len(ps.objects)))
    try:
        bottom = create(set(), alg.top)
        for g in ps.objects:
            oc = add_intent(ps.descriptions[g], bottom)
            stack, seen = [oc], set()
            while stack:
                c = stack.pop()
                if c in seen:
                    continue
                seen.add(c)
                extents[c].add(g)
                stack.extend(parents[c])
    finally:
        sys.setrecursionlimit(limit)

    concepts = [Concept(i, frozenset(e), d) for i, (e, d) in enumerate(zip(extents, intents))]
    covers = frozenset((p, c) for c in range(len(concepts)) for p in parents[c])
    tops = [c for c in range(len(concepts)) if not parents[c]]
    bottoms = [c for c in range(len(concepts)) if not children[c]]
    return Lattice(concepts, covers, tops[0], bottoms[0], tuple(ps.objects))


def direct_descendants(lat: Lattice, cid: int) -> list[Concept]:
    return [lat[c] for c in lat.children(cid)]


def meet_concepts(lat: Lattice, a: int, b: int) -> Concept:
    """Greatest common lower bound: the concept whose extent is the intersection."""
    ext = lat[a].extent & lat[b].extent
    found = lat.by_extent(ext)
    if found is None:
        raise InputError(f"extent intersection of {a} and {b} is not an extent; lattice is invalid")
    return found


def join_concepts(lat: Lattice, a: int, b: int) -> Concept:
    """Least common upper bound: the smallest extent containing both."""
    ext = lat[a].extent | lat[b].extent
    above = [c for c in lat.concepts if ext <= c.extent]
    best = min(above, key=lambda c: (len(c.extent), c.id))
    if any(not best.extent <= c.extent for c in above):
        raise InputError(f"no unique join for {a} and {b}; lattice is invalid")
    return best


def cover_relation(extents: dict) -> set[tuple[int, int]]:
    """Transitive reduction of strict extent inclusion, recomputed from scratch."""
    ids = sorted(extents, key=lambda c: len(extents[c]))
    covers = set()
    for c in ids:
        above = [p for p in ids if extents[c] < extents[p]]
        for p in above:
            if not any(extents[c] < extents[q] < extents[p] for q in above):
                covers.add((p, c))
    return covers


def validate_lattice(ps: PatternStructure, lat: Lattice, check_closure: bool = True) -> list[str]:
    """Return every violation found (empty list means valid)."""
    problems = []
    seen: dict = {}
    for c in lat.concepts:
        if c.extent in seen:
            problems.append(f"concepts {seen[c.extent]} and {c.id} share extent {sorted(c.extent)}")
        seen[c.extent] = c.id
        if check_closure:
            if extent_to_intent(ps, c.extent) != c.intent:
                problems.append(f"concept {c.id}: intent is not the derivation of its extent")
            if intent_to_extent(ps, c.intent) != c.extent:
                problems.append(f"concept {c.id}: extent is not the derivation of its intent")
    expected = cover_relation({c.id: c.extent for c in lat.concepts})
    for p, c in sorted(set(lat.covers) - expected):
        problems.append(f"edge {p}->{c} is not a cover of extent inclusion")
    for p, c in sorted(expected - set(lat.covers)):
        problems.append(f"missing cover edge {p}->{c}")
    tops = [c.id for c in lat.concepts if not lat._up[c.id]]
    bottoms = [c.id for c in lat.concepts if not lat._down[c.id]]
    if len(tops) != 1:
        problems.append(f"expected one top concept, found {tops}")
    if len(bottoms) != 1:
        problems.append(f"expected one bottom concept, found {bottoms}")
    if lat[lat.top].extent != frozenset(ps.objects):
        problems.append("top concept extent is not the full object set")
    return problems


def brute_force_concepts(ps: PatternStructure, max_objects: int = 20) -> dict[frozenset, Any]:
    """Every closed extent with its intent, by enumerating all object subsets."""
    n = len(ps.objects)
    if n > max_objects:
        raise InputError(f"brute force refused: {n} objects exceeds the limit of {max_objects}")
    found: dict = {}
    for r in range(n + 1):
        for subset in combinations(ps.objects, r):
            intent = extent_to_intent(ps, subset)
            ext = intent_to_extent(ps, intent)
            if ext == frozenset(subset):
                found[ext] = intent
    return found
