"""Pattern structures (G, (D, ⊓), δ) and the binary formal-context special case.

The lattice builder only needs a description algebra: a ``top`` value, a
``meet`` and a subsumption test ``leq``. Two algebras are provided, one for
projected sequential patterns and one for plain attribute sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Iterable, Sequence

from .alphabet import AlphabetSchema
from .errors import InputError
from .projection import IDENTITY, ProjectionSpec, apply_projection, projected_meet
from .sequence import TOP, Pattern, pattern_leq, pattern_of


class SequenceAlgebra:
    """Projected sequential patterns: meet is ``psi(x ⊓ y)``."""

    def __init__(self, schema: AlphabetSchema, spec: ProjectionSpec = IDENTITY):
        self.schema = schema
        self.spec = spec.resolve(schema)
        self.top = TOP
        self._meets: dict = {}

    def meet(self, x: Pattern, y: Pattern) -> Pattern:
        if x is y or x == y:
            return x
        key = (x, y)
        hit = self._meets.get(key)
        if hit is None:
            hit = projected_meet(self.schema, self.spec, x, y)
            if len(self._meets) > 500_000:
                self._meets.clear()
            self._meets[key] = hit
            self._meets[(y, x)] = hit
        return hit

    def leq(self, x: Pattern, y: Pattern) -> bool:
        return pattern_leq(self.schema, x, y)

    def project(self, d: Pattern) -> Pattern:
        return apply_projection(self.schema, self.spec, d)


class SetAlgebra:
    """Attribute sets: meet is intersection, order is inclusion."""

    def __init__(self, attributes: Iterable[str]):
        self.top = frozenset(attributes)

    def meet(self, x: frozenset, y: frozenset) -> frozenset:
        return x & y

    def leq(self, x: frozenset, y: frozenset) -> bool:
        return x <= y

    def project(self, d: frozenset) -> frozenset:
        return d


@dataclass
class PatternStructure:
    objects: list
    descriptions: dict
    algebra: Any
    schema: AlphabetSchema | None = None
    projection: ProjectionSpec | None = None

    def __post_init__(self):
        if len(set(self.objects)) != len(self.objects):
            raise InputError("object ids must be unique")
        missing = [g for g in self.objects if g not in self.descriptions]
        if missing:
            raise InputError(f"objects without a description: {missing}")

    def check_objects(self, objs: Iterable) -> None:
        unknown = [g for g in objs if g not in self.descriptions]
        if unknown:
            raise InputError(f"unknown object ids: {sorted(map(str, unknown))}")


def sequential_structure(
    schema: AlphabetSchema,
    records: Sequence[tuple[str, tuple]],
    spec: ProjectionSpec = IDENTITY,
) -> PatternStructure:
    """Pattern structure over raw sequences, with every description projected once."""
    algebra = SequenceAlgebra(schema, spec)
    objects = [oid for oid, _ in records]
    descriptions = {oid: algebra.project(pattern_of(schema, seq)) for oid, seq in records}
    return PatternStructure(objects, descriptions, algebra, schema, algebra.spec)


def extent_to_intent(ps: PatternStructure, objs: Iterable) -> Any:
    """Common description of a set of objects (``top`` for the empty set)."""
    objs = list(objs)
    ps.check_objects(objs)
    order = {g: i for i, g in enumerate(ps.objects)}
    objs.sort(key=order.__getitem__)
    return reduce(ps.algebra.meet, (ps.descriptions[g] for g in objs), ps.algebra.top)


def intent_to_extent(ps: PatternStructure, d: Any) -> frozenset:
    leq = ps.algebra.leq
    return frozenset(g for g in ps.objects if leq(d, ps.descriptions[g]))


@dataclass
class FormalContext:
    objects: list
    attributes: list
    incidence: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        self.incidence = frozenset(self.incidence)
        objs, attrs = set(self.objects), set(self.attributes)
        if len(objs) != len(self.objects) or len(attrs) != len(self.attributes):
            raise InputError("duplicate object or attribute names")
        bad = [(g, m) for g, m in self.incidence if g not in objs or m not in attrs]
        if bad:
            raise InputError(f"incidence pairs outside objects x attributes: {sorted(bad)}")

    def row(self, g: str) -> frozenset:
        return frozenset(m for h, m in self.incidence if h == g)


def context_derive_objects(ctx: FormalContext, objs: Iterable[str]) -> frozenset:
    """A' : attributes shared by every object of ``objs``."""
    objs = set(objs)
    unknown = objs - set(ctx.objects)
    if unknown:
        raise InputError(f"unknown objects: {sorted(unknown)}")
    return frozenset(m for m in ctx.attributes if all((g, m) in ctx.incidence for g in objs))


def context_derive_attrs(ctx: FormalContext, attrs: Iterable[str]) -> frozenset:
    """B' : objects having every attribute of ``attrs``."""
    attrs = set(attrs)
    unknown = attrs - set(ctx.attributes)
    if unknown:
        raise InputError(f"unknown attributes: {sorted(unknown)}")
    return frozenset(g for g in ctx.objects if all((g, m) in ctx.incidence for m in attrs))


def context_as_pattern_structure(ctx: FormalContext) -> PatternStructure:
    descriptions = {g: frozenset(m for m in ctx.attributes if (g, m) in ctx.incidence) for g in ctx.objects}
    return PatternStructure(list(ctx.objects), descriptions, SetAlgebra(ctx.attributes))
