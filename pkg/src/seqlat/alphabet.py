"""Event alphabet: a product of taxonomy, itemset and interval fields.

An element is a plain tuple holding one value per schema field:

* taxonomy field -> node id (``str``)
* itemset field  -> ``frozenset`` of item ids
* interval field -> ``(lo, hi)`` pair of positive ints

The meet of two elements is taken componentwise (least common ancestor,
set intersection, convex hull). The least element of the alphabet is the
all-general tuple ``(root, frozenset(), (1, max_rep))``; there is no separate
sentinel for it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterable, Mapping, Sequence

from .errors import ConfigError, InputError

TAXONOMY = "taxonomy"
ITEMSET = "itemset"
INTERVAL = "interval"
FIELD_KINDS = (TAXONOMY, ITEMSET, INTERVAL)

MAX_REP = 1024

Element = tuple


@dataclass(frozen=True, eq=False)
class Taxonomy:
    """A rooted tree of nodes. ``parent[root] == root``."""

    name: str
    root: str
    parent: Mapping[str, str]
    depth: Mapping[str, int]
    _meets: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_parents(cls, name: str, parents: Mapping[str, str], root: str) -> "Taxonomy":
        """Build from a child -> parent mapping (the root may be omitted)."""
        parent = dict(parents)
        parent[root] = root
        for child, par in parent.items():
            if par not in parent:
                raise InputError(f"taxonomy {name!r}: node {child!r} has undeclared parent {par!r}")
        depth = {root: 0}
        for node in parent:
            path = []
            cur = node
            while cur not in depth:
                if cur in path:
                    raise InputError(f"taxonomy {name!r}: cycle through node {cur!r}")
                path.append(cur)
                cur = parent[cur]
            d = depth[cur]
            for n in reversed(path):
                d += 1
                depth[n] = d
        return cls(name, root, parent, depth)

    def __contains__(self, node: object) -> bool:
        return node in self.parent

    def __len__(self) -> int:
        return len(self.parent)

    def nodes(self) -> list[str]:
        return sorted(self.parent)

    def children(self, node: str) -> list[str]:
        return sorted(c for c, p in self.parent.items() if p == node and c != self.root)

    def check(self, node: str) -> None:
        if node not in self.parent:
            raise InputError(f"unknown node {node!r} in taxonomy {self.name!r}")

    def meet(self, a: str, b: str) -> str:
        if a == b:
            self.check(a)
            return a
        key = (a, b) if a < b else (b, a)
        hit = self._meets.get(key)
        if hit is not None:
            return hit
        self.check(a)
        self.check(b)
        parent, depth = self.parent, self.depth
        x, y = a, b
        while depth[x] > depth[y]:
            x = parent[x]
        while depth[y] > depth[x]:
            y = parent[y]
        while x != y:
            x, y = parent[x], parent[y]
        self._meets[key] = x
        return x

    def leq(self, a: str, b: str) -> bool:
        """True iff ``a`` is an ancestor of ``b`` or equal to it."""
        self.check(a)
        self.check(b)
        da = self.depth[a]
        while self.depth[b] > da:
            b = self.parent[b]
        return a == b

    @property
    def max_depth(self) -> int:
        return max(self.depth.values())


@dataclass(frozen=True)
class FieldSpec:
    name: str
    kind: str
    taxonomy: Taxonomy | None = None
    letter: str | None = None
    repetition: bool = False

    def __post_init__(self):
        if self.kind not in FIELD_KINDS:
            raise ConfigError(f"field {self.name!r}: unknown kind {self.kind!r}")
        if (self.kind == TAXONOMY) != (self.taxonomy is not None):
            raise ConfigError(f"field {self.name!r}: a taxonomy is required exactly for taxonomy fields")
        if self.repetition and self.kind != INTERVAL:
            raise ConfigError(f"field {self.name!r}: only interval fields can carry repetitions")

    @property
    def short(self) -> str:
        return self.letter or self.name[:1].upper()


@dataclass(frozen=True, eq=False)
class AlphabetSchema:
    """Ordered field list. Instances cache element meets, so they compare by identity."""

    fields: tuple[FieldSpec, ...]
    max_rep: int = MAX_REP
    _meets: dict = field(default_factory=dict, repr=False)
    _leqs: dict = field(default_factory=dict, repr=False)
    _embeds: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "fields", tuple(self.fields))
        names = [f.name for f in self.fields]
        if len(set(names)) != len(names):
            raise ConfigError(f"duplicate field names in schema: {names}")
        if sum(f.repetition for f in self.fields) > 1:
            raise ConfigError("at most one repetition field is allowed")
        general = []
        for f in self.fields:
            if f.kind == TAXONOMY:
                general.append(f.taxonomy.root)
            elif f.kind == ITEMSET:
                general.append(frozenset())
            else:
                general.append((1, self.max_rep))
        object.__setattr__(self, "general", tuple(general))

    @property
    def bottom(self) -> Element:
        return self.general

    @property
    def names(self) -> list[str]:
        return [f.name for f in self.fields]

    def index(self, name: str) -> int:
        for i, f in enumerate(self.fields):
            if f.name == name:
                return i
        raise ConfigError(f"unknown field {name!r}; schema has {self.names}")

    @property
    def repetition_index(self) -> int | None:
        for i, f in enumerate(self.fields):
            if f.repetition:
                return i
        return None

    def with_repetition(self, name: str = "rep", letter: str = "I") -> "AlphabetSchema":
        """Schema extended by a repetition interval field (no-op if one exists)."""
        if self.repetition_index is not None:
            return self
        extra = FieldSpec(name, INTERVAL, letter=letter, repetition=True)
        return AlphabetSchema(self.fields + (extra,), self.max_rep)

    def check(self, e: Element) -> None:
        if not isinstance(e, tuple) or len(e) != len(self.fields):
            raise InputError(f"element {e!r} does not match schema {self.names}")
        for f, v in zip(self.fields, e):
            if f.kind == TAXONOMY:
                f.taxonomy.check(v)
            elif f.kind == ITEMSET:
                if not isinstance(v, frozenset):
                    raise InputError(f"field {f.name!r}: expected an item set, got {v!r}")
            else:
                if not (isinstance(v, tuple) and len(v) == 2 and 1 <= v[0] <= v[1] <= self.max_rep):
                    raise InputError(f"field {f.name!r}: expected an interval (lo, hi) within [1, {self.max_rep}], got {v!r}")


def make_element(schema: AlphabetSchema, values: Sequence[Any] | Mapping[str, Any]) -> Element:
    """Normalize loose values into a schema-conforming element.

    Accepts either a sequence in field order or a mapping by field name.
    Missing mapping keys default to the most general value; a repetition
    field defaults to ``(1, 1)``. Integers are accepted for intervals.
    """
    if isinstance(values, Mapping):
        unknown = set(values) - set(schema.names)
        if unknown:
            raise InputError(f"unknown fields {sorted(unknown)}; schema has {schema.names}")
        raw = []
        for f, g in zip(schema.fields, schema.general):
            if f.name in values:
                raw.append(values[f.name])
            else:
                raw.append((1, 1) if f.repetition else g)
    else:
        raw = list(values)
        if len(raw) != len(schema.fields):
            raise InputError(f"element {values!r} has {len(raw)} values, schema has {len(schema.fields)}")
    out = []
    for f, v in zip(schema.fields, raw):
        if f.kind == ITEMSET:
            if isinstance(v, str):
                raise InputError(f"field {f.name!r}: expected a list of items, got string {v!r}")
            v = frozenset(str(x) for x in v)
        elif f.kind == INTERVAL:
            if isinstance(v, int):
                v = (v, v)
            else:
                v = tuple(int(x) for x in v)
        elif not isinstance(v, str):
            raise InputError(f"field {f.name!r}: expected a node id, got {v!r}")
        out.append(v)
    e = tuple(out)
    schema.check(e)
    return e


def element_key(e: Element) -> tuple:
    """Total-order key for canonical sorting (field by field, schema order)."""
    return tuple(tuple(sorted(v)) if isinstance(v, frozenset) else v for v in e)


def taxonomy_meet(tax: Taxonomy, a: str, b: str) -> str:
    return tax.meet(a, b)


def taxonomy_leq(tax: Taxonomy, a: str, b: str) -> bool:
    return tax.leq(a, b)


def _meet_uncached(schema: AlphabetSchema, e1: Element, e2: Element) -> Element:
    schema.check(e1)
    schema.check(e2)
    out = []
    for f, a, b in zip(schema.fields, e1, e2):
        if f.kind == TAXONOMY:
            out.append(f.taxonomy.meet(a, b))
        elif f.kind == ITEMSET:
            out.append(a & b)
        else:
            out.append((min(a[0], b[0]), max(a[1], b[1])))
    return tuple(out)


def element_meet(schema: AlphabetSchema, e1: Element, e2: Element) -> Element:
    if e1 == e2:
        return e1
    cache = schema._meets
    key = (e1, e2)
    hit = cache.get(key)
    if hit is None:
        hit = _meet_uncached(schema, e1, e2)
        cache[key] = hit
        cache[(e2, e1)] = hit
    return hit


def element_leq(schema: AlphabetSchema, e1: Element, e2: Element) -> bool:
    """``e1`` is more general than (or equal to) ``e2``."""
    if e1 == e2:
        return True
    cache = schema._leqs
    hit = cache.get((e1, e2))
    if hit is None:
        hit = element_meet(schema, e1, e2) == e1
        if len(cache) > 2_000_000:
            cache.clear()
        cache[(e1, e2)] = hit
    return hit


def is_bottom(schema: AlphabetSchema, e: Element) -> bool:
    return e == schema.general


@lru_cache(maxsize=256)
def _projection_plan(schema: AlphabetSchema, spec) -> tuple:
    names = set(schema.names)
    dropped = dict(spec.drop_items)
    selected = names if spec.selected_fields is None else spec.selected_fields
    for group in (selected, spec.required_fields, dropped):
        unknown = set(group) - names
        if unknown:
            raise ConfigError(f"projection names unknown fields {sorted(unknown)}; schema has {schema.names}")
    keep = tuple(f.name in selected for f in schema.fields)
    required = tuple(i for i, f in enumerate(schema.fields) if f.name in spec.required_fields)
    drops = []
    for i, f in enumerate(schema.fields):
        d = dropped.get(f.name)
        if d:
            if f.kind != ITEMSET:
                raise ConfigError(f"items can only be dropped from itemset fields, not {f.name!r}")
            drops.append((i, frozenset(d)))
    identity = all(keep) and not required and not drops
    return keep, required, tuple(drops), identity


def project_element(schema: AlphabetSchema, spec, e: Element) -> Element:
    """Blank non-selected fields, drop excluded items, then collapse to the
    least element if a required field ended up maximally general."""
    keep, required, drops, identity = _projection_plan(schema, spec)
    if identity:
        return e
    general = schema.general
    values = [v if k else g for v, k, g in zip(e, keep, general)]
    for i, items in drops:
        values[i] = values[i] - items
    for i in required:
        if values[i] == general[i]:
            return general
    return tuple(values)


def iter_elements(schema: AlphabetSchema, nodes: Sequence[Iterable[str]] | None = None) -> list[Element]:
    """Enumerate every element of a small finite alphabet.

    ``nodes`` gives, per field, the values to range over (taxonomy nodes,
    item universe for itemsets, max repetition for intervals). Used by the
    brute-force checks; not meant for realistic alphabets.
    """
    from itertools import chain, combinations, product

    axes = []
    for f, vals in zip(schema.fields, nodes):
        vals = list(vals)
        if f.kind == TAXONOMY:
            axes.append(vals)
        elif f.kind == ITEMSET:
            axes.append([frozenset(c) for c in chain.from_iterable(combinations(vals, r) for r in range(len(vals) + 1))])
        else:
            axes.append(vals)
    return [tuple(p) for p in product(*axes)]
