"""Brute-force reference implementations used to freeze and cross-check results.

Nothing here calls the library's meet, order or antichain code. Element order
is decided from the raw taxonomy parent map, embeddings by enumerating index
tuples, meets by enumerating the finite alphabet, closures by folding over
object subsets.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import reduce
from itertools import chain, combinations, product

from seqlat.alphabet import INTERVAL, ITEMSET, TAXONOMY, AlphabetSchema, FieldSpec, Taxonomy


# -- elements ---------------------------------------------------------------

def ancestors(tax: Taxonomy, node: str) -> set:
    out = {node}
    while node != tax.root:
        node = tax.parent[node]
        out.add(node)
    return out


def value_leq(f: FieldSpec, a, b) -> bool:
    """``a`` is more general than or equal to ``b`` for one field."""
    if f.kind == TAXONOMY:
        return a in ancestors(f.taxonomy, b)
    if f.kind == ITEMSET:
        return set(a) <= set(b)
    return a[0] <= b[0] and b[1] <= a[1]


def elem_leq(schema: AlphabetSchema, a, b) -> bool:
    return all(value_leq(f, x, y) for f, x, y in zip(schema.fields, a, b))


def universe(schema: AlphabetSchema, items: dict, max_rep: int = 3) -> list:
    """Every element of a small finite alphabet (intervals within [1, max_rep],
    plus the schema's own general interval)."""
    axes = []
    for f in schema.fields:
        if f.kind == TAXONOMY:
            axes.append(sorted(f.taxonomy.parent))
        elif f.kind == ITEMSET:
            its = sorted(items[f.name])
            axes.append([frozenset(c) for c in chain.from_iterable(combinations(its, r) for r in range(len(its) + 1))])
        else:
            ivs = [(lo, hi) for lo in range(1, max_rep + 1) for hi in range(lo, max_rep + 1)]
            axes.append(ivs + [(1, schema.max_rep)])
    return [tuple(p) for p in product(*axes)]


def elem_meet(schema: AlphabetSchema, a, b, elements: list):
    """Greatest common lower bound found by enumeration; asserts uniqueness."""
    lower = [e for e in elements if elem_leq(schema, e, a) and elem_leq(schema, e, b)]
    top = [e for e in lower if all(elem_leq(schema, o, e) for o in lower)]
    assert len(top) == 1, f"no unique meet for {a} and {b}"
    return top[0]


# -- sequences and patterns -------------------------------------------------

def embeds(schema: AlphabetSchema, t, s) -> bool:
    """``t`` is a contiguous subsequence of ``s``: try every index tuple
    j_1 < ... < j_k and keep only the consecutive ones."""
    k = len(t)
    for idx in combinations(range(len(s)), k):
        if any(idx[i + 1] != idx[i] + 1 for i in range(k - 1)):
            continue
        if all(elem_leq(schema, t[i], s[j]) for i, j in enumerate(idx)):
            return True
    return k == 0


def embeds_general(schema: AlphabetSchema, t, s) -> bool:
    return any(all(elem_leq(schema, t[i], s[j]) for i, j in enumerate(idx))
               for idx in combinations(range(len(s)), len(t)))


def maximal(schema: AlphabetSchema, seqs) -> set:
    seqs = set(seqs)
    return {s for s in seqs if not any(o != s and embeds(schema, s, o) for o in seqs)}


def common_maximal(schema: AlphabetSchema, s, t, elements: list, bottom) -> set:
    """Maximal valid sequences embedding in both ``s`` and ``t``.

    For every pair of equal-length windows the positionwise meets give the
    largest common sequence on that pair; sub-windows cover every shorter
    common sequence, so only bottom-free windows are kept.
    """
    out = set()
    for length in range(1, min(len(s), len(t)) + 1):
        for i in range(len(s) - length + 1):
            for j in range(len(t) - length + 1):
                w = tuple(elem_meet(schema, s[i + p], t[j + p], elements) for p in range(length))
                if bottom not in w:
                    out.add(w)
    return maximal(schema, out)


def pattern_meet(schema, x: frozenset, y: frozenset, elements, bottom) -> frozenset:
    found = set()
    for s in x:
        for t in y:
            found |= common_maximal(schema, s, t, elements, bottom)
    return frozenset(maximal(schema, found))


def pattern_leq(schema, x: frozenset, y: frozenset) -> bool:
    return all(any(embeds(schema, s, t) for t in y) for s in x)


# -- projections ------------------------------------------------------------

def project_elem(schema: AlphabetSchema, e, select: set, require: set, drop: dict | None = None):
    drop = drop or {}
    out = []
    for f, v, g in zip(schema.fields, e, schema.general):
        if f.name not in select:
            v = g
        elif f.name in drop:
            v = frozenset(v) - frozenset(drop[f.name])
        out.append(v)
    out = tuple(out)
    for f, v, g in zip(schema.fields, out, schema.general):
        if f.name in require and v == g:
            return schema.general
    return out


def split(seq, bottom) -> list:
    runs, cur = [], []
    for e in seq:
        if e == bottom:
            if cur:
                runs.append(tuple(cur))
            cur = []
        else:
            cur.append(e)
    if cur:
        runs.append(tuple(cur))
    return runs


def project(schema, d: frozenset, select, require, min_len, drop=None) -> frozenset:
    bottom = schema.general
    runs = set()
    for s in d:
        runs.update(split([project_elem(schema, e, select, require, drop) for e in s], bottom))
    runs = {r for r in runs if len(r) >= max(min_len, 1)}
    return frozenset(maximal(schema, runs))


# -- closures and stability -------------------------------------------------

TOP = "TOP"


def closure_system(objects, descriptions, meet, leq):
    """{extent: intent} over every subset of objects (the empty set maps to TOP)."""
    out = {}
    for r in range(len(objects) + 1):
        for sub in combinations(objects, r):
            if not sub:
                intent = TOP
                ext = frozenset()
            else:
                intent = reduce(meet, (descriptions[g] for g in sub))
                ext = frozenset(g for g in objects if leq(intent, descriptions[g]))
            if ext == frozenset(sub):
                out[ext] = intent
    return out


def subset_stability(objects_in_extent, descriptions, meet, intent) -> Fraction:
    objs = sorted(objects_in_extent)
    hits = 0
    for r in range(len(objs) + 1):
        for sub in combinations(objs, r):
            d = reduce(meet, (descriptions[g] for g in sub)) if sub else TOP
            hits += d == intent
    return Fraction(hits, 2 ** len(objs))


def context_concepts(objects, attributes, incidence) -> dict:
    def up(A):
        return frozenset(m for m in attributes if all((g, m) in incidence for g in A))

    def down(B):
        return frozenset(g for g in objects if all((g, m) in incidence for m in B))

    out = {}
    for r in range(len(objects) + 1):
        for sub in combinations(objects, r):
            B = up(sub)
            out[down(B)] = B
    return out


def context_stability(objects, attributes, incidence, extent, intent) -> Fraction:
    hits = 0
    objs = sorted(extent)
    for r in range(len(objs) + 1):
        for sub in combinations(objs, r):
            if frozenset(m for m in attributes if all((g, m) in incidence for g in sub)) == intent:
                hits += 1
    return Fraction(hits, 2 ** len(objs))


def covers_from_extents(extents) -> set:
    """(parent, child) pairs of the Hasse diagram of strict inclusion."""
    exts = list(extents)
    out = set()
    for c in exts:
        for p in exts:
            if c < p and not any(c < q < p for q in exts):
                out.add((p, c))
    return out


# -- random data ------------------------------------------------------------

def random_context(rng: random.Random, max_objects: int = 12, max_attributes: int = 8, density: float | None = None):
    n = rng.randint(0, max_objects)
    k = rng.randint(0, max_attributes)
    objects = [f"g{i}" for i in range(1, n + 1)]
    attributes = [f"m{i}" for i in range(1, k + 1)]
    p = rng.uniform(0.2, 0.7) if density is None else density
    inc = frozenset((g, m) for g in objects for m in attributes if rng.random() < p)
    return objects, attributes, inc


def mini_schema(with_interval: bool = False) -> AlphabetSchema:
    """Three-node taxonomy (root with two leaves) and a three-item itemset."""
    tax = Taxonomy.from_parents("t", {"x": "r", "y": "r"}, "r")
    fields = [FieldSpec("t", TAXONOMY, tax, "T"), FieldSpec("i", ITEMSET, None, "P")]
    if with_interval:
        fields.append(FieldSpec("n", INTERVAL, None, "I", repetition=True))
    return AlphabetSchema(tuple(fields), max_rep=4)


MINI_ITEMS = {"i": ("a", "b", "c")}


def random_element(rng: random.Random, schema: AlphabetSchema):
    out = []
    for f in schema.fields:
        if f.kind == TAXONOMY:
            out.append(rng.choice(sorted(f.taxonomy.parent)))
        elif f.kind == ITEMSET:
            out.append(frozenset(i for i in MINI_ITEMS[f.name] if rng.random() < 0.5))
        else:
            lo = rng.randint(1, 3)
            out.append((lo, rng.randint(lo, 3)))
    return tuple(out)


def random_sequence(rng: random.Random, schema: AlphabetSchema, max_len: int = 5):
    return tuple(random_element(rng, schema) for _ in range(rng.randint(1, max_len)))


def random_dataset(rng: random.Random, schema: AlphabetSchema, max_objects: int = 5, max_len: int = 5):
    n = rng.randint(1, max_objects)
    return [(f"o{i}", random_sequence(rng, schema, max_len)) for i in range(1, n + 1)]
