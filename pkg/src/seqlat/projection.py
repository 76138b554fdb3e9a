"""Projections (interior operators) on the pattern semilattice.

Two families are supported and composed in a fixed order: an alphabet
projection (field blanking, item dropping, required fields) followed by the
minimal-length projection. ``projected_meet`` is the meet of the projected
semilattice, ``psi(x ⊓ y)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Any, Mapping

from .alphabet import AlphabetSchema, _projection_plan, element_meet, project_element
from .errors import ConfigError
from .sequence import (
    TOP,
    Pattern,
    alignments,
    maximal_antichain,
    pattern_meet,
    split_at_bottom,
)

_SHORTHAND = re.compile(r"^((?:[A-Za-z]!?)+)(\d*)$")


@dataclass(frozen=True)
class ProjectionSpec:
    """Field selection, required fields, dropped items, minimal length and
    the run-length flag. ``selected_fields=None`` selects every field."""

    selected_fields: frozenset | None = None
    required_fields: frozenset = frozenset()
    min_length: int = 0
    use_repetition: bool = False
    drop_items: tuple = ()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.selected_fields is not None:
            object.__setattr__(self, "selected_fields", frozenset(self.selected_fields))
        object.__setattr__(self, "required_fields", frozenset(self.required_fields))
        if isinstance(self.drop_items, Mapping):
            drops = self.drop_items.items()
        else:
            drops = self.drop_items
        object.__setattr__(
            self, "drop_items", tuple(sorted((k, frozenset(v)) for k, v in drops if v))
        )
        if not isinstance(self.min_length, int) or self.min_length < 0:
            raise ConfigError(f"min_len must be a non-negative integer, got {self.min_length!r}")
        if self.selected_fields is not None and not self.required_fields <= self.selected_fields:
            missing = sorted(self.required_fields - self.selected_fields)
            raise ConfigError(f"required fields {missing} are not selected")

    def resolve(self, schema: AlphabetSchema) -> "ProjectionSpec":
        """Concrete spec for ``schema``: explicit selection, names checked."""
        return _resolve(schema, self)

    def is_alphabet_identity(self, schema: AlphabetSchema) -> bool:
        return _projection_plan(schema, self.resolve(schema))[3]

    def describe(self) -> dict:
        return {
            "name": self.name,
            "select": None if self.selected_fields is None else sorted(self.selected_fields),
            "require": sorted(self.required_fields),
            "drop": {k: sorted(v) for k, v in self.drop_items},
            "min_len": self.min_length,
            "rle": self.use_repetition,
        }


IDENTITY = ProjectionSpec()


@lru_cache(maxsize=256)
def _resolve(schema: AlphabetSchema, spec: ProjectionSpec) -> ProjectionSpec:
    sel = frozenset(schema.names) if spec.selected_fields is None else spec.selected_fields
    resolved = replace(spec, selected_fields=sel)
    _projection_plan(schema, resolved)
    return resolved


def parse_shorthand(name: str, schema: AlphabetSchema, reason_letter: str = "R", geo_letter: str = "G") -> ProjectionSpec:
    """Expand names like ``GR2`` or ``RPI3``.

    Letters select fields by their schema letter, a trailing number is the
    minimal length, ``!`` after a letter marks that field required, and the
    ``I`` letter (repetition field) turns run-length encoding on. When the
    reason letter is selected without the geo letter, reason is required.
    """
    m = _SHORTHAND.match(name.strip())
    if not m:
        raise ConfigError(f"malformed projection shorthand {name!r}")
    letters, digits = m.group(1), m.group(2)
    by_letter = {}
    for f in schema.fields:
        by_letter.setdefault(f.short, f)
    if schema.repetition_index is None:
        by_letter.setdefault("I", None)
    selected, required = set(), set()
    use_rep = False
    for tok in re.findall(r"[A-Za-z]!?", letters):
        letter = tok[0].upper()
        if letter not in by_letter:
            raise ConfigError(f"shorthand {name!r}: no field with letter {letter!r}")
        f = by_letter[letter]
        if f is None or f.repetition:
            use_rep = True
            selected.add(f.name if f is not None else "rep")
            continue
        selected.add(f.name)
        if tok.endswith("!"):
            required.add(f.name)
    chosen = {tok[0].upper() for tok in re.findall(r"[A-Za-z]", letters)}
    if reason_letter in chosen and geo_letter not in chosen and reason_letter in by_letter:
        required.add(by_letter[reason_letter].name)
    return ProjectionSpec(
        selected_fields=frozenset(selected),
        required_fields=frozenset(required),
        min_length=int(digits) if digits else 0,
        use_repetition=use_rep,
        name=name,
    )


def spec_from_config(value: Any, schema: AlphabetSchema) -> ProjectionSpec:
    """Projection from a config value: ``None``, a shorthand string or a mapping
    with keys ``select``, ``require``, ``drop``, ``min_len``, ``rle`` (plus an
    optional ``shorthand`` that the other keys refine)."""
    if value is None:
        return IDENTITY
    if isinstance(value, str):
        return parse_shorthand(value, schema)
    if not isinstance(value, Mapping):
        raise ConfigError(f"projection must be a string or a mapping, got {value!r}")
    allowed = {"shorthand", "select", "require", "drop", "min_len", "rle"}
    unknown = set(value) - allowed
    if unknown:
        raise ConfigError(f"unknown projection keys {sorted(unknown)}")
    base = parse_shorthand(value["shorthand"], schema) if value.get("shorthand") else IDENTITY
    kw: dict = {}
    if "select" in value:
        sel = value["select"]
        kw["selected_fields"] = None if sel in (None, "all") else frozenset(sel)
    if "require" in value:
        kw["required_fields"] = frozenset(value["require"] or ())
    if "drop" in value:
        kw["drop_items"] = dict(value["drop"] or {})
    if "min_len" in value:
        kw["min_length"] = value["min_len"]
    if "rle" in value:
        kw["use_repetition"] = bool(value["rle"])
    try:
        return replace(base, **kw)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def apply_mlp(schema: AlphabetSchema, min_length: int, d: Pattern) -> Pattern:
    if d.is_top or min_length <= 1:
        return d
    return Pattern(tuple(s for s in d.sequences if len(s) >= min_length))


def apply_alphabet_projection(schema: AlphabetSchema, spec: ProjectionSpec, d: Pattern) -> Pattern:
    spec = spec.resolve(schema)
    if d.is_top or _projection_plan(schema, spec)[3]:
        return d
    runs = []
    for s in d.sequences:
        runs.extend(split_at_bottom(schema, [project_element(schema, spec, e) for e in s]))
    return maximal_antichain(schema, runs)


def apply_projection(schema: AlphabetSchema, spec: ProjectionSpec, d: Pattern) -> Pattern:
    """The composite psi: alphabet projection, then minimal length."""
    return apply_mlp(schema, spec.min_length, apply_alphabet_projection(schema, spec, d))


def projected_meet_reference(schema: AlphabetSchema, spec: ProjectionSpec, x: Pattern, y: Pattern) -> Pattern:
    """``psi(x ⊓ y)`` computed literally, for cross-checking the fused path."""
    return apply_projection(schema, spec, pattern_meet(schema, x, y))


@lru_cache(maxsize=64)
def _meet_tables(schema: AlphabetSchema, spec: ProjectionSpec) -> tuple[dict, dict]:
    """Per (schema, projection) caches: projected element meets, and the
    surviving runs of each aligned sequence pair."""
    return {}, {}


def _pair_runs(schema, spec, identity, min_len, table, s, t) -> tuple:
    bottom = schema.general
    n, m = len(s), len(t)
    runs = []
    # Offset k pairs s[i] with t[i + k], as in alignments(); diagonals
    # shorter than min_len are skipped.
    for k in range(min_len - n, m - min_len + 1):
        lo, hi = max(0, -k), min(n, m - k)
        run: list = []
        for i in range(lo, hi):
            a, b = s[i], t[i + k]
            e = table.get((a, b))
            if e is None:
                e = element_meet(schema, a, b)
                if not identity:
                    e = project_element(schema, spec, e)
                table[(a, b)] = e
                table[(b, a)] = e
            if e == bottom:
                if len(run) >= min_len:
                    runs.append(tuple(run))
                run = []
                if hi - i - 1 < min_len:
                    break
            else:
                run.append(e)
        if len(run) >= min_len:
            runs.append(tuple(run))
    return tuple(runs)


def projected_meet(schema: AlphabetSchema, spec: ProjectionSpec, x: Pattern, y: Pattern) -> Pattern:
    """``psi(x ⊓ y)`` with projection and length filtering fused into the
    alignment loop. Diagonals and runs shorter than the minimal length are
    discarded before the antichain reduction; they could only ever remove
    sequences that are shorter still."""
    if x.is_top:
        return apply_projection(schema, spec, y)
    if y.is_top:
        return apply_projection(schema, spec, x)
    spec = spec.resolve(schema)
    identity = _projection_plan(schema, spec)[3]
    min_len = max(spec.min_length, 1)
    table, pairs = _meet_tables(schema, spec)
    if len(table) > 2_000_000:
        table.clear()
    if len(pairs) > 1_000_000:
        pairs.clear()
    runs: set = set()
    for s in x.sequences:
        if len(s) < min_len:
            continue
        for t in y.sequences:
            if len(t) < min_len:
                continue
            found = pairs.get((s, t))
            if found is None:
                found = _pair_runs(schema, spec, identity, min_len, table, s, t)
                pairs[(s, t)] = found
            runs.update(found)
    return maximal_antichain(schema, runs)


def is_fixed_point(schema: AlphabetSchema, spec: ProjectionSpec, d: Pattern) -> bool:
    return apply_projection(schema, spec, d) == d


__all__ = [
    "IDENTITY",
    "ProjectionSpec",
    "TOP",
    "apply_alphabet_projection",
    "apply_mlp",
    "apply_projection",
    "is_fixed_point",
    "parse_shorthand",
    "projected_meet",
    "projected_meet_reference",
    "spec_from_config",
]
