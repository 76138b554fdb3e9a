"""File formats, run configuration, concept output and the synthetic generator.

Formats (all UTF-8):

taxonomy
    ``# seqlat-taxonomy v1`` header, then one ``child<TAB>parent`` edge per
    line and exactly one ``root<TAB>-`` line. ``#`` starts a comment.

dataset
    JSON lines. An optional first record ``{"format": "seqlat-dataset",
    "version": 1}``, then ``{"id": ..., "events": [{field: value, ...}, ...]}``
    per object. Taxonomy values are node ids, itemsets are lists, intervals
    are an int or ``[lo, hi]``.

context
    Cross table: a header row of attribute names (first cell empty), then one
    row per object with ``x`` or blank cells, tab- or comma-separated.
    Burmeister ``.cxt`` files (first line ``B``) are accepted too.

concepts
    JSON lines: a header record, then one record per concept.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

import yaml

from .alphabet import (
    INTERVAL,
    ITEMSET,
    TAXONOMY,
    AlphabetSchema,
    Element,
    FieldSpec,
    Taxonomy,
    make_element,
)
from .errors import ConfigError, InputError, ParseError
from .lattice import DEFAULT_MAX_CONCEPTS, Lattice
from .projection import ProjectionSpec, spec_from_config
from .pstruct import FormalContext
from .sequence import Pattern, run_length_encode
from .stability import RANK_KEYS, StabilityReport, rank_concepts, stable_filter

FORMAT_VERSION = 1


# -- taxonomy ---------------------------------------------------------------

def parse_taxonomy(text: str, name: str = "taxonomy", path: str | None = None) -> Taxonomy:
    parents: dict = {}
    lines: dict = {}
    root = None
    root_line = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split("\t")]
        if len(parts) != 2 or not all(parts):
            raise ParseError(f"expected 'child<TAB>parent', got {raw!r}", path, lineno)
        child, parent = parts
        if parent == "-":
            if root is not None:
                raise ParseError(f"multiple roots: {root!r} (line {root_line}) and {child!r}", path, lineno)
            root, root_line = child, lineno
            continue
        if child in parents:
            if parents[child] == parent:
                raise ParseError(f"duplicate edge {child!r} -> {parent!r}", path, lineno)
            raise ParseError(f"node {child!r} has several parents", path, lineno)
        parents[child] = parent
        lines[child] = lineno
    if root is None:
        raise ParseError("no root line ('name<TAB>-')", path)
    if root in parents:
        raise ParseError(f"root {root!r} also has a parent", path, lines[root])
    for child, parent in parents.items():
        if parent != root and parent not in parents:
            raise ParseError(f"orphan: parent {parent!r} of {child!r} is never declared", path, lines[child])
    for start in parents:
        seen = []
        cur = start
        while cur != root:
            if cur in seen:
                raise ParseError(f"cycle through node {cur!r}", path, lines[cur])
            seen.append(cur)
            cur = parents[cur]
    return Taxonomy.from_parents(name, parents, root)


def load_taxonomy(path, name: str | None = None) -> Taxonomy:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read taxonomy: {exc.strerror}", str(path)) from None
    return parse_taxonomy(text, name or path.stem, str(path))


def dump_taxonomy(tax: Taxonomy, path) -> None:
    lines = ["# seqlat-taxonomy v1", f"{tax.root}\t-"]
    order = sorted((n for n in tax.parent if n != tax.root), key=lambda n: (tax.depth[n], n))
    lines += [f"{n}\t{tax.parent[n]}" for n in order]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


# -- element / sequence notation -------------------------------------------

def format_value(f: FieldSpec, v) -> str:
    if f.kind == ITEMSET:
        return "{" + ",".join(sorted(v)) + "}"
    if f.kind == INTERVAL:
        return f"[{v[0]},{v[1]}]"
    return v


def format_element(schema: AlphabetSchema, e: Element) -> str:
    return "[" + ",".join(format_value(f, v) for f, v in zip(schema.fields, e)) + "]"


def format_sequence(schema: AlphabetSchema, s) -> str:
    return "<" + ";".join(format_element(schema, e) for e in s) + ">"


def format_intent(intent, schema: AlphabetSchema | None = None, attributes: list | None = None):
    """JSON-ready intent: sequence strings, an attribute list, or ``"TOP"``."""
    if isinstance(intent, Pattern):
        if intent.is_top:
            return "TOP"
        return [format_sequence(schema, s) for s in intent.sequences]
    order = {a: i for i, a in enumerate(attributes or sorted(intent))}
    return sorted(intent, key=lambda a: order.get(a, len(order)))


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "[{<":
            depth += 1
        elif ch in "]}>":
            depth -= 1
            if depth < 0:
                raise InputError(f"unbalanced brackets in {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise InputError(f"unbalanced brackets in {text!r}")
    parts.append("".join(cur))
    return parts


def parse_element(schema: AlphabetSchema, text: str) -> Element:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise InputError(f"element must look like [v1,v2,...], got {text!r}")
    cells = _split_top(text[1:-1], ",")
    if len(cells) != len(schema.fields):
        raise InputError(f"element {text!r} has {len(cells)} values, schema has {len(schema.fields)}")
    values: list[Any] = []
    for f, cell in zip(schema.fields, cells):
        cell = cell.strip()
        if f.kind == ITEMSET:
            if not (cell.startswith("{") and cell.endswith("}")):
                raise InputError(f"field {f.name!r} expects {{items}}, got {cell!r}")
            values.append([x.strip() for x in cell[1:-1].split(",") if x.strip()])
        elif f.kind == INTERVAL:
            if not (cell.startswith("[") and cell.endswith("]")):
                raise InputError(f"field {f.name!r} expects [lo,hi], got {cell!r}")
            try:
                values.append([int(x) for x in cell[1:-1].split(",")])
            except ValueError:
                raise InputError(f"bad interval {cell!r}") from None
        else:
            values.append(cell)
    return make_element(schema, values)


def parse_sequence(schema: AlphabetSchema, text: str) -> tuple:
    """Inverse of :func:`format_sequence`: ``<[H1,{a}];[H2,{b,c}]>``."""
    text = text.strip()
    if not (text.startswith("<") and text.endswith(">")):
        raise InputError(f"sequence must be written <e1;e2;...>, got {text!r}")
    body = text[1:-1].strip()
    if not body:
        return ()
    return tuple(parse_element(schema, part) for part in _split_top(body, ";"))


# -- datasets ---------------------------------------------------------------

def _event(schema: AlphabetSchema, ev, path, lineno) -> Element:
    if not isinstance(ev, dict):
        raise ParseError(f"event must be an object, got {ev!r}", path, lineno)
    missing = [f.name for f in schema.fields if not f.repetition and f.name not in ev]
    if missing:
        raise ParseError(f"event is missing fields {missing}", path, lineno)
    try:
        return make_element(schema, ev)
    except (InputError, TypeError, ValueError) as exc:
        raise ParseError(str(exc), path, lineno) from None


def parse_dataset(text: str, schema: AlphabetSchema, path: str | None = None) -> list[tuple[str, tuple]]:
    records = []
    ids = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip():
            continue
        try:
            rec = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON record: {exc.msg}", path, lineno) from None
        if not isinstance(rec, dict):
            raise ParseError("record must be a JSON object", path, lineno)
        if "format" in rec:
            if rec.get("format") != "seqlat-dataset":
                raise ParseError(f"unexpected format {rec.get('format')!r}", path, lineno)
            continue
        if "id" not in rec or not isinstance(rec.get("events"), list):
            raise ParseError("record needs an 'id' and an 'events' list", path, lineno)
        oid = str(rec["id"])
        if oid in ids:
            raise ParseError(f"duplicate object id {oid!r}", path, lineno)
        ids.add(oid)
        records.append((oid, tuple(_event(schema, ev, path, lineno) for ev in rec["events"])))
    return records


def load_dataset(path, schema: AlphabetSchema) -> list[tuple[str, tuple]]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read dataset: {exc.strerror}", str(path)) from None
    return parse_dataset(text, schema, str(path))


def event_to_json(schema: AlphabetSchema, e: Element) -> dict:
    out = {}
    for f, v in zip(schema.fields, e):
        if f.kind == ITEMSET:
            out[f.name] = sorted(v)
        elif f.kind == INTERVAL:
            out[f.name] = [v[0], v[1]]
        else:
            out[f.name] = v
    return out


def dump_dataset(records: Iterable[tuple[str, tuple]], schema: AlphabetSchema, path) -> None:
    lines = [json.dumps({"format": "seqlat-dataset", "version": FORMAT_VERSION})]
    for oid, seq in records:
        lines.append(json.dumps({"id": oid, "events": [event_to_json(schema, e) for e in seq]}, ensure_ascii=False))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def encode_records(schema: AlphabetSchema, records, use_repetition: bool):
    if not use_repetition:
        return records
    return [(oid, run_length_encode(schema, seq)) for oid, seq in records]


# -- formal contexts --------------------------------------------------------

def _parse_burmeister(lines: list[str], path) -> FormalContext:
    rows = [l.rstrip("\r\n") for l in lines]
    it = iter(enumerate(rows, 1))
    body = [(n, l.strip()) for n, l in it if l.strip()]
    try:
        n_obj, n_att = int(body[1][1]), int(body[2][1])
    except (IndexError, ValueError):
        raise ParseError("Burmeister header must give object and attribute counts", path) from None
    names = body[3:3 + n_obj + n_att]
    grid = body[3 + n_obj + n_att:]
    if len(names) != n_obj + n_att or len(grid) != n_obj:
        raise ParseError("Burmeister file is truncated", path)
    objects = [t for _, t in names[:n_obj]]
    attributes = [t for _, t in names[n_obj:]]
    inc = set()
    for (lineno, row), g in zip(grid, objects):
        if len(row) != n_att:
            raise ParseError(f"ragged row: {len(row)} cells, expected {n_att}", path, lineno)
        inc.update((g, m) for ch, m in zip(row, attributes) if ch in "Xx")
    return FormalContext(objects, attributes, frozenset(inc))


def parse_context(text: str, path: str | None = None) -> FormalContext:
    lines = [l for l in text.splitlines() if not l.lstrip().startswith("#")]
    if not any(l.strip() for l in lines):
        return FormalContext([], [], frozenset())
    if lines[0].strip() == "B" or (lines and next(l for l in lines if l.strip()).strip() == "B"):
        return _parse_burmeister(lines, path)
    numbered = [(n, l) for n, l in enumerate(text.splitlines(), 1) if l.strip() and not l.lstrip().startswith("#")]
    delim = "\t" if "\t" in numbered[0][1] else ","
    parsed = [(n, next(csv.reader([l], delimiter=delim))) for n, l in numbered]
    header = [c.strip() for c in parsed[0][1]]
    attributes = header[1:]
    if any(not a for a in attributes):
        raise ParseError("empty attribute name in header", path, parsed[0][0])
    objects, inc = [], set()
    for lineno, cells in parsed[1:]:
        if len(cells) != len(header):
            raise ParseError(f"ragged row: {len(cells)} cells, header has {len(header)}", path, lineno)
        g = cells[0].strip()
        if not g:
            raise ParseError("row without object name", path, lineno)
        objects.append(g)
        for m, cell in zip(attributes, cells[1:]):
            cell = cell.strip()
            if cell.lower() == "x":
                inc.add((g, m))
            elif cell:
                raise ParseError(f"cell {cell!r} is neither 'x' nor blank", path, lineno)
    try:
        return FormalContext(objects, attributes, frozenset(inc))
    except InputError as exc:
        raise ParseError(str(exc), path) from None


def load_context(path) -> FormalContext:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read context: {exc.strerror}", str(path)) from None
    return parse_context(text, str(path))


def dump_context(ctx: FormalContext, path) -> None:
    lines = ["# seqlat-context v1", "\t".join([""] + list(ctx.attributes))]
    for g in ctx.objects:
        lines.append("\t".join([g] + ["x" if (g, m) in ctx.incidence else "" for m in ctx.attributes]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


# -- run configuration ------------------------------------------------------

@dataclass
class RunConfig:
    schema: AlphabetSchema
    dataset: Path
    projection: ProjectionSpec
    output: Path | None = None
    rank_by: str = "stability"
    theta: Fraction | None = None
    max_concepts: int = DEFAULT_MAX_CONCEPTS
    max_objects: int | None = None
    source: Path | None = None

    @property
    def mining_schema(self) -> AlphabetSchema:
        """Schema actually mined: gains a repetition field when encoding is on."""
        if self.projection.use_repetition:
            return self.schema.with_repetition()
        return self.schema

    def describe(self) -> dict:
        return {
            "dataset": str(self.dataset),
            "projection": self.projection.describe(),
            "rank_by": self.rank_by,
            "theta": None if self.theta is None else str(self.theta),
            "max_concepts": self.max_concepts,
        }


def schema_from_config(fields: list, base: Path, max_rep: int | None = None) -> AlphabetSchema:
    if not isinstance(fields, list) or not fields:
        raise ConfigError("schema.fields must be a non-empty list")
    specs = []
    for fd in fields:
        if not isinstance(fd, dict) or "name" not in fd or "kind" not in fd:
            raise ConfigError(f"schema field needs 'name' and 'kind': {fd!r}")
        tax = None
        if fd["kind"] == TAXONOMY:
            if "taxonomy" not in fd:
                raise ConfigError(f"taxonomy field {fd['name']!r} needs a 'taxonomy' path")
            tax = load_taxonomy(base / fd["taxonomy"], fd["name"])
        specs.append(FieldSpec(fd["name"], fd["kind"], tax, fd.get("letter"), bool(fd.get("repetition", False))))
    if max_rep is None:
        return AlphabetSchema(tuple(specs))
    return AlphabetSchema(tuple(specs), int(max_rep))


def load_config(path, overrides: dict | None = None) -> RunConfig:
    """Read a YAML (or JSON) run config; ``overrides`` shadow top-level keys and
    projection keys (``select``, ``require``, ``min_len``, ``rle``)."""
    path = Path(path)
    try:
        doc = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read config: {exc.strerror}", str(path)) from None
    except yaml.YAMLError as exc:
        raise ParseError(f"malformed config: {exc}", str(path)) from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: config must be a mapping")
    overrides = dict(overrides or {})
    base = path.parent
    known = {"version", "schema", "dataset", "projection", "output", "rank_by", "theta", "limits"}
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(f"{path}: unknown config keys {sorted(unknown)}")
    schema_doc = doc.get("schema") or {}
    schema = schema_from_config(schema_doc.get("fields"), base, schema_doc.get("max_rep"))

    proj = doc.get("projection")
    if "projection" in overrides:
        proj = overrides.pop("projection")
    proj_over = {k: overrides.pop(k) for k in ("select", "require", "min_len", "rle") if k in overrides}
    if proj_over:
        if isinstance(proj, str):
            proj = {"shorthand": proj}
        proj = dict(proj or {})
        proj.update(proj_over)
    spec = spec_from_config(proj, schema)
    mining = schema.with_repetition() if spec.use_repetition else schema
    spec.resolve(mining)

    if "dataset" not in doc:
        raise ConfigError(f"{path}: 'dataset' is required")
    limits = doc.get("limits") or {}
    rank_by = overrides.get("rank_by") or doc.get("rank_by", "stability")
    if rank_by not in RANK_KEYS:
        raise ConfigError(f"rank_by must be one of {RANK_KEYS}, got {rank_by!r}")
    theta = overrides.get("theta", doc.get("theta"))
    if theta is not None:
        theta = Fraction(str(theta))
        if not 0 <= theta < 1:
            raise ConfigError(f"theta must lie in [0, 1), got {theta}")
    output = overrides.get("output") or doc.get("output")
    return RunConfig(
        schema=schema,
        dataset=base / doc["dataset"],
        projection=spec,
        output=Path(output) if output is not None and "output" in overrides else (base / output if output else None),
        rank_by=rank_by,
        theta=theta,
        max_concepts=int(overrides.get("max_concepts") or limits.get("max_concepts", DEFAULT_MAX_CONCEPTS)),
        max_objects=limits.get("max_objects"),
        source=path,
    )


# -- concept output ---------------------------------------------------------

def _dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def concept_record(lat: Lattice, cid: int, report: StabilityReport | None, schema=None, attributes=None) -> dict:
    c = lat[cid]
    order = {g: i for i, g in enumerate(lat.objects)}
    rec = {
        "id": c.id,
        "support": len(c.extent),
        "extent": sorted(c.extent, key=order.__getitem__),
        "intent": format_intent(c.intent, schema, attributes),
        "parents": lat.parents(cid),
    }
    if report is not None:
        e = report[cid]
        rec.update(
            stability=round(float(e.stability), 6),
            stability_num=e.num,
            stability_den=e.den,
            bound=round(float(e.bound), 6),
            md=e.md,
        )
    return rec


def write_concepts(path, lat: Lattice, report: StabilityReport, config: RunConfig | None = None,
                   schema: AlphabetSchema | None = None, attributes: list | None = None) -> int:
    """Ranked (and optionally theta-filtered) concept records; returns the record count."""
    rank_by = config.rank_by if config else "stability"
    theta = config.theta if config else None
    schema = schema or (config.mining_schema if config else None)
    ranked = rank_concepts(report, lat, rank_by)
    if theta is not None:
        keep = set(stable_filter(lat, theta, report))
        ranked = [c for c in ranked if c in keep]
    header = {
        "format": "seqlat-concepts",
        "version": FORMAT_VERSION,
        "rank_by": rank_by,
        "theta": None if theta is None else str(theta),
        "projection": config.projection.describe() if config else None,
        "objects": len(lat.objects),
        "concepts": len(lat),
        "records": len(ranked),
    }
    lines = [_dumps(header)]
    for rank, cid in enumerate(ranked, 1):
        rec = {"rank": rank}
        rec.update(concept_record(lat, cid, report, schema, attributes))
        lines.append(_dumps(rec))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return len(ranked)


def dump_lattice(path, lat: Lattice, report: StabilityReport | None = None, schema=None, attributes=None) -> None:
    """Every concept by id, with its cover parents."""
    header = {"format": "seqlat-lattice", "version": FORMAT_VERSION, "concepts": len(lat),
              "top": lat.top, "bottom": lat.bottom}
    lines = [_dumps(header)]
    lines += [_dumps(concept_record(lat, c.id, report, schema, attributes)) for c in lat.concepts]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_records(path) -> tuple[dict, list[dict]]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    header = json.loads(lines[0])
    return header, [json.loads(l) for l in lines[1:] if l.strip()]


# -- synthetic data ---------------------------------------------------------

@dataclass
class SyntheticSpec:
    """Shape of a generated PMSI-like cohort. ``seed`` is mandatory."""

    seed: int
    patients: int = 100
    length_p: float = 0.55
    max_length: int = 6
    geo_levels: int = 4
    geo_branching: list = field(default_factory=lambda: [2, 3, 3])
    diag_levels: int = 5
    diag_branching: list = field(default_factory=lambda: [2, 2, 2, 2])
    procedures: int = 4
    max_procedures: int = 1
    repeat_prob: float = 0.25
    skew: float = 1.5

    def __post_init__(self):
        if self.seed is None:
            raise ConfigError("synthetic spec needs a seed")
        for name in ("patients", "max_length", "geo_levels", "diag_levels", "procedures"):
            if int(getattr(self, name)) <= 0:
                raise ConfigError(f"{name} must be positive")
        if not 0 < self.length_p <= 1:
            raise ConfigError("length_p must lie in (0, 1]")
        if not 0 <= self.repeat_prob < 1:
            raise ConfigError("repeat_prob must lie in [0, 1)")
        for levels, branching, label in ((self.geo_levels, self.geo_branching, "geo"),
                                         (self.diag_levels, self.diag_branching, "diag")):
            if len(branching) < levels - 1 or any(int(b) <= 0 for b in branching[: levels - 1]):
                raise ConfigError(f"{label}_branching needs {levels - 1} positive entries")

    @classmethod
    def from_mapping(cls, doc: dict) -> "SyntheticSpec":
        if not isinstance(doc, dict):
            raise ConfigError("synthetic spec must be a mapping")
        allowed = set(cls.__dataclass_fields__)
        unknown = set(doc) - allowed
        if unknown:
            raise ConfigError(f"unknown synthetic spec keys {sorted(unknown)}")
        if "seed" not in doc:
            raise ConfigError("synthetic spec needs a seed")
        try:
            return cls(**doc)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None


def _tree(root: str, prefixes: str, levels: int, branching: list) -> dict:
    """child -> parent map of a balanced tree with ``levels`` levels (root included)."""
    parents: dict = {}
    frontier = [root]
    for depth in range(levels - 1):
        nxt = []
        for node in frontier:
            for k in range(1, int(branching[depth]) + 1):
                stem = "" if node == root else node
                child = f"{stem}{prefixes[depth]}{k}"
                parents[child] = node
                nxt.append(child)
        frontier = nxt
    return parents


def _weights(n: int, skew: float) -> list[float]:
    return [1.0 / (i + 1) ** skew for i in range(n)]


def generate_records(spec: SyntheticSpec) -> tuple[Taxonomy, Taxonomy, list[dict]]:
    rng = random.Random(spec.seed)
    geo = Taxonomy.from_parents("geo", _tree("France", "RDHX", spec.geo_levels, spec.geo_branching), "France")
    diag = Taxonomy.from_parents("reason", _tree("ICD", "CBKSX", spec.diag_levels, spec.diag_branching), "ICD")
    hospitals = sorted(n for n in geo.parent if geo.depth[n] == spec.geo_levels - 1)
    reasons = sorted(n for n in diag.parent if diag.depth[n] == spec.diag_levels - 1)
    procs = [f"mp{i + 1}" for i in range(spec.procedures)]
    # Shuffle before weighting so popular leaves are spread over the tree.
    rng.shuffle(hospitals)
    rng.shuffle(reasons)
    hw, rw, pw = _weights(len(hospitals), spec.skew), _weights(len(reasons), spec.skew), _weights(len(procs), spec.skew)

    def fresh_event():
        k = rng.randint(0, spec.max_procedures)
        chosen = set()
        while len(chosen) < min(k, len(procs)):
            chosen.add(rng.choices(procs, pw)[0])
        return {"geo": rng.choices(hospitals, hw)[0], "reason": rng.choices(reasons, rw)[0], "proc": sorted(chosen)}

    patients = []
    width = len(str(spec.patients))
    for i in range(spec.patients):
        n = 1
        while n < spec.max_length and rng.random() > spec.length_p:
            n += 1
        events: list = []
        for _ in range(n):
            if events and rng.random() < spec.repeat_prob:
                events.append(dict(events[-1]))
                continue
            ev = fresh_event()
            tries = 0
            while events and ev == events[-1] and tries < 50:
                ev = fresh_event()
                tries += 1
            if events and ev == events[-1]:
                ev = dict(ev, proc=sorted(set(ev["proc"]) ^ {procs[0]}))
            events.append(ev)
        patients.append({"id": f"pt{i + 1:0{width}d}", "events": events})
    return geo, diag, patients


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def gen_synthetic(spec: SyntheticSpec, outdir) -> dict:
    """Write geo/diagnosis taxonomies, a patient dataset and a ready-to-run config."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    geo, diag, patients = generate_records(spec)
    paths = {
        "geo": out / "geo.tsv",
        "reason": out / "reason.tsv",
        "dataset": out / "patients.jsonl",
        "config": out / "config.yaml",
        "spec": out / "synthetic.yaml",
    }
    dump_taxonomy(geo, paths["geo"])
    dump_taxonomy(diag, paths["reason"])
    lines = [json.dumps({"format": "seqlat-dataset", "version": FORMAT_VERSION})]
    lines += [json.dumps(p, ensure_ascii=False) for p in patients]
    paths["dataset"].write_text("\n".join(lines) + "\n", encoding="utf-8")
    config = {
        "version": FORMAT_VERSION,
        "schema": {
            "fields": [
                {"name": "geo", "kind": "taxonomy", "taxonomy": "geo.tsv", "letter": "G"},
                {"name": "reason", "kind": "taxonomy", "taxonomy": "reason.tsv", "letter": "R"},
                {"name": "proc", "kind": "itemset", "letter": "P"},
            ]
        },
        "dataset": "patients.jsonl",
        "projection": "GRP3",
        "output": "concepts.jsonl",
        "rank_by": "stability",
    }
    paths["config"].write_text(yaml.safe_dump(config, sort_keys=False), encoding="utf-8")
    paths["spec"].write_text(yaml.safe_dump(asdict(spec), sort_keys=True), encoding="utf-8")
    return {
        "seed": spec.seed,
        "patients": spec.patients,
        "files": {k: str(v) for k, v in paths.items()},
        "sha256": {k: _sha256(v) for k, v in paths.items()},
    }
