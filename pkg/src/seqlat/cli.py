"""``seqlat`` command line: mine, meet, fca-check, gen.

Every command prints one JSON summary record on stdout (after any payload
lines for ``meet``). Exit codes: 0 success, 1 input or config error,
2 resource-limit abort.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from itertools import combinations

import yaml

from . import __version__
from .errors import ConceptLimitError, SeqlatError
from .io import (
    SyntheticSpec,
    dump_lattice,
    encode_records,
    format_intent,
    format_sequence,
    gen_synthetic,
    load_config,
    load_context,
    load_dataset,
    parse_sequence,
    write_concepts,
)
from .lattice import build_lattice, brute_force_concepts, cover_relation
from .pstruct import (
    context_as_pattern_structure,
    context_derive_objects,
    sequential_structure,
)
from .sequence import alignments, pattern_of
from .projection import apply_projection, projected_meet
from .stability import rank_concepts, stability_exact

EXIT_OK, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2


@dataclass
class CommandOutcome:
    code: int
    summary: dict = field(default_factory=dict)
    lines: list = field(default_factory=list)  # payload, stdout
    table: list = field(default_factory=list)  # --pretty output, stderr


def _overrides(args) -> dict:
    out = {}
    if getattr(args, "projection", None):
        out["projection"] = args.projection
    if getattr(args, "min_len", None) is not None:
        out["min_len"] = args.min_len
    if getattr(args, "select", None) is not None:
        out["select"] = [s for s in args.select.split(",") if s]
    if getattr(args, "require", None) is not None:
        out["require"] = [s for s in args.require.split(",") if s]
    for key in ("theta", "rank_by", "max_concepts", "output"):
        if getattr(args, key, None) is not None:
            out[key] = getattr(args, key)
    return out


def _peak_sizes(lat) -> dict:
    seqs = elems = 0
    for c in lat.concepts:
        intent = c.intent
        if getattr(intent, "is_top", True):
            continue
        seqs = max(seqs, len(intent.sequences))
        elems = max(elems, sum(len(s) for s in intent.sequences))
    return {"sequences": seqs, "elements": elems}


def cmd_mine(args) -> CommandOutcome:
    timing = {}
    t0 = time.perf_counter()
    cfg = load_config(args.config, _overrides(args))
    schema = cfg.mining_schema
    records = encode_records(schema, load_dataset(cfg.dataset, schema), cfg.projection.use_repetition)
    if cfg.max_objects is not None and len(records) > cfg.max_objects:
        return CommandOutcome(EXIT_LIMIT, {"command": "mine", "status": "limit", "reason": f"{len(records)} objects exceed max_objects={cfg.max_objects}"})
    ps = sequential_structure(schema, records, cfg.projection)
    timing["load"] = time.perf_counter() - t0

    summary = {"command": "mine", "objects": len(records), "projection": cfg.projection.describe(),
               "threads": args.threads}
    t0 = time.perf_counter()
    try:
        lat = build_lattice(ps, cfg.max_concepts)
    except ConceptLimitError as exc:
        timing["mine"] = time.perf_counter() - t0
        summary.update(status="limit", reason=str(exc), max_concepts=cfg.max_concepts, timing=_round(timing))
        return CommandOutcome(EXIT_LIMIT, summary)
    timing["mine"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    report = stability_exact(ps, lat)
    timing["stability"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    written = None
    if cfg.output is not None:
        written = write_concepts(cfg.output, lat, report, cfg, schema)
    if args.dump_lattice:
        dump_lattice(args.dump_lattice, lat, report, schema)
    timing["write"] = time.perf_counter() - t0

    summary.update(
        status="ok",
        concepts=len(lat),
        records=written,
        output=None if cfg.output is None else str(cfg.output),
        peak_description_size=_peak_sizes(lat),
        timing=_round(timing),
    )
    out = CommandOutcome(EXIT_OK, summary)
    if args.pretty:
        out.table = _pretty_table(lat, report, schema, rank_concepts(report, lat, cfg.rank_by)[: args.top])
    return out


def _round(timing: dict) -> dict:
    timing = dict(timing)
    timing["total"] = sum(timing.values())
    return {k: round(v, 6) for k, v in timing.items()}


def _pretty_table(lat, report, schema, ids) -> list[str]:
    rows = [f"{'id':>5} {'supp':>5} {'stability':>10} {'bound':>8}  intent"]
    for cid in ids:
        e = report[cid]
        intent = format_intent(lat[cid].intent, schema)
        text = intent if isinstance(intent, str) else " | ".join(intent) or "(empty)"
        rows.append(f"{cid:>5} {e.support:>5} {float(e.stability):>10.4f} {float(e.bound):>8.4f}  {text}")
    return rows


def _resolve_operand(text: str, schema, records) -> tuple:
    text = text.strip()
    if text.startswith("<"):
        return parse_sequence(schema, text)
    for oid, seq in records or ():
        if oid == text:
            return seq
    raise SeqlatError(f"{text!r} is neither an inline sequence nor a known object id")


def cmd_meet(args) -> CommandOutcome:
    cfg = load_config(args.config, _overrides(args))
    schema = cfg.mining_schema
    records = None
    if not (args.a.strip().startswith("<") and args.b.strip().startswith("<")):
        records = encode_records(schema, load_dataset(cfg.dataset, schema), cfg.projection.use_repetition)
    a = _resolve_operand(args.a, schema, records)
    b = _resolve_operand(args.b, schema, records)
    spec = cfg.projection.resolve(schema)
    pa = apply_projection(schema, spec, pattern_of(schema, a))
    pb = apply_projection(schema, spec, pattern_of(schema, b))
    result = projected_meet(schema, spec, pa, pb)
    lines = []
    if args.alignments:
        for s in pa.sequences:
            for t in pb.sequences:
                for k, window in alignments(schema, s, t):
                    lines.append(f"# k={k:+d} {format_sequence(schema, window)}")
    lines += [format_sequence(schema, s) for s in result.sequences]
    summary = {"command": "meet", "status": "ok", "count": len(result.sequences),
               "projection": spec.describe()}
    return CommandOutcome(EXIT_OK, summary, lines)


def _powerset_stability(ctx, ext, intent) -> tuple[int, int]:
    hits = 0
    for r in range(len(ext) + 1):
        for sub in combinations(sorted(ext), r):
            if context_derive_objects(ctx, sub) == intent:
                hits += 1
    return hits, 2 ** len(ext)


def cmd_fca_check(args) -> CommandOutcome:
    ctx = load_context(args.context)
    if len(ctx.objects) > args.max_objects:
        raise SeqlatError(f"{len(ctx.objects)} objects exceed the brute-force guard of {args.max_objects}")
    ps = context_as_pattern_structure(ctx)
    lat = build_lattice(ps)
    report = stability_exact(ps, lat)
    brute = brute_force_concepts(ps, args.max_objects)
    mined = {c.extent: c.intent for c in lat.concepts}
    summary = {"command": "fca-check", "objects": len(ctx.objects), "attributes": len(ctx.attributes),
               "concepts": len(lat), "brute_force_concepts": len(brute)}
    diffs = []
    for ext in sorted(set(mined) | set(brute), key=lambda e: (len(e), sorted(e))):
        if mined.get(ext) != brute.get(ext):
            diffs.append({"extent": sorted(ext), "engine": None if ext not in mined else sorted(mined[ext]),
                          "brute_force": None if ext not in brute else sorted(brute[ext])})
    ids = {c.extent: c.id for c in lat.concepts}
    expected_covers = cover_relation({ids[e]: e for e in mined})
    if expected_covers != set(lat.covers):
        diffs.append({"covers": "engine cover edges differ from the transitive reduction"})
    per_concept = []
    order = {g: i for i, g in enumerate(ctx.objects)}
    for c in lat.concepts:
        e = report[c.id]
        num, den = _powerset_stability(ctx, c.extent, c.intent)
        if (num, den) != (e.num, e.den):
            diffs.append({"extent": sorted(c.extent), "stability_engine": f"{e.num}/{e.den}",
                          "stability_brute_force": f"{num}/{den}"})
        per_concept.append({
            "id": c.id,
            "extent": sorted(c.extent, key=order.__getitem__),
            "intent": format_intent(c.intent, attributes=ctx.attributes),
            "stability": round(float(e.stability), 6),
            "stability_exact": f"{e.stability.numerator}/{e.stability.denominator}",
            "bound": round(float(e.bound), 6),
        })
    summary["agree"] = not diffs
    summary["status"] = "ok" if not diffs else "disagree"
    summary["stability"] = per_concept
    if diffs:
        summary["differences"] = diffs
    out = CommandOutcome(EXIT_OK if not diffs else EXIT_INPUT, summary)
    if args.pretty:
        out.table = [f"{p['id']:>4} {p['stability_exact']:>8}  {{{','.join(p['extent'])}}} -> {{{','.join(p['intent'])}}}"
                     for p in per_concept]
    return out


def cmd_gen(args) -> CommandOutcome:
    doc = {}
    if args.spec:
        try:
            doc = yaml.safe_load(Path(args.spec).read_text(encoding="utf-8")) or {}
        except OSError as exc:
            raise SeqlatError(f"{args.spec}: cannot read spec: {exc.strerror}") from None
        except yaml.YAMLError as exc:
            raise SeqlatError(f"{args.spec}: malformed spec: {exc}") from None
    if args.seed is not None:
        doc["seed"] = args.seed
    spec = SyntheticSpec.from_mapping(doc)
    result = gen_synthetic(spec, args.out)
    return CommandOutcome(EXIT_OK, {"command": "gen", "status": "ok", **result})


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="seqlat", description="Pattern-concept lattices over event sequences.")
    p.add_argument("--version", action="version", version=f"seqlat {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, config=True):
        if config:
            sp.add_argument("--config", required=True, help="YAML run config")
            sp.add_argument("--projection", help="projection shorthand, e.g. GR3 or RPI2")
            sp.add_argument("--min-len", type=int, dest="min_len")
            sp.add_argument("--select", help="comma-separated field names to keep")
            sp.add_argument("--require", help="comma-separated field names that must be specific")
        sp.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker cap (the engine currently runs single-threaded)")
        sp.add_argument("--pretty", action="store_true", help="also print a human-readable table on stderr")

    mine = sub.add_parser("mine", help="build, rank and write the concept lattice")
    common(mine)
    mine.add_argument("--theta", type=float)
    mine.add_argument("--rank-by", dest="rank_by", choices=("stability", "bound", "support"))
    mine.add_argument("--max-concepts", dest="max_concepts", type=int)
    mine.add_argument("--output", help="concept records file (overrides config)")
    mine.add_argument("--dump-lattice", dest="dump_lattice", help="write every concept with its covers")
    mine.add_argument("--top", type=int, default=20, help="rows shown by --pretty")
    mine.set_defaults(func=cmd_mine)

    meet = sub.add_parser("meet", help="pattern meet of two sequences")
    common(meet)
    meet.add_argument("a", help="inline sequence <[..];[..]> or object id")
    meet.add_argument("b", help="inline sequence <[..];[..]> or object id")
    meet.add_argument("--alignments", action="store_true", help="also list every alignment window")
    meet.set_defaults(func=cmd_meet)

    fca = sub.add_parser("fca-check", help="engine vs powerset brute force on a cross table")
    common(fca, config=False)
    fca.add_argument("context")
    fca.add_argument("--max-objects", dest="max_objects", type=int, default=20)
    fca.set_defaults(func=cmd_fca_check)

    gen = sub.add_parser("gen", help="write a seeded synthetic cohort")
    common(gen, config=False)
    gen.add_argument("spec", nargs="?", help="YAML synthetic spec")
    gen.add_argument("--out", required=True)
    gen.add_argument("--seed", type=int)
    gen.set_defaults(func=cmd_gen)
    return p


def run(argv=None) -> CommandOutcome:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConceptLimitError as exc:
        return CommandOutcome(EXIT_LIMIT, {"command": args.command, "status": "limit", "reason": str(exc)})
    except (SeqlatError, OSError) as exc:
        return CommandOutcome(EXIT_INPUT, {"command": args.command, "status": "error", "error": str(exc)})


def main(argv=None) -> int:
    outcome = run(argv)
    for line in outcome.table:
        print(line, file=sys.stderr)
    for line in outcome.lines:
        print(line)
    print(json.dumps(outcome.summary, ensure_ascii=False, separators=(",", ":")))
    if outcome.code == EXIT_INPUT and "error" in outcome.summary:
        print(f"seqlat: error: {outcome.summary['error']}", file=sys.stderr)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
