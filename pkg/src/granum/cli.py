"""Command-line front door.

Subcommands cover every analysis: ``approx``, ``gos-audit``,
``parthood-audit``, ``count``, ``coherence``, ``inverse`` and ``oracle``.
JSON output is schema-stable (sorted keys), so identical configurations
produce byte-identical reports.  Exit status: 0 on success, 1 when a
``--strict`` run ends analysis-negative, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import counting, gos as gos_mod, oracles, parthood as pH
from .core import (ParseError, Region, Universe, indiscernibility_partition,
                   parse_context, parse_information_table)

DEFAULT_SEED = 1729
ENV_SEED = "GRANUM_SEED"

AXIOM_ALIASES = {
    "wra": "weak-representability",
    "weak-representability": "weak-representability",
    "ls": "lower-stability",
    "lower-stability": "lower-stability",
    "fu": "full-underlap",
    "full-underlap": "full-underlap",
}


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines a run; the seed pins all sampling."""

    command: str
    input: str | None
    format: str | None
    attrs: tuple[str, ...] | None
    parthood: str
    conflict: str
    algorithm: str | None
    seed: int
    budget: int | None
    output: str
    strict: bool
    threads: int


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get(ENV_SEED)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ParseError(f"{ENV_SEED} must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def _config(args: argparse.Namespace) -> RunConfig:
    attrs = tuple(args.attrs.split(",")) if getattr(args, "attrs", None) else None
    return RunConfig(
        command=args.command,
        input=getattr(args, "input", None),
        format=getattr(args, "format", None),
        attrs=attrs,
        parthood=getattr(args, "parthood", "rough-inclusion"),
        conflict=getattr(args, "conflict", "comparability"),
        algorithm=getattr(args, "algo", None) or getattr(args, "op", None),
        seed=_resolve_seed(getattr(args, "seed", None)),
        budget=getattr(args, "budget", None),
        output=args.output,
        strict=args.strict,
        threads=args.threads,
    )


def _load_space(cfg: RunConfig) -> gos_mod.GranularOperatorSpace:
    if cfg.input is None:
        raise ParseError("an --input file is required")
    path = Path(cfg.input)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    fmt = cfg.format
    if fmt is None:
        fmt = "csv" if path.suffix.lower() == ".csv" else "json"
    if fmt == "csv" or (fmt == "json" and _looks_like_table(text)):
        table = parse_information_table(text, fmt)
        attrs = cfg.attrs or table.attributes
        granulation = indiscernibility_partition(table, attrs).granulation()
        universe = table.objects
    else:
        universe, granulation = parse_context(text)
    return gos_mod.GranularOperatorSpace(universe, granulation,
                                         parthood=pH.variant(cfg.parthood))


def _looks_like_table(text: str) -> bool:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        return False
    return isinstance(doc, dict) and "objects" in doc and "attributes" in doc


def _parse_regions(space: gos_mod.GranularOperatorSpace, raw: list[str]) -> list[Region]:
    out = []
    for chunk in raw:
        members = [m for m in chunk.split(",") if m]
        try:
            out.append(space.universe.region(members))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    return out


def _singleton_conflict(space: gos_mod.GranularOperatorSpace, cfg: RunConfig):
    singles = {e: space.universe.singleton(e) for e in space.universe}
    v = pH.variant(cfg.parthood)

    def conflict(a: str, b: str) -> bool:
        return pH.conflict(v, singles[a], singles[b], space, cfg.conflict)
    return list(space.universe.elements), conflict


def _class_items(space: gos_mod.GranularOperatorSpace, cfg: RunConfig):
    quotient = gos_mod.rough_objects(space)
    reps = {}
    items = []
    for c in quotient.classes:
        name = "{%s}" % ",".join(c.representative())
        items.append(name)
        reps[name] = c.representative()
    v = pH.variant(cfg.parthood)

    def conflict(a: str, b: str) -> bool:
        return pH.conflict(v, reps[a], reps[b], space, cfg.conflict)
    return items, conflict


def _items_and_conflict(space, cfg: RunConfig, which: str):
    if which == "elements":
        return _singleton_conflict(space, cfg)
    if which == "rough-objects":
        return _class_items(space, cfg)
    raise ParseError(f"unknown item collection {which!r}")


def _cmd_approx(args, cfg: RunConfig):
    space = _load_space(cfg)
    regions = _parse_regions(space, args.region or [])
    if not regions:
        raise ParseError("at least one --region is required")
    rows = []
    for r in regions:
        lo, up = space.signature(r)
        row = {
            "region": sorted(r),
            "lower": sorted(lo),
            "upper": sorted(up),
            "definite": space.is_definite(r),
        }
        if args.knowledge:
            row["knowledge"] = gos_mod.knowledge_validity_check(r, space).to_dict()
        rows.append(row)
    payload = {
        "universe": list(space.universe.elements),
        "granules": [sorted(g) for g in space.granulation.granules],
        "regions": rows,
    }
    lines = []
    for row in rows:
        lines.append(f"region {{{', '.join(row['region'])}}}: "
                     f"lower={{{', '.join(row['lower'])}}} "
                     f"upper={{{', '.join(row['upper'])}}}"
                     + (" definite" if row["definite"] else ""))
        if args.knowledge:
            for eq in row["knowledge"]["equations"]:
                mark = "ok" if eq["holds"] else "FAIL"
                lines.append(f"  {eq['name']}: {mark}")
    negative = args.knowledge and any(not e["holds"]
                                      for row in rows for e in row["knowledge"]["equations"])
    return payload, "\n".join(lines), bool(negative)


def _cmd_gos_audit(args, cfg: RunConfig):
    space = _load_space(cfg)
    wanted = AXIOM_ALIASES.get(args.axiom, args.axiom)
    reports = []
    if wanted in ("weak-representability", "all"):
        reports.append(gos_mod.audit_weak_representability(space, seed=cfg.seed,
                                                           workers=cfg.threads))
    if wanted in ("lower-stability", "all"):
        reports.append(gos_mod.audit_lower_stability(space, seed=cfg.seed,
                                                     workers=cfg.threads))
    if wanted in ("full-underlap", "all"):
        reports.append(gos_mod.audit_full_underlap(space, seed=cfg.seed,
                                                   workers=cfg.threads))
    if not reports:
        raise ParseError(f"unknown axiom {args.axiom!r} (use wra, ls, fu or all)")
    violations = space.containment_violations()
    payload = {
        "axioms": [r.to_dict() for r in reports],
        "upper_contains_lower": {
            "holds": not violations,
            "witnesses": [sorted(v) for v in violations],
        },
    }
    lines = [f"{r.axiom}: {'pass' if r.passed else 'FAIL'} ({r.mode}, {r.checked} checks)"
             for r in reports]
    lines.append("upper-contains-lower: " + ("pass" if not violations else "FAIL"))
    negative = any(not r.passed for r in reports) or bool(violations)
    return payload, "\n".join(lines), negative


def _cmd_parthood_audit(args, cfg: RunConfig):
    space = _load_space(cfg)
    names = sorted(pH.VARIANTS) if args.variant == "all" else [args.variant]
    reports = [pH.audit_properties(pH.variant(n), space, budget=cfg.budget,
                                   seed=cfg.seed) for n in names]
    payload = {"reports": [r.to_dict() for r in reports]}
    lines = []
    for r in reports:
        cells = ", ".join(f"{c.name}={'ok' if c.verdict.startswith('holds') else 'FAIL'}"
                          for c in r.checks)
        lines.append(f"{r.variant}: {cells}")
        for c in r.checks:
            if c.verdict == "fails" and c.witnesses:
                w = c.witnesses[0]
                shown = ", ".join("{%s}" % ",".join(x) for x in w)
                lines.append(f"  {c.name} witness: ({shown})")
    negative = any(c.verdict == "fails" for r in reports for c in r.checks)
    return payload, "\n".join(lines), negative


def _cmd_count(args, cfg: RunConfig):
    space = _load_space(cfg)
    items, conflict = _items_and_conflict(space, cfg, args.items)
    seq = counting.arrangement(items)
    antichains = None
    decomposition = None
    if args.algo == "hpc":
        trace = counting.hpc_count(seq, conflict)
    elif args.algo == "pca":
        trace = counting.pca_count(seq, conflict)
        decomposition = counting.verify_decomposition(trace, conflict)
    elif args.algo == "hpca":
        trace, decomposition = counting.hpca_count(seq, conflict)
    elif args.algo == "fhca":
        trace, antichains = counting.fhca_count(seq, conflict, budget=cfg.budget,
                                                seed=cfg.seed)
        decomposition = counting.verify_decomposition(trace, conflict)
    else:
        raise ParseError(f"unknown algorithm {args.algo!r}")
    payload = {"config": {"algorithm": args.algo, "items": args.items,
                          "parthood": cfg.parthood, "conflict": cfg.conflict},
               "trace": trace.to_dict()}
    if decomposition is not None:
        payload["decomposition"] = decomposition.to_dict()
    if antichains is not None:
        payload["antichains"] = [list(a) for a in antichains]
    text = trace.render_text()
    if decomposition is not None:
        text += "\ncoverage: %s" % ("yes" if decomposition.coverage else "NO")
    negative = bool(decomposition is not None
                    and not (decomposition.coverage and decomposition.all_conflict_free))
    return payload, text, negative


def _cmd_coherence(args, cfg: RunConfig):
    space = _load_space(cfg)
    items, conflict = _items_and_conflict(space, cfg, args.items)
    seq = counting.arrangement(items)
    coherent = counting.is_hpca_coherent(seq, conflict)
    payload: dict = {"order": list(items), "coherent": coherent}
    lines = [f"order {items}: {'coherent' if coherent else 'NOT coherent'}"]
    if args.search:
        result = counting.find_coherent_order(items, conflict, budget=cfg.budget,
                                              seed=cfg.seed)
        payload["search"] = result.to_dict()
        if result.found is not None:
            lines.append(f"coherent order found after {result.tried} tries: "
                         f"{list(result.found.sequence)}")
        else:
            lines.append(f"none found within budget ({result.tried} tried, "
                         f"{'exhaustive' if result.exhaustive else 'sampled'})")
    negative = not coherent
    return payload, "\n".join(lines), negative


def _cmd_inverse(args, cfg: RunConfig):
    if cfg.input is None:
        raise ParseError("an --input file is required")
    try:
        doc = json.loads(Path(cfg.input).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read pairs file: {exc}") from None
    if not isinstance(doc, dict) or "universe" not in doc or "pairs" not in doc:
        raise ParseError("pairs file must contain 'universe' and 'pairs'")
    universe = Universe(tuple(str(e) for e in doc["universe"]))
    pairs = []
    for i, p in enumerate(doc["pairs"]):
        try:
            pairs.append((universe.region(p["lower"]), universe.region(p["upper"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"pair {i}: {exc}") from None
    witness = oracles.inverse_rough_check(pairs, universe)
    payload = {"realizable": witness is not None,
               "witness": witness.to_dict() if witness else None}
    if witness:
        text = "rough origin possible; witness partition: " + \
            " | ".join("{%s}" % ",".join(sorted(b)) for b in witness.partition.blocks)
    else:
        text = "no partition realizes all pairs"
    return payload, text, witness is None


def _cmd_oracle(args, cfg: RunConfig):
    space = _load_space(cfg)
    if args.op == "maximal-antichains":
        items, conflict = _items_and_conflict(space, cfg, args.items)
        chains = oracles.enumerate_maximal_antichains(conflict, items)
        payload = {"maximal_antichains": [list(c) for c in chains]}
        text = "\n".join("{%s}" % ", ".join(str(m) for m in c) for c in chains)
        return payload, text, False
    if args.op == "antichain-cover":
        items, _ = _items_and_conflict(space, cfg, args.items)
        v = pH.variant(cfg.parthood)
        singles = {e: space.universe.singleton(e) for e in space.universe}

        def le(a, b):
            return a == b or pH.holds(v, singles[a], singles[b], space)
        cover = oracles.minimum_antichain_cover(le, items)
        payload = {"cover": cover.to_dict()}
        text = "\n".join(f"level {i}: {{{', '.join(l)}}}"
                         for i, l in enumerate(cover.levels))
        text += f"\nlongest chain: {cover.longest_chain}"
        return payload, text, False
    if args.op == "signatures":
        table = oracles.brute_force_signatures(space.granulation)
        payload = {"signatures": [{"region": sorted(r), "lower": sorted(lo),
                                   "upper": sorted(up)}
                                  for r, (lo, up) in table.items()]}
        text = "\n".join(f"{{{','.join(row['region'])}}} -> "
                         f"({{{','.join(row['lower'])}}}, {{{','.join(row['upper'])}}})"
                         for row in payload["signatures"])
        return payload, text, False
    raise ParseError(f"unknown oracle op {args.op!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="granum",
        description="Granular operator spaces: approximations, parthood audits, "
                    "antichain counting and rough-origin checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, items=False, budget=False):
        p.add_argument("--input", help="CSV table or JSON context file")
        p.add_argument("--format", choices=["csv", "json"])
        p.add_argument("--attrs", help="comma-separated attribute subset (CSV tables)")
        p.add_argument("--parthood", default="rough-inclusion",
                       choices=sorted(pH.VARIANTS))
        p.add_argument("--conflict", default="comparability",
                       choices=["comparability", "incomparability"])
        p.add_argument("--seed", type=int)
        p.add_argument("--output", default="text", choices=["text", "json"])
        p.add_argument("--strict", action="store_true",
                       help="exit 1 when the analysis result is negative")
        p.add_argument("--threads", type=int, default=1)
        if items:
            p.add_argument("--items", default="elements",
                           choices=["elements", "rough-objects"])
        if budget:
            p.add_argument("--budget", type=int)

    p = sub.add_parser("approx", help="lower/upper approximations of regions")
    common(p)
    p.add_argument("--region", action="append",
                   help="comma-separated element ids; repeatable")
    p.add_argument("--knowledge", action="store_true",
                   help="include the stability equations for each region")

    p = sub.add_parser("gos-audit", help="audit the space axioms")
    common(p)
    p.add_argument("--axiom", default="all",
                   choices=sorted(set(AXIOM_ALIASES)) + ["all"])

    p = sub.add_parser("parthood-audit", help="measure parthood properties")
    common(p, budget=True)
    p.add_argument("--variant", default="all",
                   choices=sorted(pH.VARIANTS) + ["all"])

    p = sub.add_parser("count", help="run a counting procedure")
    common(p, items=True, budget=True)
    p.add_argument("--algo", required=True, choices=["hpc", "pca", "hpca", "fhca"])

    p = sub.add_parser("coherence", help="check or search for coherent orders")
    common(p, items=True, budget=True)
    p.add_argument("--search", action="store_true",
                   help="also search arrangements for a coherent one")

    p = sub.add_parser("inverse", help="decide whether pairs have a rough origin")
    common(p)

    p = sub.add_parser("oracle", help="run an independent brute-force verifier")
    common(p, items=True)
    p.add_argument("--op", required=True,
                   choices=["maximal-antichains", "antichain-cover", "signatures"])
    return parser


_HANDLERS = {
    "approx": _cmd_approx,
    "gos-audit": _cmd_gos_audit,
    "parthood-audit": _cmd_parthood_audit,
    "count": _cmd_count,
    "coherence": _cmd_coherence,
    "inverse": _cmd_inverse,
    "oracle": _cmd_oracle,
}


def run(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        cfg = _config(args)
        payload, text, negative = _HANDLERS[args.command](args, cfg)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if cfg.output == "json":
        print(json.dumps(payload, sort_keys=True, indent=2), file=out)
    else:
        print(text, file=out)
    return 1 if (negative and cfg.strict) else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
