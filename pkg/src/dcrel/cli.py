"""Command-line interface.

Subcommands: ``compute`` (reliability by a chosen engine), ``irrelevant``
(per-link certificates), ``reduce`` (reductions with a replayable trace),
``generate`` (instance families), ``report`` (CSV + figure rendering).

Results are JSON documents with sorted keys and no timestamps, so identical
invocations produce byte-identical output.  Exit codes: 0 on success, 2 on
parse/usage errors (with line and column for file errors), 3 when a
configured resource cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import generators
from .composition import distance_profile
from .errors import ParseError, ResourceLimitError
from .factorization import FactorConfig, ip5m
from .graph import Instance
from .instance_io import (instance_digest, instance_to_json, parse_instance_file,
                          serialize_instance)
from .irrelevance import check_condition, prune_irrelevant
from .oracle import (dcr_bruteforce, dcr_inclusion_exclusion, is_link_relevant_oracle,
                     monte_carlo_estimate)
from .reductions import apply_5p
from .values import Mode, value_to_json

METHODS = ("auto", "ip5m", "oracle", "incl-excl", "mc")
DEFAULT_SAMPLES = 100_000


def _input_block(inst: Instance) -> dict:
    return {
        "digest": instance_digest(inst),
        "nodes": inst.graph.node_count,
        "links": inst.graph.link_count,
        "terminals": [inst.source, inst.target],
        "diameter": inst.diameter,
    }


def _emit(doc: dict, output: str | None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(args) -> Instance:
    mode = args.mode
    if getattr(args, "method", None) == "mc" and mode in (None, "auto"):
        mode = "float"
    return parse_instance_file(args.input, mode)


def cmd_compute(args) -> int:
    inst = _load(args)
    doc = {
        "input": _input_block(inst),
        "mode": inst.mode.value,
        "certificates": [],
        "prng": None,
    }
    method = args.method
    if method == "auto":
        method = "ip5m"
    doc["method"] = method

    if method == "ip5m":
        config = FactorConfig(pivot=args.pivot, seed=args.seed, irrelevance=args.irrelevance,
                              record_trace=args.trace)
        result = ip5m(inst, config)
        doc["value"] = value_to_json(result.value)
        doc["stats"] = result.stats.to_json()
        if args.pivot == "random":
            doc["prng"] = {"algorithm": "python-mt19937", "seed": args.seed}
        if args.trace:
            doc["trace"] = [s.to_json() for s in result.trace]
    elif method == "oracle":
        value = dcr_bruteforce(inst)
        doc["value"] = value_to_json(value)
        doc["stats"] = {"states": 2 ** inst.graph.link_count}
    elif method == "incl-excl":
        value = dcr_inclusion_exclusion(inst)
        doc["value"] = value_to_json(value)
        doc["stats"] = {}
    elif method == "mc":
        if inst.mode is not Mode.FLOAT:
            raise ValueError("Monte Carlo estimation requires float mode")
        est = monte_carlo_estimate(inst, args.samples, args.seed)
        doc["value"] = est.value
        doc["stats"] = {"stderr": est.stderr, "samples": est.samples}
        doc["prng"] = est.metadata()
    _emit(doc, args.output)
    return 0


def cmd_irrelevant(args) -> int:
    inst = _load(args)
    rows = []
    certificates = []
    for lid in sorted(inst.graph.links):
        link = inst.graph.link(lid)
        row = {"id": lid, "u": link.u, "v": link.v}
        if args.condition == "oracle":
            relevant = is_link_relevant_oracle(inst, lid)
            row["status"] = "relevant" if relevant else "irrelevant"
        else:
            cert = check_condition(inst, lid, args.condition)
            if cert is None:
                row["status"] = "unknown"
            else:
                row["status"] = "irrelevant"
                row["certificate"] = cert.to_json()
                certificates.append(cert.to_json())
        rows.append(row)
    doc = {
        "input": _input_block(inst),
        "mode": inst.mode.value,
        "condition": args.condition,
        "links": rows,
        "certificates": certificates,
    }
    _emit(doc, args.output)
    return 0


def cmd_reduce(args) -> int:
    inst = _load(args)
    trace = []
    work = inst
    if args.irrelevance != "off":
        pruned = prune_irrelevant(work, args.irrelevance)
        from .reductions import KIND_PRUNE, ReductionStep
        from .values import one
        for cert in pruned.certificates:
            trace.append(ReductionStep(KIND_PRUNE, cert.to_json(), one(inst.mode)))
        work = pruned.instance
    reduced = apply_5p(work)
    trace.extend(reduced.steps)
    doc = {
        "input": _input_block(inst),
        "mode": inst.mode.value,
        "irrelevance": args.irrelevance,
        "multiplier": value_to_json(reduced.multiplier),
        "reduced_instance": instance_to_json(reduced.instance),
        "trace": [s.to_json() for s in trace],
    }
    _emit(doc, args.output)
    return 0


def _mini_instance(spec: str, p: str, mode: str | None) -> Instance:
    name, _, params = spec.partition(":")
    if name == "path":
        return generators.path_instance(int(params), p, mode)
    if name == "cycle":
        return generators.cycle_instance(int(params), p, mode)
    if name == "complete":
        return generators.complete_instance(int(params), p, mode)
    if name == "grid":
        rows, _, cols = params.partition("x")
        return generators.grid_instance(int(rows), int(cols), p, mode)
    if name == "figred":
        return generators.figred_instance(p, mode)
    raise ValueError(f"unknown family spec {spec!r}")


def cmd_generate(args) -> int:
    fam = args.family
    if fam == "figred":
        inst = generators.figred_instance(args.p, args.mode, diameter=args.d or 6)
    elif fam == "path":
        inst = generators.path_instance(args.n, args.p, args.mode, args.d)
    elif fam == "cycle":
        inst = generators.cycle_instance(args.n, args.p, args.mode, args.d)
    elif fam == "complete":
        inst = generators.complete_instance(args.n, args.p, args.mode, args.d)
    elif fam == "grid":
        inst = generators.grid_instance(args.rows, args.cols, args.p, args.mode, args.d)
    elif fam == "cancela-petingi":
        if not args.bipartite or not args.d:
            raise ValueError("cancela-petingi requires --bipartite and --d")
        inst = generators.hard_instance(args.bipartite, args.d, args.mode)
    elif fam == "replacement":
        if not args.outer or not args.inner or not args.d:
            raise ValueError("replacement requires --outer, --inner and --d")
        outer = _mini_instance(args.outer, args.p, args.mode)
        inner = _mini_instance(args.inner, args.p, args.mode)
        inst = generators.replacement_instance(outer, inner, args.d)
    else:
        raise ValueError(f"unknown family {fam!r}")
    text = serialize_instance(inst)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_report(args) -> int:
    from .report import render_report
    inst = _load(args)
    config = FactorConfig(pivot=args.pivot, seed=args.seed, irrelevance=args.irrelevance)
    result = ip5m(inst, config)
    profile = distance_profile(inst.graph, inst.source, inst.target, inst.diameter, inst.mode)
    files = render_report(inst, profile, result.value, args.output_dir)
    doc = {
        "input": _input_block(inst),
        "mode": inst.mode.value,
        "method": "ip5m",
        "value": value_to_json(result.value),
        "stats": result.stats.to_json(),
        "report_dir": args.output_dir,
        "report_files": files,
    }
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dcrel",
        description="Exact hop-bounded two-terminal network reliability.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_method=False):
        p.add_argument("input", help="instance file")
        p.add_argument("--mode", choices=("auto", "float", "rational", "poly"), default="auto")
        p.add_argument("--output", "-o", help="write the JSON document here instead of stdout")

    p = sub.add_parser("compute", help="compute the reliability")
    common(p)
    p.add_argument("--method", choices=METHODS, default="auto",
                   help="auto is factoring with c3 pruning")
    p.add_argument("--irrelevance", choices=("c1", "c2", "c3", "off"), default="c3")
    p.add_argument("--pivot", choices=("random", "first", "maxdeg"), default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--trace", action="store_true", help="include the event trace")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("irrelevant", help="per-link irrelevance report")
    common(p)
    p.add_argument("--condition", choices=("c1", "c2", "c3", "oracle"), default="c3")
    p.set_defaults(func=cmd_irrelevant)

    p = sub.add_parser("reduce", help="apply reductions, emit multiplier and trace")
    common(p)
    p.add_argument("--irrelevance", choices=("c1", "c2", "c3", "off"), default="off",
                   help="prune certified-irrelevant links first")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("generate", help="emit an instance file")
    p.add_argument("--family", required=True,
                   choices=("path", "cycle", "complete", "grid", "cancela-petingi",
                            "replacement", "figred"))
    p.add_argument("--n", type=int, help="node count (path/cycle/complete)")
    p.add_argument("--rows", type=int, help="grid rows")
    p.add_argument("--cols", type=int, help="grid columns")
    p.add_argument("--d", type=int, help="hop bound")
    p.add_argument("--p", default="p", help="reliability token (default: the symbol p)")
    p.add_argument("--mode", choices=("auto", "float", "rational", "poly"), default="auto")
    p.add_argument("--bipartite", help="cancela-petingi sub-spec: cycle:N or complete:A,B")
    p.add_argument("--outer", help="replacement outer family, e.g. cycle:3")
    p.add_argument("--inner", help="replacement inner family, e.g. path:3")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("report", help="render profile/curve CSVs and figures")
    common(p)
    p.add_argument("--output-dir", required=True)
    p.add_argument("--irrelevance", choices=("c1", "c2", "c3", "off"), default="c3")
    p.add_argument("--pivot", choices=("random", "first", "maxdeg"), default="random")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
