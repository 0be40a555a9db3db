"""Command-line front end.

Subcommands: compute homology tables, validate stratifications and
K-perversities, classify refinements, run simple decompositions, run the
invariance suites, check the closed-form oracles, and emit the built-in
fixtures.  JSON output is canonical (sorted keys, no timestamps), so
identical invocations are byte-identical.
"""

import argparse
import json
import sys

from . import blowup, chains, fixtures, harness, homalg
from .chains import is_field, parse_ring
from .complexes import from_json_dict, to_json_dict
from .perversity import (
    KingPerversity,
    Perversity,
    from_king,
    is_K_perversity,
    top_perversity,
    zero_perversity,
)
from .refinement import check_refinement, classify, simple_decomposition
from .strat import strata_from_levels


class CliError(Exception):
    pass


def _emit(args, payload):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")))
        sys.stdout.write("\n")
    else:
        _print_table(payload)


def _print_table(payload, indent=0):
    pad = "  " * indent
    if isinstance(payload, dict):
        for k in sorted(payload):
            v = payload[k]
            if isinstance(v, (dict, list)):
                print(f"{pad}{k}:")
                _print_table(v, indent + 1)
            else:
                print(f"{pad}{k:<24} {v}")
    elif isinstance(payload, list):
        for v in payload:
            if isinstance(v, (dict, list)):
                _print_table(v, indent)
                print(f"{pad}--")
            else:
                print(f"{pad}{v}")
    else:
        print(f"{pad}{payload}")


def _load_space(path):
    with open(path) as fh:
        data = json.load(fh)
    cx, levels, strat = from_json_dict(data)
    if strat is None:
        if levels is None:
            raise CliError(f"{path}: needs either 'strata' or 'levels'")
        strat = strata_from_levels(cx, levels)
    return cx, strat


def _load_perversity(spec, strat):
    if spec == "0":
        return zero_perversity(strat)
    if spec == "t":
        return top_perversity(strat)
    if spec.startswith("king:"):
        values = [int(v) for v in spec[5:].split(",")]
        return from_king(KingPerversity(values), strat)
    with open(spec) as fh:
        return Perversity.from_json_dict(strat, json.load(fh))


def cmd_compute(args):
    cx, strat = _load_space(args.space)
    ring = parse_ring(args.ring)
    p = _load_perversity(args.perversity, strat)
    theories = args.theory.split(",")
    out = {}
    for theory in theories:
        if theory == "blowup":
            if not is_field(ring):
                raise CliError("blowup cohomology needs a field; pass --ring F<p>")
            out[theory] = blowup.blowup_cohomology(strat, p, ring[1], cap=args.cap).to_json_dict()
            continue
        if theory in ("H", "coH"):
            c = chains.intersection_complex(strat, p, ring)
        elif theory in ("tame", "tame-coH"):
            c = chains.tame_complex(strat, p, ring)
        else:
            raise CliError(f"unknown theory {theory!r}")
        summary = homalg.homology(c) if theory in ("H", "tame") else homalg.cohomology(c)
        out[theory] = summary.to_json_dict()
    _emit(args, out)
    return 0


def cmd_validate(args):
    cx, strat = _load_space(args.space)
    report = strat.validate().to_json_dict()
    out = {"stratification": report}
    if args.coarse:
        _, coarse = _load_space(args.coarse)
        pair = check_refinement(cx, strat, coarse)
        if args.perversity:
            p = _load_perversity(args.perversity, strat)
            out["k_perversity"] = is_K_perversity(pair, p).to_json_dict()
    _emit(args, out)
    return 0 if report["ok"] else 1


def cmd_classify(args):
    pair = _load_pair(args)
    tax = classify(pair)
    _emit(args, tax.to_json_dict(pair.fine))
    return 0


def cmd_decompose(args):
    pair = _load_pair(args)
    steps = simple_decomposition(pair)
    payload = {
        "steps": len(steps),
        "details": [
            {
                "step": i,
                "taxonomy": step.taxonomy().to_json_dict(step.fine),
                "strata_before": len(step.fine.strata),
                "strata_after": len(step.coarse.strata),
            }
            for i, step in enumerate(steps)
        ],
    }
    _emit(args, payload)
    return 0


def _load_pair(args):
    if args.fixture:
        fx = fixtures.load_fixture(args.fixture)
        return fx["pair"]
    cx, fine = _load_space(args.space)
    cx2, coarse = _load_space(args.coarse)
    if cx != cx2:
        raise CliError("fine and coarse stratifications live on different complexes")
    return check_refinement(cx, fine, coarse)


def cmd_verify(args):
    ring = parse_ring(args.ring)
    fx = fixtures.load_fixture(args.fixture) if args.fixture else None
    pair = fx["pair"] if fx else _load_pair(args)
    side = pair.coarse if args.direction == "refine" else pair.fine
    if (
        fx is not None
        and args.direction == "coarsen"
        and args.perversity in fx.get("perversities", {})
    ):
        p = fx["perversities"][args.perversity]
    else:
        p = _load_perversity(args.perversity, side)
    if args.direction == "refine":
        report = harness.verify_refinement(
            pair, p, ring=ring, relaxed=args.relaxed, cap=args.cap,
            description=args.fixture or args.space,
        )
    else:
        report = harness.verify_coarsening(
            pair, p, ring=ring, relaxed=args.relaxed, cap=args.cap,
            description=args.fixture or args.space,
        )
    if args.format == "json":
        _emit(args, report.to_json_dict())
    else:
        print(report.to_table())
    if args.expect_fail:
        clause = {v: k for k, v in harness.CLAUSE_THEORY.items()}.get(args.expect_fail)
        if clause is None:
            raise CliError(f"unknown theory {args.expect_fail!r}")
        others_ok = all(
            c.verdict == "PASS" for c in report.clauses if c.asserted
        )
        failed = report.verdict(clause) == "FAIL"
        return 0 if (failed and others_ok) else 1
    return 0 if report.all_asserted_pass else 1


def cmd_oracle(args):
    ring = parse_ring(args.ring)
    link_cx, link_strat = _load_space(args.link) if args.link else (None, None)
    if link_strat is None:
        base = {"s0": fixtures.sphere(0), "s1": fixtures.sphere(1), "t2": fixtures.torus7()}[
            args.builtin_link
        ]
        link_strat = fixtures.trivial_stratification(base)
    p_link = (
        _load_perversity(args.link_perversity, link_strat)
        if args.link_perversity
        else zero_perversity(link_strat)
    )
    values = [int(v) for v in args.values.split(",")]
    if args.construction == "cone":
        report = harness.cone_oracle(link_strat, p_link, values[0], ring=ring, cap=args.cap)
    elif args.construction == "join":
        report = harness.join_oracle(link_strat, p_link, args.m, values[0], ring=ring, cap=args.cap)
    elif args.construction == "suspension":
        report = harness.suspension_oracle(link_strat, p_link, (values[0], values[1]), ring=ring)
    else:
        raise CliError(f"unknown construction {args.construction!r}")
    _emit(args, report.to_json_dict())
    return 0 if report.ok else 1


def cmd_examples(args):
    import os

    os.makedirs(args.out, exist_ok=True)
    written = []

    def dump(path, payload):
        with open(path, "w") as fh:
            json.dump(payload, fh, sort_keys=True, separators=(",", ":"))
            fh.write("\n")
        written.append(path)

    for name in fixtures.all_fixture_names():
        fx = fixtures.load_fixture(name)
        pair = fx["pair"]
        dump(
            os.path.join(args.out, f"{name}.json"),
            {
                "name": fx["name"],
                "fine": to_json_dict(pair.complex, stratification=pair.fine),
                "coarse": to_json_dict(pair.complex, stratification=pair.coarse),
                "perversities": {
                    key: p.to_json_dict() for key, p in fx.get("perversities", {}).items()
                },
            },
        )
        dump(os.path.join(args.out, f"{name}.fine.json"),
             to_json_dict(pair.complex, stratification=pair.fine))
        dump(os.path.join(args.out, f"{name}.coarse.json"),
             to_json_dict(pair.complex, stratification=pair.coarse))
    _emit(args, {"written": written})
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="strathom",
        description="exact intersection homology of stratified simplicial complexes",
    )
    ap.add_argument("--format", choices=("json", "table"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, space=True):
        p.add_argument("--ring", default="Z", help="Z or F<prime> (e.g. F2, Fq:5)")
        p.add_argument("--cap", type=int, default=blowup.DEFAULT_CAP)
        if space:
            p.add_argument("--space", help="complex+stratification JSON file")

    p = sub.add_parser("compute", help="homology tables for a space and perversity")
    common(p)
    p.add_argument("--perversity", required=True, help="0 | t | king:v0,v1,... | file.json")
    p.add_argument("--theory", default="H,tame", help="comma list from H,coH,tame,tame-coH,blowup")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("validate", help="stratification axioms and K-perversity checks")
    common(p)
    p.add_argument("--coarse", help="coarse stratification JSON (for the K check)")
    p.add_argument("--perversity")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="stratum taxonomy of a refinement")
    common(p)
    p.add_argument("--coarse")
    p.add_argument("--fixture", choices=fixtures.all_fixture_names())
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("decompose", help="simple decomposition with per-step reports")
    common(p)
    p.add_argument("--coarse")
    p.add_argument("--fixture", choices=fixtures.all_fixture_names())
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="invariance suites on a refinement pair")
    common(p)
    p.add_argument("--coarse")
    p.add_argument("--fixture", choices=fixtures.all_fixture_names())
    p.add_argument("--perversity", default="0")
    p.add_argument("--direction", choices=("coarsen", "refine"), default="coarsen")
    p.add_argument("--relaxed", action="store_true")
    p.add_argument("--expect-fail", dest="expect_fail",
                   help="exit 0 only when this theory's clause fails (H, tame, ...)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="closed-form local formula checks")
    common(p, space=False)
    p.add_argument("--construction", choices=("cone", "join", "suspension"), required=True)
    p.add_argument("--link", help="link space JSON")
    p.add_argument("--builtin-link", choices=("s0", "s1", "t2"), default="s1")
    p.add_argument("--link-perversity")
    p.add_argument("--m", type=int, default=1, help="sphere dimension for join")
    p.add_argument("--values", default="0", help="apex / sphere / pole perversity values")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("examples", help="emit the built-in fixtures as JSON")
    common(p, space=False)
    p.add_argument("--out", default="fixtures-out")
    p.set_defaults(func=cmd_examples)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, FileNotFoundError, ValueError, KeyError) as exc:
        sys.stderr.write(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True) + "\n"
        )
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
