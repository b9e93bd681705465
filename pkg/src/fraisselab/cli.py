"""Command-line entry point: ``fraisselab <command> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import catalog, suite, witnesses
from .autos import KINDS, LEVELS, AutoError, canonical_auto, seeded_auto
from .fraisse import check_ap, check_chain_condition, get_class
from .limits import EXPANSIONS, LimitError, LimitHandle, LimitSpec

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _pairs(text: str) -> list[tuple[int, int]]:
    try:
        return [tuple(int(x) for x in p.split(":")) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected pairs like 3:5,7:2, got {text!r}")


def _handle(args) -> LimitHandle:
    try:
        return LimitHandle(LimitSpec.parse(args.structure, seed=args.seed, expansion=args.expansion))
    except (ValueError, LimitError) as exc:
        raise UsageError(str(exc))


def _emit(args, payload: dict):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        for k, v in payload.items():
            print(f"{k}: {v}")


def _structure_args(p, expansion=True):
    p.add_argument("--structure", required=True, help="family name, e.g. random-graph or henson(3)")
    p.add_argument("--seed", type=int, default=7)
    if expansion:
        p.add_argument("--expansion", choices=EXPANSIONS, default="none")


# -- commands -------------------------------------------------------------------

def cmd_gen(args) -> int:
    h = _handle(args)
    _emit(args, h.stage_json(args.n))
    return OK


def cmd_check_ap(args) -> int:
    try:
        k = get_class(args.cls, args.bound)
    except ValueError as exc:
        raise UsageError(str(exc))
    rep = check_ap(k, strong=args.strong)
    _emit(args, rep.to_json())
    return OK if rep.holds else FAILED


def cmd_check_chain(args) -> int:
    h = _handle(args)
    pairs = args.pairs
    if not pairs:
        rng = random.Random(args.seed)
        pairs = [tuple(sorted(rng.sample(range(300), 2), key=h.coord)) for _ in range(args.samples)]
    try:
        rep = check_chain_condition(h, args.u, args.v, pairs, args.max_len)
    except ValueError as exc:
        raise UsageError(str(exc))
    _emit(args, rep.to_json())
    return OK if rep.holds else FAILED


def cmd_auto(args) -> int:
    h = _handle(args)
    try:
        if args.kind == "seeded-back-and-forth":
            a = seeded_auto(h, args.auto_seed, args.level, args.fixed_point_free)
        else:
            a = canonical_auto(h, args.kind, seed=args.auto_seed)
    except (ValueError, AutoError) as exc:
        raise UsageError(str(exc))
    images = {str(v): a.image(v) for v in args.query}
    preimages = {str(v): a.preimage(v) for v in args.preimage}
    cert = a.certify()
    _emit(args, {"images": images, "preimages": preimages, "certificate": cert})
    return OK if cert["partial_isomorphism"] and cert["fixed_point_bound_ok"] else FAILED


def _sigma(h, args):
    kind = args.sigma
    if kind == "seeded-back-and-forth":
        level = "reverse" if args.op == "conjugate-order" else "F"
        return seeded_auto(h, args.auto_seed, level, fixed_point_free=True)
    return canonical_auto(h, kind, seed=args.auto_seed)


_DEFAULT_SIGMA = {"disjoint-copy": "shift", "conjugate-order": "order-reversal", "s2-monotone": "part-swap",
                  "s2-conjugate": "part-swap"}


def cmd_witness(args) -> int:
    h = _handle(args)
    op = args.op
    if args.sigma is None:
        args.sigma = _DEFAULT_SIGMA.get(op)
    try:
        if op == "disjoint-copy":
            rep = witnesses.disjoint_copy(h, _sigma(h, args), args.set, level=args.level)
        elif op == "order-transport":
            blocks = [sorted(args.set, key=h.coord)]
            if args.set1:
                blocks.append(sorted(args.set1, key=h.coord)[::-1])
            rep = witnesses.order_transport(h, blocks)
        elif op == "conjugate-order":
            rep = witnesses.conjugate_order_preserving(h, _sigma(h, args), args.set, method=args.method)
        elif op == "s2-monotone":
            rep = witnesses.s2_monotone_copy(_sigma(h, args), args.set)
        elif op == "s2-split":
            rep = witnesses.s2_part_split(h, args.set, args.set1)
        elif op == "s2-conjugate":
            rep = witnesses.s2_conjugate_parts(_sigma(h, args), args.set, method=args.method)
        else:
            target = dict(args.target or [])
            rep = witnesses.factor_via_conjugates(h, target, max_word=args.max_word)
    except witnesses.PreconditionError as exc:
        raise UsageError(str(exc))
    except (AutoError, ValueError) as exc:
        raise UsageError(str(exc))
    except witnesses.WitnessError as exc:
        payload = {"operation": op, "error": str(exc)}
        if exc.report is not None:
            payload["report"] = exc.report.to_json()
        _emit(args, payload)
        return FAILED
    except LimitError as exc:
        _emit(args, {"operation": op, "error": f"{type(exc).__name__}: {exc}"})
        return FAILED
    _emit(args, rep.to_json())
    return OK if rep.ok else FAILED


def cmd_catalog(args) -> int:
    if args.action == "list":
        _emit(args, {"entries": catalog.list_entries()})
        return OK
    if not args.name:
        raise UsageError("catalog show needs an entry name")
    try:
        entry = catalog.get_entry(args.name)
    except ValueError as exc:
        raise UsageError(str(exc))
    payload = entry.to_json()
    code = OK
    if args.evidence:
        rec = catalog.run_evidence(args.name, seed=args.seed, budget=args.budget)
        payload["evidence_record"] = rec.to_json()
        code = OK if rec.passed else FAILED
    _emit(args, payload)
    return code


def cmd_verify(args) -> int:
    only = args.criteria or None
    echo = (lambda line: print(line, file=sys.stderr)) if args.format == "json" else print
    summary = suite.run_suite(seed=args.seed, only=only, echo=echo)
    if args.format == "json":
        print(json.dumps(summary, indent=2, sort_keys=True))
    return OK if summary["passed"] else FAILED


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fraisselab", description="Homogeneous-structure toolkit")
    p.add_argument("--format", choices=("json", "text"), default="json")
    # --format is also accepted after the subcommand
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[fmt], help="materialize a finite stage of a limit")
    _structure_args(g)
    g.add_argument("--n", type=int, default=20)
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("check-ap", parents=[fmt], help="bounded HP/AP/SAP checks on a class")
    a.add_argument("--class", dest="cls", required=True)
    a.add_argument("--bound", type=int, default=3)
    a.add_argument("--strong", action="store_true")
    a.set_defaults(func=cmd_check_ap)

    c = sub.add_parser("check-chain", parents=[fmt], help="chain condition between ordered pairs")
    _structure_args(c)
    c.add_argument("--u", type=int, required=True)
    c.add_argument("--v", type=int, required=True)
    c.add_argument("--pairs", type=_pairs, default=None, help="x:y,... (default: random sample)")
    c.add_argument("--samples", type=int, default=20)
    c.add_argument("--max-len", type=int, default=4)
    c.set_defaults(func=cmd_check_chain)

    u = sub.add_parser("auto", parents=[fmt], help="query an automorphism")
    _structure_args(u)
    u.add_argument("--kind", choices=KINDS, required=True)
    u.add_argument("--level", choices=LEVELS, default="F")
    u.add_argument("--auto-seed", type=int, default=0)
    u.add_argument("--fixed-point-free", action="store_true")
    u.add_argument("--query", type=_ints, default=[])
    u.add_argument("--preimage", type=_ints, default=[])
    u.set_defaults(func=cmd_auto)

    w = sub.add_parser("witness", parents=[fmt], help="certified witness constructions")
    w.add_argument("op", choices=("disjoint-copy", "order-transport", "conjugate-order", "s2-monotone",
                                  "s2-split", "s2-conjugate", "factor"))
    _structure_args(w)
    w.add_argument("--set", type=_ints, default=[], help="comma-separated vertex indices")
    w.add_argument("--set1", type=_ints, default=[], help="second block (order-transport, s2-split)")
    w.add_argument("--sigma", choices=KINDS, default=None)
    w.add_argument("--auto-seed", type=int, default=0)
    w.add_argument("--level", choices=("F", "F*"), default="F")
    w.add_argument("--method", choices=("auto", "pipeline", "fallback"), default="auto")
    w.add_argument("--target", type=_pairs, default=None, help="x:y,... for factor")
    w.add_argument("--max-word", type=int, default=2)
    w.set_defaults(func=cmd_witness)

    k = sub.add_parser("catalog", parents=[fmt], help="flow catalogue")
    k.add_argument("action", choices=("show", "list"))
    k.add_argument("name", nargs="?")
    k.add_argument("--evidence", action="store_true")
    k.add_argument("--seed", type=int, default=7)
    k.add_argument("--budget", type=int, default=20)
    k.set_defaults(func=cmd_catalog)

    v = sub.add_parser("verify", parents=[fmt], help="run the acceptance suite")
    v.add_argument("--suite", choices=("all",), default="all")
    v.add_argument("--seed", type=int, default=7)
    v.add_argument("--criteria", type=_ints, default=[])
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"fraisselab: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
