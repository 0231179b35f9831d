"""Command-line front end.

All outputs are JSON with a top-level "schema": "aft/1".  Exit codes:
0 for a passing run, 1 for a verified violation, 2 for usage or I/O
errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .actions import NotGoodError, action_from_json, validate_good
from .bounds import BoundsConfig, constants_report, f
from .groups import p_part
from .linear import descent_to_stable, model_from_json
from .simplicial import complex_from_json, homology
from .suites import SUITE_NAMES, run_suite

SCHEMA = "aft/1"


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SystemExit(_usage_error(f"cannot read {path}: {exc}"))


def _usage_error(message):
    print(json.dumps({"schema": SCHEMA, "error": message}), file=sys.stderr)
    return 2


def _emit(payload, out=None):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        try:
            with open(out, "w") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise SystemExit(_usage_error(f"cannot write {out}: {exc}"))
    else:
        print(text)


def _cmd_analyze(args):
    data = _load_json(args.complex)
    try:
        cx = complex_from_json(data)
    except (KeyError, ValueError) as exc:
        return _usage_error(f"invalid complex: {exc}")
    primes = tuple(int(p) for p in args.primes.split(","))
    profile = homology(cx, primes=primes)
    _emit(
        {
            "schema": SCHEMA,
            "dimension": cx.dimension,
            "simplex_counts": {str(d): c for d, c in cx.counts().items()},
            "homology": profile.to_json(),
        },
        args.out,
    )
    return 0


def _cmd_action_check(args):
    data = _load_json(args.action)
    try:
        action = action_from_json(data)
    except (KeyError, ValueError) as exc:
        return _usage_error(f"invalid action: {exc}")
    cert = validate_good(action)
    _emit(
        {
            "schema": SCHEMA,
            "group_order": action.group.order,
            "space_simplices": action.space.num_simplices(),
            "goodness": cert.to_json(),
        },
        args.out,
    )
    return 0 if cert.is_good else 1


def _cmd_descent(args):
    data = _load_json(args.model)
    try:
        model = model_from_json(data)
    except (KeyError, ValueError) as exc:
        return _usage_error(f"invalid model: {exc}")
    lam = args.lam
    runs = []
    violated = False
    for p in model.group.primes():
        start = p_part(model.group, p)
        try:
            stable, steps = descent_to_stable(model, lam, start=start)
        except (AssertionError, ValueError) as exc:
            runs.append({"p": p, "error": str(exc)})
            violated = True
            continue
        runs.append(
            {
                "p": p,
                "steps": [
                    {
                        "character": list(s.character.exponents),
                        "kernel_index": s.kernel_index,
                        "fixed_dim": s.fixed_dim,
                    }
                    for s in steps
                ],
                "stable_subgroup": [
                    list(g.residues) for g in stable.basis_elements()
                ],
                "index": stable.index,
            }
        )
    _emit(
        {
            "schema": SCHEMA,
            "lambda": lam,
            "shape": model.shape,
            "dim": model.dim_space,
            "per_prime": runs,
        },
        args.out,
    )
    return 1 if violated else 0


def _cmd_verify(args):
    try:
        report = run_suite(args.suite, seed=args.seed, scale=args.scale)
    except ValueError as exc:
        return _usage_error(str(exc))
    _emit(report.to_json(), args.out)
    return 0 if report.passed else 1


def _cmd_bounds(args):
    if args.table:
        if args.table != "f":
            return _usage_error(f"unknown table {args.table!r}")
        _emit(
            {
                "schema": SCHEMA,
                "table": "f",
                "values": {str(k): f(k) for k in range(-1, args.max_k + 1)},
            },
            args.out,
        )
        return 0
    if not args.config:
        return _usage_error("bounds needs a config file or --table")
    data = _load_json(args.config)
    try:
        cfg = BoundsConfig.from_json(data)
    except (KeyError, ValueError) as exc:
        return _usage_error(f"invalid bounds config: {exc}")
    report = constants_report(cfg)
    _emit({"schema": SCHEMA, "constants": report.to_json()}, args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="aft",
        description="Exact fixed-point toolkit for finite abelian actions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="homology of a complex")
    p_analyze.add_argument("complex")
    p_analyze.add_argument("--primes", default="2,3,5")
    p_analyze.add_argument("--out")
    p_analyze.set_defaults(func=_cmd_analyze)

    p_action = sub.add_parser("action", help="action subcommands")
    action_sub = p_action.add_subparsers(dest="action_command", required=True)
    p_check = action_sub.add_parser("check", help="validate an action")
    p_check.add_argument("action")
    p_check.add_argument("--out")
    p_check.set_defaults(func=_cmd_action_check)

    p_descent = sub.add_parser("descent", help="descend a linear model")
    p_descent.add_argument("model")
    p_descent.add_argument("--lambda", dest="lam", type=int, required=True)
    p_descent.add_argument("--out")
    p_descent.set_defaults(func=_cmd_descent)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", required=True, choices=SUITE_NAMES)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--scale", choices=("small", "full"), default="small")
    p_verify.add_argument("--out")
    p_verify.set_defaults(func=_cmd_verify)

    p_bounds = sub.add_parser("bounds", help="evaluate explicit constants")
    p_bounds.add_argument("config", nargs="?")
    p_bounds.add_argument("--table")
    p_bounds.add_argument("--max-k", type=int, default=30)
    p_bounds.add_argument("--out")
    p_bounds.set_defaults(func=_cmd_bounds)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already.
        raise exc
    try:
        code = args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except NotGoodError as exc:
        return _usage_error(str(exc))
    return code


if __name__ == "__main__":
    sys.exit(main())
