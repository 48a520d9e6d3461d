"""Command-line front end.

Every subcommand prints text tables by default and a single json document
with ``--format json``.  Exit codes: 0 success, 1 a property or theorem
check failed, 2 bad usage or input, 3 a computation did not stabilize.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .abelian import IntMatrix, diagonal, snf
from .axioms import SUITES, _rand_elem, axiom_suite
from .chow_witt import MAX_STAGES, chow_witt_curve, chow_witt_number_ring, tdiv
from .cycles import OMEGA, AffineLine, ProjLine, cycle_from_json, differential, h_preimage, reciprocity_sum
from .errors import InconsistentWithTheorem, MWError, NotStabilized
from .finite_field import finite_field_of_order
from .gw import gw_of_finite_field, n_epsilon, witt_group
from .kmw import MILNOR, MW, evaluate, residue
from .literals import parse_field, parse_place, parse_symbol_literal
from .number_field import QQ, quadratic_field

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_UNSTABLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def emit_report(result, fmt):
    """Serialize ``result``: sorted compact json, or ``key: value`` lines."""
    if fmt == "json":
        return json.dumps(result, sort_keys=True, separators=(",", ":")) + "\n"
    lines = []
    for key, val in result.items():
        if isinstance(val, list) and val and isinstance(val[0], str):
            lines.append(f"{key}:")
            lines.extend(f"  {v}" for v in val)
        elif isinstance(val, (dict, list)):
            lines.append(f"{key}: {json.dumps(val, sort_keys=True)}")
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines) + "\n"


def _group_text(inv):
    return str(inv)


# ---------------------------------------------------------------------------
# subcommands return (result dict, exit code)


def cmd_gw(args):
    s = gw_of_finite_field(args.q)
    out = s.to_json()
    if args.format == "text":
        out = {"GW(F_%d)" % args.q: _group_text(s.group), "coordinates": list(s.projections)}
    return out, EXIT_OK


def cmd_witt(args):
    W = witt_group(args.q)
    if args.format == "text":
        return {"W(F_%d)" % args.q: _group_text(W)}, EXIT_OK
    return {"group": W.to_json()}, EXIT_OK


def cmd_neps(args):
    F = finite_field_of_order(args.q)
    x = n_epsilon(args.n, F)
    if args.format == "text":
        return {f"{args.n}_eps over F_{args.q}": repr(x)}, EXIT_OK
    return {"n": args.n, "q": args.q, "value": x.to_json()}, EXIT_OK


def cmd_residue(args):
    K = parse_field(args.field)
    v = parse_place(K, args.place)
    x = parse_symbol_literal(args.elem, K)
    r = residue(v, x)
    value = evaluate(r)
    if args.format == "text":
        return {"place": v.label(), "residue": str(r), "value": str(value)}, EXIT_OK
    return {"place": v.label(), "residue": str(r), "value": value.to_json()}, EXIT_OK


def _number_field(d):
    return QQ if d == 1 else quadratic_field(d)


def cmd_tdiv(args):
    K = _number_field(args.d)
    x = parse_symbol_literal(args.elem, K)
    if x.degree != 1:
        raise UsageError("tdiv takes a degree-one element")
    vec = tdiv(K, x)
    if args.format == "text":
        return {"tdiv": repr(vec)}, EXIT_OK
    return {"tdiv": vec.to_json()}, EXIT_OK


def _mode(text):
    return {"mw": MW, "milnor": MILNOR}[text]


def cmd_chow_witt_ok(args):
    try:
        G, cert = chow_witt_number_ring(args.d, B=args.bound, H=args.height, mode=_mode(args.mode),
                                        max_stages=args.max_stages)
    except NotStabilized as exc:
        return _cert_result(exc.certificate, args, "not stabilized"), EXIT_UNSTABLE
    except InconsistentWithTheorem as exc:
        return {"error": "inconsistent with the exact sequence", "report": exc.report}, EXIT_VIOLATION
    return _cert_result(cert, args, str(G)), EXIT_OK


def _cert_result(cert, args, summary):
    data = cert.to_json()
    if args.format == "text":
        rows = [f"B={s['B']:<4} H={s['H']:<4} order={s['order']}" for s in data["stages"]]
        return {"group": summary, "stable": data["stable"], "stages": rows,
                "flags": data["flags"]}
    return data


def cmd_chow_witt_curve(args):
    F = finite_field_of_order(args.q)
    model = (ProjLine if args.model == "p1" else AffineLine)(F)
    twist = OMEGA if args.twist == "omega" else None
    try:
        G, cert = chow_witt_curve(model, mode=_mode(args.mode), twist=twist)
    except NotStabilized as exc:
        return _cert_result(exc.certificate, args, "not stabilized"), EXIT_UNSTABLE
    return _cert_result(cert, args, str(G)), EXIT_OK


def _load_json(text):
    if os.path.exists(text):
        with open(text) as fh:
            return json.load(fh)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"neither a file nor json: {text!r}") from exc


def cmd_hpreimage(args):
    target = cycle_from_json(_load_json(args.target))
    if target.model.base.order != args.q:
        raise UsageError("--q does not match the target's model")
    alpha = h_preimage(target)
    ok = differential(target.model, alpha, target.mode) == target
    return {"alpha": str(alpha), "verified": ok}, EXIT_OK if ok else EXIT_VIOLATION


def _seed(args):
    if args.seed is None:
        if args.format == "json":
            raise UsageError("--seed is required with --format json")
        return 0
    return args.seed


def cmd_reciprocity(args):
    seed = _seed(args)
    rng = random.Random(f"{seed}:reciprocity")
    F = finite_field_of_order(args.q)
    X = ProjLine(F)
    T = X.function_field
    bad = []
    for _ in range(args.trials):
        alpha = _rand_elem(rng, T, rng.randint(0, 2), 2)
        s = reciprocity_sum(X, alpha)
        if not s.is_zero():
            bad.append({"alpha": str(alpha), "sum": str(s)})
    out = {"q": args.q, "seed": seed, "trials": args.trials, "violations": len(bad),
           "counterexamples": bad[:5]}
    return out, EXIT_VIOLATION if bad else EXIT_OK


def cmd_axioms(args):
    seed = _seed(args)
    report = axiom_suite(seed=seed, trials=args.trials, suite=args.suite)
    out = report.to_json() if args.format == "json" else {"suite": args.suite, "seed": seed,
                                                         "checks": list(report.lines())}
    return out, EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_snf(args):
    obj = _load_json(args.matrix)
    try:
        M = IntMatrix.from_json(obj)
    except (TypeError, ValueError, KeyError) as exc:
        raise UsageError(f"bad matrix: {exc}") from exc
    D, U, V = snf(M)
    factors = [d for d in diagonal(D) if d]
    out = {"D": D.to_json()["entries"], "U": U.to_json()["entries"],
           "V": V.to_json()["entries"], "invariant_factors": factors}
    return out, EXIT_OK


def _parser():
    p = argparse.ArgumentParser(prog="mwcycles", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gw", parents=[common], help="GW(F_q) as an abelian group")
    s.add_argument("--q", type=int, required=True)
    s.set_defaults(func=cmd_gw)

    s = sub.add_parser("witt", parents=[common], help="W(F_q) as an abelian group")
    s.add_argument("--q", type=int, required=True)
    s.set_defaults(func=cmd_witt)

    s = sub.add_parser("neps", parents=[common], help="the quadratic integer n_eps in GW(F_q)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.set_defaults(func=cmd_neps)

    s = sub.add_parser("residue", parents=[common], help="residue of a symbol at a place")
    s.add_argument("--field", required=True, help="Q, quad:D, ff:Q")
    s.add_argument("--place", required=True)
    s.add_argument("--elem", required=True, help='symbol literal such as "3*[u] - eta*[a,b]"')
    s.set_defaults(func=cmd_residue)

    s = sub.add_parser("tdiv", parents=[common], help="twisted divisor of a degree-one element")
    s.add_argument("-d", type=int, required=True)
    s.add_argument("--elem", required=True)
    s.set_defaults(func=cmd_tdiv)

    cw = sub.add_parser("chow-witt", help="Chow-Witt groups of zero cycles")
    cws = cw.add_subparsers(dest="target", required=True)
    s = cws.add_parser("ok", parents=[common], help="ring of integers of Q(sqrt d)")
    s.add_argument("-d", type=int, required=True)
    s.add_argument("--bound", type=int, default=None)
    s.add_argument("--height", type=int, default=8)
    s.add_argument("--mode", choices=("mw", "milnor"), default="mw")
    s.add_argument("--max-stages", type=int, default=MAX_STAGES)
    s.set_defaults(func=cmd_chow_witt_ok)
    s = cws.add_parser("curve", parents=[common], help="affine or projective line over F_q")
    s.add_argument("--model", choices=("p1", "a1"), required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--mode", choices=("mw", "milnor"), default="mw")
    s.add_argument("--twist", choices=("omega",), default=None)
    s.set_defaults(func=cmd_chow_witt_curve)

    s = sub.add_parser("hpreimage", parents=[common], help="preimage of a zero-cycle under d on A^1")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--target", required=True, help="cycle json or a file holding it")
    s.set_defaults(func=cmd_hpreimage)

    s = sub.add_parser("reciprocity", parents=[common], help="random reciprocity checks on P^1")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(func=cmd_reciprocity)

    s = sub.add_parser("axioms", parents=[common], help="randomized cycle-module rule suite")
    s.add_argument("--suite", choices=SUITES, default="all")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(func=cmd_axioms)

    s = sub.add_parser("snf", parents=[common], help="Smith normal form of an integer matrix")
    s.add_argument("--matrix", required=True, help="json file (or inline json) with a list of rows")
    s.set_defaults(func=cmd_snf)
    return p


def run(argv=None, stdout=None, stderr=None):
    """Run the CLI and return the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if getattr(args, "trials", 1) < 0:
            raise UsageError("--trials must be nonnegative")
        result, code = args.func(args)
    except (UsageError, MWError, ValueError, KeyError) as exc:
        print(f"mwcycles: error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_USAGE
    stdout.write(emit_report(result, args.format))
    return code


def main():
    sys.exit(run())
