"""Command-line front end.

Exit codes: 0 success, 1 verification failed, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import code as zc
from . import cyclolattice as cl
from . import theta as th
from . import wenum as we
from .errors import InputError, InvariantError, ResourceError
from .report import VerifyReport, _clean

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def parse_z(text: str) -> complex:
    """Accept '0.2+1.1j', '0.2+1.1i' or 're,im'."""
    text = text.strip().replace(" ", "")
    try:
        if "," in text:
            re_, im = text.split(",")
            z = complex(float(re_), float(im))
        else:
            z = complex(text.replace("i", "j"))
    except ValueError:
        raise InputError(f"cannot parse sample point {text!r}") from None
    if z.imag <= 0:
        raise InputError(f"sample point {z} is not in the upper half-plane")
    return z


def _common(p: argparse.ArgumentParser):
    p.add_argument("--in", dest="input", help="code file (use - for stdin)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--span-cap", type=int, default=zc.DEFAULT_SPAN_CAP)
    p.add_argument("--tuple-cap", type=int, default=we.DEFAULT_TUPLE_CAP)
    p.add_argument("--budget", type=int, default=th.DEFAULT_NODE_BUDGET, help="lattice enumeration node budget")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed_ms from JSON reports")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zkcodes", description="Codes over Z_k, weight enumerators and theta series.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name in ("info", "dual", "cwe", "swe"):
        _common(sub.add_parser(name))
    for name in ("genus-cwe", "macwilliams"):
        p = sub.add_parser(name)
        _common(p)
        p.add_argument("--g", type=int, default=1)
    p = sub.add_parser("theta")
    _common(p)
    p.add_argument("--trunc", type=int, required=True)
    p = sub.add_parser("aseries")
    _common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--trunc", type=int, required=True)

    p = sub.add_parser("construct")
    csub = p.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    t2 = csub.add_parser("type2")
    _common(t2)
    t2.add_argument("--k", type=int, required=True)
    t2.add_argument("--blocks", type=int, default=1)

    p = sub.add_parser("cyclo")
    ysub = p.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    ct = ysub.add_parser("theta")
    _common(ct)
    ct.add_argument("--p", type=int, required=True)
    ct.add_argument("--trunc", type=int, required=True)
    ct.add_argument("--j", type=int, help="single theta_j; default is the lattice of --in, or all j")

    p = sub.add_parser("verify")
    _common(p)
    p.add_argument("identity", choices=("thm1", "thm2", "thm3", "thm4", "lemma1", "prop1", "prop3", "tinv"))
    p.add_argument("--trunc", type=int)
    p.add_argument("--g", type=int, default=1)
    p.add_argument("--k", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--z", action="append", help="sample point, e.g. 0.2+1.1j or 0.2,1.1 (repeatable)")
    p.add_argument("--no-require-so", action="store_true", help="run thm4 without the self-orthogonality hypothesis")

    p = sub.add_parser("suite")
    _common(p)
    p.add_argument("--seed", type=int, default=None)
    return parser


def _load(args) -> zc.Code:
    if not args.input:
        raise InputError("--in is required for this command")
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input) as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc}") from None
    return zc.parse_code(text, cap=args.span_cap)


def _emit_json(obj):
    print(json.dumps(_clean(obj) if not isinstance(obj, str) else obj, sort_keys=True))


def _emit_report(rep: VerifyReport, args) -> int:
    if args.format == "json":
        print(rep.to_json(timing=not args.no_timing))
    else:
        print(f"{rep.identity}: {rep.verdict}")
        for key, value in sorted(rep.params.items()):
            print(f"  {key} = {value}")
        for key, value in sorted(_clean(rep.evidence).items()):
            print(f"  {key}: {value}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def _emit_code(c: zc.Code, args):
    if args.format == "json":
        _emit_json({"k": c.k, "n": c.n, "cardinality": c.cardinality,
                    "generators": [list(g) for g in c.minimal_generators()]})
    else:
        print(format_code_text(c), end="")


def format_code_text(c: zc.Code) -> str:
    # lazy codes too large to enumerate are written with their own generators
    minimal = c.cardinality <= c.span_cap
    return zc.format_code(c, minimal=minimal)


def _emit_series(s, args):
    if args.format == "json":
        _emit_json(s.to_json())
    else:
        print(s)


def _emit_enumerator(w, args):
    if args.format == "json":
        _emit_json(w.to_json())
    else:
        print(w)


def _verify(args) -> int:
    ident = args.identity
    if ident == "lemma1":
        if args.k is None:
            raise InputError("verify lemma1 needs --k")
        zs = [parse_z(z) for z in args.z] if args.z else list(_default_points())
        js = [args.j] if args.j is not None else list(range(args.k))
        checks = [th.check_lemma1(args.k, j, z, args.trunc) for j in js for z in zs]
        rep = th.numeric_report("lemma1", {"k": args.k, "j": js, "z": zs}, checks)
        return _emit_report(rep, args)
    c = _load(args)
    if ident == "thm1":
        rep = th.verify_theorem1(c, args.trunc if args.trunc is not None else 400, budget=args.budget)
    elif ident == "thm2":
        rep = th.verify_theorem2(c, args.trunc if args.trunc is not None else 200)
    elif ident == "thm3":
        rep = we.verify_macwilliams(c, args.g, tuple_cap=args.tuple_cap)
    elif ident == "thm4":
        p = args.p if args.p is not None else c.k
        rep = cl.verify_theorem4(p, c, args.trunc if args.trunc is not None else 10,
                                 require_self_orthogonal=not args.no_require_so)
    elif ident == "prop1":
        rep = th.verify_prop1(c, args.trunc)
    elif ident == "prop3":
        zs = [parse_z(z) for z in args.z] if args.z else list(_default_points())
        checks = [th.check_prop3(c, z, args.trunc) for z in zs]
        rep = th.numeric_report("prop3", {"k": c.k, "n": c.n, "cardinality": c.cardinality, "z": zs}, checks)
    else:  # tinv
        rep = th.check_T_invariance(c, args.trunc if args.trunc is not None else 60)
    return _emit_report(rep, args)


def _default_points():
    from .suite import SAMPLE_POINTS
    return SAMPLE_POINTS


def _suite(args) -> int:
    from . import suite

    seed = args.seed if args.seed is not None else suite.DEFAULT_SEED
    echo = print if args.format == "text" else None
    results = suite.run_all(seed, echo=echo)
    if args.format == "json":
        out = [{"criterion": r.number, "title": r.title, "passed": r.passed, "detail": r.detail,
                "failures": r.failures} for r in results]
        if not args.no_timing:
            for o, r in zip(out, results):
                o["seconds"] = round(r.seconds, 3)
        _emit_json(out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def dispatch(args) -> int:
    cmd = args.command
    if cmd == "info":
        c = _load(args)
        rep = zc.classify(c)
        out = {"k": c.k, "n": c.n, "cardinality": rep.cardinality, "self_orthogonal": rep.self_orthogonal,
               "self_dual": rep.self_dual, "doubly_even": rep.doubly_even}
        if args.format == "json":
            _emit_json(out)
        else:
            for key in ("k", "n", "cardinality", "self_orthogonal", "self_dual", "doubly_even"):
                print(f"{key}: {out[key]}")
    elif cmd == "dual":
        _emit_code(zc.dual_code(_load(args), cap=args.span_cap), args)
    elif cmd == "cwe":
        _emit_enumerator(we.cwe(_load(args)), args)
    elif cmd == "swe":
        _emit_enumerator(we.symmetrize(we.cwe(_load(args))), args)
    elif cmd == "genus-cwe":
        _emit_enumerator(we.genus_cwe(_load(args), args.g, cap=args.tuple_cap), args)
    elif cmd == "macwilliams":
        c = _load(args)
        _emit_enumerator(we.macwilliams_transform(we.genus_cwe(c, args.g, cap=args.tuple_cap), c.cardinality), args)
    elif cmd == "theta":
        _emit_series(th.theta_construction_a(_load(args), args.trunc, budget=args.budget), args)
    elif cmd == "aseries":
        _emit_series(th.a_series(args.k, args.j, args.trunc), args)
    elif cmd == "construct":
        _emit_code(zc.type2_code(args.k, args.blocks, cap=args.span_cap), args)
    elif cmd == "cyclo":
        if args.input:
            _emit_series(cl.theta_cyclolattice(args.p, _load(args), args.trunc), args)
        elif args.j is not None:
            _emit_series(cl.theta_j(args.p, args.j, args.trunc), args)
        else:
            series = [cl.theta_j(args.p, j, args.trunc) for j in range(args.p)]
            if args.format == "json":
                _emit_json([s.to_json() for s in series])
            else:
                for j, s in enumerate(series):
                    print(f"theta_{j} = {s}")
    elif cmd == "verify":
        return _verify(args)
    elif cmd == "suite":
        return _suite(args)
    return EXIT_OK


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "trunc", None) is not None and args.trunc < 0:
            raise InputError("--trunc must be nonnegative")
        return dispatch(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InvariantError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_FAIL


def run(argv) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
