"""Command-line front end.

Subcommands::

    poly     {eval,diff,compose,print}
    groebner basis
    member   {ideal,subalgebra}
    lnd      {apply,nilpotent,exp,dixmier,kernel}
    venereau {build,verify,family}

Reports are emitted as JSON lines on stdout when ``--json`` is given
(one object per check: schema, check, verdict, witnesses, stats), or as
concise text otherwise.  Diagnostics go to stderr.  Exit codes: 0 all
pass, 1 any fail, 2 undetermined, 3 usage error.  Identical inputs give
byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import venereau as vn
from .derivation import (
    Derivation,
    InvalidSliceError,
    KernelMembershipError,
    NotCertifiedError,
    exp_automorphism,
    dixmier_projection,
    parse_derivation,
)
from .groebner import (
    Budget,
    BudgetExceededError,
    DEFAULT_BUDGET,
    buchberger,
    normal_form,
    subalgebra_member,
)
from .parse import ParseError, format_polynomial, parse_polynomial
from .poly import ContextMismatchError, MonomialOrder, Polynomial, VarContext
from .slice_kernel import certify_polynomial_ring, check_stably_free_shadow, kernel_from_slice

USAGE_ERROR = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print("%s: error: %s" % (self.prog, message), file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _context(args) -> VarContext:
    names = [n.strip() for n in args.vars.split(",") if n.strip()]
    coeff = []
    if getattr(args, "coeff_vars", None):
        coeff = [n.strip() for n in args.coeff_vars.split(",") if n.strip()]
    return VarContext(names, coeff_block=coeff)


def _budget(args) -> Budget:
    return Budget(
        max_degree=getattr(args, "budget_degree", None) or DEFAULT_BUDGET.max_degree,
        max_basis=getattr(args, "budget_basis", None) or DEFAULT_BUDGET.max_basis,
    )


def _split_polys(text: str, ctx: VarContext) -> list:
    return [parse_polynomial(part, ctx) for part in text.split(",") if part.strip()]


class Reporter:
    """Collects check reports; prints them and derives the exit code."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.verdicts = []

    def emit(self, check: str, verdict: str, witnesses=None, stats=None):
        self.verdicts.append(verdict)
        obj = {
            "schema": 1,
            "check": check,
            "verdict": verdict,
            "witnesses": witnesses or {},
            "stats": stats or {},
        }
        if self.as_json:
            print(json.dumps(obj, sort_keys=True))
        else:
            extra = ""
            w = witnesses or {}
            if len(w) == 1:
                extra = "  %s" % next(iter(w.values()))
            print("%s: %s%s" % (check, verdict, extra))

    def emit_report(self, report) -> None:
        self.emit(report.check, report.verdict, report.witnesses, report.stats)

    def exit_code(self) -> int:
        if any(v == "fail" for v in self.verdicts):
            return 1
        if any(v == "undetermined" for v in self.verdicts):
            return 2
        return 0


# ---------------------------------------------------------------------------
# subcommand handlers

def _cmd_poly(args, rep: Reporter):
    ctx = _context(args)
    f = parse_polynomial(args.expr, ctx)
    if args.action == "print":
        order = MonomialOrder.parse(args.order)
        rep.emit("poly.print", "pass", {"canonical": format_polynomial(f, order)})
    elif args.action == "diff":
        rep.emit("poly.diff", "pass",
                 {"derivative": format_polynomial(f.partial(args.wrt))})
    elif args.action == "eval":
        point = {}
        for item in args.at.split(","):
            name, val = item.split("=", 1)
            point[name.strip()] = Fraction(val.strip())
        rep.emit("poly.eval", "pass", {"value": str(f.evaluate(point))})
    elif args.action == "compose":
        images = {}
        for item in args.map or []:
            name, expr = item.split("=", 1)
            images[name.strip()] = parse_polynomial(expr, ctx)
        rep.emit("poly.compose", "pass",
                 {"image": format_polynomial(f.substitute(images))})


def _cmd_groebner(args, rep: Reporter):
    ctx = _context(args)
    order = MonomialOrder.parse(args.order)
    gens = [parse_polynomial(g, ctx) for g in args.gens]
    try:
        gb = buchberger(gens, order, _budget(args))
    except BudgetExceededError as exc:
        rep.emit("groebner.basis", "undetermined", {}, {"detail": str(exc)})
        return
    witnesses = {"size": len(gb.generators)}
    if args.emit_basis:
        witnesses["basis"] = gb.serialize()
    rep.emit("groebner.basis", "pass", witnesses, {
        "pairs_processed": gb.stats.pairs_processed,
        "reductions": gb.stats.reductions,
    })


def _cmd_member(args, rep: Reporter):
    ctx = _context(args)
    f = parse_polynomial(args.f, ctx)
    gens = _split_polys(args.gens, ctx)
    budget = _budget(args)
    if args.kind == "ideal":
        order = MonomialOrder.parse(args.order)
        try:
            gb = buchberger(gens, order, budget)
            nf = normal_form(f, gb, budget)
        except BudgetExceededError as exc:
            rep.emit("member.ideal", "undetermined", {}, {"detail": str(exc)})
            return
        member = nf.is_zero()
        rep.emit("member.ideal", "pass" if member else "fail", {
            "member": member,
            "normal_form": format_polynomial(nf),
        })
    else:
        result = subalgebra_member(f, gens, invert=args.invert, budget=budget)
        if result.status == "undetermined":
            rep.emit("member.subalgebra", "undetermined", {}, {"detail": result.detail})
            return
        member = result.status == "member"
        witnesses = {"member": member}
        if member:
            witnesses["witness"] = format_polynomial(result.witness)
            witnesses["tags"] = {t: format_polynomial(g)
                                 for t, g in zip(result.tag_names, gens)}
            witnesses["validated"] = result.witness_identity_holds(f, gens)
        rep.emit("member.subalgebra", "pass" if member else "fail", witnesses)


def _load_derivation(args) -> Derivation:
    with open(args.derivation) as fh:
        return parse_derivation(fh.read())


def _cmd_lnd(args, rep: Reporter):
    D = _load_derivation(args)
    ctx = D.ctx
    if args.action == "apply":
        f = parse_polynomial(args.f, ctx)
        rep.emit("lnd.apply", "pass", {"image": format_polynomial(D(f))})
        return
    if args.action == "nilpotent":
        cert = D.certify_nilpotent(args.cap)
        rep.emit("lnd.nilpotent",
                 "pass" if cert.certified else "undetermined",
                 {"status": cert.status, "indices": cert.indices},
                 {"cap": cert.cap})
        return
    if args.action == "exp":
        t = parse_polynomial(args.t, ctx)
        m = exp_automorphism(D, t)
        rep.emit("lnd.exp", "pass", {
            "images": {n: format_polynomial(g) for n, g in m.images.items()}})
        return
    s = parse_polynomial(args.slice, ctx)
    if args.action == "dixmier":
        f = parse_polynomial(args.f, ctx)
        rep.emit("lnd.dixmier", "pass",
                 {"projection": format_polynomial(dixmier_projection(D, s, f))})
        return
    # kernel
    result = kernel_from_slice(D, s, _budget(args))
    result = certify_polynomial_ring(result, _budget(args))
    result = check_stably_free_shadow(result)
    payload = result.to_dict()
    worst = _worst(result.generation_verdict, result.pair_verdict,
                   result.stably_free_verdict)
    rep.emit("lnd.kernel", worst, payload)


def _worst(*verdicts) -> str:
    if any(v == "fail" for v in verdicts):
        return "fail"
    if any(v in ("undetermined", "not-run") for v in verdicts):
        return "undetermined"
    return "pass"


def _make_spec(args) -> vn.VenereauSpec:
    if args.family:
        return vn.family(args.family, n=args.n, Q=args.Q, Q2=args.Q2,
                         r=args.r or 0, s=args.s or 0)
    if args.Q is None:
        raise ValueError("either --family or --Q is required")
    return vn.build(args.r or 0, args.s or 0, args.Q, label="custom")


def _cmd_venereau(args, rep: Reporter):
    spec = _make_spec(args)
    if args.action in ("build", "family"):
        rep.emit("venereau.%s" % args.action, "pass", {
            "label": spec.label,
            "h": format_polynomial(spec.h),
            "v": format_polynomial(spec.v),
            "w": format_polynomial(spec.w),
            "p": format_polynomial(spec.p),
            "lambda": format_polynomial(spec.lam),
        })
        return
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    for report in vn.run_checks(spec, checks, _budget(args)):
        rep.emit_report(report)


# ---------------------------------------------------------------------------
# argument wiring

def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="venlab", description=__doc__,
                  formatter_class=argparse.RawDescriptionHelpFormatter)
    top.add_argument("--json", action="store_true", help="emit JSON-lines reports")
    top.add_argument("--seed", type=int, default=0,
                     help="seed for randomized batteries (reports are deterministic)")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, coeff=True, budget=True, order=True):
        p.add_argument("--vars", required=True, help="comma-separated variable names")
        if coeff:
            p.add_argument("--coeff-vars", default="",
                           help="prefix of --vars forming the coefficient block")
        if order:
            p.add_argument("--order", default="grevlex",
                           help="monomial order: lex, grevlex or elim:<k>")
        if budget:
            p.add_argument("--budget-degree", type=int, default=None)
            p.add_argument("--budget-basis", type=int, default=None)

    poly = sub.add_parser("poly", help="polynomial arithmetic").add_subparsers(
        dest="action", required=True)
    for action in ("print", "diff", "eval", "compose"):
        p = poly.add_parser(action)
        common(p, budget=False, order=(action == "print"))
        p.add_argument("expr", help="polynomial expression")
        if action == "diff":
            p.add_argument("--wrt", required=True, help="variable to differentiate by")
        if action == "eval":
            p.add_argument("--at", required=True, help="point, e.g. x=1,y=2/3")
        if action == "compose":
            p.add_argument("--map", action="append", default=[],
                           help="substitution var=expr (repeatable)")
        p.set_defaults(func=_cmd_poly)

    gro = sub.add_parser("groebner").add_subparsers(dest="action", required=True)
    basis = gro.add_parser("basis")
    common(basis)
    basis.add_argument("--emit-basis", action="store_true",
                       help="include the serialized basis in the report")
    basis.add_argument("gens", nargs="+", help="ideal generators")
    basis.set_defaults(func=_cmd_groebner)

    mem = sub.add_parser("member").add_subparsers(dest="kind", required=True)
    for kind in ("ideal", "subalgebra"):
        p = mem.add_parser(kind)
        common(p)
        p.add_argument("--f", required=True, help="polynomial to test")
        p.add_argument("--gens", required=True, help="comma-separated generators")
        if kind == "subalgebra":
            p.add_argument("--invert", default=None,
                           help="coefficient variable to invert")
        p.set_defaults(func=_cmd_member)

    lnd = sub.add_parser("lnd").add_subparsers(dest="action", required=True)
    for action in ("apply", "nilpotent", "exp", "dixmier", "kernel"):
        p = lnd.add_parser(action)
        p.add_argument("--derivation", required=True,
                       help="file with 'D(var) = poly' lines")
        if action == "apply":
            p.add_argument("--f", required=True)
        if action == "nilpotent":
            p.add_argument("--cap", type=int, default=64)
        if action == "exp":
            p.add_argument("--t", required=True, help="kernel parameter")
        if action in ("dixmier", "kernel"):
            p.add_argument("--slice", required=True)
        if action == "dixmier":
            p.add_argument("--f", required=True)
        if action == "kernel":
            p.add_argument("--budget-degree", type=int, default=None)
            p.add_argument("--budget-basis", type=int, default=None)
        p.set_defaults(func=_cmd_lnd)

    ven = sub.add_parser("venereau").add_subparsers(dest="action", required=True)
    for action in ("build", "family", "verify"):
        p = ven.add_parser(action)
        p.add_argument("--family", choices=vn.FAMILY_NAMES, default=None)
        p.add_argument("--n", type=int, default=1)
        p.add_argument("--r", default=None, help="polynomial in x")
        p.add_argument("--s", default=None, help="polynomial in x")
        p.add_argument("--Q", default=None, help="polynomial in x, V, W")
        p.add_argument("--Q2", default=None, help="lewis family only")
        if action == "verify":
            p.add_argument("--checks", default="residual,localized,jacobian,fibers")
            p.add_argument("--budget-degree", type=int, default=None)
            p.add_argument("--budget-basis", type=int, default=None)
        p.set_defaults(func=_cmd_venereau)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    rep = Reporter(args.json)
    try:
        args.func(args, rep)
    except (ParseError, ContextMismatchError, InvalidSliceError,
            KernelMembershipError, NotCertifiedError, ValueError, KeyError,
            OSError) as exc:
        print("venlab: error: %s" % exc, file=sys.stderr)
        return USAGE_ERROR
    except BudgetExceededError as exc:
        print("venlab: resource budget exceeded: %s" % exc, file=sys.stderr)
        return 2
    return rep.exit_code()


if __name__ == "__main__":
    sys.exit(main())
