"""Command-line front end: ``weylcomm <command> [options]``.

Operator arguments accept an expression or ``@path`` to a ``.op`` file.
Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .centralizer import (
    FamilyBranch,
    Trivial,
    bc_pair,
    centralizer_search,
    classify_family,
    triviality_test,
)
from .dixmier import (
    Filtration,
    Pass,
    delta_initial,
    dixmier_test,
    newton_diagram,
    order_constraints,
    test_filtration,
)
from .errors import OperatorSyntaxError, WeylCommError
from .oreops import DiffOp, op_commutator
from .parse import parse_operator, parse_polynomial, parse_scalar
from .resultants import (
    PlaneCurve,
    diff_resultant,
    gcd_at_point,
    spectral_curve,
    subresultant_op,
    verify_bc_relation,
)

CACHE_ENV = "WEYLCOMM_CACHE"


class UsageError(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def load_operator(arg: str) -> DiffOp:
    """Parse an operator argument, following ``@file`` indirection."""
    if arg.startswith("@"):
        path = Path(arg[1:])
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read operator file {path}: {exc.strerror}") from None
        return parse_operator(text)
    return parse_operator(arg)


# ---------------------------------------------------------------------------
# spectral-curve cache
# ---------------------------------------------------------------------------

def _cache_key(l: DiffOp, m: DiffOp, exact: bool) -> str:
    blob = json.dumps([str(l), str(m), exact]).encode()
    return hashlib.sha256(blob).hexdigest()


def cached_curve(l: DiffOp, m: DiffOp, exact: bool) -> PlaneCurve:
    """spectral_curve, memoized on disk when $WEYLCOMM_CACHE names a directory."""
    root = os.environ.get(CACHE_ENV)
    if not root:
        return spectral_curve(l, m, exact)
    path = Path(root) / f"curve-{_cache_key(l, m, exact)}.json"
    if path.exists():
        d = json.loads(path.read_text(encoding="utf-8"))
        return PlaneCurve(
            f=parse_polynomial(d["f"]), h=parse_polynomial(d["h"]), r=d["r"], c=parse_scalar(d["c"]), path=d["path"]
        )
    curve = spectral_curve(l, m, exact)
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = {"f": str(curve.f), "h": str(curve.h), "r": curve.r, "c": str(curve.c), "path": curve.path}
    path.write_text(json.dumps(doc, indent=1), encoding="utf-8")
    return curve


# ---------------------------------------------------------------------------
# commands; each returns (inputs, outputs, provenance extras)
# ---------------------------------------------------------------------------

def _lm(args):
    return load_operator(args.L), load_operator(args.M)


def cmd_mul(args):
    l, m = _lm(args)
    return {"L": str(l), "M": str(m)}, {"product": str(l * m)}, {}


def cmd_commutator(args):
    l, m = _lm(args)
    return {"L": str(l), "M": str(m)}, {"commutator": str(op_commutator(l, m))}, {}


def _det_path(exact):
    return "exact" if exact else "interpolated"


def cmd_resultant(args):
    l, m = _lm(args)
    res = diff_resultant(l, m, exact=args.exact)
    return {"L": str(l), "M": str(m)}, {"resultant": str(res)}, {"determinant_path": _det_path(args.exact)}


def cmd_spectral_curve(args):
    l, m = _lm(args)
    c = cached_curve(l, m, args.exact)
    out = {"f": str(c.f), "h": str(c.h), "r": c.r, "c": str(c.c)}
    return {"L": str(l), "M": str(m)}, out, {"determinant_path": c.path}


def cmd_subresultant(args):
    l, m = _lm(args)
    if args.lam is not None:
        l = l - parse_scalar(args.lam)
    if args.mu is not None:
        m = m - parse_scalar(args.mu)
    s = subresultant_op(l, m, args.k, exact=args.exact)
    return ({"L": str(l), "M": str(m), "k": args.k}, {"subresultant": str(s)},
            {"determinant_path": _det_path(args.exact)})


def cmd_gcd_at_point(args):
    l, m = _lm(args)
    lam0, mu0 = parse_scalar(args.lam), parse_scalar(args.mu)
    curve = cached_curve(l, m, args.exact)
    g = gcd_at_point(l, m, curve, lam0, mu0)
    out = {"gcd": str(g), "monic": str(g.monic()), "order": g.order}
    return ({"L": str(l), "M": str(m), "lambda": str(lam0), "mu": str(mu0)}, out,
            {"determinant_path": curve.path})


def _filtration(args, l):
    if args.filtration:
        try:
            p, q = (int(v) for v in args.filtration.split(","))
        except ValueError:
            raise UsageError("--filtration expects two integers 'p,q'") from None
        return Filtration(p, q)
    return test_filtration(l)


def cmd_dixmier_test(args):
    l, m = _lm(args)
    f = _filtration(args, l)
    verdict = dixmier_test(l, m, f)
    out = {"filtration": [f.p, f.q]}
    if isinstance(verdict, Pass):
        out.update(verdict="Pass", c=str(verdict.c))
    else:
        out.update(verdict="Fail", reason=verdict.reason)
    return {"L": str(l), "M": str(m)}, out, {}


def cmd_newton(args):
    l = load_operator(args.L)
    out = {"points": [list(p) for p in newton_diagram(l)]}
    try:
        f = test_filtration(l)
    except WeylCommError:
        f = None
    if args.filtration:
        f = _filtration(args, l)
    if f is not None:
        delta, ini, sym = delta_initial(l, f)
        out.update(filtration=[f.p, f.q], delta=delta, initial=str(ini), symbol=str(sym))
    return {"L": str(l)}, out, {}


def cmd_order_constraints(args):
    l = load_operator(args.L)
    oc = order_constraints(l)
    out = {
        "filtration": [oc.filtration.p, oc.filtration.q],
        "symbol_root": str(oc.root),
        "power": oc.power,
        "modulus": oc.modulus,
        "residues": sorted(oc.residues),
    }
    return {"L": str(l)}, out, {}


def _branch_doc(b: FamilyBranch):
    return {
        "assignment": {k: str(v) for k, v in b.assignment.items()},
        "free_constants": list(b.free_constants),
        "trivial": b.trivial,
        "operator": str(b.operator),
    }


def cmd_centralizer_search(args):
    l = load_operator(args.L)
    inputs = {"L": str(l), "order": args.order}
    if args.unknowns:
        names = [u.strip() for u in args.unknowns.split(",") if u.strip()]
        inputs["unknowns"] = names
        branches = classify_family(l, args.order, names)
        return inputs, {"branches": [_branch_doc(b) for b in branches]}, {}
    bounds = args.degbound
    fam = centralizer_search(l, args.order, bounds)
    out = {"particular": str(fam.particular), "basis": [str(b) for b in fam.basis]}
    return inputs, out, {}


def cmd_triviality_test(args):
    l, m = _lm(args)
    res = triviality_test(l, m, args.exact)
    if isinstance(res, Trivial):
        out = {"verdict": "Trivial", "p0": str(res.p0)}
    else:
        out = {"verdict": "NonTrivial"}
        if res.curve is not None:
            out.update(h=str(res.curve.h), r=res.curve.r)
    return {"L": str(l), "M": str(m)}, out, {"determinant_path": _det_path(args.exact)}


def cmd_bc_pair(args):
    l, m = _lm(args)
    rep = bc_pair(l, m, args.exact)
    out = {
        "verdict": rep.verdict,
        "g": rep.g,
        "order": rep.order if isinstance(rep.order, int) else str(rep.order),
        "h": str(rep.h),
        "b1": str(rep.b1),
        "b0": str(rep.b0),
        "solution": {k: str(v) for k, v in rep.solution.items()},
        "B": str(rep.B),
    }
    if rep.p_alpha is not None:
        out["p_alpha"] = str(rep.p_alpha)
    if rep.R is not None:
        out["R"] = str(rep.R)
    out["remainders"] = [str(r) for r in rep.remainders]
    out["assumptions"] = list(rep.assumptions)
    return {"L": str(l), "M": str(m)}, out, {"determinant_path": rep.curve_path}


def cmd_verify_relation(args):
    l, m = _lm(args)
    h = parse_polynomial(args.relation)
    ok = verify_bc_relation(l, m, h)
    return {"L": str(l), "M": str(m), "relation": str(h)}, {"holds": ok}, {}


def build_parser() -> argparse.ArgumentParser:
    common = _ArgParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("--exact", action="store_true", help="fraction-free determinants only")

    parser = _ArgParser(prog="weylcomm", description="Commuting differential operators in the Weyl algebra.",
                        parents=[common])
    parser.add_argument("--version", action="version", version=f"weylcomm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    def add(name, func, help_, pair=True):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.add_argument("--L", required=True, help="operator expression or @file")
        if pair:
            p.add_argument("--M", required=True, help="operator expression or @file")
        p.set_defaults(func=func)
        return p

    add("mul", cmd_mul, "product L*M")
    add("commutator", cmd_commutator, "commutator [L, M]")
    add("resultant", cmd_resultant, "differential resultant det S0(L, M)")
    add("spectral-curve", cmd_spectral_curve, "spectral curve of a commuting pair")
    p = add("subresultant", cmd_subresultant, "subresultant operator of index k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lambda", dest="lam", help="subtract this value from L first")
    p.add_argument("--mu", dest="mu", help="subtract this value from M first")
    p = add("gcd-at-point", cmd_gcd_at_point, "common right factor at a curve point")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", dest="mu", required=True)
    p = add("dixmier-test", cmd_dixmier_test, "symbol power test under a filtration")
    p.add_argument("--filtration", help="weights 'p,q' (default: the test filtration of L)")
    p = add("newton", cmd_newton, "Newton diagram, test filtration and symbol", pair=False)
    p.add_argument("--filtration", help="weights 'p,q'")
    add("order-constraints", cmd_order_constraints, "admissible orders of commuting operators", pair=False)
    p = add("centralizer-search", cmd_centralizer_search, "operators of a given order commuting with L", pair=False)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--degbound", type=int, help="uniform x-degree bound for the ansatz coefficients")
    p.add_argument("--unknowns", help="comma-separated parameters of L to solve for")
    add("triviality-test", cmd_triviality_test, "is M a polynomial in L")
    add("bc-pair", cmd_bc_pair, "BC-pair algorithm for an order-4 L")
    p = add("verify-relation", cmd_verify_relation, "check h(L, M) = 0")
    p.add_argument("--relation", required=True, help="polynomial in lam, mu")
    return parser


def _render_text(doc) -> str:
    lines = [f"command: {doc['command']}"]
    for key, val in doc["outputs"].items():
        if isinstance(val, list):
            lines.append(f"{key}:")
            lines.extend(f"  - {json.dumps(v) if isinstance(v, dict) else v}" for v in val)
        elif isinstance(val, dict):
            lines.append(f"{key}:")
            lines.extend(f"  {k}: {v}" for k, v in val.items())
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines)


def run_command(argv):
    """Run one command; returns (document or None, exit code, message)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return None, 2, str(exc)
    start = time.perf_counter()
    try:
        inputs, outputs, prov = args.func(args)
    except UsageError as exc:
        return None, 2, str(exc)
    except OperatorSyntaxError as exc:
        return None, 2, f"syntax error: {exc}"
    except WeylCommError as exc:
        return None, 1, f"{type(exc).__name__}: {exc}"
    provenance = {"tool": "weylcomm", "version": __version__, "exact": args.exact}
    provenance.update(prov)
    provenance["seconds"] = round(time.perf_counter() - start, 3)
    doc = {"command": args.command, "inputs": inputs, "outputs": outputs, "provenance": provenance}
    return doc, 0, ""


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    want_json = "--json" in argv
    doc, code, msg = run_command(argv)
    if code:
        if want_json:
            print(json.dumps({"error": msg, "exit_code": code}))
        print(msg, file=sys.stderr)
        return code
    print(json.dumps(doc, indent=2) if want_json else _render_text(doc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
