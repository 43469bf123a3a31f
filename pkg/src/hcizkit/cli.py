"""
Command-line front end.

    hcizkit weingarten --perm "(1 2)(3)" --exact 4
    hcizkit pc --sigma "(1 2)" --tau "()" --l 1 --route all
    hcizkit hurwitz single --alpha 2 --genus 0
    hcizkit verify --suite hurwitz --max-n 3

Results go to stdout, errors to stderr as JSON.  Exit codes: 0 success,
1 failed identity or internal assertion, 2 bad arguments, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

import numpy as np

from .series import LaurentSeries, _frac_str

DEFAULT_BUDGET = {"n": 5, "D": 3, "l": 8, "k": 8}


class BudgetError(Exception):
    pass


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _kind_and_value(v):
    if isinstance(v, LaurentSeries):
        return "laurent_series", v.to_json()
    if isinstance(v, bool):
        return "boolean", v
    if isinstance(v, int):
        return "integer", v
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return "integer", int(v)
        return "rational", _frac_str(v)
    if isinstance(v, dict) and "estimate" in v:
        return "float±err", v
    if isinstance(v, (complex, float, np.complexfloating, np.floating)):
        # floating results from floating tensors are exact sums, so the error is 0
        v = complex(v)
        return "float±err", {"estimate": {"re": v.real, "im": v.imag}, "standard_error": 0.0}
    return "object", v


def _budget(args, n=None, D=None, l=None, k=None):
    if args.unsafe_budget:
        return
    for name, val in (("n", n), ("D", D), ("l", l), ("k", k)):
        if val is not None and val > DEFAULT_BUDGET[name]:
            raise BudgetError("%s=%d exceeds the budget %d (use --unsafe-budget)" % (name, val, DEFAULT_BUDGET[name]))


def _perm_list(texts):
    from .permutations import Permutation
    # infer a common degree from the largest label
    raw = [Permutation.parse(t) for t in texts]
    n = max([p.n for p in raw] + [1])
    return [Permutation.parse(t, n) for t in texts]


def _tuple_args(args):
    from .cumulant import PermTuple
    sig = [args.sigma] + ([args.sigma2] if args.sigma2 is not None else [])
    tau = [args.tau] + ([args.tau2] if args.tau2 is not None else [])
    if len(sig) != len(tau):
        raise UsageError("--sigma2 and --tau2 must be given together")
    for extra_s, extra_t in zip(args.sigma_more or [], args.tau_more or []):
        sig.append(extra_s)
        tau.append(extra_t)
    perms = _perm_list(sig + tau)
    D = len(sig)
    return PermTuple(perms[:D]), PermTuple(perms[D:])


def cmd_weingarten(args):
    from .weingarten import weingarten_asymptotic, weingarten_exact, weingarten_series
    (nu,) = _perm_list([args.perm])
    _budget(args, n=nu.n, l=args.series)
    inputs = {"perm": str(nu), "n": nu.n}
    if args.exact is not None:
        inputs["N"] = args.exact
        return inputs, weingarten_exact(nu, args.exact)
    if args.asymptotic:
        m, e = weingarten_asymptotic(nu)
        return inputs, LaurentSeries(e, [m], e)
    order = args.series if args.series is not None else 2 * nu.n
    inputs["order"] = order
    return inputs, weingarten_series(nu, order)


def cmd_pc(args):
    from .cumulant import ROUTES, ell
    from .nodal import folding_decomposition
    s, t = _tuple_args(args)
    _budget(args, n=s.n, D=s.D, l=args.l)
    routes = dict(ROUTES)
    routes["folding"] = folding_decomposition
    names = list(routes) if args.route == "all" else [args.route]
    vals = {r: routes[r](s, t, args.l) for r in names}
    inputs = {"sigma": [str(p) for p in s], "tau": [str(p) for p in t], "l": args.l, "ell": ell(s, t)}
    if len(names) == 1:
        return inputs, vals[names[0]]
    if len(set(vals.values())) != 1:
        raise AssertionError("routes disagree: %s" % vals)
    inputs["routes"] = vals
    return inputs, next(iter(vals.values()))


def _genus_or_l(args):
    if (args.genus is None) == (args.l is None):
        raise UsageError("give exactly one of --genus and --l")


def cmd_hurwitz(args):
    from .hurwitz import (HurwitzQuery, double_from_single, double_hurwitz, higher_order_hurwitz,
                          single_hurwitz)
    from .permutations import CycleType
    _genus_or_l(args)
    inputs = {"kind": args.kind, "alpha": args.alpha, "genus": args.genus, "l": args.l}
    alphas = [CycleType.parse(a) for a in args.alpha.split(";")]
    alpha = alphas[0]
    if args.kind == "single":
        if len(alphas) != 1:
            raise UsageError("single numbers take one alpha")
        _budget(args, n=alpha.n, l=args.l)
        return inputs, single_hurwitz(alpha, args.genus, args.l)
    if args.beta is None:
        raise UsageError("--beta is required")
    betas = [CycleType.parse(b) for b in args.beta.split(";")]
    inputs["beta"] = [str(b) for b in betas]
    if args.kind == "double":
        if len(alphas) != 1 or len(betas) != 1:
            raise UsageError("double numbers take one alpha and one beta")
        _budget(args, n=alpha.n, l=args.l)
        if args.from_single:
            if args.genus is None:
                from .hurwitz import _resolve, double_l
                h, _ = _resolve(None, args.l, lambda g: double_l(alpha, betas[0], g), double_l(alpha, betas[0], 0))
            else:
                h = args.genus
            return inputs, double_from_single(alpha, betas[0], h)
        return inputs, double_hurwitz(alpha, betas[0], args.genus, args.l)
    if len(alphas) != len(betas):
        raise UsageError("need as many alphas as betas (separate colors with ';')")
    q = HurwitzQuery(tuple(zip(alphas, betas)), l=args.l, genus=args.genus)
    inputs["alpha"] = [str(a) for a in alphas]
    _budget(args, n=q.n, D=q.D, l=q.resolved_l())
    return inputs, higher_order_hurwitz(q)


def cmd_bms(args):
    from .hurwitz import HurwitzQuery, bms_numbers
    from .permutations import CycleType
    alphas = [CycleType.parse(a) for a in args.alpha.split(";")]
    betas = [CycleType.parse(b) for b in args.beta.split(";")]
    if len(alphas) != len(betas):
        raise UsageError("need as many alphas as betas (separate colors with ';')")
    q = HurwitzQuery(tuple(zip(alphas, betas)), l=args.l)
    _budget(args, n=q.n, D=q.D, l=args.l, k=args.k)
    inputs = {"alpha": [str(a) for a in alphas], "beta": [str(b) for b in betas], "l": args.l, "k": args.k}
    return inputs, bms_numbers(q, args.k)


def _tensors(args):
    from .hciz import load_tensor
    A, B = load_tensor(args.tensor_a), load_tensor(args.tensor_b)
    if args.dim is not None and args.dim != A.N:
        raise UsageError("--dim %d does not match the tensor files (N=%d)" % (args.dim, A.N))
    return A, B


def cmd_moments(args, cumulant=False):
    from .hciz import cumulants, haar_sample_moment, moments
    A, B = _tensors(args)
    _budget(args, n=args.n, D=A.D)
    inputs = {"tensor_a": args.tensor_a, "tensor_b": args.tensor_b, "n": args.n, "N": A.N, "D": A.D}
    if args.montecarlo:
        if cumulant:
            raise UsageError("Monte Carlo is only available for moments")
        r = haar_sample_moment(A, B, args.n, A.N, args.montecarlo, args.seed, jobs=args.jobs)
        inputs.update(samples=r.samples, seed=args.seed)
        return inputs, {"estimate": {"re": r.estimate.real, "im": r.estimate.imag}, "standard_error": r.standard_error}
    f = cumulants if cumulant else moments
    return inputs, f(A, B, args.n, A.N)


def cmd_verify(args):
    from .verify import run_suite
    _budget(args, n=args.max_n)
    checks = run_suite(args.suite, args.max_n)
    value = [{"identity": c.name, "passed": c.passed, "cases": c.cases, "counterexample": c.counterexample}
             for c in checks]
    return {"suite": args.suite, "max_n": args.max_n}, value


def build_parser() -> argparse.ArgumentParser:
    # global options are accepted before or after the subcommand
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "table", "csv"], default=argparse.SUPPRESS)
    common.add_argument("--unsafe-budget", action="store_true", default=argparse.SUPPRESS,
                        help="lift the default size caps")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker cap for parallel loops")
    p = _Parser(prog="hcizkit", parents=[common],
                description="Weingarten calculus, cumulant coefficients and monotone Hurwitz numbers.")
    _orig = p.add_subparsers(dest="command", parser_class=_Parser)
    _orig.required = True

    class _Sub:
        def add_parser(self, *a, **kw):
            return _orig.add_parser(*a, parents=[common], **kw)

    sub = _Sub()

    w = sub.add_parser("weingarten", help="Weingarten function of one permutation")
    w.add_argument("--perm", required=True)
    g = w.add_mutually_exclusive_group()
    g.add_argument("--series", type=int, metavar="ORDER")
    g.add_argument("--exact", type=int, metavar="N")
    g.add_argument("--asymptotic", action="store_true")

    pc = sub.add_parser("pc", help="cumulant coefficient p_C[sigma, tau; l]")
    pc.add_argument("--sigma", required=True)
    pc.add_argument("--tau", required=True)
    pc.add_argument("--sigma2")
    pc.add_argument("--tau2")
    pc.add_argument("--sigma-more", action="append", help="further colors (repeatable)")
    pc.add_argument("--tau-more", action="append")
    pc.add_argument("--l", type=int, required=True)
    pc.add_argument("--route", choices=["alternating", "monotone", "partition", "folding", "all"], default="monotone")

    h = sub.add_parser("hurwitz", help="monotone Hurwitz numbers")
    h.add_argument("kind", choices=["single", "double", "higher"])
    h.add_argument("--alpha", required=True, help="cycle type like '2,1'; colors separated by ';'")
    h.add_argument("--beta")
    h.add_argument("--genus", type=int)
    h.add_argument("--l", type=int)
    h.add_argument("--from-single", action="store_true")

    b = sub.add_parser("bms", help="colored Bousquet-Melou-Schaeffer numbers")
    b.add_argument("--alpha", required=True)
    b.add_argument("--beta", required=True)
    b.add_argument("--l", type=int, required=True)
    b.add_argument("--k", type=int, required=True)

    for name in ("moments", "cumulants"):
        m = sub.add_parser(name, help="tensor HCIZ %s" % name)
        m.add_argument("--tensor-a", required=True)
        m.add_argument("--tensor-b", required=True)
        m.add_argument("--n", type=int, required=True)
        m.add_argument("--dim", type=int)
        m.add_argument("--montecarlo", type=int, metavar="SAMPLES")
        m.add_argument("--seed", type=int, default=0)

    v = sub.add_parser("verify", help="run cross-route identity suites")
    v.add_argument("--suite", required=True, choices=["weingarten", "pc-routes", "hurwitz", "nodal", "hciz"])
    v.add_argument("--max-n", type=int, default=3)
    return p


HANDLERS = {
    "weingarten": cmd_weingarten,
    "pc": cmd_pc,
    "hurwitz": cmd_hurwitz,
    "bms": cmd_bms,
    "moments": cmd_moments,
    "cumulants": lambda a: cmd_moments(a, cumulant=True),
    "verify": cmd_verify,
}


def _render(record: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record, indent=2, default=str)
    rows = [(k, json.dumps(v, default=str) if not isinstance(v, str) else v) for k, v in record.items()]
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf)
        wr.writerow([k for k, _ in rows])
        wr.writerow([v for _, v in rows])
        return buf.getvalue().rstrip("\n")
    width = max(len(k) for k, _ in rows)
    return "\n".join("%-*s  %s" % (width, k, v) for k, v in rows)


def _error(kind: str, msg: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": msg, "exit_code": code}) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        return _error("parse", str(e), 2)
    except SystemExit as e:  # --help
        return int(e.code or 0)
    for name, default in (("format", "json"), ("unsafe_budget", False), ("jobs", 1)):
        if not hasattr(args, name):
            setattr(args, name, default)
    t0 = time.perf_counter()
    try:
        inputs, value = HANDLERS[args.command](args)
    except UsageError as e:
        return _error("parse", str(e), 2)
    except BudgetError as e:
        return _error("budget", str(e), 3)
    except ValueError as e:
        return _error("parse", str(e), 2)
    except (AssertionError, ZeroDivisionError) as e:
        return _error("assertion", str(e), 1)
    kind, val = _kind_and_value(value)
    if args.command == "verify":
        kind = "checks"
    record = {"command": args.command, "inputs": inputs, "value": val, "value_kind": kind,
              "elapsed_ms": round((time.perf_counter() - t0) * 1000, 3)}
    print(_render(record, args.format))
    if args.command == "verify" and not all(c["passed"] for c in val):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
