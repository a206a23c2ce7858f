"""Command-line interface: ``jetstrata <command> ...``.

All output is JSON with sorted keys and no floats; rationals are strings.
Exit codes: 0 success, 1 verification FAIL, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction
from typing import List, Optional, Sequence

from .dvr import Infeasible
from .jets import DEFAULT_BUDGET, BudgetExceeded, Jet, contact_count, count_jets, enumerate_jets
from .lifting import Exhausted, LiftRequest, NoLift, lift_backtracking, lift_dvr
from .parse import ParseError, load_scheme
from .rings.field import is_prime
from .rings.ratfunc import format_rational
from .strata import HypothesisViolated, MODES, divisibility_report, fiber_report, jet_invariants
from .zeta import (
    InconsistentFit,
    InterpolationFailure,
    MissingClasses,
    NonLinearDenominator,
    ResolutionError,
    load_resolution,
    load_tower,
    motivic_series,
    motivic_zeta,
    numerical_data,
    pole_bound_check,
    poles,
    reconstruct_motivic,
    to_bivariate,
    topological_zeta,
    validate,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset, tuple)):
        return sorted(obj) if isinstance(obj, (set, frozenset)) else list(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, default=_default, indent=2) + "\n"


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    # write to a sibling temp file and rename so failures leave no partial file
    directory = os.path.dirname(os.path.abspath(output))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".jetstrata-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, output)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- argument helpers -----------------------------------------------------


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _primes(text: str) -> List[int]:
    out = [_prime(x) for x in text.split(",") if x.strip()]
    if not out:
        raise argparse.ArgumentTypeError("empty prime list")
    return out


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if v < 0:
        raise argparse.ArgumentTypeError(f"{v} is negative")
    return v


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated integer list")


def _level_range(text: str) -> range:
    """``a:b`` (inclusive) or a single level."""
    try:
        if ":" in text:
            a, b = (int(x) for x in text.split(":"))
        else:
            a = b = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a level range a:b")
    if a < 0 or b < a:
        raise argparse.ArgumentTypeError(f"empty or negative level range {text!r}")
    return range(a, b + 1)


def _template(text: str) -> List[tuple]:
    """``a:N,a:N`` pairs for denominator factors (1 - L^a t^N)."""
    out = []
    try:
        for part in text.split(","):
            a, N = part.split(":")
            out.append((int(a), int(N)))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a template a:N,a:N,...")
    if not out or any(N < 1 for _, N in out):
        raise argparse.ArgumentTypeError("template factors need N >= 1")
    return out


def _bound(text: str):
    kind, _, value = text.partition(":")
    if kind not in ("dimension", "equations") or not value.lstrip("-").isdigit():
        raise argparse.ArgumentTypeError("expected dimension:d or equations:m")
    return kind, int(value)


def _parse_jet(text: str, p: int) -> Jet:
    try:
        coords = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"--jet: {exc.msg} at column {exc.colno}")
    if not (isinstance(coords, list) and coords and all(isinstance(c, list) and c for c in coords)):
        raise InputError("--jet must be a nonempty list of coefficient lists")
    if any(not isinstance(x, int) or isinstance(x, bool) for c in coords for x in c):
        raise InputError("--jet coefficients must be integers")
    n = max(len(c) for c in coords) - 1
    return Jet.make(p, n, coords)


# -- commands -------------------------------------------------------------


def cmd_count(args) -> tuple:
    X = load_scheme(args.scheme)
    c = count_jets(X, args.level, args.prime, args.budget, method=args.method, workers=args.workers)
    return {"count": c}, EXIT_OK


def cmd_contact(args) -> tuple:
    X = load_scheme(args.scheme)
    c = contact_count(X, args.level, args.prime, args.budget, method=args.method)
    return {"contact_count": c}, EXIT_OK


def cmd_strata(args) -> tuple:
    X = load_scheme(args.scheme)
    groups = {}
    unstable = 0
    for theta in enumerate_jets(X, args.level, args.prime, args.budget, workers=args.workers):
        inv = jet_invariants(X, theta, check=False)
        groups[inv.key] = groups.get(inv.key, 0) + 1
        unstable += inv.e == "unstable"
    rows = [{"stratum": k.to_dict(), "label": str(k), "jets": v} for k, v in sorted(groups.items())]
    return {
        "p": args.prime,
        "n": args.level,
        "g": (args.level + 1) // 2,
        "strata": rows,
        "total": sum(groups.values()),
        "unstable_e": unstable,
    }, EXIT_OK


def cmd_divisibility(args) -> tuple:
    X = load_scheme(args.scheme)
    table = divisibility_report(X, args.prime, args.levels, args.mode, args.budget)
    if args.format == "csv":
        return table.to_csv(), EXIT_OK if table.passed else EXIT_FAIL
    return table.to_dict(), EXIT_OK if table.passed else EXIT_FAIL


def cmd_fibers(args) -> tuple:
    X = load_scheme(args.scheme)
    reports = fiber_report(X, args.level, args.agree, args.prime, args.mode, args.stratum, args.budget)
    rows = [r.to_dict() for r in reports]
    ok = bool(rows) and all(r.passed for r in reports)
    return {"reports": rows, "verdict": "PASS" if ok else "FAIL"}, EXIT_OK if ok else EXIT_FAIL


def cmd_lift(args) -> tuple:
    X = load_scheme(args.scheme)
    theta = _parse_jet(args.jet, args.prime)
    sub = None
    if args.sub is not None:
        if any(not 1 <= i <= X.m for i in args.sub):
            raise InputError(f"--sub indices must lie in 1..{X.m}")
        sub = [i - 1 for i in args.sub]
    req = LiftRequest(X, theta, args.agree, args.target, sub=sub, policy=args.policy, seed=args.seed)
    try:
        if args.engine == "dvr":
            res = lift_dvr(req)
        else:
            res = lift_backtracking(req, args.budget)
    except Infeasible as exc:
        return {
            "error": "infeasible",
            "message": str(exc),
            "row": exc.row,
            "required": exc.required,
            "actual": exc.actual,
            "seed": args.seed,
        }, EXIT_FAIL
    except NoLift as exc:
        return {"error": "no-lift", "message": str(exc), "seed": args.seed}, EXIT_FAIL
    out = res.to_dict()
    out.update(seed=args.seed, policy=args.policy, sub=args.sub)
    return out, EXIT_OK


def cmd_zeta_top(args) -> tuple:
    res = load_resolution(args.file)
    z = topological_zeta(res)
    out = {"zeta_top": format_rational(z), "poles": [[str(r), k] for r, k in poles(z)]}
    code = EXIT_OK
    if args.bound is not None:
        kind, value = args.bound
        chk = pole_bound_check(z, res.delta, **({"d": value} if kind == "dimension" else {"m": value}))
        chk["poles"] = [[str(r), k] for r, k in chk.get("poles", [])]
        out["bound_check"] = chk
        if chk["verdict"] == "FAIL":
            code = EXIT_FAIL
    return out, code


def cmd_zeta_motivic(args) -> tuple:
    res = load_resolution(args.file)
    Z = to_bivariate(motivic_zeta(res))
    return {"delta": res.delta, "motivic": str(Z), "expression": Z.to_dict()}, EXIT_OK


def cmd_zeta_series(args) -> tuple:
    res = load_resolution(args.file)
    coeffs = motivic_series(motivic_zeta(res), args.prime, args.order)
    return {"p": args.prime, "order": args.order, "coefficients": coeffs}, EXIT_OK


def cmd_zeta_reconstruct(args) -> tuple:
    X = load_scheme(args.scheme)
    counts = {}
    for q in args.primes:
        for n in range(args.order + 1):
            counts[(q, n)] = contact_count(X, n, q, args.budget)
    Z = reconstruct_motivic(counts, args.template, delta=X.N)
    return {
        "primes": args.primes,
        "order": args.order,
        "delta": X.N,
        "motivic": str(Z),
        "expression": Z.to_dict(),
    }, EXIT_OK


def cmd_zeta_tower(args) -> tuple:
    tower = load_tower(args.file)
    return {"numerical_data": [list(x) for x in numerical_data(tower)]}, EXIT_OK


def cmd_zeta_validate(args) -> tuple:
    rep = validate(load_resolution(args.file))
    return rep.to_dict(), EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify(args) -> tuple:
    from .suites import SUITES, run_suite, suite_oracles

    if args.suite == "oracles":
        results = [suite_oracles(args.seed)]
    elif args.suite in SUITES or args.suite == "all":
        results = run_suite(args.suite)
    else:
        raise InputError(f"unknown suite {args.suite!r}; choose from {', '.join(sorted(SUITES))}, all")
    ok = all(r.passed for r in results)
    out = {
        "suites": [r.to_dict() for r in results],
        "seed": args.seed,
        "verdict": "PASS" if ok else "FAIL",
    }
    return out, EXIT_OK if ok else EXIT_FAIL


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jetstrata", description="Exact jet-scheme and zeta computations over F_p.")
    parser.add_argument("--output", "-o", help="write JSON here (atomically) instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def scheme_cmd(name, fn, help_text, level=True):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("scheme", help="scheme JSON file")
        sp.add_argument("--prime", "-p", type=_prime, required=True)
        if level:
            sp.add_argument("--level", "-n", type=_nonneg, required=True)
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        sp.set_defaults(func=fn)
        return sp

    sp = scheme_cmd("count", cmd_count, "count F_p-points of the n-th jet scheme")
    sp.add_argument("--method", choices=("tree", "enumerate"), default="tree")
    sp.add_argument("--workers", type=int, default=1)

    sp = scheme_cmd("contact", cmd_contact, "count n-jets of affine space with contact order exactly n")
    sp.add_argument("--method", choices=("identity", "direct"), default="identity")

    sp = scheme_cmd("strata", cmd_strata, "stratify jets by their Jacobian invariants")
    sp.add_argument("--workers", type=int, default=1)

    sp = scheme_cmd("divisibility", cmd_divisibility, "check p-power divisibility of jet counts", level=False)
    sp.add_argument("--levels", type=_level_range, required=True, help="a:b inclusive")
    sp.add_argument("--mode", choices=("dimension", "equations"), default="dimension")
    sp.add_argument("--format", choices=("json", "csv"), default="json")

    sp = scheme_cmd("fibers", cmd_fibers, "compare truncation fibers with the predicted size")
    sp.add_argument("--agree", "-l", type=_nonneg, required=True, help="truncation level l")
    sp.add_argument("--mode", choices=MODES, default="complete-intersection")
    sp.add_argument("--stratum", type=_int_list, help="exponents e_1,...,e_b")

    sp = scheme_cmd("lift", cmd_lift, "lift a jet to a higher level", level=False)
    sp.add_argument("--jet", required=True, help="JSON list of coefficient lists")
    sp.add_argument("--agree", "-l", type=_nonneg, required=True, help="keep the level-l truncation")
    sp.add_argument("--target", type=_nonneg, required=True)
    sp.add_argument("--engine", choices=("dvr", "backtracking"), default="dvr")
    sp.add_argument("--sub", type=_int_list, help="1-based generator indices of the sub-presentation")
    sp.add_argument("--policy", choices=("zeros", "random"), default="zeros")
    sp.add_argument("--seed", type=int, default=0)

    zp = sub.add_parser("zeta", help="zeta functions from resolution data")
    zsub = zp.add_subparsers(dest="zeta_command", required=True)
    z = zsub.add_parser("top", help="topological zeta function and poles")
    z.add_argument("file")
    z.add_argument("--bound", type=_bound, help="dimension:d or equations:m")
    z.set_defaults(func=cmd_zeta_top)
    z = zsub.add_parser("motivic", help="motivic zeta function as a rational function in L and t")
    z.add_argument("file")
    z.set_defaults(func=cmd_zeta_motivic)
    z = zsub.add_parser("series", help="coefficients of the motivic zeta function at L = p")
    z.add_argument("file")
    z.add_argument("--prime", "-p", type=_prime, required=True)
    z.add_argument("--order", type=_nonneg, required=True)
    z.set_defaults(func=cmd_zeta_series)
    z = zsub.add_parser("reconstruct", help="rebuild the motivic zeta function from contact counts")
    z.add_argument("scheme")
    z.add_argument("--primes", type=_primes, required=True)
    z.add_argument("--order", type=_nonneg, required=True)
    z.add_argument("--template", type=_template, required=True, help="a:N,a:N for factors (1 - L^a t^N)")
    z.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    z.set_defaults(func=cmd_zeta_reconstruct)
    z = zsub.add_parser("tower", help="numerical data (N, nu) of a blow-up tower")
    z.add_argument("file")
    z.set_defaults(func=cmd_zeta_tower)
    z = zsub.add_parser("validate", help="consistency checks on resolution data")
    z.add_argument("file")
    z.set_defaults(func=cmd_zeta_validate)

    sp = sub.add_parser("verify", help="run a named verification suite")
    sp.add_argument("suite")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)
    return parser


def _error(kind: str, exc: BaseException, **extra) -> dict:
    out = {"error": kind, "message": str(exc)}
    out.update(extra)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = args.func(args)
    except ParseError as exc:
        payload, code = _error("parse", exc, line=exc.line, column=exc.column), EXIT_INPUT
    except HypothesisViolated as exc:
        payload, code = _error("hypothesis", exc, condition=exc.condition), EXIT_INPUT
    except (BudgetExceeded, Exhausted) as exc:
        payload, code = _error("budget", exc, budget=exc.budget), EXIT_BUDGET
    except (InterpolationFailure, InconsistentFit) as exc:
        payload, code = _error("reconstruction", exc), EXIT_FAIL
    except (ResolutionError, MissingClasses, NonLinearDenominator, InputError) as exc:
        payload, code = _error("input", exc), EXIT_INPUT
    except OSError as exc:
        payload, code = _error("io", exc), EXIT_INPUT
    except ValueError as exc:
        payload, code = _error("input", exc), EXIT_INPUT
    if isinstance(payload, dict) and "error" in payload:
        sys.stderr.write(dumps(payload))
        return code
    _emit(payload if isinstance(payload, str) else dumps(payload), args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
