"""Command-line entry point.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from qsuperhaar import combinatorics as cb
from qsuperhaar import characters as ch
from qsuperhaar import haar, hecke
from qsuperhaar.scalar import parse_scalar
from qsuperhaar.superlinalg import parity_of
from qsuperhaar.symmetry import NotClosedError, load, poincare_prefix, validate

SUITES = ("idempotents", "recursion", "conditions", "eq24", "casimir", "welldefined")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- helpers


def _symmetry(args):
    try:
        return load(args.symmetry)
    except NotClosedError:
        raise
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot load symmetry {args.symmetry!r}: {exc}") from exc


def _json_arg(text, what):
    """Inline JSON or a path to a JSON file."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        pass
    try:
        with open(text, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot parse {what}: {exc}") from exc


def _point(text, d, rng, what):
    if text is None:
        return ch.random_point(d, rng)
    try:
        vals = [parse_scalar(x) for x in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad {what}: {exc}") from exc
    if len(vals) != d:
        raise UsageError(f"{what} needs {d} comma-separated entries, got {len(vals)}")
    return ch.KPoint(vals)


def _partition(text):
    try:
        parts = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --lambda {text!r}") from exc
    if any(p <= 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
        raise UsageError(f"--lambda must be a weakly decreasing list of positive integers, got {text!r}")
    return tuple(parts)


# ---------------------------------------------------------------- commands


def cmd_validate(args):
    try:
        sym = _symmetry(args)
    except NotClosedError as exc:
        return {"symmetry": args.symmetry, "checks": {"closure": False}, "failed": ["closure"],
                "error": str(exc), "passed": False}
    rep = validate(sym)
    rep["failed"] = [k for k, v in rep["checks"].items() if not v]
    if rep["passed"]:
        rep["poincare_prefix"] = poincare_prefix(sym, args.max_n)
    return rep


def _suite_idempotents(sym, args):
    items = [hecke.idempotent_report(n) for n in range(0, min(args.max_n, 4) + 1)]
    return {"items": items, "passed": all(x["passed"] for x in items)}


def _suite_recursion(sym, args):
    items = [{"n": n, "holds": haar.check_recursion(sym, n)} for n in range(0, args.max_n)]
    return {"identity": "P_{n+1}(L_{n+1} - [s-r]) = P_n", "items": items,
            "passed": all(x["holds"] for x in items)}


def _commutant_limit(d):
    return {1: 4, 2: 3, 3: 2}.get(d, 1)


def _suite_conditions(sym, args):
    items = []
    limit = _commutant_limit(sym.d)
    for n in range(1, args.max_n + 1):
        row = {"n": n, "i": haar.check_condition_i(sym, n)}
        row.update({f"ii_{k}": v for k, v in haar.check_condition_ii(sym, n).items()})
        row["iii"] = haar.check_condition_iii(sym, n) if n <= limit else None
        items.append(row)
    ok = all(v is not False for row in items for k, v in row.items() if k != "n")
    return {"commutant_degree_limit": limit, "items": items, "passed": ok}


def _suite_hmap(sym, args):
    items = [{"n": n, "holds": hecke.check_hmap_identity(sym, n)} for n in range(1, args.max_n + 1)]
    return {"items": items, "passed": all(x["holds"] for x in items)}


def _suite_casimir(sym, args):
    items = [{"n": n, "holds": hecke.check_casimir_intertwiner(n)} for n in range(1, args.max_n + 1)]
    return {"items": items, "passed": all(x["holds"] for x in items)}


def _suite_welldefined(sym, args):
    return haar.welldefined_report(sym, args.seed)


def _suite_oracle(sym, args):
    """Rank-one checks: int(z^a t^b) = delta_ab."""
    items = []
    for a in range(0, args.max_n + 1):
        for b in range(0, args.max_n + 1):
            v = haar.integrate_normal(sym, (1,) * a, (1,) * a, (1,) * b, (1,) * b)
            items.append({"a": a, "b": b, "value": str(v), "ok": str(v) == ("1" if a == b else "0")})
    return {"items": items, "passed": all(x["ok"] for x in items)}


_SUITE_FUNCS = {
    "idempotents": _suite_idempotents,
    "recursion": _suite_recursion,
    "conditions": _suite_conditions,
    "eq24": _suite_hmap,
    "casimir": _suite_casimir,
    "welldefined": _suite_welldefined,
}


def cmd_verify(args):
    sym = _symmetry(args)
    names = SUITES if args.suite == "all" else (args.suite,)
    suites = {name: _SUITE_FUNCS[name](sym, args) for name in names}
    if args.suite == "all" and sym.d == 1:
        suites["rank_one_oracle"] = _suite_oracle(sym, args)
    return {"symmetry": sym.name, "max_n": args.max_n, "seed": args.seed, "suites": suites,
            "passed": all(s["passed"] for s in suites.values())}


def _zero_reason(sym, m):
    n, k = len(m.I), len(m.K)
    if n != k:
        return "z-degree differs from t-degree"
    r, s = sym.birank
    if n < r * s:
        return "degree below r*s"
    par = sym.parities
    if parity_of(m.I, par) != parity_of(m.L, par) or parity_of(m.J, par) != parity_of(m.K, par):
        return "parity mismatch"
    return None


def cmd_integrate(args):
    sym = _symmetry(args)
    if (args.monomial is None) == (args.element is None):
        raise UsageError("integrate needs exactly one of --monomial or --element")
    if args.monomial is not None:
        try:
            m = haar.Monomial.from_json(_json_arg(args.monomial, "monomial"))
            value = haar.integrate_monomial(sym, m)
        except (ValueError, TypeError) as exc:
            raise UsageError(str(exc)) from exc
        rep = {"monomial": m.to_json(), "value": str(value)}
        if value.is_zero():
            reason = _zero_reason(sym, m)
            if reason:
                rep["reason"] = reason
        return rep
    try:
        el = haar.free_from_json(_json_arg(args.element, "element"))
        for w in el:
            for g in w:
                if not (1 <= g[1] <= sym.d and 1 <= g[2] <= sym.d):
                    raise ValueError(f"index out of range in {list(g)}")
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise UsageError(f"bad element: {exc}") from exc
    value = haar.integrate_element(sym, el, args.strategy)
    return {"element": haar.free_to_json(el), "strategy": args.strategy, "value": str(value)}


def cmd_hciz(args):
    sym = _symmetry(args)
    rng = random.Random(args.seed)
    M = _point(args.m, sym.d, rng, "--m")
    N = _point(args.nn, sym.d, rng, "--nn")
    rep = ch.hciz_report(sym, M, N, args.n)
    rep["M"] = M.to_json()
    rep["N"] = N.to_json()
    rep["passed"] = rep["equal"]
    return rep


def cmd_characters(args):
    sym = _symmetry(args)
    r, s = sym.birank
    n = args.n
    calib = dict(ch.d_calibration(sym))
    calib["kappa"] = str(calib["kappa"])
    rng = random.Random(args.seed)
    point = _point(args.m, sym.d, rng, "--m") if args.m else None
    omega = set(cb.omega_set(r, s, n))
    table = []
    for lam in cb.gamma_set(r, s, n):
        row = {
            "lambda": list(lam),
            "d_lambda": cb.d_lambda(lam),
            "in_omega": lam in omega,
            "quantum_rank": str(ch.quantum_rank(sym, lam)),
            "S": ch.format_polynomial(ch.character_polynomial(sym, ch.character(sym, lam), n)),
            "S_dual": ch.format_polynomial(ch.character_polynomial(sym, ch.character_dual(sym, lam), n), "n"),
        }
        if point is not None:
            row["S_at_point"] = str(ch.evaluate(sym, ch.character(sym, lam), point, n))
            if lam in omega:
                row["hook_schur_factored"] = str(ch.hook_schur_factored(sym, lam, point))
        table.append(row)
    rep = {"symmetry": sym.name, "n": n, "calibration": calib, "characters": table, "passed": True}
    if point is not None:
        rep["point"] = point.to_json()
    return rep


def cmd_ortho(args):
    sym = _symmetry(args)
    if args.lambda_ is None:
        raise UsageError("ortho needs --lambda")
    lam = _partition(args.lambda_)
    r, s = sym.birank
    if lam not in cb.gamma_set(r, s, sum(lam)):
        raise UsageError(f"lambda {list(lam)} is not hook-bounded for birank ({r},{s})")
    return ch.check_orthogonality(sym, lam)


def cmd_poincare(args):
    sym = _symmetry(args)
    return {"symmetry": sym.name, "prefix": poincare_prefix(sym, args.max_n), "passed": True}


COMMANDS = {
    "validate": cmd_validate,
    "verify": cmd_verify,
    "integrate": cmd_integrate,
    "hciz": cmd_hciz,
    "characters": cmd_characters,
    "ortho": cmd_ortho,
    "poincare": cmd_poincare,
}


# ---------------------------------------------------------------- output


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        for i, x in enumerate(obj):
            yield from _flatten(x, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def render(report, fmt):
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    rows = [(k, json.dumps(v) if not isinstance(v, str) else v) for k, v in _flatten(report)]
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


# ---------------------------------------------------------------- parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--symmetry", default="glq:1", help="glq:r, glq:r|s or a JSON file")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="qsuperhaar", description="Exact Haar integrals on quantum supergroups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the Hecke symmetry axioms")
    p.add_argument("--max-n", type=_nonneg, default=3, help="Poincare prefix length")
    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--max-n", type=_nonneg, default=3)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p = sub.add_parser("integrate", parents=[common], help="integrate a monomial or free element")
    p.add_argument("--monomial", help='JSON {"I","J","K","L"} or a path')
    p.add_argument("--element", help="FreeElement JSON or a path")
    p.add_argument("--strategy", choices=("leftmost", "rightmost"), default="leftmost")
    p = sub.add_parser("hciz", parents=[common], help="both sides of the HCIZ identity")
    p.add_argument("--n", type=_nonneg, default=2)
    p.add_argument("--m", help="diagonal of M, comma separated")
    p.add_argument("--nn", help="diagonal of N, comma separated")
    p = sub.add_parser("characters", parents=[common], help="table of characters")
    p.add_argument("--n", type=_nonneg, default=1)
    p.add_argument("--m", help="evaluate at this diagonal point too")
    p = sub.add_parser("ortho", parents=[common], help="orthogonality table for one lambda")
    p.add_argument("--lambda", dest="lambda_", help="partition, comma separated")
    p = sub.add_parser("poincare", parents=[common], help="prefix of the exterior algebra Poincare series")
    p.add_argument("--max-n", type=_nonneg, default=3)
    return parser


def _nonneg(text):
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        report = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotClosedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.get("passed", True) else 1


if __name__ == "__main__":
    sys.exit(main())
