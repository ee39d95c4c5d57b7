"""Command-line interface: exact JSON (or text) output, exit 0 on success, 1 on failed checks, 2 on usage errors."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import acceptance
from . import dickson as dk
from . import variety as vt
from .composition import d_compose, davenport_hasse_check, fourier_check, genjacobi_compose
from .cyclotomic import CyclotomicElement
from .cyclotomy import (
    CycParams,
    GenJacobiTable,
    cyclotomic_numbers,
    gaussian_periods_numeric,
    jacobi_table,
    mult_matrix,
    period_polynomial,
    verify_genjacobi_axioms,
    verify_T7,
    verify_T8,
)
from .errors import CyclojacError
from .finite_field import BUDGET_ENV, DEFAULT_BUDGET, build_ctx
from .report import Report, _jsonable

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    budget: int = DEFAULT_BUDGET
    threshold: int = 200
    seed: int = 0
    format: str = "json"

    def __post_init__(self):
        if self.budget < 4:
            raise ValueError("budget must be at least 4")
        if self.format not in ("json", "text"):
            raise ValueError("format must be json or text")

    def to_json(self) -> dict:
        return {"budget": self.budget, "threshold": self.threshold, "seed": self.seed, "format": self.format}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _load(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _gamma(value: Optional[str]):
    if value is None:
        return None
    parts = [int(v) for v in value.split(",")]
    return parts[0] if len(parts) == 1 else parts


def _element_json(x: CyclotomicElement) -> dict:
    out = {**x.to_json(), "text": str(x), "a0": x.a0_json()["a"]}
    if x.n > 2:
        # representation in the basis 1, zeta^2, ..., zeta^(n-1) (zeta^1 eliminated)
        view = x.a0_view()
        shifted = [c - view[1] for c in view]
        terms = [(k, c) for k, c in enumerate(shifted) if c]
        out["a1_free"] = _render(terms)
    return out


def _render(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for k, c in terms:
        mag = abs(c)
        body = str(mag) if k == 0 else ("" if mag == 1 else str(mag)) + "ζ" + ("" if k == 1 else str(k).translate(str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")))
        parts.append(("-" if c < 0 else "+", body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def _matrix_json(rows) -> list:
    return [[str(Fraction(v)) for v in row] for row in rows]


def _matrix_from_json(data) -> list:
    rows = data["matrix"] if isinstance(data, dict) else data
    return [[Fraction(v) for v in row] for row in rows]


def _params(args, cfg: RunConfig) -> CycParams:
    ctx = build_ctx(args.p, args.r, gamma_hint=_gamma(args.gamma), budget=cfg.budget)
    return CycParams(ctx, args.e)


def _emit(payload, cfg: RunConfig, out) -> None:
    if cfg.format == "json":
        out.write(json.dumps(_jsonable(payload), ensure_ascii=False, indent=2, sort_keys=False) + "\n")
        return
    if isinstance(payload, dict) and "clauses" in payload:
        out.write(f"{payload['name']}: {'PASS' if payload['passed'] else 'FAIL'}\n")
        for c in payload["clauses"]:
            mark = "ok  " if c["passed"] else "FAIL"
            wit = f"  witness={c['witness']}" if "witness" in c else ""
            out.write(f"  {mark} {c['clause']} ({c['checked']}){wit}\n")
        return
    out.write(json.dumps(_jsonable(payload), ensure_ascii=False, indent=2) + "\n")


def _report_result(rep: Report, cfg: RunConfig, out) -> int:
    rep.meta.setdefault("seed", cfg.seed)
    _emit(rep.to_json(), cfg, out)
    return EXIT_OK if rep.passed else EXIT_FAIL


# handlers


def cmd_jacobi(args, cfg, out) -> int:
    params = _params(args, cfg)
    J = jacobi_table(params)
    e = params.e
    payload = {
        "params": params.meta(),
        "table": [[_element_json(J(a, b)) for b in range(e)] for a in range(e)],
        "J11": _element_json(J(1, 1)),
    }
    _emit(payload, cfg, out)
    return EXIT_OK


def cmd_cyc(args, cfg, out) -> int:
    params = _params(args, cfg)
    cyc = cyclotomic_numbers(params)
    C = mult_matrix(cyc, params)
    payload = {
        "params": params.meta(),
        "cyc": _matrix_json(cyc),
        "mult_matrix": _matrix_json(C.entries),
        "d_row": C.d_row,
        "period_polynomial": [str(c) for c in period_polynomial(C)],
    }
    if params.p <= cfg.threshold:
        payload["gaussian_periods"] = [_element_json(x) for x in gaussian_periods_numeric(params, cfg.threshold)]
    _emit(payload, cfg, out)
    return EXIT_OK


def cmd_verify(args, cfg, out) -> int:
    if args.what == "axioms":
        if not args.input:
            raise UsageError("verify axioms requires --in FILE")
        return _report_result(verify_genjacobi_axioms(GenJacobiTable.from_json(_load(args.input))), cfg, out)
    if args.p is None or args.e is None:
        raise UsageError(f"verify {args.what} requires --p and --e")
    params = _params(args, cfg)
    if args.what == "t7":
        J = GenJacobiTable.from_json(_load(args.input)) if args.input else jacobi_table(params)
        return _report_result(verify_T7(J, params), cfg, out)
    C = _matrix_from_json(_load(args.input)) if args.input else mult_matrix(cyclotomic_numbers(params), params)
    return _report_result(verify_T8(C, params), cfg, out)


def cmd_compose(args, cfg, out) -> int:
    a, b = _load(args.a), _load(args.b)
    if args.kind == "matrices":
        A, B = _matrix_from_json(a), _matrix_from_json(b)
        _emit({"d": args.d, "matrix": _matrix_json(d_compose(A, B, args.d))}, cfg, out)
        return EXIT_OK
    E = genjacobi_compose(GenJacobiTable.from_json(a), GenJacobiTable.from_json(b), args.d)
    rep = verify_genjacobi_axioms(E)
    _emit({"d": args.d, "table": E.to_json(), "axioms": rep.to_json()}, cfg, out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_dh(args, cfg, out) -> int:
    ctx = build_ctx(args.p, args.r, budget=cfg.budget)
    return _report_result(davenport_hasse_check(CycParams(ctx, args.e), args.n, budget=cfg.budget), cfg, out)


def cmd_fourier(args, cfg, out) -> int:
    return _report_result(fourier_check(_params(args, cfg)), cfg, out)


def _point(path: str, l: Optional[int] = None, f: Optional[int] = None) -> vt.VarietyPoint:
    data = _load(path)
    if l is not None:
        data = {**data, "l": l}
    if f is not None:
        data = {**data, "f": f}
    return vt.VarietyPoint.from_json(data)


def cmd_variety(args, cfg, out) -> int:
    if args.action == "check":
        x = _point(args.files[0], args.l, args.f)
        spec = x.spec
        on_v, on_w = vt.is_on_V(x, spec), vt.is_on_W(x, spec)
        rep = Report("variety-point", meta={
            **spec.to_json(),
            "x": [str(v) for v in x.x],
            "S": [str(v) for v in vt.correlation_sums(x, spec)],
            "h": str(vt.form_h(x, spec)),
            "h_m": [str(vt.form_hm(x, spec, m)) for m in range(1, spec.e)],
            "norm": str(vt.norm_LK(x, spec)),
        })
        rep.add("on-V", on_v, 1)
        rep.add("on-W", on_w, 1)
        return _report_result(rep, cfg, out)
    if args.action == "compose":
        x, y = _point(args.files[0]), _point(args.files[1])
        z = vt.compose_phi(x, y, args.d, x.spec)
        _emit({**z.to_json(), "d": args.d, "h": str(vt.form_h(z, z.spec))}, cfg, out)
        return EXIT_OK
    if args.action == "invert":
        x = _point(args.files[0])
        _emit({**vt.invert_point(x, args.d, x.spec).to_json(), "d": args.d}, cfg, out)
        return EXIT_OK
    x, y = _point(args.files[0], args.l, args.f), _point(args.files[1], args.l, args.f)
    return _report_result(vt.fiber_map_check(x, y, x.spec), cfg, out)


def cmd_dickson(args, cfg, out) -> int:
    if args.action == "extract":
        sol = dk.jacobi_solution(args.l, args.p, args.r, gamma=_gamma(args.gamma), budget=cfg.budget)
        rep = dk.verify_system(sol)
        _emit({"solution": sol.to_json(), "report": rep.to_json()}, cfg, out)
        return EXIT_OK if rep.passed else EXIT_FAIL
    if args.action == "verify":
        return _report_result(dk.verify_system(dk.DicksonSolution.from_json(_load(args.files[0]))), cfg, out)
    a = dk.DicksonSolution.from_json(_load(args.files[0]))
    b = dk.DicksonSolution.from_json(_load(args.files[1]))
    if args.l is not None and (a.l != args.l or b.l != args.l):
        raise UsageError("solution files do not match --l")
    lifted = dk.lift_solution(a, b, args.d)
    rep = dk.lift_check(a, b, args.d)
    _emit({"solution": lifted.to_json(), "report": rep.to_json()}, cfg, out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify_all(args, cfg, out) -> int:
    only = [int(k) for k in args.only.split(",")] if args.only else None
    reports = acceptance.run_all(seed=cfg.seed, only=only)
    if cfg.format == "text":
        for k, rep in reports.items():
            out.write(acceptance.summary_line(k, rep) + "\n")
    else:
        _emit({"seed": cfg.seed, "criteria": {str(k): rep.to_json() for k, rep in reports.items()}}, cfg, out)
    return EXIT_OK if all(r.passed for r in reports.values()) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--budget", type=int, default=None, help=f"max field size (default ${BUDGET_ENV} or {DEFAULT_BUDGET})")
    common.add_argument("--threshold", type=int, default=200, help="largest q for Gaussian periods")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--json", action="store_const", const="json", dest="format")

    parser = _Parser(prog="cyclojac", description="Exact Jacobi sums, cyclotomic numbers and compositions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def field_args(p, e_required=True):
        p.add_argument("--p", type=int, required=e_required)
        p.add_argument("--r", type=int, default=1)
        p.add_argument("--e", type=int, required=e_required)
        p.add_argument("--gamma", help="generator: residue, or comma-separated coefficients")

    field_args(sub.add_parser("jacobi", parents=[common], help="Jacobi sum table"))
    field_args(sub.add_parser("cyc", parents=[common], help="cyclotomic numbers and multiplication matrix"))

    v = sub.add_parser("verify", parents=[common], help="verify classical properties or generalized axioms")
    v.add_argument("what", choices=("t7", "t8", "axioms"))
    v.add_argument("--in", dest="input")
    field_args(v, e_required=False)

    c = sub.add_parser("compose", parents=[common], help="d-composition of matrices or tables")
    c.add_argument("kind", choices=("matrices", "genjacobi"))
    c.add_argument("--d", type=int, required=True)
    c.add_argument("a")
    c.add_argument("b")

    dh = sub.add_parser("dh-check", parents=[common], help="lifting identities F_{p^r} -> F_{p^(n r)}")
    dh.add_argument("--p", type=int, required=True)
    dh.add_argument("--r", type=int, default=1)
    dh.add_argument("--n", type=int, required=True)
    dh.add_argument("--e", type=int, required=True)

    field_args(sub.add_parser("fourier-check", parents=[common], help="Fourier relation between Cyc and J"))

    va = sub.add_parser("variety", parents=[common], help="points of the norm variety")
    va.add_argument("action", choices=("check", "compose", "invert", "fiber"))
    va.add_argument("files", nargs="+")
    va.add_argument("--l", type=int)
    va.add_argument("--f", type=int)
    va.add_argument("--d", type=int, default=-1)

    dc = sub.add_parser("dickson", parents=[common], help="Diophantine systems for l = 3, 5, 7")
    dc.add_argument("action", choices=("extract", "lift", "verify"))
    dc.add_argument("files", nargs="*")
    dc.add_argument("--l", type=int)
    dc.add_argument("--p", type=int)
    dc.add_argument("--r", type=int, default=1)
    dc.add_argument("--d", type=int, default=1)
    dc.add_argument("--gamma")

    va_all = sub.add_parser("verify-all", parents=[common], help="run the acceptance sweep")
    va_all.add_argument("--only", help="comma-separated criterion numbers")
    return parser


_ARITY = {("variety", "check"): 1, ("variety", "invert"): 1, ("variety", "compose"): 2, ("variety", "fiber"): 2,
          ("dickson", "verify"): 1, ("dickson", "lift"): 2, ("dickson", "extract"): 0}

HANDLERS = {
    "jacobi": cmd_jacobi,
    "cyc": cmd_cyc,
    "verify": cmd_verify,
    "compose": cmd_compose,
    "dh-check": cmd_dh,
    "fourier-check": cmd_fourier,
    "variety": cmd_variety,
    "dickson": cmd_dickson,
    "verify-all": cmd_verify_all,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        parser = build_parser()
        args, extra = parser.parse_known_args(argv)
        if extra:
            # file operands placed after options land here for the optional-files subcommand
            if args.command != "dickson" or any(x.startswith("-") for x in extra):
                parser.error(f"unrecognized arguments: {' '.join(extra)}")
            args.files = list(args.files) + extra
        budget = args.budget if args.budget is not None else int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))
        cfg = RunConfig(budget, args.threshold, args.seed, args.format)
        arity = _ARITY.get((args.command, getattr(args, "action", None)))
        if arity is not None and len(args.files) != arity:
            raise UsageError(f"{args.command} {args.action} takes {arity} file argument(s)")
        if args.command == "dickson" and args.action == "extract" and (args.l is None or args.p is None):
            raise UsageError("dickson extract requires --l and --p")
        if args.command == "variety" and args.action in ("check", "fiber") and (args.l is None) != (args.f is None):
            raise UsageError("give both --l and --f or neither")
        return HANDLERS[args.command](args, cfg, out)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except (ValueError, OSError, json.JSONDecodeError, CyclojacError) as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        out.write(json.dumps(payload, ensure_ascii=False) + "\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
