"""Command-line entry point: ``nilform center|knot|mcg|verify``.

Exit codes: 0 success, 1 computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .center import CenterReport, center_report
from .exact import QMatrix, RationalPoly, companion_matrix, format_rational, kernel_basis, monic_normalize, parse_poly, reciprocal_check
from .forms import FormComparison, QuadraticFormReport, Witness, _common_ratio, compare_forms, forms_from_display, render_quadratic
from .knots.pd import PDCode, PDError, parse_pd
from .knots.pipeline import qk_form
from .knots.table import TableError, UnknownKnotError, knot_by_name, pretzel_knot
from .mapping_class import DegenerateModuleError, EquivarianceError, TwistError, compose_twists, qf_form
from .nilpotent import exterior_action

EXIT_OK, EXIT_COMPUTATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad input; reported with exit code 2."""


# JSON rendering -------------------------------------------------------------


def _q(x) -> str:
    return format_rational(Fraction(x))


def _vec(v) -> list[str]:
    return [_q(x) for x in v]


def _mat(m: QMatrix) -> list[list[str]]:
    return [_vec(row) for row in m.to_rows()]


def _poly(p: RationalPoly) -> str:
    return str(p)


def _read_vec(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


def _read_mat(rows, n: int | None = None) -> QMatrix:
    if not rows:
        return QMatrix(0, n or 0, ())
    return QMatrix.from_rows([[Fraction(x) for x in row] for row in rows])


def center_to_json(c: CenterReport) -> dict:
    return {
        "rank": c.rank,
        "basis": [_vec(v) for v in c.basis],
        "canonical": None if c.canonical is None else [_vec(v) for v in c.canonical],
        "formula_rank": c.formula_rank,
        "basis_kind": c.basis_kind,
        "action": _mat(c.action),
        "notes": list(c.notes),
    }


def center_from_json(d: dict) -> CenterReport:
    return CenterReport(
        rank=d["rank"],
        basis=tuple(_read_vec(v) for v in d["basis"]),
        action=_read_mat(d["action"]),
        canonical=None if d["canonical"] is None else tuple(_read_vec(v) for v in d["canonical"]),
        formula_rank=d["formula_rank"],
        notes=tuple(d["notes"]),
    )


def report_to_json(r: QuadraticFormReport) -> dict:
    """JSON object for a form report; rationals are "p/q" strings."""
    out = {
        "module_poly": _poly(r.module_poly),
        "divisors": [_poly(d) for d in r.divisors],
        "hk_dimension": r.hk_dimension,
        "hk_basis_kind": r.basis_kind,
        "center_rank": r.center.rank,
        "basis_kind": r.center.basis_kind,
        "center": center_to_json(r.center),
        "grams": [_mat(g) for g in r.grams],
        "display": r.display,
        "t_action": _mat(r.t_action),
        "isometry_ok": r.isometry_ok,
        "homogeneous_ok": r.homogeneous_ok,
        "nondegenerate": r.nondegenerate,
        "determinants": [_q(d) for d in r.determinants],
        "signatures": [list(s) for s in r.signatures],
    }
    extra = r.extra
    for key in ("name", "pd"):
        if extra.get(key) is not None:
            out[key] = extra[key]
    if "char_poly" in extra:
        out["char_poly"] = _poly(extra["char_poly"])
        out["zeta_fixed"] = bool(extra["zeta_fixed"])
        out["hf_dimension"] = extra["hf_dimension"]
        out["genus"] = extra["genus"]
    return out


def report_from_json(d: dict) -> QuadraticFormReport:
    """Inverse of :func:`report_to_json` on the fields that define a report."""
    dim = d["hk_dimension"]
    return QuadraticFormReport(
        module_poly=parse_poly(d["module_poly"]),
        divisors=tuple(parse_poly(p) for p in d["divisors"]),
        hk_dimension=dim,
        center=center_from_json(d["center"]),
        grams=tuple(_read_mat(g, dim) for g in d["grams"]),
        t_action=_read_mat(d["t_action"], dim),
        basis_kind=d["hk_basis_kind"],
        isometry_ok=d["isometry_ok"],
        homogeneous_ok=d["homogeneous_ok"],
    )


def _witness_json(w: Witness | None) -> dict | None:
    if w is None:
        return None
    return {"c": _q(w.c), "u": _poly(w.u), "permutation": list(w.permutation)}


def comparison_to_json(cmp: FormComparison, ratio: Fraction | None = None, with_ratio: bool = False) -> dict:
    out = {
        "witness": _witness_json(cmp.witness),
        "square_test": cmp.square_test,
        "unit_witness": _witness_json(cmp.unit_witness),
        "unit_witness_source": cmp.unit_witness_source,
        "verdict": cmp.verdict,
    }
    if with_ratio:
        out["ratio_in_shared_parametrization"] = None if ratio is None else _q(ratio)
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# pretty rendering -------------------------------------------------------------


def render_report(r: QuadraticFormReport, title: str) -> str:
    lines = [title]
    if "char_poly" in r.extra:
        lines.append(f"  characteristic polynomial: {r.extra['char_poly']}")
        lines.append(f"  boundary word fixed: {r.extra['zeta_fixed']}")
    lines.append(f"  divisors: {', '.join(map(str, r.divisors)) or 'none'}")
    lines.append(f"  module dimension: {r.hk_dimension} ({r.basis_kind} basis)")
    lines.append(f"  center rank: {r.center.rank} ({r.center.basis_kind} coordinates)")
    if not r.grams:
        lines.append("  form: zero-dimensional")
    for k, (text, det, sig) in enumerate(zip(r.display, r.determinants, r.signatures), 1):
        lines.append(f"  coordinate {k}: {text}")
        lines.append(f"    determinant {format_rational(det)}, inertia (+, -, 0) = {sig}")
    lines.append(f"  isometry: {r.isometry_ok}, homogeneous: {r.homogeneous_ok}")
    return "\n".join(lines)


def render_comparison(cmp: FormComparison, ratio: Fraction | None) -> str:
    lines = ["comparison"]
    w = cmp.witness
    lines.append(f"  first witness: {'none' if w is None else f'c = {w.c}, u = {w.u}, permutation {w.permutation}'}")
    lines.append(f"  square test of c: {cmp.square_test}")
    u = cmp.unit_witness
    if u is not None:
        lines.append(f"  witness with c = 1: u = {u.u} ({cmp.unit_witness_source})")
    if ratio is not None:
        lines.append(f"  ratio second / first in the shared parametrization: {format_rational(ratio)}")
    lines.append(f"  verdict: {cmp.verdict}")
    return "\n".join(lines)


# subcommands ------------------------------------------------------------------


def _parse_poly_arg(text: str) -> RationalPoly:
    try:
        f = parse_poly(text)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad polynomial {text!r}: {exc}") from exc
    if f.is_zero() or f.degree < 1:
        raise UsageError("polynomial must have positive degree")
    return f


def cmd_center(args) -> int:
    f = monic_normalize(_parse_poly_arg(args.poly))
    t = companion_matrix(f)
    if f.coeff(0) == 0:
        e = exterior_action(t)
        n = e.rows
        rank = len(kernel_basis(QMatrix.identity(n) - e)) if n else 0
        msg = "t is not invertible modulo the polynomial (constant term 0); it is neither reciprocal nor a valid action"
        _emit(args, {"rank": rank, "error": msg}, f"kernel rank: {rank}")
        raise UsageError(msg)
    report = center_report(t, [f])
    data = center_to_json(report)
    data["poly"] = _poly(f)
    data["reciprocal"] = reciprocal_check(f)
    text = [f"polynomial: {f}", f"center rank: {report.rank}", f"basis kind: {report.basis_kind}"]
    if report.formula_rank is not None:
        text.append(f"rank formula: {report.formula_rank}")
    for k, v in enumerate(report.coordinates, 1):
        text.append(f"  C_{k} = {_render_comm(v, f.degree)}")
    text.extend(f"note: {n}" for n in report.notes)
    _emit(args, data, "\n".join(text))
    if f.degree % 2 or not reciprocal_check(f):
        print("nilform: error: not reciprocal of even degree; canonical elements unavailable", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def _render_comm(v, m: int) -> str:
    from .nilpotent import pairs

    terms = []
    for (i, j), c in zip(pairs(m), v):
        if c:
            coeff = "" if c == 1 else "-" if c == -1 else f"{format_rational(c)}*"
            terms.append(f"{coeff}e_{i + 1}{j + 1}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def _emit(args, data, text: str) -> None:
    print(dumps(data) if args.json else text)


def _knot_inputs(args) -> list[tuple[str, PDCode]]:
    out = []
    for item in args.pd or []:
        path = Path(item)
        text = path.read_text(encoding="utf-8") if path.is_file() else item
        out.append((item if not path.is_file() else path.name, parse_pd(text)))
    for name in args.name or []:
        out.append((name, knot_by_name(name, args.table)))
    for p in args.pretzel or []:
        out.append((f"P({p})", pretzel_knot(p)))
    return out


def cmd_knot(args) -> int:
    try:
        inputs = _knot_inputs(args)
    except UnknownKnotError as exc:
        raise UsageError(str(exc)) from exc
    except (PDError, TableError, ValueError, OSError) as exc:
        raise UsageError(str(exc)) from exc
    if not inputs or len(inputs) > 2:
        raise UsageError("give one knot, or two to compare (--pd, --name, --pretzel)")
    reports = [qk_form(pd, lift_seed=args.lift_seed, name=name) for name, pd in inputs]
    return _finish(args, reports, [n for n, _ in inputs], allow_permutation=True)


def cmd_mcg(args) -> int:
    words = args.twists or []
    if not words or len(words) > 2:
        raise UsageError("give one twist word, or two to compare (--twists)")
    try:
        auts = [compose_twists(args.genus, w) for w in words]
    except (TwistError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    reports = [qf_form(a) for a in auts]
    return _finish(args, reports, words, allow_permutation=False)


def unit_search_height(dim: int) -> int:
    """Coefficient height for the c = 1 search; the candidate count grows like height^(2 dim)."""
    return 4 if dim <= 2 else 2


def _summed(r: QuadraticFormReport) -> QuadraticFormReport:
    return forms_from_display([render_quadratic(r.summed_gram(), r.variables)], r.module_poly, r.t_action)


def _finish(args, reports: list[QuadraticFormReport], labels: list[str], allow_permutation: bool) -> int:
    if len(reports) == 1:
        r = reports[0]
        _emit(args, report_to_json(r), render_report(r, labels[0]))
        return EXIT_OK
    a, b = reports
    if a.hk_dimension != b.hk_dimension or monic_normalize(a.module_poly) != monic_normalize(b.module_poly):
        data = {"reports": [report_to_json(r) for r in reports], "comparison": None, "error": "module mismatch"}
        text = "\n".join(render_report(r, lab) for r, lab in zip(reports, labels)) + "\ncomparison: module mismatch"
        _emit(args, data, text)
        return EXIT_OK
    unit_height = unit_search_height(a.hk_dimension)
    cmp = compare_forms(a, b, height=2, allow_permutation=allow_permutation, unit_height=unit_height)
    summed = compare_forms(_summed(a), _summed(b), height=2, unit_height=unit_height)
    ratio = _common_ratio([b.summed_gram()], [a.summed_gram()])
    data = {
        "reports": [report_to_json(r) for r in reports],
        "comparison": comparison_to_json(cmp),
        "summed_comparison": comparison_to_json(summed, ratio, with_ratio=True),
    }
    text = "\n".join(
        [*(render_report(r, lab) for r, lab in zip(reports, labels)), render_comparison(cmp, None), "summed coordinates:", render_comparison(summed, ratio)]
    )
    _emit(args, data, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import overall_ok, run_verify

    results = run_verify(lift_seed=args.lift_seed, table=args.table)
    if args.json:
        print(dumps([r.to_json() for r in results]))
    else:
        for r in results:
            print(f"[{r.status:7}] {r.criterion:2d} {r.case}: expected {r.expected} ({r.provenance}); computed {r.computed}")
            if r.notes:
                print(f"            {r.notes}")
        counts = {s: sum(r.status == s for r in results) for s in ("pass", "fail", "skipped")}
        print(f"{counts['pass']} passed, {counts['fail']} failed, {counts['skipped']} skipped")
    return EXIT_OK if overall_ok(results) else EXIT_COMPUTATION


# parser -----------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nilform", description="Centers of F/F_3 x| Z and the quadratic forms Q_K and Q_f.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("center", help="center of F/F_3 x| Z for the companion action of a polynomial")
    c.add_argument("--poly", required=True, help='polynomial in t, e.g. "1 - t + t^2"')
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_center)

    k = sub.add_parser("knot", help="quadratic form of a knot; two knots are compared")
    k.add_argument("--pd", action="append", help="PD code, inline or a file path")
    k.add_argument("--name", action="append", help="knot name in the table")
    k.add_argument("--table", help="JSON knot table (default: $NILFORM_TABLE over the bundled one)")
    k.add_argument("--pretzel", action="append", help="pretzel parameters p,q,r")
    k.add_argument("--lift-seed", type=int, help="seed for a random linear part of the lift")
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_knot)

    m = sub.add_parser("mcg", help="quadratic form of a mapping class; two words are compared")
    m.add_argument("--genus", type=int, required=True)
    m.add_argument("--twists", action="append", help='twist word, e.g. "2 3 -4 -5 1" (rightmost acts first)')
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_mcg)

    v = sub.add_parser("verify", help="run the golden suite")
    v.add_argument("--lift-seed", type=int)
    v.add_argument("--table", help="JSON knot table with optional extra knots")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"nilform: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegenerateModuleError, EquivarianceError, ArithmeticError, ValueError) as exc:
        print(f"nilform: computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION


if __name__ == "__main__":
    sys.exit(main())
