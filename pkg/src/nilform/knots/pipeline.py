"""From a knot diagram to its center-valued quadratic form."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from ..center import CenterReport, center_report, project_to_center
from ..exact.matrix import QMatrix, Vector, companion_matrix, solve_unique
from ..exact.poly import RationalPoly
from ..forms import (
    QuadraticFormReport,
    evaluate_gram,
    grams_by_polarization,
    homogeneity_holds,
    isometry_holds,
)
from ..nilpotent import TauLift, build_tau_lift, random_linear_part
from .invariant import ArcAssignment, LiftSolver, combine, evaluate_invariant, hk_assignments
from .pd import PDCode, parse_pd
from .wirtinger import DivisorData, WirtingerPresentation, alexander_divisors, wirtinger


def hk_basis(w: WirtingerPresentation, f_n: RationalPoly, lift: TauLift | None = None) -> list[ArcAssignment]:
    """Echelon basis of the arc assignments into Q[t]/(f_n)."""
    if f_n.degree < 1:
        return []
    lift = lift or build_tau_lift(companion_matrix(f_n.monic()))
    return hk_assignments(w, lift)


def display_basis(
    w: WirtingerPresentation, basis: Sequence[ArcAssignment], rank: int
) -> tuple[list[ArcAssignment], str]:
    """Re-express the basis by the value of one arc when that value determines the assignment.

    Tries arcs in traversal order after the meridian arc; the variables then
    are the power-basis coordinates of that arc's value.
    """
    n = len(basis)
    if n != rank or n == 0:
        return list(basis), "echelon"
    for arc in range(w.arc_count):
        if arc == w.meridian_arc:
            continue
        p = QMatrix.from_columns([b.values[arc] for b in basis], rank)
        if p.det() != 0:
            inv = p.inverse()
            return [combine(basis, inv.col(i), rank, w.arc_count) for i in range(n)], f"arc {arc}"
    return list(basis), "echelon"


def t_action_matrix(basis: Sequence[ArcAssignment], t: QMatrix, w: WirtingerPresentation) -> QMatrix:
    """Matrix of t (applied to every arc value) in the given basis."""
    n = len(basis)
    if n == 0:
        return QMatrix(0, 0, ())
    flat = QMatrix.from_columns([[x for v in b.values for x in v] for b in basis])
    cols = []
    for b in basis:
        image = [x for v in b.values for x in (t @ v)]
        cols.append(solve_unique(flat, image))
    return QMatrix.from_columns(cols, n)


def _empty_report(divisors: DivisorData, extra: dict) -> QuadraticFormReport:
    center = CenterReport(0, (), QMatrix(0, 0, ()))
    return QuadraticFormReport(
        module_poly=RationalPoly([1]),
        divisors=(),
        hk_dimension=0,
        center=center,
        grams=(),
        t_action=QMatrix(0, 0, ()),
        basis_kind="echelon",
        isometry_ok=True,
        homogeneous_ok=True,
        extra=extra,
    )


def qk_form(
    pd: PDCode | str,
    lift_seed: int | None = None,
    lift: TauLift | None = None,
    name: str | None = None,
    checks: bool = True,
) -> QuadraticFormReport:
    """Run the whole knot pipeline.

    ``lift_seed`` picks a random linear part A of the lift; the result does
    not depend on it.  With ``checks`` off the scalar homogeneity test is
    skipped and only the sample-point reconstruction is checked.
    """
    pd = parse_pd(pd)
    w = wirtinger(pd)
    divisors = alexander_divisors(w)
    extra = {"pd": str(pd), "name": name, "writhe": w.writhe, "alexander": divisors.alexander}
    if not divisors.divisors:
        return _empty_report(divisors, extra)
    f_n = divisors.top
    t = companion_matrix(f_n)
    if lift is None:
        a = random_linear_part(t.rows, random.Random(lift_seed)) if lift_seed is not None else None
        lift = build_tau_lift(t, a)
    center = center_report(t, [f_n], lift)
    raw = hk_assignments(w, lift)
    if len(raw) != divisors.degree:
        raise AssertionError(f"assignment space has dimension {len(raw)}, expected {divisors.degree}")
    basis, kind = display_basis(w, raw, t.rows)
    dim = len(basis)
    solver = LiftSolver(w, lift)
    cache: dict[Vector, Vector] = {}

    def q(v: Vector) -> Vector:
        v = tuple(Fraction(x) for x in v)
        if v not in cache:
            f = combine(basis, v, t.rows, w.arc_count)
            cache[v] = project_to_center(evaluate_invariant(f, w, lift, solver), center)
        return cache[v]

    grams = grams_by_polarization(q, dim, center.rank)
    homogeneous = homogeneity_holds(q, dim) if checks else True
    sample = tuple(Fraction((-1) ** i * (i + 2), i + 1) for i in range(dim))
    if q(sample) != tuple(evaluate_gram(g, sample) for g in grams):
        homogeneous = False
    s = t_action_matrix(basis, t, w)
    extra["basis"] = basis
    extra["arc_count"] = w.arc_count
    return QuadraticFormReport(
        module_poly=f_n,
        divisors=divisors.divisors,
        hk_dimension=dim,
        center=center,
        grams=grams,
        t_action=s,
        basis_kind=kind,
        isometry_ok=isometry_holds(grams, s),
        homogeneous_ok=homogeneous,
        extra=extra,
    )
