"""Arc assignments, their nilpotent lifts and the longitude invariant.

An assignment sends arc gamma to (a_gamma, 1) in (Q^m) x| Z where Q^m carries
the action of t as the companion matrix of the top Alexander divisor.  Its lift
sends gamma to ((a_gamma, b_gamma), 1) in (F/F_3 (x) Q) x| Z.  Every crossing
condition is affine in the unknowns, so the linear systems are read off by
evaluating the group operations at zero and at unit vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from ..exact.matrix import (
    LinearSystemError,
    QMatrix,
    Vector,
    kernel_basis,
    rref,
    unit_vec,
    vsub,
    zero_vec,
)
from ..nilpotent import (
    Nil2Element,
    SemidirectElement,
    TauLift,
    build_tau_lift,
    comm_dim,
    evaluate_word,
    semidirect_mul,
    semidirect_pow,
)
from .wirtinger import WirtingerCrossing, WirtingerPresentation


class LongitudeError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ArcAssignment:
    """values[arc] is the abelian vector a_arc; the meridian arc maps to 0."""

    values: tuple[Vector, ...]

    def __add__(self, other: "ArcAssignment") -> "ArcAssignment":
        return ArcAssignment(tuple(tuple(x + y for x, y in zip(u, v)) for u, v in zip(self.values, other.values)))

    def scale(self, c) -> "ArcAssignment":
        c = Fraction(c)
        return ArcAssignment(tuple(tuple(c * x for x in u) for u in self.values))


def combine(basis: Sequence[ArcAssignment], coeffs: Sequence, rank: int, arcs: int) -> ArcAssignment:
    out = ArcAssignment(tuple(zero_vec(rank) for _ in range(arcs)))
    for b, c in zip(basis, coeffs):
        if c:
            out = out + b.scale(c)
    return out


def crossing_residual(cr: WirtingerCrossing, vals: Mapping[int, Nil2Element], lift: TauLift) -> Nil2Element:
    """RHS minus LHS of gamma_k = gamma_j^-e gamma_i gamma_j^e, componentwise."""
    gi = SemidirectElement(vals[cr.under_in], 1)
    gj = SemidirectElement(vals[cr.over], 1)
    gk = SemidirectElement(vals[cr.under_out], 1)
    rhs = semidirect_mul(semidirect_mul(semidirect_pow(gj, -cr.sign, lift), gi, lift), semidirect_pow(gj, cr.sign, lift), lift)
    if rhs.n != 1:
        raise AssertionError("conjugate of a meridian must have Z-component 1")
    return Nil2Element(vsub(rhs.g.ab, gk.g.ab), vsub(rhs.g.comm, gk.g.comm))


def _linear_system(
    w: WirtingerPresentation,
    block: int,
    element: Callable[[int, Vector], Nil2Element],
    pick: Callable[[Nil2Element], Vector],
    lift: TauLift,
) -> tuple[QMatrix, Vector]:
    """Matrix M and constant c with residuals = M u + c, unknowns u for arcs 1..n-1."""
    unknown = [a for a in range(w.arc_count) if a != w.meridian_arc]
    offset = {a: k * block for k, a in enumerate(unknown)}
    ncols = block * len(unknown)
    rows: list[list[Fraction]] = []
    const: list[Fraction] = []
    for cr in w.crossings:
        arcs = sorted({cr.under_in, cr.under_out, cr.over})
        zero = {a: element(a, zero_vec(block)) for a in arcs}
        base = pick(crossing_residual(cr, zero, lift))
        local = [[Fraction(0)] * ncols for _ in base]
        for a in arcs:
            if a not in offset:
                continue
            for s in range(block):
                vals = dict(zero)
                vals[a] = element(a, unit_vec(block, s))
                col = vsub(pick(crossing_residual(cr, vals, lift)), base)
                for r, v in enumerate(col):
                    local[r][offset[a] + s] = v
        rows.extend(local)
        const.extend(base)
    if not rows:
        return QMatrix(0, ncols, ()), ()
    return QMatrix.from_rows(rows), tuple(const)


def hk_assignments(w: WirtingerPresentation, lift: TauLift) -> list[ArcAssignment]:
    """Basis (reduced echelon in the arc coordinates) of the abelian assignment space."""
    m = lift.rank
    zeros = zero_vec(comm_dim(m))
    matrix, const = _linear_system(w, m, lambda a, v: Nil2Element(v, zeros), lambda g: g.ab, lift)
    if any(const):
        raise AssertionError("abelian crossing system is not homogeneous")
    basis = kernel_basis(matrix) if matrix.cols else []
    return [_unflatten(w, v, m) for v in basis]


def _unflatten(w: WirtingerPresentation, v: Sequence, m: int) -> ArcAssignment:
    values = []
    k = 0
    for a in range(w.arc_count):
        if a == w.meridian_arc:
            values.append(zero_vec(m))
        else:
            values.append(tuple(v[k:k + m]))
            k += m
    return ArcAssignment(tuple(values))


def check_assignment(f: ArcAssignment, w: WirtingerPresentation, lift: TauLift) -> bool:
    zeros = zero_vec(comm_dim(lift.rank))
    vals = {a: Nil2Element(f.values[a], zeros) for a in range(w.arc_count)}
    if any(f.values[w.meridian_arc]):
        return False
    return all(not any(crossing_residual(cr, vals, lift).ab) for cr in w.crossings)


@lru_cache(maxsize=32)
def _reduced_lift_system(w: WirtingerPresentation, t: QMatrix) -> tuple[QMatrix, list[int], QMatrix]:
    """System matrix, pivot rows and inverse pivot block; they depend on T only, not on A."""
    lift = build_tau_lift(t)
    c = comm_dim(t.rows)
    zeros = zero_vec(t.rows)
    matrix, const = _linear_system(
        w, c, lambda a, v: Nil2Element(zeros, v if a != w.meridian_arc else zero_vec(c)), lambda g: g.comm, lift
    )
    if any(const):
        raise AssertionError("lift system for the zero assignment is not homogeneous")
    _, pivot_rows = rref(matrix.T)
    if len(pivot_rows) != matrix.cols:
        raise LinearSystemError("lift is not unique: crossing system lacks full column rank")
    square = QMatrix.from_rows([matrix.row(r) for r in pivot_rows])
    return matrix, pivot_rows, square.inverse()


class LiftSolver:
    """Solves the crossing system for the commutator parts of a lift.

    The coefficients of the unknowns b do not depend on the abelian values,
    so the system matrix is reduced once and reused for every assignment.
    """

    def __init__(self, w: WirtingerPresentation, lift: TauLift):
        self.w = w
        self.lift = lift
        m = lift.rank
        self.c = c = comm_dim(m)
        self.trivial = c == 0 or w.arc_count == 1
        if self.trivial:
            return
        self.matrix, self.pivot_rows, self.square_inverse = _reduced_lift_system(w, lift.T)

    def constant(self, f: ArcAssignment) -> Vector:
        """Residuals of the crossing system at b = 0; checks the abelian relations on the way."""
        c = self.c
        if any(f.values[self.w.meridian_arc]):
            raise ValueError("assignment violates the abelian crossing relations")
        out: list[Fraction] = []
        for cr in self.w.crossings:
            vals = {a: Nil2Element(f.values[a], zero_vec(c)) for a in (cr.under_in, cr.under_out, cr.over)}
            res = crossing_residual(cr, vals, self.lift)
            if any(res.ab):
                raise ValueError("assignment violates the abelian crossing relations")
            out.extend(res.comm)
        return tuple(out)

    def solve(self, f: ArcAssignment) -> tuple[Vector, ...]:
        w, c = self.w, self.c
        if self.trivial:
            if not check_assignment(f, w, self.lift):
                raise ValueError("assignment violates the abelian crossing relations")
            return tuple(zero_vec(c) for _ in range(w.arc_count))
        const = self.constant(f)
        sol = self.square_inverse @ tuple(-const[r] for r in self.pivot_rows)
        residual = self.matrix @ sol
        if any(x + y for x, y in zip(residual, const)):
            raise LinearSystemError("lift system is inconsistent")
        out = []
        k = 0
        for a in range(w.arc_count):
            if a == w.meridian_arc:
                out.append(zero_vec(c))
            else:
                out.append(tuple(sol[k:k + c]))
                k += c
        return tuple(out)


def lift_assignment(f: ArcAssignment, w: WirtingerPresentation, lift: TauLift) -> tuple[Vector, ...]:
    """The unique commutator parts b_arc (b of the meridian arc = 0) lifting f."""
    return LiftSolver(w, lift).solve(f)


def lifted_elements(
    f: ArcAssignment, w: WirtingerPresentation, lift: TauLift, solver: LiftSolver | None = None
) -> dict[int, SemidirectElement]:
    bs = (solver or LiftSolver(w, lift)).solve(f)
    return {a: SemidirectElement(Nil2Element(f.values[a], bs[a]), 1) for a in range(w.arc_count)}


def evaluate_invariant(
    f: ArcAssignment, w: WirtingerPresentation, lift: TauLift, solver: LiftSolver | None = None
) -> Vector:
    """Commutator part of the lifted longitude; it must be central."""
    elems = lifted_elements(f, w, lift, solver)
    value = evaluate_word(w.longitude, elems, lift)
    if value.n != 0 or any(value.g.ab):
        raise LongitudeError("longitude convention violated: image is not in the commutator subgroup")
    comm = value.g.comm
    if lift.E @ comm != comm:
        raise LongitudeError("longitude convention violated: image is not central")
    return comm


def relation_holds(elems: Mapping[int, SemidirectElement], w: WirtingerPresentation, lift: TauLift) -> bool:
    """Every Wirtinger relator evaluates to the identity."""
    ident = SemidirectElement.identity(lift.rank)
    for r in w.relators():
        if evaluate_word(r, elems, lift) != ident:
            return False
    return True


__all__ = [
    "ArcAssignment",
    "LiftSolver",
    "LongitudeError",
    "check_assignment",
    "combine",
    "crossing_residual",
    "evaluate_invariant",
    "hk_assignments",
    "lift_assignment",
    "lifted_elements",
    "relation_holds",
]
