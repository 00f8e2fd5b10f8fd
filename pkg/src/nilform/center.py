"""The center of (F/F_3 (x) Q) x| Z for an action t on F/F_2 (x) Q.

The center is the fixed space of E (the action on F_2/F_3 (x) Q).  It is
computed as the kernel of I - E; a root-pairing rank formula and the
closed-form central elements C_l of the cyclic reciprocal case serve as
cross-checks and as preferred coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact.factor import factor_monic, reciprocal_partner
from .exact.matrix import QMatrix, Vector, companion_matrix, kernel_basis, solve_unique
from .exact.poly import RationalPoly, monic_normalize, reciprocal_check
from .nilpotent import TauLift, build_tau_lift, comm_dim, pair_index


class HypothesisError(ValueError):
    pass


class NotCentralError(ValueError):
    pass


@dataclass(frozen=True)
class CenterReport:
    rank: int
    basis: tuple[Vector, ...]
    action: QMatrix
    canonical: tuple[Vector, ...] | None = None
    formula_rank: int | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def basis_kind(self) -> str:
        return "C" if self.canonical is not None else "echelon"

    @property
    def coordinates(self) -> tuple[Vector, ...]:
        """The basis used for center coordinates."""
        return self.canonical if self.canonical is not None else self.basis


def center_basis(lift: TauLift) -> CenterReport:
    """Echelon basis of ker(I - E)."""
    e = lift.E
    n = e.rows
    basis = tuple(kernel_basis(QMatrix.identity(n) - e)) if n else ()
    return CenterReport(rank=len(basis), basis=basis, action=e)


def _multiplicity(p: RationalPoly, f: RationalPoly) -> int:
    k = 0
    while f.degree >= p.degree and p.divides(f):
        f = f.exact_div(p)
        k += 1
    return k


def center_rank_formula(divisors: Sequence[RationalPoly]) -> int | None:
    """Rank from root pairs alpha * beta = 1 and the Jordan block sizes of each root.

    Returns None when some divisor cannot be factored with certainty.
    """
    divisors = [monic_normalize(d) for d in divisors]
    delta = RationalPoly([1])
    for d in divisors:
        delta = delta * d
    if delta(1) == 0 or delta(-1) == 0:
        raise HypothesisError("rank formula needs Delta(1) and Delta(-1) nonzero")
    irreducibles: list[RationalPoly] = []
    for d in divisors:
        fac = factor_monic(d)
        if fac is None:
            return None
        for p, _ in fac:
            if p not in irreducibles:
                irreducibles.append(p)
    blocks = {p: [k for k in (_multiplicity(p, d) for d in divisors) if k] for p in irreducibles}

    def pair_sum(p: RationalPoly, q: RationalPoly) -> int:
        return sum(min(u, v) for u in blocks.get(p, []) for v in blocks.get(q, []))

    total = 0
    done: set[RationalPoly] = set()
    for p in irreducibles:
        if p in done:
            continue
        q = reciprocal_partner(p)
        done.update({p, q})
        if q == p:
            total += (p.degree // 2) * pair_sum(p, p)
        elif q in blocks:
            total += p.degree * pair_sum(p, q)
    return total


def _recursion_candidates(a: Sequence[Fraction], g: int) -> list[Vector]:
    """C_l for l = 1..g by the double recursion on (i, j), 1-based indices."""
    m = 2 * g
    idx = pair_index(m)

    def delta(x: int, y: int) -> int:
        return 1 if x == y else 0

    out = []
    for ell in range(1, g + 1):
        d: dict[tuple[int, int], Fraction] = {}
        for j in range(2, m + 1):
            d[(1, j)] = Fraction(delta(j - 1, ell) if j <= g else delta(m - j + 1, ell))
        for i in range(2, m + 1):
            for j in range(i + 1, m + 1):
                li = ell if i <= g else m - ell
                lj = ell if j <= g else m - ell
                d[(i, j)] = d[(i - 1, j - 1)] - a[j - 1] * delta(i - 1, li) + a[j - 2] * delta(j - 1, lj)
        vec = [Fraction(0)] * comm_dim(m)
        for (i, j), v in d.items():
            vec[idx[(i - 1, j - 1)]] = v
        out.append(tuple(vec))
    return out


def _e(m: int, terms: dict[tuple[int, int], Fraction]) -> Vector:
    idx = pair_index(m)
    vec = [Fraction(0)] * comm_dim(m)
    for (i, j), v in terms.items():
        vec[idx[(i - 1, j - 1)]] += v
    return tuple(vec)


def _listed_candidates(a: Sequence[Fraction], g: int) -> list[Vector] | None:
    """Closed forms of C_l for g <= 3."""
    if g == 1:
        return [_e(2, {(1, 2): 1})]
    if g == 2:
        return [
            _e(4, {(1, 2): 1, (1, 4): 1, (2, 3): 1 - a[2], (3, 4): 1}),
            _e(4, {(1, 3): 1, (2, 3): a[1], (2, 4): 1}),
        ]
    if g == 3:
        return [
            _e(6, {(1, 2): 1, (1, 6): 1, (2, 3): 1 - a[2], (2, 4): -a[3], (2, 5): -a[4], (3, 4): 1 - a[2],
                   (3, 5): -a[3], (4, 5): 1 - a[4], (5, 6): 1}),
            _e(6, {(1, 3): 1, (1, 5): 1, (2, 3): a[1], (2, 4): 1, (2, 5): a[1], (2, 6): 1, (3, 4): a[1] - a[3],
                   (3, 5): 1, (4, 5): a[1], (4, 6): 1}),
            _e(6, {(1, 4): 1, (2, 4): a[1], (2, 5): 1, (3, 4): a[2], (3, 5): a[1], (3, 6): 1}),
        ]
    return None


def _first_row_normalized(e: QMatrix, g: int) -> list[Vector] | None:
    """Central vectors whose e_1j coordinates (2 <= j <= g+1) are delta_(j-1, l).

    None when the fixed space is not parametrized by those coordinates.
    """
    m = 2 * g
    kernel = kernel_basis(QMatrix.identity(e.rows) - e)
    if len(kernel) != g:
        return None
    idx = pair_index(m)
    rows = [[k[idx[(0, j)]] for k in kernel] for j in range(1, g + 1)]
    sel = QMatrix.from_rows(rows)
    if sel.det() == 0:
        return None
    inv = sel.inverse()
    out = []
    for ell in range(g):
        coeffs = inv.col(ell)
        out.append(tuple(sum((c * k[r] for c, k in zip(coeffs, kernel)), Fraction(0)) for r in range(e.rows)))
    return out


@dataclass(frozen=True)
class CanonicalResult:
    elements: tuple[Vector, ...] | None
    recursion_central: tuple[bool, ...]
    listed_central: tuple[bool, ...] | None
    source: str

    def notes(self) -> tuple[str, ...]:
        out = [f"recursion candidates central: {list(self.recursion_central)}"]
        if self.listed_central is not None:
            out.append(f"closed-form candidates central: {list(self.listed_central)}")
        out.append(f"canonical elements taken from: {self.source}")
        return tuple(out)


def canonical_central_elements(f: RationalPoly) -> CanonicalResult:
    """Validated C_1..C_g for a monic reciprocal f of degree 2g with cyclic module.

    For each l the recursion candidate is used when it is fixed by E, else the
    closed form (g <= 3) when that is, else the central vector with first-row
    coordinates e_1j = delta_(j-1, l), j = 2..g+1.  If some l has no candidate,
    or the chosen set is dependent, ``elements`` is None.
    """
    if f.is_zero() or f.degree % 2 or f.degree == 0:
        raise ValueError("canonical central elements need even positive degree")
    f = monic_normalize(f)
    if not reciprocal_check(f) or f.coeff(0) != 1:
        raise ValueError("canonical central elements need a reciprocal polynomial with constant term 1")
    g = f.degree // 2
    a = [f.coeff(i) for i in range(f.degree + 1)]
    e = build_tau_lift(companion_matrix(f)).E

    def central(v: Vector) -> bool:
        return e @ v == v

    rec = _recursion_candidates(a, g)
    rec_ok = tuple(central(v) for v in rec)
    listed = _listed_candidates(a, g)
    listed_ok = tuple(central(v) for v in listed) if listed is not None else None
    normalized = _first_row_normalized(e, g)
    chosen: list[Vector] = []
    sources = set()
    for ell in range(g):
        if rec_ok[ell]:
            chosen.append(rec[ell])
            sources.add("recursion")
        elif listed_ok is not None and listed_ok[ell]:
            chosen.append(listed[ell])
            sources.add("closed form")
        elif normalized is not None:
            chosen.append(normalized[ell])
            sources.add("first-row normalization")
        else:
            return CanonicalResult(None, rec_ok, listed_ok, "echelon fallback")
    if QMatrix.from_columns(chosen, comm_dim(2 * g)).rank() != g:
        return CanonicalResult(None, rec_ok, listed_ok, "echelon fallback")
    return CanonicalResult(tuple(chosen), rec_ok, listed_ok, " and ".join(sorted(sources)))


def center_report(
    t: QMatrix, divisors: Sequence[RationalPoly] | None = None, lift: TauLift | None = None
) -> CenterReport:
    """Kernel basis plus, when available, the rank formula and canonical C_l."""
    lift = lift or build_tau_lift(t)
    base = center_basis(lift)
    if divisors is None:
        divisors = [t.charpoly()]
    divisors = [monic_normalize(d) for d in divisors if d.degree > 0]
    notes: list[str] = []
    formula = None
    delta = RationalPoly([1])
    for d in divisors:
        delta = delta * d
    if divisors and delta(1) != 0 and delta(-1) != 0:
        formula = center_rank_formula(divisors)
        if formula is None:
            notes.append("rank formula unavailable: factorization not certified")
    elif divisors:
        notes.append("rank formula skipped: Delta vanishes at 1 or -1")
    canonical = None
    f = divisors[-1] if divisors else None
    if (
        len(divisors) == 1
        and f.degree % 2 == 0
        and reciprocal_check(f)
        and f.coeff(0) == 1
        and t == companion_matrix(f)
    ):
        res = canonical_central_elements(f)
        notes.extend(res.notes())
        if res.elements is not None and len(res.elements) == base.rank:
            canonical = res.elements
    return CenterReport(base.rank, base.basis, base.action, canonical, formula, tuple(notes))


def project_to_center(v: Sequence, report: CenterReport) -> Vector:
    """Coordinates of a central commutator vector in the report's coordinate basis."""
    v = tuple(Fraction(x) for x in v)
    if report.action @ v != v:
        raise NotCentralError("element not central")
    basis = report.coordinates
    if not basis:
        return ()
    m = QMatrix.from_columns(basis, len(v))
    return solve_unique(m, v)


__all__ = [
    "CanonicalResult",
    "CenterReport",
    "HypothesisError",
    "NotCentralError",
    "canonical_central_elements",
    "center_basis",
    "center_rank_formula",
    "center_report",
    "project_to_center",
]
