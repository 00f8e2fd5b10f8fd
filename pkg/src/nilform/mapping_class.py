"""Dehn twists on the surface of genus g with one boundary component.

The fundamental group is free on x_1..x_2g with boundary word
zeta = [x_1, x_2][x_3, x_4]...; mapping classes are the automorphisms fixing
zeta.  Twist formulas are tabulated, then checked at construction: each must
fix zeta, have an inverse in the table, and act on homology by the
transvection v -> v + <c, v> c of its curve class c, where <x_(2i-1), x_(2i)> = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .center import CenterReport, center_report, project_to_center
from .exact.matrix import QMatrix, Vector, companion_matrix, kernel_basis, solve_unique, unit_vec
from .exact.poly import RationalPoly, monic_normalize, reciprocal_check
from .exact.snf import PolyMatrix, smith_divisors
from .forms import QuadraticFormReport, evaluate_gram, grams_by_polarization, homogeneity_holds, isometry_holds
from .freegroup import (
    Letter,
    Word,
    commutator,
    concat,
    format_word,
    fox_jacobian_row,
    inverse_word,
    laurent_rows_to_polys,
    substitute,
)
from .nilpotent import exterior_action, pairs, wedge

GAMMA = "t"


class TwistError(ValueError):
    pass


class DegenerateModuleError(ValueError):
    pass


class EquivarianceError(ArithmeticError):
    pass


def _gen(i: int, e: int = 1) -> Word:
    return ((i, e),)


def boundary_word(genus: int) -> Word:
    """[x_1, x_2][x_3, x_4]...[x_(2g-1), x_(2g)]."""
    if genus < 1:
        raise ValueError("genus must be at least 1")
    return concat(*(commutator(_gen(2 * i - 1), _gen(2 * i)) for i in range(1, genus + 1)))


@dataclass(frozen=True)
class FreeAutomorphism:
    """images[i] is the image of x_(i+1)."""

    genus: int
    images: tuple[Word, ...]

    @classmethod
    def identity(cls, genus: int) -> "FreeAutomorphism":
        return cls(genus, tuple(_gen(i) for i in range(1, 2 * genus + 1)))

    def __post_init__(self):
        if len(self.images) != 2 * self.genus:
            raise ValueError("need one image per generator")

    @property
    def image_map(self) -> dict[int, Word]:
        return {i + 1: w for i, w in enumerate(self.images)}

    def __call__(self, word: Sequence[Letter]) -> Word:
        return substitute(word, self.image_map)

    def after(self, other: "FreeAutomorphism") -> "FreeAutomorphism":
        """self o other: apply other first."""
        return FreeAutomorphism(self.genus, tuple(self(w) for w in other.images))

    def is_identity(self) -> bool:
        return self == FreeAutomorphism.identity(self.genus)

    def fixes_boundary(self) -> bool:
        zeta = boundary_word(self.genus)
        return self(zeta) == zeta


@dataclass(frozen=True)
class Curve:
    """A curve by a based representative delta and a conjugation pattern.

    The positive twist sends x_i to delta^l x_i delta^r with (l, r) = pattern[i];
    the negative twist negates both exponents.
    """

    label: str
    delta: Word
    pattern: dict[int, tuple[int, int]]


def _pw(word: Word, k: int) -> Word:
    return word if k == 1 else inverse_word(word) if k == -1 else ()


def _curve_table(genus: int) -> tuple[Curve, ...]:
    if genus == 1:
        return (
            Curve("x2", _gen(2), {1: (0, -1)}),
            Curve("x1", _gen(1), {2: (0, 1)}),
        )
    if genus == 2:
        mid = concat(_gen(2, -1), _gen(3))
        sixth = concat(commutator(_gen(1), _gen(2)), _gen(3))
        conj = {1: (-1, 1), 2: (-1, 1), 3: (-1, 1), 4: (0, 1)}
        return (
            Curve("x2", _gen(2), {1: (0, -1)}),
            Curve("x1", _gen(1), {2: (0, 1)}),
            Curve("x2^-1 x3", mid, {1: (0, 1), 2: (-1, 1), 3: (-1, 1), 4: (0, 1)}),
            Curve("x4", _gen(4), {3: (0, -1)}),
            Curve("x3", _gen(3), {4: (0, 1)}),
            Curve("[x1,x2] x3", sixth, conj),
        )
    raise TwistError(f"no twist curves implemented for genus {genus}")


def curve_count(genus: int) -> int:
    return len(_curve_table(genus))


def symplectic_form(genus: int) -> QMatrix:
    """J with J[2i, 2i+1] = 1 = -J[2i+1, 2i] (0-based)."""
    n = 2 * genus
    rows = [[0] * n for _ in range(n)]
    for i in range(genus):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = -1
    return QMatrix.from_rows(rows)


def abelianize(word: Sequence[Letter], n: int) -> Vector:
    out = [Fraction(0)] * n
    for g, e in word:
        out[g - 1] += e
    return tuple(out)


def _build_twist(genus: int, curve: Curve, power: int) -> FreeAutomorphism:
    images = []
    for i in range(1, 2 * genus + 1):
        left, right = curve.pattern.get(i, (0, 0))
        images.append(concat(_pw(curve.delta, power * left), _gen(i), _pw(curve.delta, power * right)))
    return FreeAutomorphism(genus, tuple(images))


@lru_cache(maxsize=None)
def _validated_twists(genus: int) -> tuple[tuple[FreeAutomorphism, FreeAutomorphism], ...]:
    out = []
    n = 2 * genus
    j = symplectic_form(genus)
    for curve in _curve_table(genus):
        pos, neg = _build_twist(genus, curve, 1), _build_twist(genus, curve, -1)
        if not (pos.fixes_boundary() and neg.fixes_boundary()):
            raise TwistError(f"twist along {curve.label} does not fix the boundary word")
        if not (pos.after(neg).is_identity() and neg.after(pos).is_identity()):
            raise TwistError(f"twists along {curve.label} are not mutually inverse")
        c = abelianize(curve.delta, n)
        m = homology_action(pos)
        pairing = j.T @ c  # pairing[i] = <c, x_(i+1)>
        expected = QMatrix.from_columns(
            [tuple(u + pairing[i] * x for u, x in zip(unit_vec(n, i), c)) for i in range(n)], n
        )
        if m != expected:
            raise TwistError(f"twist along {curve.label} is not the positive transvection")
        out.append((pos, neg))
    return tuple(out)


def twist_automorphism(genus: int, index: int, power: int = 1) -> FreeAutomorphism:
    """The twist along curve ``index`` (1-based), positive for power 1, negative for -1."""
    table = _validated_twists(genus)
    if not 1 <= index <= len(table):
        raise TwistError(f"unknown curve index {index} for genus {genus}; valid: 1..{len(table)}")
    if power not in (1, -1):
        raise ValueError("power must be 1 or -1")
    return table[index - 1][0 if power == 1 else 1]


def parse_twist_word(text: str | Sequence[int]) -> tuple[tuple[int, int], ...]:
    """"2 3 -4" -> ((2, 1), (3, 1), (4, -1)); commas are accepted as separators."""
    if isinstance(text, str):
        tokens = text.replace(",", " ").split()
        try:
            values = [int(tok) for tok in tokens]
        except ValueError as exc:
            raise TwistError(f"bad twist token in {text!r}") from exc
    else:
        values = [int(v) for v in text]
    if any(v == 0 for v in values):
        raise TwistError("twist index 0 is not a curve")
    return tuple((abs(v), 1 if v > 0 else -1) for v in values)


def compose_twists(genus: int, word: str | Sequence) -> FreeAutomorphism:
    """Product of twists read as a composition of maps: the rightmost acts first."""
    tokens = parse_twist_word(word) if isinstance(word, str) or all(isinstance(v, int) for v in word) else tuple(word)
    result = FreeAutomorphism.identity(genus)
    for index, power in tokens:
        result = result.after(twist_automorphism(genus, index, power))
    if not result.fixes_boundary():
        raise AssertionError("composite twist does not fix the boundary word")
    return result


def homology_action(aut: FreeAutomorphism) -> QMatrix:
    """Matrix whose columns are the abelianized images of the generators."""
    n = 2 * aut.genus
    return QMatrix.from_columns([abelianize(w, n) for w in aut.images], n)


def alexander_polynomial(aut: FreeAutomorphism) -> RationalPoly:
    """det(tI - M), the characteristic polynomial of the homology action."""
    return homology_action(aut).charpoly()


def is_symplectic(m: QMatrix, genus: int) -> bool:
    j = symplectic_form(genus)
    return m.T @ j @ m == j


def invariant_factors(m: QMatrix) -> list[RationalPoly]:
    """Nonunit invariant factors of tI - M; equal lists mean conjugate over Q."""
    n = m.rows
    rows = []
    for i in range(n):
        rows.append([RationalPoly([-m[i, j], 1]) if i == j else RationalPoly([-m[i, j]]) for j in range(n)])
    return [monic_normalize(d) for d in smith_divisors(PolyMatrix.from_rows(rows)) if d.degree > 0]


def _commutant(m: QMatrix) -> list[QMatrix]:
    n = m.rows
    rows = []
    # unknown X[i][k] at position i*n + k; equation (XM - MX)[i][j] = 0
    for i in range(n):
        for j in range(n):
            row = [Fraction(0)] * (n * n)
            for k in range(n):
                row[i * n + k] += m[k, j]
                row[k * n + j] -= m[i, k]
            rows.append(row)
    return [QMatrix(n, n, v) for v in kernel_basis(QMatrix.from_rows(rows))]


def _gate(aut: FreeAutomorphism) -> tuple[QMatrix, RationalPoly]:
    m = homology_action(aut)
    delta = m.charpoly()
    if delta(1) == 0 or delta(-1) == 0:
        raise DegenerateModuleError("degenerate module (Torelli-adjacent case); unsupported")
    return m, delta


def cyclic_vector(m: QMatrix) -> Vector | None:
    """The first standard basis vector generating Q^n under M, else None."""
    n = m.rows
    for i in range(n):
        v = unit_vec(n, i)
        cols = [v]
        for _ in range(n - 1):
            cols.append(m @ cols[-1])
        if QMatrix.from_columns(cols, n).det() != 0:
            return v
    return None


def krylov_matrix(m: QMatrix, v: Vector) -> QMatrix:
    cols = [tuple(v)]
    for _ in range(m.rows - 1):
        cols.append(m @ cols[-1])
    return QMatrix.from_columns(cols, m.rows)


def hf_basis(aut: FreeAutomorphism) -> list[QMatrix]:
    """Basis of the equivariant maps: u(M) for u = 1, t, ..., t^(2g-1) when M is cyclic,
    otherwise an echelon basis of the commutant."""
    m, _ = _gate(aut)
    n = m.rows
    if cyclic_vector(m) is not None:
        powers = [QMatrix.identity(n)]
        for _ in range(n - 1):
            powers.append(powers[-1] @ m)
        return powers
    return _commutant(m)


def boundary_value(phi: QMatrix, genus: int) -> Vector:
    """sum_i phi(x_(2i-1)) ^ phi(x_(2i)) - phi(x_(2i)) ^ phi(x_(2i-1)) in commutator coordinates."""
    n = 2 * genus
    total = [Fraction(0)] * len(pairs(n))
    for i in range(genus):
        a, b = phi.col(2 * i), phi.col(2 * i + 1)
        for k, (x, y) in enumerate(zip(wedge(a, b), wedge(b, a))):
            total[k] += x - y
    return tuple(total)


def _transported_center(m: QMatrix, delta: RationalPoly) -> tuple[CenterReport, str]:
    """Center of the lift of M, with the canonical C_l moved from companion coordinates."""
    base = center_report(m, [delta])
    v = cyclic_vector(m)
    if v is None or not reciprocal_check(delta) or delta.coeff(0) != 1 or delta.degree % 2:
        return base, "echelon"
    f = monic_normalize(delta)
    comp = center_report(companion_matrix(f), [f])
    if comp.canonical is None:
        return base, "echelon"
    wedge_p = exterior_action(krylov_matrix(m, v))
    moved = tuple(wedge_p @ c for c in comp.canonical)
    if any(base.action @ c != c for c in moved):
        raise AssertionError("transported central elements are not central")
    notes = base.notes + comp.notes
    return CenterReport(base.rank, base.basis, base.action, moved, base.formula_rank, notes), "C"


def qf_form(aut: FreeAutomorphism) -> QuadraticFormReport:
    """The boundary-word quadratic form on the equivariant maps."""
    m, delta = _gate(aut)
    genus = aut.genus
    basis = hf_basis(aut)
    center, _ = _transported_center(m, delta)
    n = m.rows
    dim = len(basis)

    def phi_of(v: Sequence) -> QMatrix:
        acc = QMatrix.zeros(n, n)
        for c, b in zip(v, basis):
            if c:
                acc = acc + b.scale(c)
        return acc

    def q(v: Vector) -> Vector:
        value = boundary_value(phi_of(v), genus)
        if center.action @ value != value:
            raise EquivarianceError("equivariance violated")
        return project_to_center(value, center)

    grams = grams_by_polarization(q, dim, center.rank)
    cyclic = dim == n and cyclic_vector(m) is not None
    if cyclic:
        t_action = companion_matrix(monic_normalize(delta))
        kind = "u"
    else:
        # phi -> M phi in the commutant basis
        flat = QMatrix.from_columns([b.entries for b in basis], n * n)
        t_action = QMatrix.from_columns([solve_unique(flat, (m @ b).entries) for b in basis], dim)
        kind = "echelon"
    homogeneous = homogeneity_holds(q, dim)
    sample = tuple(Fraction((-1) ** i * (i + 2), i + 1) for i in range(dim))
    if q(sample) != tuple(evaluate_gram(g, sample) for g in grams):
        homogeneous = False
    extra = {
        "genus": genus,
        "char_poly": delta,
        "homology": m,
        "zeta_fixed": aut.fixes_boundary(),
        "hf_dimension": dim,
    }
    return QuadraticFormReport(
        module_poly=delta,
        divisors=tuple(invariant_factors(m)),
        hk_dimension=dim,
        center=center,
        grams=grams,
        t_action=t_action,
        basis_kind=kind,
        isometry_ok=isometry_holds(grams, t_action),
        homogeneous_ok=homogeneous,
        extra=extra,
    )


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple[Word, ...]

    def __str__(self) -> str:
        def name(g) -> str:
            return "gamma" if g == GAMMA else f"x{g}"

        rels = ", ".join(format_word(r, name) for r in self.relators)
        return f"< {', '.join(name(g) for g in self.generators)} | {rels} >"


def mapping_torus_presentation(aut: FreeAutomorphism) -> Presentation:
    """Generators x_1..x_2g and gamma; relators [x_i, gamma] f(x_i) x_i^-1."""
    gens = tuple(range(1, 2 * aut.genus + 1)) + (GAMMA,)
    rels = tuple(
        concat(commutator(_gen(i), ((GAMMA, 1),)), aut.images[i - 1], _gen(i, -1)) for i in range(1, 2 * aut.genus + 1)
    )
    return Presentation(gens, rels)


def torus_alexander_polynomial(p: Presentation) -> RationalPoly:
    """Monic generator of the first elementary ideal, from the Fox matrix with gamma -> t, x_i -> 1."""
    degree = {g: (1 if g == GAMMA else 0) for g in p.generators}
    rows = laurent_rows_to_polys([fox_jacobian_row(r, p.generators, degree) for r in p.relators])
    keep = [k for k, g in enumerate(p.generators) if g != GAMMA]
    square = PolyMatrix.from_rows([[row[k] for k in keep] for row in rows])
    det = square.determinant()
    k = 0
    while k < det.degree and det.coeff(k) == 0:
        k += 1
    return monic_normalize(RationalPoly(det.coeffs[k:]))


__all__ = [
    "Curve",
    "DegenerateModuleError",
    "EquivarianceError",
    "FreeAutomorphism",
    "Presentation",
    "TwistError",
    "alexander_polynomial",
    "boundary_value",
    "boundary_word",
    "compose_twists",
    "curve_count",
    "cyclic_vector",
    "hf_basis",
    "homology_action",
    "invariant_factors",
    "is_symplectic",
    "mapping_torus_presentation",
    "parse_twist_word",
    "qf_form",
    "symplectic_form",
    "torus_alexander_polynomial",
    "twist_automorphism",
]
