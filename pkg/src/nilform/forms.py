"""Quadratic forms with values in the center: Grams, rendering, comparison."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Callable, Sequence

from .exact.factor import factor_monic
from .exact.matrix import QMatrix, Vector, solve_any, unit_vec, vadd, vscale, zero_vec
from .exact.poly import RationalPoly, format_rational, monic_normalize
from .center import CenterReport

BASE_VARIABLES = ("x", "y", "z", "w")


def variable_names(n: int) -> list[str]:
    if n <= len(BASE_VARIABLES):
        return list(BASE_VARIABLES[:n])
    return [f"v{i + 1}" for i in range(n)]


def grams_by_polarization(q: Callable[[Vector], Vector], dim: int, ncoords: int) -> tuple[QMatrix, ...]:
    """G_k(u, v) = (Q(u + v) - Q(u) - Q(v)) / 2 on the standard basis, per coordinate k."""
    diag = [q(unit_vec(dim, i)) for i in range(dim)]
    entries = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(ncoords)]
    for i in range(dim):
        for k in range(ncoords):
            entries[k][i][i] = diag[i][k]
    for i, j in itertools.combinations(range(dim), 2):
        both = q(vadd(unit_vec(dim, i), unit_vec(dim, j)))
        for k in range(ncoords):
            val = (both[k] - diag[i][k] - diag[j][k]) / 2
            entries[k][i][j] = entries[k][j][i] = val
    return tuple(QMatrix(dim, dim, (e for row in ent for e in row)) if dim else QMatrix(0, 0, ()) for ent in entries)


def evaluate_gram(g: QMatrix, v: Sequence) -> Fraction:
    return sum((v[i] * g[i, j] * v[j] for i in range(g.rows) for j in range(g.cols)), Fraction(0))


def render_quadratic(g: QMatrix, names: Sequence[str] | None = None) -> str:
    """Polynomial string such as ``x^2 - 3*x*y + y^2``; monomials in graded variable order."""
    names = list(names) if names is not None else variable_names(g.rows)
    parts: list[tuple[Fraction, str]] = []
    for i in range(g.rows):
        for j in range(i, g.rows):
            c = g[i, j] if i == j else 2 * g[i, j]
            if c == 0:
                continue
            mono = f"{names[i]}^2" if i == j else f"{names[i]}*{names[j]}"
            parts.append((c, mono))
    if not parts:
        return "0"
    out = ""
    for k, (c, mono) in enumerate(parts):
        mag = abs(c)
        body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        if k == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_quadratic(text: str, names: Sequence[str]) -> QMatrix:
    """Inverse of render_quadratic; accepts ``2*x*y``, ``x^2``, ``3/2*x*y`` and unicode minus."""
    s = text.replace("−", "-").replace(" ", "")
    index = {n: i for i, n in enumerate(names)}
    n = len(names)
    ent = [[Fraction(0)] * n for _ in range(n)]
    if s in ("", "0"):
        return QMatrix(n, n, (e for row in ent for e in row))
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse quadratic form {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(sign)
        factors: list[int] = []
        for tok in m.group(2).split("*"):
            if not tok:
                raise ValueError(f"cannot parse quadratic form {text!r}")
            if re.fullmatch(r"\d+(/\d+)?", tok):
                coef *= Fraction(tok)
                continue
            base, _, exp = tok.partition("^")
            if base not in index:
                raise ValueError(f"unknown variable {base!r} in {text!r}")
            factors.extend([index[base]] * (int(exp) if exp else 1))
        if len(factors) != 2:
            raise ValueError(f"term {m.group(0)!r} is not quadratic")
        i, j = sorted(factors)
        if i == j:
            ent[i][i] += coef
        else:
            ent[i][j] += coef / 2
            ent[j][i] += coef / 2
    return QMatrix(n, n, (e for row in ent for e in row))


def inertia(g: QMatrix) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts via Descartes' rule on the characteristic polynomial."""
    if g.rows == 0:
        return (0, 0, 0)
    p = g.charpoly()
    zero = 0
    while zero < p.degree and p.coeff(zero) == 0:
        zero += 1
    cs = [p.coeff(i) for i in range(zero, p.degree + 1)]

    def changes(seq: Sequence[Fraction]) -> int:
        signs = [1 if c > 0 else -1 for c in seq if c != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    pos = changes(cs)
    neg = changes([c * (-1) ** i for i, c in enumerate(cs)])
    return (pos, neg, zero)


@dataclass(frozen=True)
class QuadraticFormReport:
    """Center-valued quadratic form on a module V = Q^dim with t acting by ``t_action``."""

    module_poly: RationalPoly
    divisors: tuple[RationalPoly, ...]
    hk_dimension: int
    center: CenterReport
    grams: tuple[QMatrix, ...]
    t_action: QMatrix
    basis_kind: str
    isometry_ok: bool
    homogeneous_ok: bool
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def variables(self) -> list[str]:
        return variable_names(self.hk_dimension)

    @property
    def display(self) -> list[str]:
        return [render_quadratic(g, self.variables) for g in self.grams]

    @property
    def determinants(self) -> list[Fraction]:
        return [g.det() if g.rows else Fraction(1) for g in self.grams]

    @property
    def nondegenerate(self) -> list[bool]:
        return [d != 0 for d in self.determinants]

    @property
    def signatures(self) -> list[tuple[int, int, int]]:
        return [inertia(g) for g in self.grams]

    def value(self, v: Sequence) -> Vector:
        return tuple(evaluate_gram(g, v) for g in self.grams)

    def summed_gram(self) -> QMatrix:
        """Gram of the sum of all center coordinates."""
        total = QMatrix.zeros(self.hk_dimension, self.hk_dimension)
        for g in self.grams:
            total = total + g
        return total


def isometry_holds(grams: Sequence[QMatrix], s: QMatrix) -> bool:
    return all(s.T @ g @ s == g for g in grams)


def homogeneity_holds(q: Callable[[Vector], Vector], dim: int, scalars: Sequence[int] = (-1, 2, 3)) -> bool:
    zero = q(zero_vec(dim))
    if any(zero):
        return False
    for i in range(dim):
        e = unit_vec(dim, i)
        base = q(e)
        for s in scalars:
            if q(vscale(s, e)) != tuple(s * s * x for x in base):
                return False
    return True


@dataclass(frozen=True)
class Witness:
    c: Fraction
    u: RationalPoly
    permutation: tuple[int, ...]


class ModuleMismatchError(ValueError):
    pass


def _unit_candidates(degree: int, height: int):
    """Polynomials of degree < ``degree`` whose first nonzero coefficient is 1, the
    others p/q with |p|, q <= height, ordered by height layer.

    Rational multiples are skipped: they only change the scalar c by a square.
    """
    layers: list[list[Fraction]] = []
    seen = {Fraction(0), Fraction(1)}
    for h in range(1, height + 1):
        new = {Fraction(p, q) for p in range(-h, h + 1) for q in range(1, h + 1)} - seen
        seen |= new
        layers.append(sorted(new, key=lambda v: (abs(v), v < 0, v)))
    pool = [Fraction(0), Fraction(1)]
    for k, layer in enumerate([[]] + layers):
        pool = pool + layer
        fresh = set(layer) if k else set(pool)
        for lead in range(degree):
            for tail in itertools.product(pool, repeat=degree - lead - 1):
                if k and not any(c in fresh for c in tail):
                    continue
                yield RationalPoly([0] * lead + [1] + list(tail))


def proportionality_witness(
    r1: QuadraticFormReport,
    r2: QuadraticFormReport,
    height: int = 2,
    allow_permutation: bool = False,
    require_c=None,
) -> Witness | None:
    """First (c, u) in a fixed enumeration with Q1(v) = c * Q2(u v) for every coordinate.

    ``u`` acts on r2's module through ``r2.t_action``.  With ``allow_permutation``
    the center coordinates of r2 may be reordered (one permutation for all of them).
    With ``require_c`` a witness is accepted when c / require_c is a rational
    square, and u is rescaled so that the returned scalar is require_c.
    """
    if monic_normalize(r1.module_poly) != monic_normalize(r2.module_poly):
        raise ModuleMismatchError("module mismatch: forms live on different modules")
    if r1.hk_dimension != r2.hk_dimension or len(r1.grams) != len(r2.grams):
        raise ModuleMismatchError("module mismatch: dimensions differ")
    n = len(r2.grams)
    dim = r1.hk_dimension
    perms = list(itertools.permutations(range(n))) if allow_permutation else [tuple(range(n))]
    deg = max(r1.module_poly.degree, 1)
    order = [(i, j) for i in range(dim) for j in range(i, dim)]
    target = [[g[i, j] for i, j in order] for g in r1.grams]
    wanted = None if require_c is None else Fraction(require_c)
    for u in _unit_candidates(deg, height):
        um = r2.t_action.apply_poly(u)
        if um.rows and um.det() == 0:
            continue
        cols = [um.col(j) for j in range(dim)]
        halves = [[g @ c for c in cols] for g in r2.grams]
        cache: dict[tuple[int, int], Fraction] = {}

        def pulled(k: int, e: int) -> Fraction:
            key = (k, e)
            if key not in cache:
                i, j = order[e]
                cache[key] = sum((a * b for a, b in zip(cols[i], halves[k][j])), Fraction(0))
            return cache[key]

        for perm in perms:
            c = _lazy_ratio(target, lambda k, e: pulled(perm[k], e), None)
            if c is None:
                continue
            if wanted is None:
                return Witness(c, u, perm)
            if is_rational_square(c / wanted):
                return Witness(wanted, u * _rational_sqrt(c / wanted), perm)
    return None


def _rational_sqrt(c: Fraction) -> Fraction:
    return Fraction(isqrt(c.numerator), isqrt(c.denominator))


def _lazy_ratio(target, source, wanted: Fraction | None) -> Fraction | None:
    """Common ratio target / source over all entries, evaluating source lazily."""
    c = wanted
    for k, row in enumerate(target):
        for e, a in enumerate(row):
            b = source(k, e)
            if b == 0:
                if a != 0:
                    return None
                continue
            r = a / b
            if c is None:
                c = r
            elif r != c:
                return None
    if c is None:
        c = Fraction(1)
    return c if c != 0 else None


def _common_ratio(target: Sequence[QMatrix], source: Sequence[QMatrix]) -> Fraction | None:
    return _lazy_ratio([g.entries for g in target], lambda k, e: source[k].entries[e], None)


def inverse_t_poly(f: RationalPoly) -> RationalPoly:
    """Polynomial g with t * g(t) = 1 modulo f."""
    f = monic_normalize(f)
    a0 = f.coeff(0)
    if a0 == 0:
        raise ValueError("t is not invertible modulo a polynomial divisible by t")
    return RationalPoly([-f.coeff(i) / a0 for i in range(1, f.degree + 1)])


def real_scaling(report: QuadraticFormReport) -> tuple[RationalPoly, Fraction] | None:
    """(d, delta) with d(T)^2 = delta * I and d(T) self-adjoint for every T-invariant form.

    d = t + t^-1 - a/2 where S = T + T^-1 satisfies S^2 = a S + b I; substituting
    v -> d(T) v multiplies every T-invariant form by delta.  None when S is scalar
    or has a minimal polynomial of degree above 2, or delta = 0.
    """
    t = report.t_action
    n = t.rows
    if n == 0:
        return None
    tinv = inverse_t_poly(report.module_poly)
    s_poly = RationalPoly([0, 1]) + tinv
    s = t.apply_poly(s_poly)
    eye = QMatrix.identity(n)
    if s == eye.scale(s[0, 0]):
        return None
    ab = solve_any(QMatrix.from_columns([s.entries, eye.entries], n * n), (s @ s).entries)
    if ab is None:
        return None
    a, b = ab
    delta = a * a / 4 + b
    if delta == 0:
        return None
    return s_poly - RationalPoly([a / 2]), delta


def normalize_witness(w: Witness, r1: QuadraticFormReport, r2: QuadraticFormReport) -> Witness | None:
    """A witness with c = 1 from w: rescale u when c is a rational square, else apply a
    real scaling when c / delta is a rational square."""
    if w.c == 1:
        return w
    if is_rational_square(w.c):
        return _checked(Witness(Fraction(1), w.u * _rational_sqrt(w.c), w.permutation), r1, r2)
    scaling = real_scaling(r2)
    if scaling is None:
        return None
    d, delta = scaling
    ratio = w.c / delta
    if not is_rational_square(ratio):
        return None
    u = (d * w.u * _rational_sqrt(ratio)) % monic_normalize(r2.module_poly)
    return _checked(Witness(Fraction(1), u, w.permutation), r1, r2)


def _checked(w: Witness, r1: QuadraticFormReport, r2: QuadraticFormReport) -> Witness:
    um = r2.t_action.apply_poly(w.u)
    pulled = [um.T @ g @ um for g in r2.grams]
    if _common_ratio(r1.grams, [pulled[p] for p in w.permutation]) != w.c:
        raise ArithmeticError("normalized witness does not verify")
    return w


@dataclass(frozen=True)
class FormComparison:
    """Outcome of comparing two forms on the same module.

    ``witness`` is the first proportionality witness in the fixed enumeration;
    ``square_test`` is the square-class test applied to its scalar.  The verdict
    is "equivalent" when some witness with c = 1 is known, "inequivalent" when
    the square-class test says no, and "undetermined" otherwise.
    """

    witness: Witness | None
    square_test: str | None
    unit_witness: Witness | None
    unit_witness_source: str | None
    verdict: str


def compare_forms(
    r1: QuadraticFormReport,
    r2: QuadraticFormReport,
    height: int = 2,
    allow_permutation: bool = False,
    unit_height: int | None = None,
) -> FormComparison:
    """First witness, its square-class test, and a search for a witness with c = 1.

    The c = 1 search tries the real-scaling normalization of the first witness,
    then (with ``unit_height``) an enumeration in both directions.
    """
    w = proportionality_witness(r1, r2, height, allow_permutation)
    square = scalar_square_test(w.c, r1.module_poly) if w is not None else None
    unit, source = None, None
    if w is not None:
        unit = normalize_witness(w, r1, r2)
        source = "first witness" if unit is w else "real scaling" if unit is not None else None
    if unit is None and unit_height is not None:
        unit = proportionality_witness(r1, r2, unit_height, allow_permutation, require_c=1)
        source = "enumeration" if unit is not None else None
        if unit is None:
            back = proportionality_witness(r2, r1, unit_height, allow_permutation, require_c=1)
            if back is not None:
                unit, source = back, "enumeration, reversed"
    if unit is not None:
        verdict = "equivalent"
    elif square == "no":
        verdict = "inequivalent"
    else:
        verdict = "undetermined"
    return FormComparison(w, square, unit, source, verdict)


def is_rational_square(c: Fraction) -> bool:
    c = Fraction(c)
    if c < 0:
        return False
    n, d = c.numerator, c.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def scalar_square_test(c, f: RationalPoly) -> str:
    """Is the rational c a square in Q[t]/(f)?  Returns "yes", "no" or "unknown"."""
    c = Fraction(c)
    if c == 0:
        raise ValueError("scalar must be nonzero")
    if f.degree < 1:
        raise ValueError("modulus must have positive degree")
    factors = factor_monic(monic_normalize(f))
    if factors is None:
        return "unknown"
    verdicts = []
    for p, _ in factors:
        if p.degree == 1:
            verdicts.append(is_rational_square(c))
        elif p.degree == 2:
            disc = p.coeff(1) ** 2 - 4 * p.coeff(0)
            verdicts.append(is_rational_square(c) or is_rational_square(c / disc))
        else:
            verdicts.append(None)
    if any(v is False for v in verdicts):
        return "no"
    if all(v is True for v in verdicts):
        return "yes"
    return "unknown"


def forms_from_display(
    displays: Sequence[str], module_poly: RationalPoly, t_action: QMatrix, center: CenterReport | None = None
) -> QuadraticFormReport:
    """A report wrapping hand-entered forms, for comparison with computed ones."""
    dim = t_action.rows
    names = variable_names(dim)
    grams = tuple(parse_quadratic(s, names) for s in displays)
    empty = center or CenterReport(len(grams), (), QMatrix(0, 0, ()))
    return QuadraticFormReport(
        module_poly=module_poly,
        divisors=(module_poly,),
        hk_dimension=dim,
        center=empty,
        grams=grams,
        t_action=t_action,
        basis_kind="given",
        isometry_ok=isometry_holds(grams, t_action),
        homogeneous_ok=True,
    )
