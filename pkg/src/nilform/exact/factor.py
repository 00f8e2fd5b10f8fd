"""A limited factorizer over Q.

Handles squarefree decomposition, rational roots, cyclotomic factors up to
degree 12 and Kronecker trial division by integer factors of degree 2 and 3.
Irreducibility of a leftover factor is certified only when every possible
proper factor would have degree at most 3; otherwise the factorization is
reported as unavailable.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import isqrt

from .poly import RationalPoly, cyclotomic, poly_gcd

MAX_CYCLOTOMIC_DEGREE = 12
MAX_TRIAL_CANDIDATES = 200_000


def squarefree_decomposition(f: RationalPoly) -> list[tuple[RationalPoly, int]]:
    """Yun's algorithm: monic squarefree s_k with f = c * prod s_k^k."""
    f = f.monic()
    out = []
    a = poly_gcd(f, f.derivative())
    b = f.exact_div(a)
    c = f.derivative().exact_div(a)
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, k))
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        k += 1
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _integer_coeffs(f: RationalPoly) -> list[int]:
    p = f.primitive_integer()
    return [int(c) for c in p.coeffs]


def rational_roots(f: RationalPoly) -> list[Fraction]:
    cs = _integer_coeffs(f)
    k = 0
    roots = []
    while k < len(cs) and cs[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
    cs = cs[k:]
    if len(cs) <= 1:
        return roots
    lead, const = cs[-1], cs[0]
    for p in _divisors(const):
        for q in _divisors(lead):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if r not in roots and f(r) == 0:
                    roots.append(r)
    return roots


def _interpolate(points: list[int], values: list[int]) -> RationalPoly | None:
    """Lagrange interpolation; None unless the result has integer coefficients."""
    result = RationalPoly()
    for i, (xi, yi) in enumerate(zip(points, values)):
        term = RationalPoly([yi])
        for j, xj in enumerate(points):
            if j != i:
                term = term * RationalPoly([Fraction(-xj, xi - xj), Fraction(1, xi - xj)])
        result = result + term
    if any(c.denominator != 1 for c in result.coeffs):
        return None
    return result


def _trial_factor(f: RationalPoly, degree: int) -> RationalPoly | None:
    """An integer factor of the given degree, or None if there is none.

    Raises OverflowError when the candidate search would be too large.
    """
    prim = RationalPoly(_integer_coeffs(f))
    points = [0, 1, -1, 2, -2][: degree + 1]
    values = [int(prim(x)) for x in points]
    if any(v == 0 for v in values):
        raise ValueError("trial factoring needs a polynomial without roots at the sample points")
    choices = []
    for v in values:
        ds = _divisors(v)
        choices.append(ds + [-d for d in ds])
    total = 1
    for c in choices:
        total *= len(c)
    if total > MAX_TRIAL_CANDIDATES:
        raise OverflowError("trial factor search too large")
    for combo in itertools.product(*choices):
        if combo[0] < 0:
            continue
        q = _interpolate(points, list(combo))
        if q is None or q.degree != degree:
            continue
        if q.divides(prim):
            return q.monic()
    return None


def _split_squarefree(s: RationalPoly) -> list[RationalPoly] | None:
    """Irreducible factors of a squarefree monic polynomial, or None."""
    factors: list[RationalPoly] = []
    for r in rational_roots(s):
        lin = RationalPoly([-r, 1])
        factors.append(lin)
        s = s.exact_div(lin)
    n = 1
    while s.degree > 0 and n <= 64:
        phi = cyclotomic(n)
        if 1 < phi.degree <= min(MAX_CYCLOTOMIC_DEGREE, s.degree) and phi.divides(s):
            factors.append(phi)
            s = s.exact_div(phi)
        n += 1
    pending = [s] if s.degree > 0 else []
    while pending:
        p = pending.pop()
        if p.degree <= 3:
            factors.append(p)
            continue
        found = None
        for d in (2, 3):
            if d > p.degree // 2:
                break
            try:
                found = _trial_factor(p, d)
            except (OverflowError, ValueError):
                return None
            if found is not None:
                break
        if found is not None:
            pending.extend([found, p.exact_div(found)])
            continue
        if p.degree // 2 > 3:
            return None
        factors.append(p)
    return factors


def factor_monic(f: RationalPoly) -> list[tuple[RationalPoly, int]] | None:
    """Irreducible monic factors with multiplicities, or None when uncertified."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    out: dict[RationalPoly, int] = {}
    for s, k in squarefree_decomposition(f):
        parts = _split_squarefree(s)
        if parts is None:
            return None
        for p in parts:
            out[p] = out.get(p, 0) + k
    return sorted(out.items(), key=lambda item: (item[0].degree, item[0].coeffs))


def reciprocal_partner(p: RationalPoly) -> RationalPoly:
    """Monic polynomial whose roots are the inverses of the roots of p."""
    if p.coeff(0) == 0:
        raise ValueError("polynomial with root 0 has no reciprocal partner")
    return p.reversed().monic()


__all__ = ["factor_monic", "rational_roots", "reciprocal_partner", "squarefree_decomposition"]
