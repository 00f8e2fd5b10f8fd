"""Words in free groups, free reduction, and Fox derivatives."""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .exact.poly import RationalPoly

Letter = tuple[Hashable, int]
Word = tuple[Letter, ...]


def reduce_word(letters: Iterable[Letter]) -> Word:
    """Freely reduce; exponents other than +-1 are expanded first."""
    out: list[Letter] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        step = 1 if exp > 0 else -1
        for _ in range(abs(exp)):
            if out and out[-1][0] == gen and out[-1][1] == -step:
                out.pop()
            else:
                out.append((gen, step))
    return tuple(out)


def inverse_word(word: Sequence[Letter]) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


def concat(*words: Sequence[Letter]) -> Word:
    return reduce_word(letter for w in words for letter in w)


def commutator(u: Sequence[Letter], v: Sequence[Letter]) -> Word:
    """[u, v] = u v u^-1 v^-1."""
    return concat(u, v, inverse_word(u), inverse_word(v))


def substitute(word: Sequence[Letter], images: Mapping[Hashable, Sequence[Letter]]) -> Word:
    out: list[Letter] = []
    for gen, exp in word:
        img = images[gen] if gen in images else ((gen, 1),)
        piece = img if exp > 0 else inverse_word(img)
        for _ in range(abs(exp)):
            out.extend(piece)
    return reduce_word(out)


def exponent_sum(word: Sequence[Letter], gen: Hashable) -> int:
    return sum(e for g, e in word if g == gen)


def format_word(word: Sequence[Letter], names: Callable[[Hashable], str] = str) -> str:
    if not word:
        return "1"
    parts = []
    for g, e in word:
        parts.append(names(g) if e == 1 else f"{names(g)}^{e}")
    return " ".join(parts)


class Laurent:
    """Sparse Laurent polynomial in t with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Fraction] | None = None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v != 0}

    def add_term(self, exp: int, coef) -> None:
        v = self.terms.get(exp, Fraction(0)) + coef
        if v:
            self.terms[exp] = v
        else:
            self.terms.pop(exp, None)

    def min_exponent(self) -> int | None:
        return min(self.terms) if self.terms else None

    def shifted_poly(self, shift: int) -> RationalPoly:
        """t^shift * self as an ordinary polynomial (shift must clear negative powers)."""
        if not self.terms:
            return RationalPoly()
        lo = min(self.terms) + shift
        if lo < 0:
            raise ValueError("shift does not clear negative exponents")
        top = max(self.terms) + shift
        return RationalPoly(self.terms.get(k - shift, 0) for k in range(top + 1))


def fox_jacobian_row(
    relator: Sequence[Letter], generators: Sequence[Hashable], degree: Mapping[Hashable, int]
) -> list[Laurent]:
    """Abelianized Fox derivatives of one relator.

    Each generator g is sent to t^degree[g].  Uses d(uv) = du + u dv,
    d(x)/dx = 1 and d(x^-1)/dx = -x^-1.
    """
    derivs: dict[Hashable, Laurent] = defaultdict(Laurent)
    prefix = 0
    for gen, exp in relator:
        step = 1 if exp > 0 else -1
        for _ in range(abs(exp)):
            if step > 0:
                derivs[gen].add_term(prefix, 1)
                prefix += degree[gen]
            else:
                prefix -= degree[gen]
                derivs[gen].add_term(prefix, -1)
    return [derivs[g] if g in derivs else Laurent() for g in generators]


def laurent_rows_to_polys(rows: Sequence[Sequence[Laurent]]) -> list[list[RationalPoly]]:
    """Multiply each row by the power of t clearing its negative exponents."""
    out = []
    for row in rows:
        mins = [e.min_exponent() for e in row if e.min_exponent() is not None]
        shift = -min(mins) if mins else 0
        out.append([e.shifted_poly(shift) for e in row])
    return out
