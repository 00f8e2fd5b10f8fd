"""Wirtinger presentations, preferred longitudes and Alexander divisors."""

from __future__ import annotations

from dataclasses import dataclass

from ..exact.poly import RationalPoly, reciprocal_check
from ..exact.snf import PolyMatrix, smith_divisors
from ..freegroup import Word, fox_jacobian_row, inverse_word, laurent_rows_to_polys, reduce_word
from .pd import PDCode, parse_pd


@dataclass(frozen=True)
class WirtingerCrossing:
    """Relation gamma_k = gamma_j^-sign gamma_i gamma_j^sign with i, k, j the fields below."""

    under_in: int
    under_out: int
    over: int
    sign: int

    def relator(self) -> Word:
        """gamma_k^-1 gamma_j^-sign gamma_i gamma_j^sign."""
        j, s = self.over, self.sign
        return reduce_word([(self.under_out, -1), (j, -s), (self.under_in, 1), (j, s)])


@dataclass(frozen=True)
class WirtingerPresentation:
    """Arcs 0..arc_count-1 numbered along the knot, starting with the meridian arc 0."""

    arc_count: int
    crossings: tuple[WirtingerCrossing, ...]
    meridian_arc: int
    longitude: Word
    writhe: int

    @property
    def generators(self) -> list[int]:
        return list(range(self.arc_count))

    def relators(self) -> list[Word]:
        return [c.relator() for c in self.crossings]


def wirtinger(pd: PDCode | str) -> WirtingerPresentation:
    """Build the presentation, meridian arc and preferred longitude of a knot diagram.

    The meridian arc is the arc containing edge 1.  Walking from it, each
    under-passage s with over-arc O_s and sign e_s gives
    A_s = O_s^-e_s A_(s-1) O_s^e_s, so W = O_1^e_1 ... O_n^e_n commutes with A_0;
    the longitude is W A_0^-writhe.
    """
    pd = parse_pd(pd)
    n = pd.n_crossings
    if n == 0:
        return WirtingerPresentation(1, (), 0, (), 0)
    edges, passages = pd.walk()
    signs = pd.signs()
    # passage i is entered through edges[i-1] and left through edges[i]
    unders = [i for i, p in enumerate(passages) if p.under]
    # rotate so that the walk starts just after the under-passage opening the arc of edge 1
    size = len(passages)
    pos_of_edge = {e: i for i, e in enumerate(edges)}
    i1 = pos_of_edge[1]
    start = max((u for u in unders if u <= i1), default=unders[-1])
    order = [(start + r) % size for r in range(size)]
    arc_of_edge: dict[int, int] = {}
    arc = 0
    for r, idx in enumerate(order):
        if r > 0 and passages[idx].under:
            arc += 1
        arc_of_edge[edges[idx]] = arc
    if arc + 1 != n:
        raise AssertionError("arc count differs from crossing count")

    records: dict[int, WirtingerCrossing] = {}
    under_seq: list[int] = []
    for r, idx in enumerate(order):
        p = passages[idx]
        if not p.under:
            continue
        ci = p.crossing
        a, b, c, d = pd.crossings[ci]
        records[ci] = WirtingerCrossing(
            under_in=arc_of_edge[a], under_out=arc_of_edge[c], over=arc_of_edge[b], sign=signs[ci]
        )
        under_seq.append(ci)
    # under_seq[0] is the passage entering arc 0 (closing the loop); put it last
    under_seq = under_seq[1:] + under_seq[:1]
    w_letters = [(records[ci].over, records[ci].sign) for ci in under_seq]
    writhe = sum(signs)
    longitude = reduce_word(w_letters + [(0, -writhe)])
    crossings = tuple(records[ci] for ci in range(n))
    return WirtingerPresentation(n, crossings, 0, longitude, writhe)


class KnotModuleError(ArithmeticError):
    pass


@dataclass(frozen=True)
class DivisorData:
    divisors: tuple[RationalPoly, ...]

    @property
    def top(self) -> RationalPoly:
        return self.divisors[-1] if self.divisors else RationalPoly([1])

    @property
    def alexander(self) -> RationalPoly:
        """Product of the divisors, as a primitive integer polynomial."""
        prod = RationalPoly([1])
        for d in self.divisors:
            prod = prod * d
        return prod.primitive_integer()

    @property
    def degree(self) -> int:
        return sum(d.degree for d in self.divisors)

    def display(self) -> list[str]:
        return [d.primitive_integer().to_string() for d in self.divisors]


def alexander_matrix(w: WirtingerPresentation) -> PolyMatrix:
    """Abelianized Fox Jacobian with the meridian column deleted."""
    gens = w.generators
    degree = {g: 1 for g in gens}
    rows = [fox_jacobian_row(r, gens, degree) for r in w.relators()]
    polys = laurent_rows_to_polys(rows)
    keep = [g for g in gens if g != w.meridian_arc]
    return PolyMatrix.from_rows([[row[g] for g in keep] for row in polys]) if polys else PolyMatrix(0, 0, ())


def strip_t(f: RationalPoly) -> RationalPoly:
    """Remove powers of t, which are units over the Laurent ring."""
    k = 0
    while k < f.degree and f.coeff(k) == 0:
        k += 1
    return RationalPoly(f.coeffs[k:]).monic() if k else f


def alexander_divisors(w: WirtingerPresentation) -> DivisorData:
    """Elementary divisors f_1 | ... | f_n of the rational Alexander module."""
    if w.arc_count == 1:
        data = DivisorData(())
    else:
        data = DivisorData(tuple(d for d in map(strip_t, smith_divisors(alexander_matrix(w))) if d.degree > 0))
    for f in data.divisors:
        if not reciprocal_check(f):
            raise KnotModuleError(f"not a knot-like module: divisor {f} is not reciprocal")
        if f(1) == 0 or f(-1) == 0:
            raise KnotModuleError(f"not a knot-like module: divisor {f} vanishes at 1 or -1")
    return data


def check_longitude(w: WirtingerPresentation) -> None:
    """Total exponent of the longitude must vanish."""
    if sum(e for _, e in w.longitude):
        raise AssertionError("longitude is not null-homologous")


def meridian_commutes(w: WirtingerPresentation) -> Word:
    """The word m l m^-1 l^-1 (trivial in the knot group)."""
    m = ((w.meridian_arc, 1),)
    return reduce_word(list(m) + list(w.longitude) + list(inverse_word(m)) + list(inverse_word(w.longitude)))


__all__ = [
    "DivisorData",
    "KnotModuleError",
    "WirtingerCrossing",
    "WirtingerPresentation",
    "alexander_divisors",
    "alexander_matrix",
    "check_longitude",
    "wirtinger",
]
