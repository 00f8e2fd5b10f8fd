"""Smith normal form over Q[t]."""

from __future__ import annotations

from typing import Sequence

from .poly import RationalPoly, monic_normalize


class PolyMatrix:
    """Dense matrix with RationalPoly entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[RationalPoly]):
        entries = tuple(e if isinstance(e, RationalPoly) else RationalPoly([e]) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "PolyMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, 0, ())
        return cls(len(rows), len(rows[0]), [e for r in rows for e in r])

    @classmethod
    def diagonal(cls, polys: Sequence[RationalPoly]) -> "PolyMatrix":
        n = len(polys)
        zero = RationalPoly()
        return cls(n, n, [polys[i] if i == j else zero for i in range(n) for j in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> RationalPoly:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[RationalPoly]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def delete_column(self, j: int) -> "PolyMatrix":
        rows = self.to_rows()
        return PolyMatrix.from_rows([r[:j] + r[j + 1:] for r in rows]) if rows else self

    def determinant(self) -> RationalPoly:
        """Laplace expansion along the first row, memoized on column subsets."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        rows = self.to_rows()
        memo: dict[tuple[int, int], RationalPoly] = {}

        def minor(r: int, mask: int) -> RationalPoly:
            if r == n:
                return RationalPoly([1])
            key = (r, mask)
            if key in memo:
                return memo[key]
            acc = RationalPoly()
            sign = 1
            for c in range(n):
                if mask & (1 << c):
                    continue
                e = rows[r][c]
                if not e.is_zero():
                    term = e * minor(r + 1, mask | (1 << c))
                    acc = acc + term if sign > 0 else acc - term
                sign = -sign
            memo[key] = acc
            return acc

        return minor(0, 0)


def smith_diagonal(m: PolyMatrix) -> list[RationalPoly]:
    """Diagonal of the Smith form (monic, nonzero entries, chain order)."""
    a = m.to_rows()
    nr, nc = m.rows, m.cols
    diag: list[RationalPoly] = []
    k = 0
    while k < min(nr, nc):
        pos = _min_degree_position(a, k, nr, nc)
        if pos is None:
            break
        i, j = pos
        a[k], a[i] = a[i], a[k]
        for row in a:
            row[k], row[j] = row[j], row[k]
        while True:
            changed = False
            piv = a[k][k]
            for r in range(k + 1, nr):
                if a[r][k].is_zero():
                    continue
                q, rem = a[r][k].divmod(piv)
                a[r] = [x - q * y for x, y in zip(a[r], a[k])]
                if not rem.is_zero():
                    changed = True
            for c in range(k + 1, nc):
                if a[k][c].is_zero():
                    continue
                q, rem = a[k][c].divmod(piv)
                for row in a:
                    row[c] = row[c] - q * row[k]
                if not rem.is_zero():
                    changed = True
            if changed:
                pos = _min_degree_position(a, k, nr, nc, only_cross=True)
                i, j = pos
                a[k], a[i] = a[i], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
                continue
            bad = next(
                (r for r in range(k + 1, nr) for c in range(k + 1, nc) if not piv.divides(a[r][c])),
                None,
            )
            if bad is None:
                break
            a[k] = [x + y for x, y in zip(a[k], a[bad])]
        diag.append(monic_normalize(a[k][k]))
        k += 1
    return diag


def _min_degree_position(a, k, nr, nc, only_cross=False):
    best = None
    if only_cross:
        cells = [(r, k) for r in range(k, nr)] + [(k, c) for c in range(k + 1, nc)]
    else:
        cells = [(r, c) for r in range(k, nr) for c in range(k, nc)]
    for r, c in cells:
        e = a[r][c]
        if e.is_zero():
            continue
        key = (e.degree, r, c)
        if best is None or key < best:
            best = key
    if best is None:
        return None
    return best[1], best[2]


def smith_divisors(m: PolyMatrix) -> list[RationalPoly]:
    """Nonunit monic elementary divisors d_1 | d_2 | ... of M over Q[t]."""
    return [d for d in smith_diagonal(m) if d.degree > 0]
