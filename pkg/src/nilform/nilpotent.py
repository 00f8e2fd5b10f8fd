"""The rational free class-2 nilpotent group F/F_3 (x) Q and its automorphism lifts.

Elements are pairs ``(a, alpha)`` with ``a`` in F/F_2 (x) Q = Q^m and ``alpha``
in F_2/F_3 (x) Q = Q^(m(m-1)/2), multiplied by

    (a, alpha) . (b, beta) = (a + b, a ^ b + alpha + beta)

where ``^`` is the non-antisymmetric pairing with e_i ^ e_j = e_ij for i < j
and zero otherwise.  Commutator coordinates are ordered lexicographically on
(i, j), i < j.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Mapping, Sequence

from .exact.matrix import QMatrix, Vector, vadd, vec, vscale, vsub, zero_vec
from .exact.poly import format_rational


@lru_cache(maxsize=None)
def pair_index(m: int) -> dict[tuple[int, int], int]:
    """Map (i, j), 0 <= i < j < m, to its commutator coordinate."""
    idx = {}
    for i in range(m):
        for j in range(i + 1, m):
            idx[(i, j)] = len(idx)
    return idx


@lru_cache(maxsize=None)
def pairs(m: int) -> tuple[tuple[int, int], ...]:
    return tuple(pair_index(m))


def comm_dim(m: int) -> int:
    return m * (m - 1) // 2


def rank_from_comm_dim(c: int) -> int:
    m = 0
    while comm_dim(m) < c:
        m += 1
    if comm_dim(m) != c:
        raise ValueError(f"{c} is not a triangular number")
    return m


def wedge(x: Sequence, y: Sequence) -> Vector:
    """Coordinate (i, j) of x ^ y is x_i * y_j for i < j."""
    if len(x) != len(y):
        raise ValueError("rank mismatch in wedge")
    return tuple(x[i] * y[j] for i, j in pairs(len(x)))


def antisym(x: Sequence, y: Sequence) -> Vector:
    """x ^ y - y ^ x, the commutator pairing."""
    if len(x) != len(y):
        raise ValueError("rank mismatch in wedge")
    return tuple(x[i] * y[j] - y[i] * x[j] for i, j in pairs(len(x)))


@dataclass(frozen=True)
class Nil2Element:
    ab: Vector
    comm: Vector

    def __post_init__(self):
        object.__setattr__(self, "ab", vec(self.ab))
        object.__setattr__(self, "comm", vec(self.comm))
        if len(self.comm) != comm_dim(len(self.ab)):
            raise ValueError(
                f"commutator part has length {len(self.comm)}, expected {comm_dim(len(self.ab))}"
            )

    @property
    def rank(self) -> int:
        return len(self.ab)

    @classmethod
    def identity(cls, m: int) -> "Nil2Element":
        return cls(zero_vec(m), zero_vec(comm_dim(m)))

    @classmethod
    def central(cls, comm: Sequence) -> "Nil2Element":
        return cls(zero_vec(rank_from_comm_dim(len(comm))), comm)

    def is_identity(self) -> bool:
        return not any(self.ab) and not any(self.comm)

    def __mul__(self, other: "Nil2Element") -> "Nil2Element":
        return nil2_mul(self, other)

    def to_json(self) -> dict:
        return {
            "ab": [format_rational(v) for v in self.ab],
            "comm": [format_rational(v) for v in self.comm],
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> "Nil2Element":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(Fraction(s) for s in data["ab"]), tuple(Fraction(s) for s in data["comm"]))


def nil2_mul(g: Nil2Element, h: Nil2Element) -> Nil2Element:
    if g.rank != h.rank:
        raise ValueError("rank mismatch in group product")
    return Nil2Element(vadd(g.ab, h.ab), vadd(vadd(wedge(g.ab, h.ab), g.comm), h.comm))


def nil2_inv(g: Nil2Element) -> Nil2Element:
    return Nil2Element(vscale(-1, g.ab), vsub(wedge(g.ab, g.ab), g.comm))


def nil2_commutator(g: Nil2Element, h: Nil2Element) -> Nil2Element:
    """g h g^-1 h^-1, which is central: (0, a ^ b - b ^ a)."""
    if g.rank != h.rank:
        raise ValueError("rank mismatch in commutator")
    return Nil2Element(zero_vec(g.rank), antisym(g.ab, h.ab))


def nil2_pow(g: Nil2Element, n: int) -> Nil2Element:
    base = g if n >= 0 else nil2_inv(g)
    result = Nil2Element.identity(g.rank)
    for _ in range(abs(n)):
        result = nil2_mul(result, base)
    return result


def exterior_action(t: QMatrix) -> QMatrix:
    """Matrix E with E(x ^ y - y ^ x) = Tx ^ Ty - Ty ^ Tx on the basis e_ij."""
    m = t.rows
    cols = [t.col(i) for i in range(m)]
    return QMatrix.from_columns([antisym(cols[i], cols[j]) for i, j in pairs(m)], comm_dim(m))


@dataclass(frozen=True, eq=False)
class TauLift:
    """An automorphism tau(x, alpha) = (Tx, lambda(x) + E alpha) of F/F_3 (x) Q.

    ``B[k]`` is the symmetric matrix of commutator coordinate k of the
    bilinear map (x, y) -> Tx ^ Ty - E(x ^ y); lambda(x) = B(x, x)/2 + A x.
    """

    T: QMatrix
    E: QMatrix
    B: tuple[QMatrix, ...]
    A: QMatrix

    @property
    def rank(self) -> int:
        return self.T.rows

    @cached_property
    def _quadratic_terms(self) -> tuple[tuple[tuple[int, int, Fraction], ...], ...]:
        """Per coordinate, the nonzero coefficients of B(x, x)/2 on x_i x_j, i <= j."""
        out = []
        for b in self.B:
            terms = []
            for i in range(b.rows):
                if b[i, i]:
                    terms.append((i, i, b[i, i] / 2))
                for j in range(i + 1, b.cols):
                    if b[i, j]:
                        terms.append((i, j, b[i, j]))
            out.append(tuple(terms))
        return tuple(out)

    def quadratic(self, x: Sequence) -> Vector:
        """lambda(x)."""
        x = vec(x)
        lin = self.A @ x
        out = []
        for terms, l in zip(self._quadratic_terms, lin):
            total = l
            for i, j, c in terms:
                if x[i] and x[j]:
                    total += c * x[i] * x[j]
            out.append(total)
        return tuple(out)

    def bilinear(self, x: Sequence, y: Sequence) -> Vector:
        return tuple(_bform(b, x, y) for b in self.B)

    def __call__(self, g: Nil2Element) -> Nil2Element:
        return Nil2Element(self.T @ g.ab, vadd(self.quadratic(g.ab), self.E @ g.comm))

    @cached_property
    def inverse(self) -> "TauLift":
        """The lift of T^-1 whose linear part is corrected so that it inverts this lift."""
        t_inv = self.T.inverse()
        e_inv = self.E.inverse()
        # tau^-1(y, beta) = (T^-1 y, E^-1 (beta - lambda(T^-1 y)))
        a_inv = -(e_inv @ self.A @ t_inv)
        inv = build_tau_lift(t_inv, a_inv)
        object.__setattr__(inv, "inverse", self)
        return inv

    def power(self, g: Nil2Element, n: int) -> Nil2Element:
        f = self if n >= 0 else self.inverse
        for _ in range(abs(n)):
            g = f(g)
        return g


def _bform(b: QMatrix, x: Sequence, y: Sequence) -> Fraction:
    return sum((x[i] * b[i, j] * y[j] for i in range(b.rows) for j in range(b.cols) if b[i, j]), Fraction(0))


class SingularActionError(ValueError):
    pass


def build_tau_lift(t: QMatrix, a: QMatrix | None = None) -> TauLift:
    """Lift the linear action T on F/F_2 (x) Q to an automorphism of F/F_3 (x) Q.

    With ``a`` omitted the free linear part of lambda is zero.
    """
    if not t.is_square():
        raise ValueError("action must be a square matrix")
    if t.det() == 0:
        raise SingularActionError("action on the abelianization is singular")
    m = t.rows
    c = comm_dim(m)
    e = exterior_action(t)
    cols = [t.col(i) for i in range(m)]
    # B(e_i, e_j) = Te_i ^ Te_j - E(e_i ^ e_j)
    entries = [[None] * m for _ in range(m)]
    idx = pair_index(m)
    for i in range(m):
        for j in range(m):
            val = wedge(cols[i], cols[j])
            if i < j:
                val = vsub(val, e.col(idx[(i, j)]))
            entries[i][j] = val
    bs = []
    for k in range(c):
        bk = QMatrix.from_rows([[entries[i][j][k] for j in range(m)] for i in range(m)])
        if not bk.is_symmetric():
            raise ArithmeticError("bilinear part of the lift is not symmetric")
        bs.append(bk)
    if a is None:
        a = QMatrix.zeros(c, m)
    elif a.shape != (c, m):
        raise ValueError(f"linear part must be {c}x{m}")
    return TauLift(t, e, tuple(bs), a)


def random_linear_part(m: int, rng: random.Random, height: int = 5) -> QMatrix:
    """Random A for lift-independence checks."""
    c = comm_dim(m)
    return QMatrix(c, m, (Fraction(rng.randint(-height, height), rng.randint(1, 3)) for _ in range(c * m)))


def tau_apply(lift: TauLift, g: Nil2Element, power: int = 1) -> Nil2Element:
    return lift.power(g, power)


@dataclass(frozen=True)
class SemidirectElement:
    """Element (g, n) of (F/F_3 (x) Q) x| Z with (g, n)(h, k) = (g tau^n(h), n + k)."""

    g: Nil2Element
    n: int

    @classmethod
    def identity(cls, m: int) -> "SemidirectElement":
        return cls(Nil2Element.identity(m), 0)


def semidirect_mul(u: SemidirectElement, v: SemidirectElement, lift: TauLift) -> SemidirectElement:
    if u.g.rank != v.g.rank:
        raise ValueError("rank mismatch in semidirect product")
    return SemidirectElement(nil2_mul(u.g, lift.power(v.g, u.n)), u.n + v.n)


def semidirect_inv(u: SemidirectElement, lift: TauLift) -> SemidirectElement:
    return SemidirectElement(lift.power(nil2_inv(u.g), -u.n), -u.n)


def semidirect_pow(u: SemidirectElement, k: int, lift: TauLift) -> SemidirectElement:
    base = u if k >= 0 else semidirect_inv(u, lift)
    result = SemidirectElement.identity(u.g.rank)
    for _ in range(abs(k)):
        result = semidirect_mul(result, base, lift)
    return result


class UnassignedGeneratorError(KeyError):
    pass


def evaluate_word(word: Sequence[tuple[object, int]], assignment: Mapping, lift: TauLift) -> SemidirectElement:
    """Left-to-right product of assigned elements raised to their exponents."""
    result = SemidirectElement.identity(lift.rank)
    for gen, exp in word:
        if gen not in assignment:
            raise UnassignedGeneratorError(f"generator {gen!r} has no assigned value")
        result = semidirect_mul(result, semidirect_pow(assignment[gen], exp, lift), lift)
    return result
