"""Univariate polynomials over Q with exact coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {value!r} to an exact rational")


def format_rational(value: Fraction) -> str:
    """Render as ``p`` or ``p/q``."""
    value = as_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class RationalPoly:
    """Immutable polynomial ``sum c_i t^i``; ``coeffs[i]`` is the coefficient of t^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # construction helpers
    @classmethod
    def constant(cls, c) -> "RationalPoly":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=1) -> "RationalPoly":
        return cls([0] * degree + [c])

    @classmethod
    def t(cls) -> "RationalPoly":
        return cls([0, 1])

    @classmethod
    def parse(cls, text: str) -> "RationalPoly":
        return parse_poly(text)

    # basic properties
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # arithmetic
    def __add__(self, other) -> "RationalPoly":
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "RationalPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "RationalPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "RationalPoly":
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RationalPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = RationalPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "RationalPoly") -> tuple["RationalPoly", "RationalPoly"]:
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = c / lead
            quot[k - dq] = q
            for i, b in enumerate(other.coeffs):
                rem[k - dq + i] -= q * b
        return RationalPoly(quot), RationalPoly(rem)

    def __floordiv__(self, other) -> "RationalPoly":
        return self.divmod(other)[0]

    def __mod__(self, other) -> "RationalPoly":
        return self.divmod(other)[1]

    def divides(self, other: "RationalPoly") -> bool:
        """True iff self | other."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def exact_div(self, other: "RationalPoly") -> "RationalPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def scale(self, c) -> "RationalPoly":
        c = as_fraction(c)
        return RationalPoly(c * a for a in self.coeffs)

    def derivative(self) -> "RationalPoly":
        return RationalPoly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def shift(self, k: int) -> "RationalPoly":
        """Multiply by t^k (k >= 0)."""
        if self.is_zero():
            return self
        return RationalPoly([0] * k + list(self.coeffs))

    def reversed(self) -> "RationalPoly":
        """t^deg * f(1/t)."""
        return RationalPoly(reversed(self.coeffs))

    def compose(self, other: "RationalPoly") -> "RationalPoly":
        acc = RationalPoly()
        for c in reversed(self.coeffs):
            acc = acc * other + RationalPoly([c])
        return acc

    # normal forms
    def monic(self) -> "RationalPoly":
        return monic_normalize(self)

    def primitive_integer(self) -> "RationalPoly":
        """Clear denominators to a primitive integer polynomial with positive leading coefficient."""
        if self.is_zero():
            return self
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, (abs(v) for v in ints), 0)
        sign = 1 if ints[-1] > 0 else -1
        return RationalPoly(Fraction(sign * v, g) for v in ints)

    def is_unit(self) -> bool:
        return self.degree == 0

    # comparison / hashing
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalPoly([other])
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RationalPoly({self.to_string()!r})"

    def __str__(self) -> str:
        return self.to_string()

    def to_string(self, var: str = "t") -> str:
        """Ascending-order text, e.g. ``1 - t + t^2``; parseable by :func:`parse_poly`."""
        if self.is_zero():
            return "0"
        parts: list[str] = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = format_rational(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)


def _coerce(value) -> RationalPoly:
    if isinstance(value, RationalPoly):
        return value
    return RationalPoly([value])


_TERM = re.compile(
    r"""^(?P<coef>\d+(?:/\d+)?)?\s*\*?\s*(?:(?P<var>t)(?:\s*\^\s*(?P<exp>\d+))?)?$"""
)


def parse_poly(text: str) -> RationalPoly:
    """Parse ``"1 - t + t^2"``, ``"2*t^2 - 5*t + 2"``, ``"3/2*t"``; any term order."""
    if not isinstance(text, str) or not text.strip():
        raise ValueError("empty polynomial text")
    s = text.replace("−", "-").replace(" ", "").replace("\t", "")
    if s[0] not in "+-":
        s = "+" + s
    tokens = re.findall(r"([+-])([^+-]+)", s)
    if "".join(sign + body for sign, body in tokens) != s:
        raise ValueError(f"malformed polynomial: {text!r}")
    acc: dict[int, Fraction] = {}
    for sign, body in tokens:
        m = _TERM.match(body)
        if not m or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"malformed term {body!r} in {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("var"):
            exp = int(m.group("exp")) if m.group("exp") else 1
        else:
            exp = 0
        if sign == "-":
            coef = -coef
        acc[exp] = acc.get(exp, Fraction(0)) + coef
    top = max(acc) if acc else 0
    return RationalPoly(acc.get(i, 0) for i in range(top + 1))


def monic_normalize(f: RationalPoly) -> RationalPoly:
    if f.is_zero():
        raise ValueError("cannot normalize the zero polynomial")
    return f.scale(1 / f.leading)


def reciprocal_check(f: RationalPoly) -> bool:
    """True iff t^deg f(1/t) is a scalar multiple of f (palindromic up to scaling)."""
    if f.is_zero():
        raise ValueError("zero polynomial has no reciprocity status")
    g = monic_normalize(f)
    r = g.reversed()
    # reversal drops degree when the constant term vanishes
    if r.degree != g.degree:
        return False
    return monic_normalize(r) == g


def poly_gcd(f: RationalPoly, g: RationalPoly) -> RationalPoly:
    """Monic gcd (zero if both are zero)."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return monic_normalize(a)


def poly_lcm(f: RationalPoly, g: RationalPoly) -> RationalPoly:
    if f.is_zero() or g.is_zero():
        return RationalPoly()
    return monic_normalize((f * g) // poly_gcd(f, g))


def poly_extended_gcd(f: RationalPoly, g: RationalPoly):
    """Return (d, s, u) with s*f + u*g = d, d monic gcd."""
    r0, r1 = f, g
    s0, s1 = RationalPoly([1]), RationalPoly()
    u0, u1 = RationalPoly(), RationalPoly([1])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    if r0.is_zero():
        return r0, s0, u0
    lead = r0.leading
    return r0.scale(1 / lead), s0.scale(1 / lead), u0.scale(1 / lead)


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> RationalPoly:
    """The n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    f = RationalPoly.monomial(n) - 1
    for d in range(1, n):
        if n % d == 0:
            f = f.exact_div(cyclotomic(d))
    return f


def poly_from_ints(coeffs: Sequence[int]) -> RationalPoly:
    return RationalPoly(coeffs)
