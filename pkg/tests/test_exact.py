import random
from fractions import Fraction

import pytest

from nilform.exact import (
    PolyMatrix,
    QMatrix,
    RationalPoly,
    companion_matrix,
    cyclotomic,
    format_rational,
    kernel_basis,
    monic_normalize,
    parse_poly,
    poly_gcd,
    reciprocal_check,
    smith_divisors,
    solve_unique,
)
from nilform.exact.factor import factor_monic, reciprocal_partner, squarefree_decomposition
from nilform.exact.matrix import LinearSystemError


def P(text):
    return parse_poly(text)


def test_rationals_are_reduced_and_rendered_as_strings():
    assert format_rational(Fraction(6, -4)) == "-3/2"
    assert format_rational(Fraction(4, 2)) == "2"


@pytest.mark.parametrize(
    "text, expected",
    [("t^2 - 3t + 1", True), ("t - 2", False), ("2t^2 - 5t + 2", True), ("1 - t + t^2 - t^3 + t^4", True), ("t^2 + 2t + 3", False)],
)
def test_reciprocal_check(text, expected):
    assert reciprocal_check(P(text)) is expected


def test_reciprocal_check_rejects_zero():
    with pytest.raises(ValueError, match="zero polynomial has no reciprocity status"):
        reciprocal_check(RationalPoly([]))


def test_monic_normalize():
    assert monic_normalize(P("2t^2 - 5t + 2")) == RationalPoly([1, Fraction(-5, 2), 1])
    assert monic_normalize(P("t^2 - t + 1")) == P("t^2 - t + 1")
    assert monic_normalize(RationalPoly([3])) == RationalPoly([1])
    with pytest.raises(ValueError):
        monic_normalize(RationalPoly([]))


def test_parse_and_render_round_trip():
    for text in ["1 - 3/2*t + t^2", "-t^3 + 7", "t", "5/3"]:
        f = P(text)
        assert P(str(f)) == f
    with pytest.raises(ValueError):
        P("1 + + t")


def test_companion_convention():
    assert companion_matrix(P("t^2 - t + 1")) == QMatrix.from_rows([[0, -1], [1, 1]])
    assert companion_matrix(P("t - 1")) == QMatrix.from_rows([[1]])
    c = companion_matrix(P("t^4 - t^3 + t^2 - t + 1"))
    assert c.col(3) == (-1, 1, -1, 1)
    # t e_i = e_(i+1)
    for i in range(3):
        assert c.col(i) == tuple(1 if k == i + 1 else 0 for k in range(4))
    with pytest.raises(ValueError):
        companion_matrix(P("2t^2 + 1"))


def test_companion_charpoly_is_the_polynomial():
    rng = random.Random(1)
    for _ in range(10):
        coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(rng.randint(1, 6))] + [1]
        f = RationalPoly(coeffs)
        assert companion_matrix(f).charpoly() == f


def test_kernel_basis_examples():
    assert len(kernel_basis(QMatrix.zeros(2, 2))) == 2
    assert kernel_basis(QMatrix.identity(3)) == []
    (v,) = kernel_basis(QMatrix.from_rows([[1, 1], [1, 1]]))
    assert v[0] + v[1] == 0 and v != (0, 0)


def test_kernel_basis_random_oracle():
    rng = random.Random(2)
    for _ in range(20):
        r, c = rng.randint(1, 5), rng.randint(1, 6)
        m = QMatrix.from_rows([[rng.randint(-2, 2) for _ in range(c)] for _ in range(r)])
        basis = kernel_basis(m)
        assert len(basis) == c - m.rank()
        for v in basis:
            assert m @ v == (0,) * r


def test_solve_unique_and_inverse():
    m = QMatrix.from_rows([[2, 1], [1, 3]])
    x = solve_unique(m, (3, 5))
    assert m @ x == (3, 5)
    assert m @ m.inverse() == QMatrix.identity(2)
    with pytest.raises(LinearSystemError):
        solve_unique(QMatrix.from_rows([[1, 1], [1, 1]]), (1, 2))


def test_gcd_and_division():
    f = P("t - 1")
    g = P("t^2 - 1")
    assert poly_gcd(f * P("t + 2"), g) == monic_normalize(f)
    q, r = g.divmod(f)
    assert q * f + r == g and r.is_zero()


def test_cyclotomic():
    assert cyclotomic(6) == P("t^2 - t + 1")
    assert cyclotomic(10) == P("t^4 - t^3 + t^2 - t + 1")
    prod = RationalPoly([1])
    for d in (1, 2, 3, 4, 6, 12):
        prod = prod * cyclotomic(d)
    assert prod == P("t^12 - 1")


def test_smith_divisors_of_diagonal_input():
    a = P("t - 2")
    b = a * P("t + 3")
    m = PolyMatrix.diagonal([b, a])
    assert [monic_normalize(d) for d in smith_divisors(m) if d.degree > 0] == [monic_normalize(a), monic_normalize(b)]


def test_smith_divisors_product_equals_determinant_random():
    rng = random.Random(3)
    for _ in range(8):
        n = rng.randint(2, 3)
        rows = [[RationalPoly([rng.randint(-2, 2) for _ in range(rng.randint(1, 3))]) for _ in range(n)] for _ in range(n)]
        m = PolyMatrix.from_rows(rows)
        det = m.determinant()
        if det.is_zero():
            continue
        divisors = smith_divisors(m)
        prod = RationalPoly([1])
        for d in divisors:
            prod = prod * d
        assert monic_normalize(prod) == monic_normalize(det)
        for lo, hi in zip(divisors, divisors[1:]):
            assert lo.divides(hi)


def test_squarefree_and_factor():
    f = P("t^2 - t + 1") * P("t^2 - t + 1") * P("t - 3")
    parts = squarefree_decomposition(f)
    assert sorted((str(p), k) for p, k in parts) == sorted([("-3 + t", 1), ("1 - t + t^2", 2)])
    factors = factor_monic(monic_normalize(f))
    assert factors is not None
    prod = RationalPoly([1])
    for p, k in factors:
        prod = prod * p ** k
    assert prod == monic_normalize(f)


def test_reciprocal_partner():
    assert reciprocal_partner(P("t - 2")) == P("t - 1/2")
    assert reciprocal_partner(P("t^2 - t + 1")) == P("t^2 - t + 1")
