import random
from fractions import Fraction

import pytest

from nilform.exact import QMatrix, RationalPoly, companion_matrix, parse_poly
from nilform.forms import (
    ModuleMismatchError,
    compare_forms,
    forms_from_display,
    inertia,
    is_rational_square,
    parse_quadratic,
    proportionality_witness,
    real_scaling,
    render_quadratic,
    scalar_square_test,
)


def P(text):
    return parse_poly(text)


def norm_report(f_text, scale=1, display=None):
    f = P(f_text).monic()
    t = companion_matrix(f)
    text = display or "x^2 + x*y + y^2"
    r = forms_from_display([text], f, t)
    return forms_from_display([render_quadratic(r.grams[0].scale(scale))], f, t)


def test_render_parse_round_trip():
    rng = random.Random(31)
    names = ["x", "y", "z", "w"]
    for _ in range(20):
        rows = [[Fraction(0)] * 4 for _ in range(4)]
        for i in range(4):
            for j in range(i, 4):
                rows[i][j] = rows[j][i] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        g = QMatrix.from_rows(rows)
        assert parse_quadratic(render_quadratic(g, names), names) == g
    assert render_quadratic(QMatrix.from_rows([[1, Fraction(-3, 2)], [Fraction(-3, 2), 1]])) == "x^2 - 3*x*y + y^2"
    assert parse_quadratic("−x^2", ["x"]) == QMatrix.from_rows([[-1]])
    with pytest.raises(ValueError):
        parse_quadratic("x^3", ["x"])
    with pytest.raises(ValueError):
        parse_quadratic("q^2", ["x"])


def test_inertia():
    assert inertia(QMatrix.diagonal([1, -2, 0])) == (1, 1, 1)
    assert inertia(QMatrix.from_rows([[2, 1], [1, 2]])) == (2, 0, 0)


@pytest.mark.parametrize(
    "c, f, verdict",
    [(2, "2t^2 - 5t + 2", "no"), (3, "(1 - t + t^2)", "no"), (4, "t^2 - t + 1", "yes"), (-3, "t^2 - t + 1", "yes"), (3, "t^2 - 3t + 1", "no"), (5, "t^2 - 3t + 1", "yes")],
)
def test_scalar_square_test(c, f, verdict):
    assert scalar_square_test(c, P(f.strip("()"))) == verdict


def test_scalar_square_test_repeated_factor():
    f = P("t^2 - t + 1") * P("t^2 - t + 1")
    assert scalar_square_test(3, f) == "no"
    assert scalar_square_test(9, f) == "yes"
    with pytest.raises(ValueError):
        scalar_square_test(0, f)


def test_is_rational_square():
    assert is_rational_square(Fraction(9, 4))
    assert not is_rational_square(Fraction(2))
    assert not is_rational_square(Fraction(-1))


def test_proportionality_witness_finds_scalar():
    a = norm_report("t^2 - t + 1")
    b = norm_report("t^2 - t + 1", scale=Fraction(1, 3))
    w = proportionality_witness(a, b)
    assert w.c == 3 and w.u == RationalPoly([1])


def test_unit_substitution_scales_by_norm():
    # Q(u v) = N(u) Q(v) for the norm form of Q(sqrt(-3)); N(1 + t) = 3
    a = norm_report("t^2 - t + 1")
    b = norm_report("t^2 - t + 1", scale=3)
    cmp = compare_forms(b, a, height=2, unit_height=2)
    assert cmp.witness.c == 3
    assert cmp.square_test == "no"
    assert cmp.unit_witness is not None and cmp.verdict == "equivalent"


def test_not_a_norm_is_inequivalent():
    a = norm_report("t^2 - t + 1")
    b = norm_report("t^2 - t + 1", scale=-1)
    cmp = compare_forms(a, b, height=2, unit_height=2)
    assert cmp.verdict == "inequivalent" and cmp.unit_witness is None


def test_module_mismatch():
    with pytest.raises(ModuleMismatchError):
        proportionality_witness(norm_report("t^2 - t + 1"), norm_report("t^2 - 3t + 1", display="x^2 + 3*x*y + y^2"))


def test_real_scaling_identity():
    f = P("1 - t + t^2 - t^3 + t^4")
    r = forms_from_display(["x^2"], f, companion_matrix(f))
    d, delta = real_scaling(r)
    dm = r.t_action.apply_poly(d)
    assert dm @ dm == QMatrix.identity(4).scale(delta)
    # degree 2: S = t + 1/t is scalar, no real scaling
    assert real_scaling(norm_report("t^2 - t + 1")) is None
