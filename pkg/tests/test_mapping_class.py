from fractions import Fraction

import pytest

from nilform.exact import QMatrix, RationalPoly, parse_poly
from nilform.forms import compare_forms, forms_from_display, render_quadratic
from nilform.freegroup import inverse_word
from nilform.mapping_class import (
    DegenerateModuleError,
    FreeAutomorphism,
    TwistError,
    abelianize,
    alexander_polynomial,
    boundary_word,
    compose_twists,
    curve_count,
    homology_action,
    invariant_factors,
    is_symplectic,
    mapping_torus_presentation,
    parse_twist_word,
    qf_form,
    symplectic_form,
    torus_alexander_polynomial,
    twist_automorphism,
)

F1, F2 = "2 3 -4 -5 1", "2 3 3 3 -4 -5 1"
CHARPOLY = parse_poly("1 - 2t + 3t^2 - 2t^3 + t^4")


@pytest.fixture(scope="module")
def forms():
    return qf_form(compose_twists(2, F1)), qf_form(compose_twists(2, F2))


def test_boundary_word():
    assert len(boundary_word(1)) == 4
    assert len(boundary_word(3)) == 12
    with pytest.raises(ValueError):
        boundary_word(0)


@pytest.mark.parametrize("genus", [1, 2])
def test_twists_fix_boundary_and_invert(genus):
    for k in range(1, curve_count(genus) + 1):
        pos = twist_automorphism(genus, k, 1)
        neg = twist_automorphism(genus, k, -1)
        assert pos.fixes_boundary() and neg.fixes_boundary()
        assert pos.after(neg).is_identity() and neg.after(pos).is_identity()


@pytest.mark.parametrize("genus", [1, 2])
def test_twists_act_by_symplectic_transvections(genus):
    n = 2 * genus
    j = symplectic_form(genus)
    for k in range(1, curve_count(genus) + 1):
        m = homology_action(twist_automorphism(genus, k))
        assert is_symplectic(m, genus)
        d = m - QMatrix.identity(n)
        assert d @ d == QMatrix.zeros(n, n)
        assert d.rank() == 1
        # M v = v + <c, v> c: M - I is a positive multiple of c c^T J for any nonzero column c
        col = next(d.col(i) for i in range(n) if any(d.col(i)))
        outer = QMatrix.from_columns([col], n) @ QMatrix.from_rows([col]) @ j
        k = next(d.entries[i] / outer.entries[i] for i in range(n * n) if outer.entries[i])
        assert k > 0 and d == outer.scale(k)


def test_symplectic_form_convention():
    j = symplectic_form(2)
    assert j[0, 1] == 1 and j[1, 0] == -1 and j[2, 3] == 1


def test_empty_word_is_identity():
    assert compose_twists(2, "").is_identity()
    assert compose_twists(2, "3 -3").is_identity()


def test_parse_twist_word():
    assert parse_twist_word("2 3 -4") == ((2, 1), (3, 1), (4, -1))
    assert parse_twist_word("2,3,-4") == ((2, 1), (3, 1), (4, -1))
    with pytest.raises(TwistError):
        parse_twist_word("2 0")
    with pytest.raises(TwistError):
        parse_twist_word("2 x")


def test_unsupported_inputs():
    with pytest.raises(TwistError, match="genus 3"):
        compose_twists(3, "1")
    with pytest.raises(TwistError, match="valid: 1..6"):
        compose_twists(2, "7")


def test_degenerate_module_gate():
    with pytest.raises(DegenerateModuleError, match="degenerate module"):
        qf_form(compose_twists(2, ""))
    with pytest.raises(DegenerateModuleError):
        qf_form(compose_twists(2, "1"))


def test_composition_order():
    a, b = twist_automorphism(2, 2), twist_automorphism(2, 3)
    # "2 3": the rightmost twist acts first
    assert compose_twists(2, "2 3") == a.after(b)
    assert homology_action(compose_twists(2, "2 3")) == homology_action(a) @ homology_action(b)


def test_example_module():
    for word in (F1, F2):
        aut = compose_twists(2, word)
        m = homology_action(aut)
        assert is_symplectic(m, 2)
        assert alexander_polynomial(aut) == CHARPOLY
    a, b = (invariant_factors(homology_action(compose_twists(2, w))) for w in (F1, F2))
    assert a == b == [CHARPOLY]


def test_mapping_torus():
    ident = mapping_torus_presentation(FreeAutomorphism.identity(1))
    assert str(ident) == "< x1, x2, gamma | x1 gamma x1^-1 gamma^-1, x2 gamma x2^-1 gamma^-1 >"
    for word in (F1, F2):
        aut = compose_twists(2, word)
        assert torus_alexander_polynomial(mapping_torus_presentation(aut)) == CHARPOLY


def test_abelianize():
    assert abelianize(((1, 1), (2, -1), (1, 1)), 2) == (2, -1)
    assert abelianize(inverse_word(boundary_word(2)), 4) == (0, 0, 0, 0)


def test_f1_forms(forms):
    r1, _ = forms
    assert r1.hk_dimension == 4 and r1.center.rank == 2
    assert r1.extra["zeta_fixed"] and r1.extra["hf_dimension"] == 4
    assert r1.isometry_ok and r1.homogeneous_ok
    assert r1.display == [
        "2*x^2 + 3*x*y - 4*x*w + 2*y^2 + 3*y*z + 2*z^2 + 3*z*w + 2*w^2",
        "-x^2 - 2*x*y - x*z + 2*x*w - y^2 - 2*y*z - y*w - z^2 - 2*z*w - w^2",
    ]


def test_summed_forms_ratio_and_unit_witness(forms):
    r1, r2 = forms
    s1, s2 = r1.summed_gram(), r2.summed_gram()
    assert s2 == s1.scale(Fraction(1, 3))
    # an explicit unit with c = 1: Q1(v) = Q2((1 + t) v)
    u = r2.t_action.apply_poly(RationalPoly([1, 1]))
    assert u.T @ s2 @ u == s1


def test_full_forms_unit_witness_is_genuine(forms):
    r1, r2 = forms
    cmp = compare_forms(r1, r2, height=2, unit_height=2)
    w = cmp.unit_witness
    assert w is not None and w.c == 1
    um = r2.t_action.apply_poly(w.u)
    assert tuple(um.T @ r2.grams[p] @ um for p in w.permutation) == r1.grams


def test_conjugation_invariance(forms):
    r1, _ = forms
    conj = qf_form(compose_twists(2, "3 " + F1 + " -3"))
    assert conj.extra["char_poly"] == CHARPOLY
    cmp = compare_forms(r1, conj, height=2, unit_height=2)
    assert cmp.unit_witness is not None


def test_display_comparison_for_summed_form(forms):
    r1, _ = forms
    given = forms_from_display(["w^2 - 2*x*w + x^2 - w*y + x*y + y^2 + w*z - x*z + y*z + z^2"], r1.module_poly, r1.t_action)
    mine = forms_from_display([render_quadratic(r1.summed_gram(), r1.variables)], r1.module_poly, r1.t_action)
    assert given.grams == mine.grams
