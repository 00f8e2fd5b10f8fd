import random
from fractions import Fraction

import pytest

from nilform.center import (
    HypothesisError,
    NotCentralError,
    canonical_central_elements,
    center_basis,
    center_rank_formula,
    center_report,
    project_to_center,
)
from nilform.exact import QMatrix, RationalPoly, companion_matrix, cyclotomic, parse_poly
from nilform.exact.matrix import vadd, vscale
from nilform.nilpotent import build_tau_lift, comm_dim, pair_index, random_linear_part
from nilform.verify import block_companion, rank_corpus


def P(text):
    return parse_poly(text).monic()


def e_vec(m, terms):
    idx = pair_index(m)
    v = [Fraction(0)] * comm_dim(m)
    for (i, j), c in terms.items():
        v[idx[(i - 1, j - 1)]] = Fraction(c)
    return tuple(v)


@pytest.mark.parametrize(
    "text, rank", [("t^2 - t + 1", 1), ("t^4 - t^3 + t^2 - t + 1", 2), ("t^4 - 2t^3 + 3t^2 - 2t + 1", 2), ("t^2 - 3t + 1", 1)]
)
def test_center_rank_examples(text, rank):
    report = center_basis(build_tau_lift(companion_matrix(P(text))))
    assert report.rank == rank
    assert center_rank_formula([P(text)]) == rank


def test_trefoil_center_is_e12():
    report = center_basis(build_tau_lift(companion_matrix(P("t^2 - t + 1"))))
    assert report.basis == ((1,),)


def test_rank_formula_hypothesis():
    with pytest.raises(HypothesisError):
        center_rank_formula([P("t^2 - 2t + 1")])
    with pytest.raises(HypothesisError):
        center_rank_formula([P("t^2 + 2t + 1")])


def test_kernel_method_needs_no_hypothesis():
    # Delta(1) = 0: the formula does not apply but the kernel still answers
    report = center_report(companion_matrix(P("t^2 - 2t + 1")))
    assert report.formula_rank is None
    assert report.rank >= 0


def test_rank_formula_matches_kernel_on_corpus():
    corpus = rank_corpus()
    assert len(corpus) >= 30
    for label, divisors in corpus:
        formula = center_rank_formula(divisors)
        kernel = center_basis(build_tau_lift(block_companion(divisors))).rank
        assert formula is not None, label
        assert formula == kernel, label


def test_cyclic_reciprocal_rank_is_half_degree():
    for n in (3, 5, 7, 9, 12, 15):
        f = cyclotomic(n)
        assert center_basis(build_tau_lift(companion_matrix(f))).rank == f.degree // 2


def test_center_is_lift_independent():
    rng = random.Random(5)
    t = companion_matrix(P("t^4 - t^3 + t^2 - t + 1"))
    base = center_basis(build_tau_lift(t))
    for _ in range(3):
        assert center_basis(build_tau_lift(t, random_linear_part(4, rng))).basis == base.basis


def test_canonical_g1():
    res = canonical_central_elements(P("t^2 - t + 1"))
    assert res.elements == (e_vec(2, {(1, 2): 1}),)


def test_canonical_g2_closed_forms_and_recursion_discrepancy():
    f = P("t^4 - t^3 + t^2 - t + 1")
    a = [f.coeff(i) for i in range(5)]
    res = canonical_central_elements(f)
    c1 = e_vec(4, {(1, 2): 1, (1, 4): 1, (2, 3): 1 - a[2], (3, 4): 1})
    c2 = e_vec(4, {(1, 3): 1, (2, 3): a[1], (2, 4): 1})
    assert res.elements == (c1, c2)
    # the recursion for l = 1 is not central here; the closed form is
    assert res.recursion_central == (False, True)
    assert res.listed_central == (True, True)


def test_canonical_g3_closed_form_c3():
    f = P("1 - t + t^3 - t^5 + t^6")
    a = [f.coeff(i) for i in range(7)]
    res = canonical_central_elements(f)
    c3 = e_vec(6, {(1, 4): 1, (2, 4): a[1], (2, 5): 1, (3, 4): a[2], (3, 5): a[1], (3, 6): 1})
    assert res.elements[2] == c3


def test_canonical_elements_fixed_and_independent():
    for text in ["1 + t + t^2 + t^3 + t^4", "1 - 3t + 5t^2 - 3t^3 + t^4", "1 - 2t + 2t^2 - 3t^3 + 2t^4 - 2t^5 + t^6"]:
        f = P(text)
        e = build_tau_lift(companion_matrix(f)).E
        res = canonical_central_elements(f)
        assert all(e @ c == c for c in res.elements)
        assert QMatrix.from_columns(res.elements, e.rows).rank() == f.degree // 2


def test_canonical_rejects_bad_input():
    with pytest.raises(ValueError):
        canonical_central_elements(P("t^3 - t + 1"))
    with pytest.raises(ValueError):
        canonical_central_elements(P("t^2 - 3t + 2"))


def test_project_to_center():
    f = P("t^4 - t^3 + t^2 - t + 1")
    report = center_report(companion_matrix(f), [f])
    c1, c2 = report.coordinates
    assert project_to_center(c1, report) == (1, 0)
    assert project_to_center(vadd(c1, vscale(2, c2)), report) == (1, 2)
    with pytest.raises(NotCentralError, match="element not central"):
        project_to_center(e_vec(4, {(1, 3): 1}), report)
