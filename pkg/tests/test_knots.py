import json
import random
from fractions import Fraction

import pytest

from nilform.center import project_to_center
from nilform.exact import RationalPoly, companion_matrix, monic_normalize, parse_poly
from nilform.exact.matrix import vadd, vsub
from nilform.forms import compare_forms, evaluate_gram
from nilform.knots.invariant import combine, evaluate_invariant, hk_assignments, lift_assignment, lifted_elements, relation_holds
from nilform.knots.pd import NotAKnotError, PDError, braid_closure, parse_pd, pretzel
from nilform.knots.pipeline import qk_form
from nilform.knots.table import (
    TABLE_ENV,
    TableError,
    UnknownKnotError,
    bundled_table,
    knot_by_name,
    load_table,
    parse_pretzel,
)
from nilform.knots.wirtinger import alexander_divisors, meridian_commutes, wirtinger
from nilform.nilpotent import (
    Nil2Element,
    SemidirectElement,
    build_tau_lift,
    evaluate_word,
    random_linear_part,
    wedge,
)
from nilform.verify import fox_alexander

# Alexander polynomials from standard knot tables
ALEXANDER = {
    "3_1": "1 - t + t^2",
    "4_1": "1 - 3t + t^2",
    "5_1": "1 - t + t^2 - t^3 + t^4",
    "5_2": "2 - 3t + 2t^2",
    "6_1": "2 - 5t + 2t^2",
    "6_2": "1 - 3t + 3t^2 - 3t^3 + t^4",
    "6_3": "1 - 3t + 5t^2 - 3t^3 + t^4",
    "8_20": "1 - 2t + 3t^2 - 2t^3 + t^4",
}
TREFOIL = "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)"


def test_parse_pd_formats_agree():
    a = parse_pd(TREFOIL)
    b = parse_pd("X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]")
    c = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]")
    d = parse_pd(json.dumps([[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]))
    assert a == b == c == d
    assert a.n_crossings == 3


@pytest.mark.parametrize(
    "text",
    ["X(1,4,2)", "X(1,4,2,5);X(3,6,4,1);X(5,2,6,7)", "X(a,b,c,d)", "hello", "[[1,2,3"],
)
def test_parse_pd_errors(text):
    with pytest.raises(PDError):
        parse_pd(text)


def test_mirror_flips_writhe():
    pd = parse_pd(TREFOIL)
    assert pd.mirror().writhe() == -pd.writhe() == 3


def test_two_component_diagram_rejected():
    with pytest.raises(NotAKnotError):
        braid_closure([1, 1])


def test_pretzel_generator():
    pd = pretzel(3, 3, -3)
    assert pd.n_crossings == 9
    with pytest.raises(ValueError):
        pretzel(2, 3, 3)
    assert parse_pretzel(" 9, 3,-3") == (9, 3, -3)
    for bad in ("3,3", "a,b,c"):
        with pytest.raises(ValueError):
            parse_pretzel(bad)


@pytest.mark.parametrize("name", sorted(ALEXANDER))
def test_bundled_alexander_polynomials(name):
    w = wirtinger(bundled_table()[name])
    data = alexander_divisors(w)
    assert monic_normalize(data.alexander) == monic_normalize(parse_poly(ALEXANDER[name]))
    assert monic_normalize(data.alexander) == fox_alexander(parse_pd(bundled_table()[name]))


def test_pretzel_module():
    data = alexander_divisors(wirtinger(pretzel(3, 3, -3)))
    assert [monic_normalize(d) for d in data.divisors] == [monic_normalize(parse_poly("2t^2 - 5t + 2"))]


@pytest.mark.parametrize("name", sorted(ALEXANDER))
def test_wirtinger_longitude(name):
    w = wirtinger(bundled_table()[name])
    assert sum(e for _, e in w.longitude) == 0
    assert len(w.crossings) == w.arc_count


def test_trefoil_longitude_shape():
    w = wirtinger(TREFOIL)
    # three over-strand letters with alternating exponents after the writhe correction
    assert len(w.longitude) == 6
    assert sorted({g for g, _ in w.longitude}) == [0, 1, 2]


def test_unknot():
    for text in ("X(1,1,2,2)", "X(2,1,1,2)", ""):
        r = qk_form(text)
        assert r.divisors == () and r.hk_dimension == 0 and r.grams == ()


def test_stabilized_trefoil_gives_equivalent_form(suite):
    small = suite.knot("3_1")
    for word in ([-1, -1, -1, 2], [-1, -1, -1, -2]):
        big = qk_form(braid_closure(word))
        assert big.extra["alexander"] == small.extra["alexander"]
        cmp = compare_forms(small, big, height=2, unit_height=2)
        assert cmp.unit_witness is not None


def test_mirror_trefoil_negates_the_form(suite):
    left = suite.knot("3_1")
    right = qk_form(braid_closure([1, 1, 1]))
    assert right.grams == tuple(g.scale(-1) for g in left.grams)
    assert compare_forms(left, right, unit_height=2).verdict == "inequivalent"


def test_crossing_relation_oracle():
    # hand-derived commutator part of g_j g_i g_j^-1 under the product law
    rng = random.Random(21)
    t = companion_matrix(parse_poly("1 - t + t^2 - t^3 + t^4"))
    lift = build_tau_lift(t, random_linear_part(4, rng))
    rv = lambda n: tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n))  # noqa: E731
    for _ in range(5):
        ai, aj, bi, bj = rv(4), rv(4), rv(6), rv(6)
        gi = SemidirectElement(Nil2Element(ai, bi), 1)
        gj = SemidirectElement(Nil2Element(aj, bj), 1)
        r = evaluate_word([("j", 1), ("i", 1), ("j", -1)], {"i": gi, "j": gj}, lift)
        d = vsub(ai, aj)
        comm = vadd(
            vadd(vadd(wedge(aj, t @ d), bj), lift.quadratic(d)),
            lift.E @ vadd(vsub(bi, bj), vsub(wedge(aj, aj), wedge(ai, aj))),
        )
        assert r.n == 1
        assert r.g.ab == vadd(t @ d, aj)
        assert r.g.comm == comm


@pytest.mark.parametrize("name", ["3_1", "5_1", "6_1"])
def test_lift_solutions_satisfy_relations(name):
    rng = random.Random(22)
    pd = bundled_table()[name]
    w = wirtinger(pd)
    f_n = alexander_divisors(w).top
    t = companion_matrix(f_n)
    lift0 = build_tau_lift(t)
    lift1 = build_tau_lift(t, random_linear_part(t.rows, rng))
    basis = hk_assignments(w, lift0)
    coeffs = [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in basis]
    f = combine(basis, coeffs, t.rows, w.arc_count)
    values = []
    for lift in (lift0, lift1):
        elems = lifted_elements(f, w, lift)
        assert relation_holds(elems, w, lift)
        assert evaluate_word(meridian_commutes(w), elems, lift) == SemidirectElement.identity(t.rows)
        values.append(evaluate_invariant(f, w, lift))
    assert values[0] == values[1]
    assert lift_assignment(f, w, lift0) != lift_assignment(f, w, lift1) or t.rows == 2


@pytest.mark.parametrize("name", ["3_1", "5_1", "8_20"])
def test_form_properties(suite, name):
    r = suite.knot(name)
    assert r.isometry_ok and r.homogeneous_ok
    s = r.t_action
    for g in r.grams:
        assert g == g.T
        assert s.T @ g @ s == g
    # direct evaluation agrees with the Grams away from the polarization points
    w = wirtinger(bundled_table()[name])
    t = companion_matrix(r.module_poly)
    lift = build_tau_lift(t)
    rng = random.Random(23)
    for _ in range(2):
        v = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(r.hk_dimension))
        f = combine(r.extra["basis"], v, t.rows, w.arc_count)
        direct = project_to_center(evaluate_invariant(f, w, lift), r.center)
        assert direct == tuple(evaluate_gram(g, v) for g in r.grams)


def test_trefoil_form_is_the_norm(suite):
    r = suite.knot("3_1")
    assert r.display == ["x^2 + x*y + y^2"]
    assert r.center.rank == 1


def test_table_overlay_and_env(tmp_path, monkeypatch):
    user = tmp_path / "table.json"
    user.write_text(json.dumps({"mytrefoil": TREFOIL}))
    assert "mytrefoil" in load_table(user)
    assert "3_1" in load_table(user)
    monkeypatch.setenv(TABLE_ENV, str(user))
    assert knot_by_name("mytrefoil") == parse_pd(TREFOIL)
    with pytest.raises(UnknownKnotError, match="available: .*3_1"):
        knot_by_name("no_such_knot")


def test_corrupt_table(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(TableError):
        load_table(bad)
    bad.write_text(json.dumps(["X(1,2,3,4)"]))
    with pytest.raises(TableError):
        load_table(bad)
