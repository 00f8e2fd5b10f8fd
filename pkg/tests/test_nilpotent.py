import json
import random
from fractions import Fraction

import pytest

from nilform.exact import QMatrix, companion_matrix, parse_poly
from nilform.exact.matrix import vadd, vsub
from nilform.nilpotent import (
    Nil2Element,
    SemidirectElement,
    SingularActionError,
    antisym,
    build_tau_lift,
    comm_dim,
    evaluate_word,
    exterior_action,
    nil2_commutator,
    nil2_inv,
    nil2_mul,
    nil2_pow,
    pairs,
    random_linear_part,
    semidirect_inv,
    semidirect_mul,
    wedge,
)

POLYS = ["1 - t + t^2", "1 - 3t + t^2", "2 - 5t + 2t^2", "1 - t + t^2 - t^3 + t^4", "1 - 2t + 3t^2 - 2t^3 + t^4"]


def rand_vec(rng, n):
    return tuple(Fraction(rng.randint(-7, 7), rng.randint(1, 3)) for _ in range(n))


def rand_elem(rng, m):
    return Nil2Element(rand_vec(rng, m), rand_vec(rng, comm_dim(m)))


def lifts(rng):
    for text in POLYS:
        t = companion_matrix(parse_poly(text).monic())
        yield t, build_tau_lift(t, random_linear_part(t.rows, rng))


def test_pairing_on_basis():
    m = 3
    e = [tuple(1 if k == i else 0 for k in range(m)) for i in range(m)]
    index = {p: k for k, p in enumerate(pairs(m))}
    assert wedge(e[0], e[1]) == tuple(1 if k == index[(0, 1)] else 0 for k in range(3))
    assert wedge(e[1], e[0]) == (0, 0, 0)
    assert wedge(e[2], e[2]) == (0, 0, 0)


def test_group_axioms_random():
    rng = random.Random(11)
    for _ in range(40):
        m = rng.randint(1, 5)
        a, b, c = (rand_elem(rng, m) for _ in range(3))
        e = Nil2Element.identity(m)
        assert nil2_mul(nil2_mul(a, b), c) == nil2_mul(a, nil2_mul(b, c))
        assert nil2_mul(a, e) == a == nil2_mul(e, a)
        assert nil2_mul(a, nil2_inv(a)) == e == nil2_mul(nil2_inv(a), a)


def test_commutator_is_central_and_antisymmetric():
    rng = random.Random(12)
    for _ in range(20):
        m = rng.randint(2, 4)
        a, b, c = (rand_elem(rng, m) for _ in range(3))
        k = nil2_commutator(a, b)
        direct = nil2_mul(nil2_mul(a, b), nil2_mul(nil2_inv(a), nil2_inv(b)))
        assert k == direct
        assert nil2_mul(k, c) == nil2_mul(c, k)
        assert k.comm == antisym(a.ab, b.ab)
        assert nil2_commutator(b, a) == nil2_inv(k)


def test_power_law():
    rng = random.Random(13)
    a = rand_elem(rng, 3)
    assert nil2_pow(a, 3) == nil2_mul(a, nil2_mul(a, a))
    assert nil2_pow(a, -2) == nil2_inv(nil2_pow(a, 2))


def test_exterior_action_rule():
    rng = random.Random(14)
    for t, lift in lifts(rng):
        e = exterior_action(t)
        assert e == lift.E
        for _ in range(5):
            x, y = rand_vec(rng, t.rows), rand_vec(rng, t.rows)
            assert e @ antisym(x, y) == antisym(t @ x, t @ y)


def test_bilinear_part_symmetric_and_polarizes_lambda():
    rng = random.Random(15)
    for t, lift in lifts(rng):
        assert all(b == b.T for b in lift.B)
        for _ in range(5):
            x, y = rand_vec(rng, t.rows), rand_vec(rng, t.rows)
            lhs = vsub(vsub(lift.quadratic(vadd(x, y)), lift.quadratic(x)), lift.quadratic(y))
            rhs = vsub(wedge(t @ x, t @ y), lift.E @ wedge(x, y))
            assert lhs == rhs == lift.bilinear(x, y)


def test_tau_is_an_automorphism():
    rng = random.Random(16)
    for t, lift in lifts(rng):
        for _ in range(5):
            g, h = rand_elem(rng, t.rows), rand_elem(rng, t.rows)
            assert lift(nil2_mul(g, h)) == nil2_mul(lift(g), lift(h))
            assert lift.inverse(lift(g)) == g == lift(lift.inverse(g))


def test_semidirect_product_law():
    rng = random.Random(17)
    t, lift = next(lifts(rng))
    m = t.rows
    u = SemidirectElement(rand_elem(rng, m), 1)
    v = SemidirectElement(rand_elem(rng, m), -2)
    w = SemidirectElement(rand_elem(rng, m), 3)
    assert semidirect_mul(semidirect_mul(u, v, lift), w, lift) == semidirect_mul(u, semidirect_mul(v, w, lift), lift)
    assert semidirect_mul(u, semidirect_inv(u, lift), lift) == SemidirectElement.identity(m)
    word = [("a", 1), ("b", -1), ("a", -1), ("b", 1)]
    val = evaluate_word(word, {"a": u, "b": v}, lift)
    expect = semidirect_mul(semidirect_mul(semidirect_mul(u, semidirect_inv(v, lift), lift), semidirect_inv(u, lift), lift), v, lift)
    assert val == expect


def test_singular_action_rejected():
    with pytest.raises(SingularActionError):
        build_tau_lift(QMatrix.from_rows([[0]]))
    with pytest.raises(ValueError):
        build_tau_lift(QMatrix.identity(2), QMatrix.zeros(2, 2))


def test_json_round_trip_uses_rational_strings():
    g = Nil2Element((Fraction(1, 2), Fraction(-3)), (Fraction(7, 5),))
    data = g.to_json()
    assert data == {"ab": ["1/2", "-3"], "comm": ["7/5"]}
    assert Nil2Element.from_json(json.dumps(data)) == g
