import itertools
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from mobconj.poset import (
    IncidenceFunction,
    Poset,
    PosetError,
    conjugate_value,
    convolve,
    delta_identity,
    delta_of,
    mobius,
    mobius_conjugate,
    random_poset,
    recover_point_function,
    validate_poset,
    verify_conjugation_homomorphism,
    zeta,
)
from mobconj.polynomial import Polynomial, var

t = var("t")


def test_validate_chain():
    P = validate_poset([[True, True], [False, True]])
    assert P.leq(0, 1) and not P.leq(1, 0)


def test_antisymmetry_error():
    with pytest.raises(PosetError) as err:
        validate_poset([[True, True], [True, True]])
    assert err.value.axiom == "antisymmetry"


def test_transitivity_error():
    rel = [[True, True, False], [False, True, True], [False, False, True]]
    with pytest.raises(PosetError) as err:
        validate_poset(rel)
    assert err.value.axiom == "transitivity" and err.value.witness == (0, 1, 2)


def test_reflexivity_error():
    with pytest.raises(PosetError, match="reflexivity"):
        validate_poset([[False]])


def test_zeta_convolution_on_chain():
    P = Poset.chain(2)
    assert convolve(zeta(P), zeta(P))[(0, 1)] == 2


@pytest.mark.parametrize("P", [Poset.chain(4), Poset.antichain(3), Poset.boolean(3),
                               Poset.from_relations(5, [(0, 1), (0, 2), (1, 3), (2, 3), (4, 3)])])
def test_mobius_inverts_zeta(P):
    e = delta_identity(P)
    assert convolve(zeta(P), mobius(P)) == e
    assert convolve(mobius(P), zeta(P)) == e
    alpha = IncidenceFunction(P, {iv: t + i for i, iv in enumerate(P.intervals())})
    assert convolve(e, alpha) == alpha == convolve(alpha, e)


def test_mobius_examples():
    assert Poset.boolean(2).mobius_value(0, 3) == 1
    assert Poset.chain(3).mobius_value(0, 2) == 0
    assert all(Poset.chain(3).mobius_value(x, x) == 1 for x in range(3))


def test_boolean_mobius_closed_form():
    P = Poset.boolean(4)
    for a, b in P.intervals():
        assert P.mobius_value(a, b) == (-1) ** bin(b & ~a).count("1")


def test_delta_of():
    P = Poset.chain(3)
    assert delta_of({x: 1 for x in range(3)}, P) == delta_identity(P)
    d = delta_of({x: t**x for x in range(3)}, P)
    assert d[(1, 1)] == t and d[(0, 1)] == 0
    assert delta_of({x: 0 for x in range(3)}, P) == IncidenceFunction(P)


def test_conjugate_of_one_is_identity():
    P = Poset.boolean(2)
    assert mobius_conjugate({x: 1 for x in range(4)}, P) == delta_identity(P)


def test_conjugate_value_matches_full_conjugate():
    P = Poset.from_relations(5, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)])
    f = {x: t**x - x for x in range(5)}
    full = mobius_conjugate(f, P)
    for iv in P.intervals():
        assert conjugate_value(f, P, *iv) == full[iv]


def test_undefined_point_function():
    with pytest.raises(ValueError, match="undefined"):
        mobius_conjugate({0: 1}, Poset.chain(2))


def rand_poly(rng):
    return sum((Polynomial.monomial(rng.randint(-3, 3), {"s": rng.randint(0, 2), "t": rng.randint(0, 2)})
                for _ in range(3)), Polynomial.const(rng.randint(-3, 3)))


def rand_incidence(rng, P):
    return IncidenceFunction(P, {iv: rand_poly(rng) for iv in P.intervals()})


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 7), st.integers(0, 10**6))
def test_associativity(size, seed):
    rng = random.Random(seed)
    P = random_poset(rng, size)
    a, b, c = (rand_incidence(rng, P) for _ in range(3))
    assert convolve(convolve(a, b), c) == convolve(a, convolve(b, c))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 8), st.integers(0, 10**6))
def test_conjugation_is_ring_homomorphism(size, seed):
    rng = random.Random(seed)
    P = random_poset(rng, size)
    f = {x: rand_poly(rng) for x in range(size)}
    g = {x: rand_poly(rng) for x in range(size)}
    assert verify_conjugation_homomorphism(P, f, g).passed
    plus = mobius_conjugate({x: f[x] + g[x] for x in range(size)}, P)
    assert plus == mobius_conjugate(f, P) + mobius_conjugate(g, P)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 7), st.integers(0, 10**6))
def test_injectivity_by_recovery(size, seed):
    rng = random.Random(seed)
    P = random_poset(rng, size)
    f = {x: rand_poly(rng) for x in range(size)}
    assert recover_point_function(mobius_conjugate(f, P)) == {x: Polynomial.coerce(v) for x, v in f.items()}


def test_homomorphism_with_unit():
    P = Poset.boolean(2)
    g = {x: t + x for x in range(4)}
    assert verify_conjugation_homomorphism(P, {x: 1 for x in range(4)}, g).passed


def test_first_difference_names_interval():
    P = Poset.chain(2)
    a = IncidenceFunction(P, {(0, 0): 1, (0, 1): 2, (1, 1): 3})
    assert a.first_difference(IncidenceFunction(P, {(0, 0): 1, (0, 1): 2, (1, 1): 3})) is None
    assert a.first_difference(IncidenceFunction(P, {(0, 0): 1, (0, 1): 5, (1, 1): 3})) == (0, 1)


def test_json_roundtrip(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"size": 3, "relations": [[0, 1], [1, 2]]}))
    P = Poset.load(path)
    assert P.leq(0, 2)
    assert Poset.from_json(P.to_json()).matrix() == P.matrix()


def test_json_cycle_rejected():
    with pytest.raises(PosetError, match="antisymmetry"):
        Poset.from_json({"size": 2, "relations": [[0, 1], [1, 0]]})


def test_linear_extension_respects_order():
    rng = random.Random(5)
    P = random_poset(rng, 8, 0.5)
    pos = {x: i for i, x in enumerate(P.order)}
    for x, y in itertools.product(range(8), repeat=2):
        if P.leq(x, y):
            assert pos[x] <= pos[y]
