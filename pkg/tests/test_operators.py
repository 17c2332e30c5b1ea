import random
from fractions import Fraction

import pytest

from joinlab import (
    Automorphism,
    FiniteSpace,
    InvalidInputError,
    MarkovOperator,
    affine_combination,
    averaging_operator,
    compose,
    compose_operators,
    dist_w,
    identity_operator,
    koopman,
    operator_power,
    weak_closure_probe,
)

from conftest import random_automorphism, random_operator, random_space

U2 = FiniteSpace.uniform(2)


def test_markov_operator_validation():
    half = Fraction(1, 2)
    MarkovOperator(U2, U2, ((half, half), (half, half)))
    with pytest.raises(InvalidInputError):
        MarkovOperator(U2, U2, ((half, half), (half, 0)))
    with pytest.raises(InvalidInputError):
        MarkovOperator(U2, U2, ((1, 0), (1, 0)))
    with pytest.raises(InvalidInputError):
        MarkovOperator(U2, U2, ((Fraction(3, 2), Fraction(-1, 2)), (half, half)))


def test_averaging_operator_frozen_examples():
    theta = averaging_operator(U2)
    assert theta.kernel == ((Fraction(1, 2),) * 2,) * 2
    assert compose_operators(theta, theta).kernel == theta.kernel

    skewed = FiniteSpace((Fraction(1, 3), Fraction(2, 3)))
    out = averaging_operator(skewed).apply((Fraction(1), Fraction(0)))
    assert out == (Fraction(1, 3), Fraction(1, 3))


def test_koopman_evaluates_by_composition():
    sp = FiniteSpace.uniform(4)
    rot = Automorphism(sp, (1, 2, 3, 0))
    f = tuple(Fraction(i) for i in range(4))
    assert koopman(rot).apply(f) == tuple(f[rot(x)] for x in sp.atoms())


def test_koopman_antihomomorphism():
    rng = random.Random(5)
    sp = FiniteSpace.uniform(5)
    for _ in range(20):
        a = random_automorphism(rng, sp)
        b = random_automorphism(rng, sp)
        lhs = koopman(compose(a, b))
        rhs = compose_operators(koopman(b), koopman(a))
        assert lhs.kernel == rhs.kernel


def test_affine_combination_frozen_example():
    mixed = affine_combination(
        Fraction(1, 2), identity_operator(U2), averaging_operator(U2)
    )
    q = Fraction(1, 4)
    assert mixed.kernel == ((3 * q, q), (q, 3 * q))
    with pytest.raises(InvalidInputError):
        affine_combination(Fraction(3, 2), identity_operator(U2), averaging_operator(U2))


def test_dist_w_basics():
    ident = identity_operator(U2)
    theta = averaging_operator(U2)
    assert dist_w(ident, theta) == Fraction(1, 2)
    assert dist_w(ident, ident) == 0
    rng = random.Random(9)
    sp = random_space(rng, 5)
    for _ in range(15):
        p = random_operator(rng, sp, sp)
        q = random_operator(rng, sp, sp)
        r = random_operator(rng, sp, sp)
        assert dist_w(p, q) == dist_w(q, p)
        assert dist_w(p, r) <= dist_w(p, q) + dist_w(q, r)


def test_operator_power_matches_repeated_composition():
    rng = random.Random(2)
    sp = FiniteSpace.uniform(3)
    p = random_operator(rng, sp, sp)
    acc = identity_operator(sp)
    for k in range(5):
        assert operator_power(p, k).kernel == acc.kernel
        acc = compose_operators(p, acc)
    with pytest.raises(InvalidInputError):
        operator_power(p, -1)


def test_compose_requires_matching_spaces():
    sp3 = FiniteSpace.uniform(3)
    with pytest.raises(InvalidInputError):
        compose_operators(identity_operator(U2), identity_operator(sp3))


def test_weak_closure_probe_identity():
    probe = weak_closure_probe(
        Automorphism.identity(U2), [Fraction(1, 2)], 3
    )
    assert probe.best_distance == Fraction(1, 4)
    assert probe.best_k == 1
    assert probe.best_eps == Fraction(1, 2)


def test_weak_closure_probe_swap_prefers_even_power():
    swap = Automorphism(U2, (1, 0))
    probe = weak_closure_probe(swap, [Fraction(1, 2)], 2)
    assert probe.best_k == 2
    assert probe.best_distance == Fraction(1, 4)


def test_weak_closure_probe_validates_grid():
    swap = Automorphism(U2, (1, 0))
    with pytest.raises(InvalidInputError):
        weak_closure_probe(swap, [], 2)
    with pytest.raises(InvalidInputError):
        weak_closure_probe(swap, [Fraction(1)], 2)
    with pytest.raises(InvalidInputError):
        weak_closure_probe(swap, [Fraction(1, 2)], 0)
