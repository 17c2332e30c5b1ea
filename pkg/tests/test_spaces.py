import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from joinlab import (
    Automorphism,
    FiniteSpace,
    InvalidInputError,
    MeasurableSet,
    compose,
    halmos_distance,
    is_measure_preserving,
    orbit_count,
    product_space,
)
from joinlab.spaces import (
    index_to_tuple,
    iter_tuples,
    shape_of,
    tuple_to_index,
)

from conftest import random_automorphism, random_space


def test_space_weights_must_be_probability():
    FiniteSpace((Fraction(1, 3), Fraction(2, 3)))
    with pytest.raises(InvalidInputError):
        FiniteSpace((Fraction(1, 3), Fraction(1, 3)))
    with pytest.raises(InvalidInputError):
        FiniteSpace((Fraction(3, 2), Fraction(-1, 2)))
    with pytest.raises(InvalidInputError):
        FiniteSpace(())
    with pytest.raises(InvalidInputError):
        FiniteSpace((0.5, 0.5))


def test_uniform_space():
    sp = FiniteSpace.uniform(4)
    assert sp.atom_count == 4
    assert all(w == Fraction(1, 4) for w in sp.weights)
    with pytest.raises(InvalidInputError):
        FiniteSpace.uniform(0)


def test_measurable_set_basics():
    sp = FiniteSpace((Fraction(1, 3), Fraction(2, 3)))
    a = MeasurableSet(sp, frozenset({0}))
    assert a.measure == Fraction(1, 3)
    assert a.complement().measure == Fraction(2, 3)
    assert a.intersect(a.complement()).measure == 0
    with pytest.raises(InvalidInputError):
        MeasurableSet(sp, frozenset({2}))


def test_automorphism_must_preserve_weights():
    sp = FiniteSpace((Fraction(1, 3), Fraction(2, 3)))
    with pytest.raises(InvalidInputError):
        Automorphism(sp, (1, 0))
    ident = Automorphism.identity(sp)
    assert ident.is_identity()


def test_automorphism_rejects_non_bijection():
    sp = FiniteSpace.uniform(3)
    with pytest.raises(InvalidInputError):
        Automorphism(sp, (0, 0, 1))
    with pytest.raises(InvalidInputError):
        Automorphism(sp, (0, 1))


def test_is_measure_preserving():
    sp = FiniteSpace((Fraction(1, 3), Fraction(2, 3)))
    assert is_measure_preserving((0, 1), sp)
    assert not is_measure_preserving((1, 0), sp)
    with pytest.raises(InvalidInputError):
        is_measure_preserving((0, 0), sp)


@given(st.permutations(list(range(6))), st.permutations(list(range(6))))
def test_compose_and_inverse(p, q):
    sp = FiniteSpace.uniform(6)
    a = Automorphism(sp, tuple(p))
    b = Automorphism(sp, tuple(q))
    ab = compose(a, b)
    for x in sp.atoms():
        assert ab(x) == a(b(x))
    assert compose(a, a.inverse()).is_identity()
    assert compose(a.inverse(), a).is_identity()


@given(
    st.permutations(list(range(5))),
    st.integers(min_value=-12, max_value=12),
    st.integers(min_value=-12, max_value=12),
)
def test_power_is_group_homomorphism(p, i, j):
    sp = FiniteSpace.uniform(5)
    a = Automorphism(sp, tuple(p))
    assert a.power(i + j).perm == compose(a.power(i), a.power(j)).perm
    assert a.power(-i).perm == a.power(i).inverse().perm


def test_image_preserves_measure():
    rng = random.Random(11)
    for _ in range(20):
        sp = random_space(rng, 7)
        a = random_automorphism(rng, sp)
        atoms = frozenset(x for x in sp.atoms() if rng.random() < 0.5)
        s = MeasurableSet(sp, atoms)
        assert a.image(s).measure == s.measure


def test_halmos_distance_frozen_example():
    sp = FiniteSpace.uniform(2)
    ident = Automorphism.identity(sp)
    swap = Automorphism(sp, (1, 0))
    assert halmos_distance(ident, swap) == Fraction(3, 2)
    assert halmos_distance(ident, ident) == 0
    assert halmos_distance(swap, swap) == 0


def test_halmos_metric_axioms_small():
    sp = FiniteSpace.uniform(4)
    rng = random.Random(3)
    for _ in range(25):
        autos = [random_automorphism(rng, sp) for _ in range(3)]
        a, b, c = autos
        dab = halmos_distance(a, b)
        assert dab == halmos_distance(b, a)
        assert (dab == 0) == (a.perm == b.perm)
        assert halmos_distance(a, c) <= dab + halmos_distance(b, c)


def test_orbit_count():
    sp = FiniteSpace.uniform(6)
    cycle = Automorphism(sp, (1, 2, 3, 4, 5, 0))
    assert orbit_count(cycle) == 1
    assert orbit_count(Automorphism.identity(sp)) == 6
    two_cycles = Automorphism(sp, (1, 0, 3, 2, 5, 4))
    assert orbit_count(two_cycles) == 3


def test_product_space_lexicographic():
    a = FiniteSpace((Fraction(1, 3), Fraction(2, 3)))
    b = FiniteSpace.uniform(2)
    prod = product_space([a, b])
    assert prod.weights == (
        Fraction(1, 6),
        Fraction(1, 6),
        Fraction(1, 3),
        Fraction(1, 3),
    )


@given(st.lists(st.integers(min_value=1, max_value=5), min_size=1, max_size=4))
@settings(max_examples=60)
def test_index_tuple_roundtrip(shape):
    shape = tuple(shape)
    seen = []
    for tup in iter_tuples(shape):
        idx = tuple_to_index(shape, tup)
        assert index_to_tuple(shape, idx) == tup
        seen.append(idx)
    assert seen == list(range(len(seen)))


def test_shape_of():
    a = FiniteSpace.uniform(2)
    b = FiniteSpace.uniform(3)
    assert shape_of([a, b, a]) == (2, 3, 2)
