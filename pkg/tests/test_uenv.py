from fractions import Fraction

import pytest

from modules.errors import InhomogeneousStateError
from modules.lie import Weight
from modules.uenv import enveloping_algebra, uenv_mul, uenv_normal_form


def random_element(algebra, rng, length=2, terms=2):
    element = algebra.zero
    for _ in range(terms):
        word = [int(x) for x in rng.integers(0, algebra.table.dim, size=length)]
        element = element + algebra.normal_form(word) * Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 3)))
    return element


def test_one_commutator_step(sp6):
    algebra = enveloping_algebra(sp6)
    forward = uenv_normal_form(sp6, ['X[e1-e2]', 'X[e2-e1]'])
    backward = uenv_normal_form(sp6, ['X[e2-e1]', 'X[e1-e2]'])
    assert forward == backward + algebra.generator('h1') - algebra.generator('h2')
    assert len(backward) == 1


def test_long_root_commutator(sp4):
    algebra = enveloping_algebra(sp4)
    word = uenv_normal_form(sp4, ['X[2e1]', 'X[-2e1]'])
    assert word == uenv_normal_form(sp4, ['X[-2e1]', 'X[2e1]']) - 4 * algebra.generator('h1')


def test_cartan_commutes(sp4):
    assert uenv_normal_form(sp4, ['h1', 'h2']) == uenv_normal_form(sp4, ['h2', 'h1'])


def test_canonical_monomials_are_fixed(sp4, rng):
    algebra = enveloping_algebra(sp4)
    for _ in range(10):
        element = algebra.normal_form([int(x) for x in rng.integers(0, sp4.dim, size=3)])
        for monomial in element.terms:
            assert algebra.is_canonical(monomial)
            assert algebra.normal_form(list(monomial)).terms == {monomial: 1}


def test_associativity(sp4, rng):
    algebra = enveloping_algebra(sp4)
    for _ in range(5):
        u, v, w = (random_element(algebra, rng) for _ in range(3))
        assert uenv_mul(uenv_mul(u, v), w) == uenv_mul(u, uenv_mul(v, w))


def test_ad_matches_bracket(sl3):
    algebra = enveloping_algebra(sl3)
    for x in range(sl3.dim):
        for y in range(sl3.dim):
            expected = algebra.zero
            for r, c in sl3.bracket(x, y).items():
                expected = expected + algebra.generator(r) * c
            assert algebra.ad(x, algebra.generator(y)) == expected


def test_scalar_arithmetic(sp4):
    algebra = enveloping_algebra(sp4)
    h = algebra.generator('h1')
    assert h + 1 - 1 == h
    assert 2 * h == h + h
    assert str(h * Fraction(-1, 2) + 3) == '3 - 1/2 h1'
    assert sum([h, h], algebra.zero) == 2 * h


def test_weights(sp4):
    algebra = enveloping_algebra(sp4)
    assert uenv_normal_form(sp4, ['X[2e1]', 'X[-2e1]']).weight.is_zero
    assert uenv_normal_form(sp4, ['X[2e1]', 'X[e2-e1]']).weight == Weight.of(1, 1)
    with pytest.raises(InhomogeneousStateError):
        (algebra.generator('X[2e1]') + algebra.generator('h1')).weight


def test_payload(sp4):
    algebra = enveloping_algebra(sp4)
    element = uenv_normal_form(sp4, ['X[e1+e2]', 'X[-2e1]', 'h2']) * Fraction(3, 2)
    assert algebra.element_from_payload(element.to_payload()) == element
