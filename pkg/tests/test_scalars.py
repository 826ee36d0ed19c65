from fractions import Fraction

import pytest

from modules.scalars import (K, LEVEL_RING, LINE_RING, X, ZERO_DEGREE, format_rational, hpoly_eval, hpoly_ring,
                             hpoly_substitute, level_constant, level_degree, level_eval, level_from_payload,
                             level_to_payload, line_affine, parse_rational, rational, rational_arith)


def test_rational_arith():
    assert rational_arith('1/2', '1/3', '+') == Fraction(5, 6)
    assert rational_arith(Fraction(-3, 2), Fraction(2, 3), '*') == -1
    assert rational_arith(1, 4, '-') == Fraction(-3)
    with pytest.raises(ZeroDivisionError):
        rational_arith(1, 0, '/')
    with pytest.raises(ValueError):
        rational_arith(1, 2, '%')


def test_rational_text():
    assert format_rational(Fraction(3)) == '3'
    assert format_rational(Fraction(-1, 2)) == '-1/2'
    assert parse_rational('-6/4') == Fraction(-3, 2)
    assert rational(' 2/4 ') == Fraction(1, 2)


def test_level_eval():
    assert level_eval(K + level_constant(Fraction(1, 2)), Fraction(-1, 2)) == 0
    assert level_eval(4 * K + 2, 0) == 2
    assert level_eval(LEVEL_RING.zero, 7) == 0


def test_level_degree():
    assert level_degree(LEVEL_RING.zero) == ZERO_DEGREE
    assert level_degree(level_constant(3)) == 0
    assert level_degree(K ** 2 - K) == 2


def test_level_payload():
    p = level_constant(Fraction(-4, 3)) * K ** 2 + 2
    assert level_to_payload(p) == [[2, '-4/3'], [0, '2']]
    assert level_from_payload(level_to_payload(p)) == p


def test_eval_is_multiplicative(rng):
    for _ in range(20):
        p = sum((level_constant(int(c)) * K ** d for d, c in enumerate(rng.integers(-5, 6, size=3))), LEVEL_RING.zero)
        q = sum((level_constant(int(c)) * K ** d for d, c in enumerate(rng.integers(-5, 6, size=3))), LEVEL_RING.zero)
        k0 = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5)))
        assert level_eval(p * q, k0) == level_eval(p, k0) * level_eval(q, k0)
        assert level_eval(p + q, k0) == level_eval(p, k0) + level_eval(q, k0)


def test_level_ring_axioms(rng):
    for _ in range(10):
        p, q, r = (level_constant(int(a)) * K + int(b) for a, b in rng.integers(-4, 5, size=(3, 2)))
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r


def test_hpoly_substitute():
    R, (h1, h2, h3) = hpoly_ring(3)
    x = line_affine(0, 1)
    assert hpoly_substitute(h3, [x, 0, 0]) == LINE_RING.zero
    p1 = (h1 + 1) * (h2 + R.ground_new(R.domain(1, 2))) * h3
    assert hpoly_substitute(p1, [x, 0, 0]) == LINE_RING.zero
    assert hpoly_substitute(h1 + h2, [-1, x, 0]) == X - 1


def test_hpoly_substitute_needs_every_variable():
    _, (h1, h2) = hpoly_ring(2)
    with pytest.raises(ValueError):
        hpoly_substitute(h1 * h2, [X])


def test_hpoly_eval():
    R, (h1, h2, h3) = hpoly_ring(3)
    p1 = (h1 + 1) * (h2 + R.ground_new(R.domain(1, 2))) * h3
    assert hpoly_eval(p1, [1, 1, 1]) == 3
    assert hpoly_eval(p1, [Fraction(-1, 2), 0, 5]) == Fraction(5, 4)
