from fractions import Fraction

import numpy as np
import pytest

from modules.category_o import (AffineWeightSpec, adjoint_orbit_top, classify_example, classify_top,
                                example_lines, example_points, example_polynomials, hc_projection, hc_table,
                                polynomial_span, random_weights, weight_convert, zero_weight_subspace)
from modules.determinants import determinant_spec
from modules.errors import OrbitTooLargeError, SpecError
from modules.lie import Weight
from modules.scalars import LINE_RING, X, hpoly_eval, hpoly_ring, hpoly_substitute, line_affine, rational
from modules.uenv import enveloping_algebra

HALF = Fraction(1, 2)


@pytest.fixture(scope='module')
def exc6():
    return classify_example()


@pytest.fixture(scope='module')
def sp4_top():
    return adjoint_orbit_top(determinant_spec('C', 2, 2, 1))


def test_weight_convert_points(sp6):
    assert weight_convert(AffineWeightSpec((-2, 0, 1, 0)), sp6) == (-1, [1, 1, 0])
    assert weight_convert(AffineWeightSpec((0, 1, 0, -2)), sp6) == (-1, [-1, -2, -2])
    assert weight_convert(AffineWeightSpec((-HALF, 0, 0, -HALF)), sp6) == (-1, [-HALF, -HALF, -HALF])


def test_weight_convert_line(sp6):
    x = line_affine(0, 1)
    level, coords = weight_convert(AffineWeightSpec((line_affine(-1, -1), x, 0, 0)), sp6)
    assert level == line_affine(-1)
    assert coords == [X, LINE_RING.zero, LINE_RING.zero]
    level, coords = weight_convert(example_lines()[2], sp6)
    assert coords == [line_affine(-1), line_affine(-1), X]


def test_weight_convert_checks_length(sp6):
    with pytest.raises(SpecError):
        weight_convert(AffineWeightSpec((0, 1, 0)), sp6)


def test_weight_spec_text():
    assert str(AffineWeightSpec((-2, 0, 1, 0))) == '(-2) L0 + (1) L2'
    assert AffineWeightSpec((line_affine(0, 1), 0)).parametric
    assert not example_points()[0].parametric


def test_every_printed_weight_is_at_level_minus_one(sp6):
    for spec in example_points():
        assert weight_convert(spec, sp6)[0] == -1
    for spec in example_lines():
        assert weight_convert(spec, sp6)[0] == line_affine(-1)


def test_printed_polynomials_vanish_on_printed_weights(sp6):
    printed = example_polynomials()
    for spec in example_points():
        _, coords = weight_convert(spec, sp6)
        assert [hpoly_eval(p, coords) for p in printed] == [0, 0, 0, 0]
    for spec in example_lines():
        _, coords = weight_convert(spec, sp6)
        assert not any(hpoly_substitute(p, coords) for p in printed)
    assert hpoly_eval(printed[0], [1, 1, 1]) == 3


def test_hc_projection(sp4):
    algebra = enveloping_algebra(sp4)
    R, (h1, h2) = hpoly_ring(2)
    assert hc_projection(algebra.generator('h1')) == h1
    assert hc_projection(algebra.normal_form(['X[2e1]', 'X[-2e1]'])) == -4 * h1
    assert hc_projection(algebra.normal_form(['X[-2e1]', 'X[2e1]'])) == R.zero
    assert hc_projection(algebra.normal_form(['h1', 'h2', 'h2']) + 2) == h1 * h2 ** 2 + 2
    with pytest.raises(SpecError):
        hc_projection(algebra.generator('X[2e1]'))


def test_hc_projection_type_a(sl3):
    algebra = enveloping_algebra(sl3)
    _, (h1, h2, h3) = hpoly_ring(3)
    assert hc_projection(algebra.generator('h2-h3')) == h2 - h3
    assert hc_projection(algebra.normal_form(['X[e1-e3]', 'X[e3-e1]'])) == h1 - h3


def test_sp4_top_level(sp4_top):
    assert sp4_top.dim == 14
    assert sp4_top.highest_weight == Weight.of(2, 2)
    assert sp4_top.closure['closed']
    assert len(zero_weight_subspace(sp4_top)) == 2
    assert sum(len(us) for us in sp4_top.weight_index().values()) == 14


def test_top_level_weights_lie_below_highest(sp4_top, sp4):
    alpha1, alpha2 = sp4.simple_roots
    for w in sp4_top.weights:
        # highest - w = a alpha1 + b alpha2 with a, b nonnegative integers
        gap = sp4_top.highest_weight - w
        a = gap(1)
        b = (gap(1) + gap(2)) / 2
        assert a >= 0 and b >= 0
        assert a.denominator == 1 and b.denominator == 1
        assert alpha1 * a + alpha2 * b == gap


def test_lowering_steps_subtract_simple_roots(sp4_top, sp4):
    for u in sp4_top.basis:
        for f, alpha in zip(sp4.chevalley_f, sp4.simple_roots):
            lowered = u.algebra.ad(f, u)
            if lowered:
                assert lowered.weight == u.weight - alpha


def test_hc_projection_is_linear(sp4_top):
    u, v = zero_weight_subspace(sp4_top)
    assert hc_projection(u * 3 + v * 2) == 3 * hc_projection(u) + 2 * hc_projection(v)
    assert hc_projection(u - u) == hc_projection(u) - hc_projection(u)


def test_hc_projection_kills_cartan_brackets(sp4_top):
    for u in zero_weight_subspace(sp4_top):
        for h in ('h1', 'h2'):
            assert not hc_projection(u.algebra.ad(h, u))


def test_top_level_contains_its_basis(sp4_top):
    for u in sp4_top.basis:
        assert sp4_top.contains(u)
        assert sp4_top.contains(u * 3)


def test_dim_cap():
    with pytest.raises(OrbitTooLargeError):
        adjoint_orbit_top(determinant_spec('C', 2, 2, 1), dim_cap=5)


def test_classify_top():
    report = classify_top(determinant_spec('C', 2, 2, 1))
    assert report.passed, report.witness
    assert report.parameters['dim'] == 14
    assert report.parameters['weyl_dimension'] == 14
    assert report.tables[0].shape[0] == 2


def test_polynomial_span():
    R, (h1, h2) = hpoly_ring(2)
    span = polynomial_span([h1 * h2, h1 + 1])
    assert span.rank == 2
    assert span.contains({monom: rational(c) for monom, c in (2 * h1 * h2 - h1 - 1).items()})
    assert not span.contains({monom: rational(c) for monom, c in h2.items()})


def test_hc_table():
    _, (h1, h2) = hpoly_ring(2)
    frame = hc_table([h1 * h2, h1 + 1])
    assert list(frame.index) == ['p1', 'p2']
    assert frame.loc['p2', '(0, 0)'] == '1'
    assert frame.loc['p1', '(0, 0)'] == '0'


def test_random_weights_are_seeded():
    first = random_weights(np.random.default_rng(20), 5, 3)
    second = random_weights(np.random.default_rng(20), 5, 3)
    assert first == second
    assert len(first) == 5
    kept = random_weights(np.random.default_rng(20), 10, 3, avoid=lambda p: p[0] == 0)
    assert all(p[0] != 0 for p in kept)


def test_classification_passes(exc6):
    assert exc6.passed, exc6.witness
    assert exc6.seed == 20
    assert exc6.parameters['dim'] == 84
    assert exc6.parameters['dim_zero_weight'] == 4
    assert not exc6.warnings


def test_classification_parts(exc6):
    parts = {part['claim']: part for part in exc6.details}
    assert list(parts) == ['zero-weight-space', 'printed-span', 'line-families', 'isolated-points',
                           'negative-controls']
    assert len(parts['line-families']['details']) == 3
    assert len(parts['isolated-points']['details']) == 6
    controls = parts['negative-controls']['details']
    assert len(controls) == 20
    assert all(control['violated'] for control in controls)
    assert all(line['printed_vanish'] for line in parts['line-families']['details'])


def test_classification_table(exc6):
    assert exc6.tables[0].shape[0] == 4
