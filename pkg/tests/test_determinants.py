from fractions import Fraction

import pytest

from modules.determinants import (build_matrix, coexisting_singulars, cofactor_vector, determinant_spec,
                                  determinant_vector, determinant_words, entries_commute_check, lowering_factor,
                                  minor_vector, minor_words, negative_control, predicted_lowering_residual,
                                  raising_commutes_with_determinant, theta_lowering_factor, verify_theorem)
from modules.errors import SpecError
from modules.lie import Weight
from modules.scalars import K, level_constant
from modules.vacuum import straighten

C_GRID = [('C', 3, m, n) for m in (1, 2, 3) for n in (1, 2)]
A_GRID = [('A', 4, m, n) for m in (1, 2) for n in (1, 2)]


def labels(spec):
    table = spec.table
    return [[table.labels[x] for x in row] for row in build_matrix(spec)]


def test_levels():
    assert determinant_spec('C', 3, 1, 1).level == 0
    assert determinant_spec('C', 3, 2, 1).level == Fraction(-1, 2)
    assert determinant_spec('C', 3, 3, 2).level == 0
    assert determinant_spec('A', 4, 2, 1).level == -1
    assert determinant_spec('A', 4, 1, 3).level == 2


def test_spec_validation():
    with pytest.raises(SpecError):
        determinant_spec('C', 3, 4, 1)
    with pytest.raises(SpecError):
        determinant_spec('A', 3, 2, 1)
    with pytest.raises(SpecError):
        determinant_spec('C', 3, 1, 0)
    with pytest.raises(SpecError):
        determinant_spec('B', 3, 1, 1)
    with pytest.raises(SpecError):
        determinant_spec('A', 3, 4, 1, check_size=False)


def test_matrices():
    assert labels(determinant_spec('C', 3, 2, 1)) == [['X[2e1]', 'X[e1+e2]'], ['X[e1+e2]', 'X[2e2]']]
    assert labels(determinant_spec('A', 4, 2, 1)) == [['X[e1-e4]', 'X[e1-e3]'], ['X[e2-e4]', 'X[e2-e3]']]
    assert labels(determinant_spec('A', 4, 1, 1)) == [['X[e1-e4]']]


def test_entries_commute():
    assert entries_commute_check(determinant_spec('C', 3, 3, 1)).passed
    assert entries_commute_check(determinant_spec('A', 4, 2, 1)).passed
    oversized = determinant_spec('A', 3, 2, 1, check_size=False)
    assert build_matrix(oversized)[1][1] is None
    report = entries_commute_check(oversized)
    assert not report.passed
    assert 'bracket' in report.witness
    with pytest.raises(SpecError):
        determinant_vector(oversized)


def test_determinant_vectors():
    spec = determinant_spec('C', 3, 2, 1)
    expected = straighten(spec.table, [(-1, 'X[2e1]'), (-1, 'X[2e2]')]) - straighten(spec.table, [(-1, 'X[e1+e2]')] * 2)
    assert determinant_vector(spec) == expected
    assert len(determinant_vector(determinant_spec('C', 3, 3, 1))) == 5
    assert determinant_vector(determinant_spec('C', 3, 3, 1)).weight == Weight.of(2, 2, 2)
    assert determinant_vector(determinant_spec('A', 4, 2, 2)).weight == Weight.of(2, 2, -2, -2)


def test_leibniz_words():
    words = determinant_words(determinant_spec('C', 3, 3, 1))
    assert sorted(words.values()) == [-1, -1, -1, 1, 2]


def test_minors():
    assert minor_words(determinant_spec('C', 3, 1, 1), 1, 1) == {(): 1}
    spec = determinant_spec('C', 3, 2, 1)
    assert minor_vector(spec, 1, 1) == straighten(spec.table, [(-1, 'X[2e2]')])
    assert minor_vector(spec, 1, 2) == straighten(spec.table, [(-1, 'X[e1+e2]')])
    with pytest.raises(SpecError):
        minor_words(spec, 3, 1)


@pytest.mark.parametrize('kind, rank, m, n', [('C', 3, 2, 2), ('C', 3, 3, 1), ('A', 4, 2, 2)])
def test_cofactor_expansion(kind, rank, m, n):
    spec = determinant_spec(kind, rank, m, n)
    assert cofactor_vector(spec) == determinant_vector(spec)


def test_lowering_factors():
    assert lowering_factor(determinant_spec('C', 3, 1, 1)) == -4
    assert lowering_factor(determinant_spec('A', 4, 1, 1)) == 1


def test_rank_one_residuals():
    c = determinant_spec('C', 3, 1, 1)
    assert predicted_lowering_residual(c) == c.module.vacuum.scale(-4 * K)
    a = determinant_spec('A', 4, 1, 2)
    state = straighten(a.table, [(-1, 'X[e1-e4]')])
    assert predicted_lowering_residual(a) == state.scale(2 * K - 2)
    assert theta_lowering_factor(a).passed
    assert theta_lowering_factor(a).derived


@pytest.mark.parametrize('kind, rank, m, n', C_GRID + A_GRID)
def test_determinant_is_singular_exactly_at_its_level(kind, rank, m, n):
    spec = determinant_spec(kind, rank, m, n)
    vector = determinant_vector(spec)
    report = verify_theorem(spec, vector=vector)
    assert report.passed, report.witness
    assert report.parameters['level'] == str(spec.level)
    control = negative_control(spec, vector)
    assert control.passed, control.witness
    assert control.details['failed_generator'] == '{}(1)'.format(spec.table.labels[spec.table.minus_theta_vector])
    factor = theta_lowering_factor(spec, vector)
    assert factor.passed, factor.witness
    assert factor.derived == (kind == 'A')


def test_symbolic_residual_vanishes_only_at_level():
    spec = determinant_spec('C', 3, 2, 1)
    assert not predicted_lowering_residual(spec, spec.level)
    assert predicted_lowering_residual(spec, 0)
    assert not verify_theorem(spec, level=0).passed


def test_coexisting_singulars():
    assert [(s.m, s.n) for s in coexisting_singulars('C', 3, 0)] == [(1, 1), (3, 2)]
    assert [(s.m, s.n) for s in coexisting_singulars('C', 4, Fraction(1, 2))] == [(2, 2), (4, 3)]
    assert [(s.m, s.n) for s in coexisting_singulars('A', 4, 0)] == [(1, 1), (2, 2)]
    assert coexisting_singulars('C', 3, Fraction(1, 3)) == []


def test_coexisting_weights_differ():
    weights = [determinant_vector(s).weight for s in coexisting_singulars('C', 3, 0)]
    assert weights == [Weight.of(2, 0, 0), Weight.of(4, 4, 4)]


@pytest.mark.parametrize('kind, rank, m', [('C', 3, 2), ('C', 3, 3), ('A', 4, 2)])
def test_raising_operators_commute_with_determinant(kind, rank, m):
    spec = determinant_spec(kind, rank, m, 1)
    assert raising_commutes_with_determinant(spec, {(): Fraction(1)}).passed
    assert raising_commutes_with_determinant(spec, minor_words(spec, 1, 1)).passed
    assert raising_commutes_with_determinant(spec, determinant_words(spec)).passed


def test_level_constant_shift():
    spec = determinant_spec('A', 4, 2, 1)
    lhs = spec.module.apply(spec.table.minus_theta_vector, 1, determinant_vector(spec))
    expected = minor_vector(spec, 1, 1).scale(K - level_constant(spec.level))
    assert lhs == expected
