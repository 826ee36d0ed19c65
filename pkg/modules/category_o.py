"""
The top level R_{m,n} of the maximal ideal, its zero-weight space and the
Harish-Chandra polynomials that cut out the highest weights of the
irreducible modules in category O.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import numpy as np
import pandas as pd

from modules.determinants import determinant_spec
from modules.errors import OrbitTooLargeError, SpecError
from modules.lie import Weight, weyl_dimension
from modules.linalg import SparseEchelon
from modules.reports import VerificationReport, combine, stopwatch
from modules.scalars import (LINE_RING, format_rational, hpoly_eval, hpoly_ring, hpoly_substitute,
                             hpoly_to_payload, line_affine, rational, to_qq)
from modules.uenv import enveloping_algebra
from modules.zhu import finite_determinant

logger = logging.getLogger()

DEFAULT_DIM_CAP = 2000
DEFAULT_SEED = 20
DEFAULT_CONTROLS = 20


class TopLevelModule(object):
    """
    Weight-homogeneous basis of ``U(g) (Δ_m)^n`` inside U(g) under the adjoint action.

    :param DeterminantSpec spec: the determinant the module is generated by
    :param list basis: UEnvElements, the highest weight vector first
    :param echelon: SparseEchelon holding the span of ``basis``
    """

    def __init__(self, spec, basis, echelon):
        self.spec = spec
        self.table = spec.table
        self.basis = basis
        self.echelon = echelon
        self.weights = [u.weight for u in basis]
        self.closure = None

    def __len__(self):
        return len(self.basis)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def highest_weight(self):
        return self.weights[0]

    def weight_index(self):
        index = {}
        for u, w in zip(self.basis, self.weights):
            index.setdefault(w, []).append(u)
        return index

    def weight_space(self, weight):
        return [u for u, w in zip(self.basis, self.weights) if w == weight]

    def contains(self, u):
        return self.echelon.contains(u.terms)

    def closure_certificate(self):
        """
        Check that ``ad(e_i) u`` and ``ad(f_i) u`` stay in the span for every basis element.
        """
        algebra = enveloping_algebra(self.table)
        generators = self.table.chevalley_e + self.table.chevalley_f
        checked, witness = 0, None
        for u in self.basis:
            for g in generators:
                checked += 1
                if not self.contains(algebra.ad(g, u)):
                    witness = {'generator': self.table.labels[g], 'element': str(u)}
                    break
            if witness:
                break
        self.closure = {'checked': checked, 'closed': witness is None}
        if witness:
            self.closure['witness'] = witness
        return self.closure


def adjoint_orbit_top(spec, dim_cap=DEFAULT_DIM_CAP, certify=True):
    """
    Span of the iterated ``ad(f_i)`` images of ``(Δ_m)^n``.

    :raises OrbitTooLargeError: when the span exceeds ``dim_cap``
    """
    table = spec.table
    algebra = enveloping_algebra(table)
    top = finite_determinant(spec) ** spec.n
    logger.info('Generating top level for {} ({} terms in the highest weight vector)'.format(spec, len(top)))
    echelon = SparseEchelon()
    echelon.insert(top.terms)
    basis, frontier = [top], [top]
    while frontier:
        grown = []
        for u in frontier:
            for f in table.chevalley_f:
                v = algebra.ad(f, u)
                if v and echelon.insert(v.terms):
                    if len(basis) >= dim_cap:
                        raise OrbitTooLargeError('top level of {} exceeds {} basis elements'.format(spec, dim_cap))
                    basis.append(v)
                    grown.append(v)
        frontier = grown
    module = TopLevelModule(spec, basis, echelon)
    logger.info('Top level for {} has dimension {}'.format(spec, module.dim))
    if certify:
        module.closure_certificate()
    return module


def zero_weight_subspace(module):
    return module.weight_space(Weight.zero(module.table.rank))


def cartan_variable(table, x):
    """
    The Cartan basis element ``x`` as a linear polynomial in ``h_1..h_ℓ``.
    """
    _, gens = hpoly_ring(table.rank)
    element = table.basis[x]
    return gens[element.i - 1] - gens[element.j - 1] if element.j else gens[element.i - 1]


def hc_projection(u):
    """
    Pure-Cartan part of a weight-zero element in the block order ``n_- < h < n_+``.

    :raises SpecError: on an element of nonzero weight
    """
    table = u.algebra.table
    R, _ = hpoly_ring(table.rank)
    weight = u.weight
    if weight is not None and not weight.is_zero:
        raise SpecError('Harish-Chandra projection needs weight 0, got {}'.format(weight))
    p = R.zero
    for monomial, c in u.terms.items():
        if all(table.weights[x].is_zero for x in monomial):
            term = R.ground_new(to_qq(c))
            for x in monomial:
                term *= cartan_variable(table, x)
            p += term
    return p


def polynomial_span(polynomials):
    echelon = SparseEchelon()
    for n, p in enumerate(polynomials):
        echelon.insert({monom: rational(c) for monom, c in p.items()}, label=n)
    return echelon


def hc_table(polynomials):
    """
    Coefficient table, one row per polynomial and one column per monomial.
    """
    rows = [{str(monom): format_rational(c) for monom, c in sorted(p.items(), reverse=True)} for p in polynomials]
    frame = pd.DataFrame(rows, index=['p{}'.format(n) for n in range(1, len(polynomials) + 1)])
    return frame.fillna('0')


@dataclass(frozen=True)
class AffineWeightSpec:
    """
    ``Σ coefficients[j] Λ_j``; each coefficient a rational or an affine element of ``Q[x]``.
    """
    coefficients: Tuple

    @property
    def parametric(self):
        return any(hasattr(c, 'ring') for c in self.coefficients)

    def __str__(self):
        parts = []
        for j, c in enumerate(self.coefficients):
            if hasattr(c, 'ring'):
                if c:
                    parts.append('({}) L{}'.format(c, j))
            elif c:
                parts.append('({}) L{}'.format(format_rational(c), j))
        return ' + '.join(parts) or '0'


def _lift(value):
    return value if hasattr(value, 'ring') else line_affine(rational(value))


def _affine_parts(p):
    terms = {monom[0]: rational(c) for monom, c in p.items()}
    assert set(terms) <= {0, 1}, 'not affine: {}'.format(p)
    return terms.get(0, Fraction(0)), terms.get(1, Fraction(0))


def weight_convert(spec, table):
    """
    :return: ``(level, coords)``: level ``Σ c_j`` and ε-coordinates of ``Σ_{j≥1} c_j ω_j``,
        as line-ring elements when ``spec`` is parametric and as Fractions otherwise
    """
    if len(spec.coefficients) != table.lie_rank + 1:
        raise SpecError('expected {} affine coefficients, got {}'.format(table.lie_rank + 1, len(spec.coefficients)))
    coefficients = [_lift(c) for c in spec.coefficients]
    level = sum(coefficients, LINE_RING.zero)
    coords = [LINE_RING.zero] * table.rank
    for j, c in enumerate(coefficients[1:], start=1):
        omega = table.algebra.fundamental_weight(j)
        coords = [total + c * to_qq(omega(i)) for i, total in enumerate(coords, start=1)]
    if spec.parametric:
        return level, coords
    return _affine_parts(level)[0], [_affine_parts(p)[0] for p in coords]


def example_polynomials():
    """
    The four polynomials printed for sp_6, m = 3, n = 1.
    """
    R, (h1, h2, h3) = hpoly_ring(3)
    half = R.ground_new(to_qq(Fraction(1, 2)))
    return [(h1 + 1) * (h2 + half) * h3,
            (h1 + 1) * (4 * h3 + (h2 + h3) * (h2 + h3 - 1)),
            h3 * (4 * (h2 + 1) + (h1 + h2 + 2) * (h1 + h2 - 1)),
            4 * h3 * (h2 + 1) + (h1 + h3 - 1) * (h2 + h3 + h2 * (h1 + h3))]


def example_lines():
    x = line_affine(0, 1)
    minus = line_affine(-1, -1)
    return [AffineWeightSpec((minus, x, 0, 0)),
            AffineWeightSpec((0, minus, x, 0)),
            AffineWeightSpec((0, 0, minus, x))]


def example_points():
    half = Fraction(1, 2)
    return [AffineWeightSpec(tuple(rational(c) for c in coefficients)) for coefficients in
            [(-2, 0, 1, 0), (0, 1, 0, -2), (-half, 0, 0, -half),
             (-half, 0, 1, -3 * half), (-3 * half, 1, 0, -half), (-3 * half, 1, 1, -3 * half)]]


def _on_line(point, coords):
    """
    Whether the rational point lies on the affine line ``coords(x)``.
    """
    parts = [_affine_parts(p) for p in coords]
    x = None
    for value, (constant, slope) in zip(point, parts):
        if slope:
            x = (value - constant) / slope
            break
    if x is None:
        return all(value == constant for value, (constant, _) in zip(point, parts))
    return all(value == constant + slope * x for value, (constant, slope) in zip(point, parts))


def _on_printed_locus(point, line_coords, point_coords):
    return any(_on_line(point, coords) for coords in line_coords) or any(list(point) == p for p in point_coords)


def random_weights(rng, count, rank, avoid=lambda point: False):
    """
    Seeded rational weights in ε-coordinates, skipping those ``avoid`` rejects.
    """
    weights = []
    while len(weights) < count:
        numerators = rng.integers(-12, 13, size=rank)
        denominators = rng.integers(1, 5, size=rank)
        point = [Fraction(int(a), int(b)) for a, b in zip(numerators, denominators)]
        if not avoid(point):
            weights.append(point)
    return weights


def classify_top(spec, dim_cap=DEFAULT_DIM_CAP):
    """
    Dimension, highest weight, closure and Harish-Chandra polynomials of R_{m,n}.
    """
    with stopwatch() as elapsed:
        module = adjoint_orbit_top(spec, dim_cap)
        expected = weyl_dimension(module.table, module.highest_weight)
        polynomials = [hc_projection(u) for u in zero_weight_subspace(module)]
        span = polynomial_span(polynomials)
    passed = module.closure['closed'] and module.dim == expected
    witness = None
    if not passed:
        witness = {'dim': module.dim, 'weyl_dimension': expected, 'closure': module.closure}
    report = VerificationReport(claim='top-level',
                                statement='R_mn is ad-closed with the Weyl dimension of its highest weight',
                                passed=passed,
                                witness=witness,
                                parameters={**spec.parameters(),
                                            'dim': module.dim,
                                            'weyl_dimension': expected,
                                            'highest_weight': str(module.highest_weight),
                                            'dim_zero_weight': len(polynomials),
                                            'hc_rank': span.rank},
                                details={'closure': module.closure,
                                         'polynomials': [str(p) for p in polynomials]},
                                timing_ms=elapsed['ms'])
    report.tables.append(hc_table(polynomials))
    return report


def classify_example(seed=DEFAULT_SEED, controls=DEFAULT_CONTROLS, dim_cap=DEFAULT_DIM_CAP):
    """
    Check the printed highest weights for sp_6 at m = 3, n = 1 (level -1) against
    the Harish-Chandra polynomials of the zero-weight space of R.
    """
    spec = determinant_spec('C', 3, 3, 1)
    table = spec.table
    level = spec.level
    with stopwatch() as elapsed:
        module = adjoint_orbit_top(spec, dim_cap)
        zero_space = zero_weight_subspace(module)
        polynomials = [hc_projection(u) for u in zero_space]
        span = polynomial_span(polynomials)
        printed = example_polynomials()
        reports = [_zero_weight_report(module, polynomials, span),
                   _printed_span_report(printed, span)]

        logger.info('Checking printed families and points')
        lines = [(w, weight_convert(w, table)) for w in example_lines()]
        points = [(w, weight_convert(w, table)) for w in example_points()]
        reports.append(_lines_report(lines, polynomials, printed, level))
        reports.append(_points_report(points, polynomials, printed, level))

        logger.info('Drawing {} negative controls with seed {}'.format(controls, seed))
        line_coords = [coords for _, (_, coords) in lines]
        point_coords = [coords for _, (_, coords) in points]
        weights = random_weights(np.random.default_rng(seed), controls, table.rank,
                                 avoid=lambda p: _on_printed_locus(p, line_coords, point_coords))
        reports.append(_controls_report(weights, polynomials))

    report = combine('category-o-classification',
                     'printed highest weights at level -1 are common zeros of the Harish-Chandra polynomials',
                     reports,
                     parameters={**spec.parameters(), 'dim': module.dim, 'dim_zero_weight': len(zero_space),
                                 'controls': controls})
    report.seed = seed
    report.timing_ms = elapsed['ms']
    report.tables.append(hc_table(polynomials))
    if not reports[1].passed:
        report.warnings.append('printed polynomial outside the computed span; possible convention mismatch')
    return report


def _zero_weight_report(module, polynomials, span):
    passed = len(polynomials) == 4 and span.rank == 4 and module.closure['closed']
    witness = None
    if not passed:
        witness = {'dim_zero_weight': len(polynomials), 'hc_rank': span.rank, 'closure': module.closure}
    return VerificationReport(claim='zero-weight-space',
                              statement='R_0 has dimension 4 with independent Harish-Chandra polynomials',
                              passed=passed,
                              witness=witness,
                              parameters={'dim': module.dim, 'dim_zero_weight': len(polynomials),
                                          'hc_rank': span.rank},
                              details={'polynomials': [str(p) for p in polynomials],
                                       'coefficients': [hpoly_to_payload(p) for p in polynomials]})


def _printed_span_report(printed, span):
    membership = [span.contains({monom: rational(c) for monom, c in p.items()}) for p in printed]
    witness = None
    if not all(membership):
        n = membership.index(False)
        witness = {'polynomial': 'p{}'.format(n + 1), 'value': str(printed[n])}
    return VerificationReport(claim='printed-span',
                              statement='each printed polynomial lies in the span of the computed ones',
                              passed=witness is None,
                              witness=witness,
                              details=[{'polynomial': 'p{}'.format(n), 'in_span': flag}
                                       for n, flag in enumerate(membership, start=1)])


def _lines_report(lines, polynomials, printed, level):
    details, witness = [], None
    for spec, (line_level, coords) in lines:
        values = [hpoly_substitute(p, coords) for p in polynomials]
        printed_values = [hpoly_substitute(p, coords) for p in printed]
        level_ok = line_level == line_affine(level)
        details.append({'weight': str(spec),
                        'finite_weight': [str(c) for c in coords],
                        'level_ok': level_ok,
                        'vanishes': not any(values),
                        'printed_vanish': not any(printed_values)})
        if witness is None and (not level_ok or any(values)):
            n = next((n for n, v in enumerate(values) if v), None)
            witness = {'weight': str(spec), 'level': str(line_level)}
            if n is not None:
                witness.update({'polynomial': str(polynomials[n]), 'value': str(values[n])})
    return VerificationReport(claim='line-families',
                              statement='every computed polynomial vanishes identically on the printed lines',
                              passed=witness is None,
                              witness=witness,
                              details=details)


def _points_report(points, polynomials, printed, level):
    details, witness = [], None
    for spec, (point_level, coords) in points:
        values = [hpoly_eval(p, coords) for p in polynomials]
        details.append({'weight': str(spec),
                        'finite_weight': [format_rational(c) for c in coords],
                        'level_ok': point_level == level,
                        'values': [format_rational(v) for v in values],
                        'printed_values': [format_rational(hpoly_eval(p, coords)) for p in printed]})
        if witness is None and (point_level != level or any(values)):
            n = next((n for n, v in enumerate(values) if v), None)
            witness = {'weight': str(spec), 'level': format_rational(point_level)}
            if n is not None:
                witness.update({'polynomial': str(polynomials[n]), 'value': format_rational(values[n])})
    return VerificationReport(claim='isolated-points',
                              statement='every printed isolated weight is a common zero',
                              passed=witness is None,
                              witness=witness,
                              details=details)


def _controls_report(weights, polynomials):
    details, witness = [], None
    for point in weights:
        values = [hpoly_eval(p, point) for p in polynomials]
        violated = next((n for n, v in enumerate(values) if v), None)
        details.append({'finite_weight': [format_rational(c) for c in point],
                        'violated': None if violated is None else 'p{}'.format(violated + 1),
                        'value': None if violated is None else format_rational(values[violated])})
        if violated is None and witness is None:
            witness = {'finite_weight': [format_rational(c) for c in point], 'reason': 'common zero off the list'}
    return VerificationReport(claim='negative-controls',
                              statement='random weights off the printed list violate some polynomial',
                              passed=witness is None,
                              witness=witness,
                              details=details)
