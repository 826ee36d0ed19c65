import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Tuple

import pandas as pd
import sympy

from modules.errors import RealizationError, SpecError
from modules.linalg import SparseEchelon
from modules.scalars import format_rational, rational
from modules.weyl import WeylElement, commutator, degree1_action, normal_ordered_quadratic

logger = logging.getLogger()


@dataclass(frozen=True)
class Weight:
    """
    ``Σ coords[i] ε_{i+1}`` with ``ε_i(h_j) = δ_ij``.
    """
    coords: Tuple[Fraction, ...]

    @classmethod
    def of(cls, *coords):
        return cls(tuple(rational(c) for c in coords))

    @classmethod
    def zero(cls, rank):
        return cls((Fraction(0),) * rank)

    @classmethod
    def unit(cls, rank, i):
        return cls(tuple(Fraction(1 if j == i - 1 else 0) for j in range(rank)))

    def __add__(self, other):
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, scalar):
        scalar = rational(scalar)
        return Weight(tuple(scalar * a for a in self.coords))

    __rmul__ = __mul__

    def inner(self, other):
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    def __call__(self, i):
        """
        Value on the Cartan coordinate ``h_i``.
        """
        return self.coords[i - 1]

    @property
    def is_zero(self):
        return not any(self.coords)

    @property
    def is_positive(self):
        for a in self.coords:
            if a:
                return a > 0
        return False

    def to_payload(self):
        return [format_rational(a) for a in self.coords]

    def __str__(self):
        parts = []
        for i, a in enumerate(self.coords, start=1):
            if not a:
                continue
            if a == 1:
                coefficient = '+'
            elif a == -1:
                coefficient = '-'
            elif a.denominator == 1:
                coefficient = '{:+d}'.format(a.numerator)
            else:
                coefficient = ('+' if a > 0 else '-') + '({})'.format(format_rational(abs(a)))
            parts.append('{}e{}'.format(coefficient, i))
        text = ''.join(parts).lstrip('+')
        return text or '0'


class LieBasisElement(NamedTuple):
    """
    ``pos``: X_{ε_i+ε_j} (i ≤ j), ``neg``: X_{-ε_i-ε_j} (i ≤ j), ``diff``: X_{ε_i-ε_j} (i ≠ j),
    ``cartan``: h_i (type C, j = 0) or h_i - h_j (type A, j = i + 1).
    """
    kind: str
    i: int
    j: int

    @property
    def label(self):
        i, j = self.i, self.j
        if self.kind == 'pos':
            return 'X[2e{}]'.format(i) if i == j else 'X[e{}+e{}]'.format(i, j)
        if self.kind == 'neg':
            return 'X[-2e{}]'.format(i) if i == j else 'X[-e{}-e{}]'.format(i, j)
        if self.kind == 'diff':
            return 'X[e{}-e{}]'.format(i, j)
        return 'h{}'.format(i) if j == 0 else 'h{}-h{}'.format(i, j)

    def __str__(self):
        return self.label


class ClassicalAlgebra(object):
    """
    All algebras are realized by normal-ordered quadratics in W(A) and carry
    a basis, simple roots, a highest root and fundamental weights.

    :param int rank: number of oscillator pairs ℓ
    """
    kind = None
    form_scale = Fraction(1)

    def __init__(self, rank):
        if rank < 2:
            raise SpecError('rank must be at least 2, got {}'.format(rank))
        self.rank = rank

    @property
    def lie_rank(self):
        raise NotImplementedError

    def basis(self):
        raise NotImplementedError

    def simple_roots(self):
        raise NotImplementedError

    def highest_root(self):
        raise NotImplementedError

    def fundamental_weight(self, m):
        raise NotImplementedError

    def _generator(self, i, star=False):
        return WeylElement.generator(self.rank, i, star)

    def realization(self, x):
        a, a_star = self._generator, lambda i: self._generator(i, star=True)
        if x.kind == 'pos':
            return normal_ordered_quadratic(a(x.i), a(x.j))
        if x.kind == 'neg':
            return normal_ordered_quadratic(a_star(x.i), a_star(x.j))
        if x.kind == 'diff':
            return normal_ordered_quadratic(a(x.i), a_star(x.j))
        h = -normal_ordered_quadratic(a(x.i), a_star(x.i))
        if x.j:
            h = h + normal_ordered_quadratic(a(x.j), a_star(x.j))
        return h

    def weight(self, x):
        e = lambda i: Weight.unit(self.rank, i)
        if x.kind == 'pos':
            return e(x.i) + e(x.j)
        if x.kind == 'neg':
            return -(e(x.i) + e(x.j))
        if x.kind == 'diff':
            return e(x.i) - e(x.j)
        return Weight.zero(self.rank)

    def _check_fundamental_index(self, m):
        if not 1 <= m <= self.lie_rank:
            raise SpecError('fundamental weight index {} outside 1..{}'.format(m, self.lie_rank))


class Symplectic(ClassicalAlgebra):
    """
    sp_{2ℓ}: all quadratics in the oscillators.
    """
    kind = 'C'

    @property
    def lie_rank(self):
        return self.rank

    def basis(self):
        l = self.rank
        pos = [LieBasisElement('pos', i, j) for i in range(1, l + 1) for j in range(i, l + 1)]
        diff = [LieBasisElement('diff', i, j) for i in range(1, l + 1) for j in range(1, l + 1) if i != j]
        neg = [LieBasisElement('neg', i, j) for i in range(1, l + 1) for j in range(i, l + 1)]
        cartan = [LieBasisElement('cartan', i, 0) for i in range(1, l + 1)]
        return pos + diff + neg + cartan

    def simple_roots(self):
        l = self.rank
        e = lambda i: Weight.unit(l, i)
        return [e(i) - e(i + 1) for i in range(1, l)] + [e(l) * 2]

    def highest_root(self):
        return Weight.unit(self.rank, 1) * 2

    def fundamental_weight(self, m):
        self._check_fundamental_index(m)
        return Weight.of(*[1 if i < m else 0 for i in range(self.rank)])


class SpecialLinear(ClassicalAlgebra):
    """
    sl_ℓ: the subalgebra generated by the X_{ε_i-ε_j}.
    """
    kind = 'A'
    form_scale = Fraction(1, 2)

    @property
    def lie_rank(self):
        return self.rank - 1

    def basis(self):
        l = self.rank
        diff = [LieBasisElement('diff', i, j) for i in range(1, l + 1) for j in range(1, l + 1) if i != j]
        cartan = [LieBasisElement('cartan', i, i + 1) for i in range(1, l)]
        return diff + cartan

    def simple_roots(self):
        e = lambda i: Weight.unit(self.rank, i)
        return [e(i) - e(i + 1) for i in range(1, self.rank)]

    def highest_root(self):
        return Weight.unit(self.rank, 1) - Weight.unit(self.rank, self.rank)

    def fundamental_weight(self, m):
        self._check_fundamental_index(m)
        l = self.rank
        shift = Fraction(m, l)
        return Weight.of(*[(1 if i < m else 0) - shift for i in range(l)])


ALGEBRAS = {'A': SpecialLinear, 'C': Symplectic}


class StructureTable(object):
    """
    Brackets, invariant form and root data of a classical algebra, every
    bracket obtained by multiplying realizations in W(A) and re-expressing
    the commutator in the basis.

    :param ClassicalAlgebra algebra: the algebra to tabulate
    """

    def __init__(self, algebra):
        self.algebra = algebra
        self.kind = algebra.kind
        self.rank = algebra.rank
        self.lie_rank = algebra.lie_rank
        self.basis = algebra.basis()
        self.dim = len(self.basis)
        self.index = {x: n for n, x in enumerate(self.basis)}
        self.labels = [x.label for x in self.basis]
        self._by_label = {x.label: n for n, x in enumerate(self.basis)}
        self.realizations = [algebra.realization(x) for x in self.basis]
        self.weights = [algebra.weight(x) for x in self.basis]
        self.cartan = [n for n, x in enumerate(self.basis) if x.kind == 'cartan']
        self.positive = [n for n, w in enumerate(self.weights) if w.is_positive]
        self.negative = [n for n, w in enumerate(self.weights) if (-w).is_positive]
        self._root_vectors = {self.weights[n]: n for n in self.positive + self.negative}
        self.simple_roots = algebra.simple_roots()
        self.theta = algebra.highest_root()
        self.chevalley_e = [self.root_vector(alpha) for alpha in self.simple_roots]
        self.chevalley_f = [self.root_vector(-alpha) for alpha in self.simple_roots]
        self.theta_vector = self.root_vector(self.theta)
        self.minus_theta_vector = self.root_vector(-self.theta)
        self.positive_roots = [self.weights[n] for n in self.positive]
        self.rho = sum(self.positive_roots, Weight.zero(self.rank)) * Fraction(1, 2)
        # PBW block order for U(g): n_- < h < n_+
        block = {**{n: 0 for n in self.negative}, **{n: 1 for n in self.cartan}, **{n: 2 for n in self.positive}}
        self.uenv_rank = [(block[n], n) for n in range(self.dim)]
        self._solver = SparseEchelon()
        for n, r in enumerate(self.realizations):
            independent = self._solver.insert(r.terms, label=n)
            assert independent, 'realization of {} is dependent'.format(self.labels[n])
        logger.info('Building structure table for type {} rank {} ({} basis elements)'.format(
            self.kind, self.rank, self.dim))
        self.brackets = self._build_brackets()
        self._actions = [self._linear_action(r) for r in self.realizations]
        self.forms = self._build_form()

    def __getitem__(self, label):
        return self._by_label[label]

    def __repr__(self):
        return 'StructureTable(type={}, rank={})'.format(self.kind, self.rank)

    def root_vector(self, weight):
        if weight not in self._root_vectors:
            raise SpecError('{} is not a root of type {} rank {}'.format(weight, self.kind, self.rank))
        return self._root_vectors[weight]

    def express(self, element):
        """
        Coefficients of a W(A) element in the basis realizations.

        :raises RealizationError: when the element leaves the span
        """
        combination = self._solver.express(element.terms)
        if combination is None:
            raise RealizationError('{} is not in the span of the basis realizations'.format(element))
        return combination

    def _build_brackets(self):
        brackets = [dict() for _ in range(self.dim)]
        for p in range(self.dim):
            for q in range(p + 1, self.dim):
                product = commutator(self.realizations[p], self.realizations[q])
                if not product:
                    continue
                combination = self.express(product)
                brackets[p][q] = combination
                brackets[q][p] = {n: -c for n, c in combination.items()}
        return brackets

    def bracket(self, p, q):
        """
        ``[x_p, x_q]`` as ``{index: coefficient}``.
        """
        return self.brackets[p].get(q, {})

    def _linear_action(self, realization):
        """
        Matrix of ``[q, ·]`` on the span of the 2ℓ oscillators, as ``{(row, column): value}``.
        """
        generators = WeylElement.linear_basis(self.rank)
        position = {next(iter(g.terms)): n for n, g in enumerate(generators)}
        matrix = {}
        for column, z in enumerate(generators):
            image = degree1_action(realization, z)
            for monomial, c in image.terms.items():
                matrix[(position[monomial], column)] = c
        return matrix

    def _build_form(self):
        forms = {}
        for p in range(self.dim):
            for q in range(p, self.dim):
                left, right = self._actions[p], self._actions[q]
                trace = sum((c * right.get((column, row), 0) for (row, column), c in left.items()), Fraction(0))
                value = trace * self.algebra.form_scale
                if value:
                    forms[(p, q)] = forms[(q, p)] = value
        return forms

    def form(self, p, q):
        return self.forms.get((p, q), Fraction(0))

    def gram_matrix(self):
        return sympy.Matrix(self.dim, self.dim,
                            lambda p, q: sympy.Rational(self.form(p, q).numerator, self.form(p, q).denominator))

    def bracket_table(self):
        """
        The bracket table as a DataFrame of text entries, rows and columns in basis order.
        """
        cells = [[combination_to_text(self, self.bracket(p, q)) for q in range(self.dim)] for p in range(self.dim)]
        return pd.DataFrame(cells, index=self.labels, columns=self.labels)

    def form_table(self):
        cells = [[format_rational(self.form(p, q)) for q in range(self.dim)] for p in range(self.dim)]
        return pd.DataFrame(cells, index=self.labels, columns=self.labels)


def combination_to_text(table, combination):
    if not combination:
        return '0'
    parts = []
    for n in sorted(combination):
        c = combination[n]
        if c == 1:
            parts.append(table.labels[n])
        elif c == -1:
            parts.append('-' + table.labels[n])
        else:
            parts.append('{} {}'.format(format_rational(c), table.labels[n]))
    return ' + '.join(parts).replace('+ -', '- ')


@lru_cache(maxsize=None)
def build_algebra(kind, rank):
    """
    :param str kind: ``'A'`` (sl_ℓ) or ``'C'`` (sp_2ℓ)
    :param int rank: ℓ ≥ 2
    """
    if kind not in ALGEBRAS:
        raise SpecError('unknown algebra type {!r}'.format(kind))
    return StructureTable(ALGEBRAS[kind](rank))


def invariant_form(table, x, y):
    return table.form(_as_index(table, x), _as_index(table, y))


def weight_of(table, x):
    return table.weights[_as_index(table, x)]


def fundamental_weight(table, m):
    return table.algebra.fundamental_weight(m)


def weyl_dimension(table, highest):
    """
    ``Π_{α>0} (λ+ρ, α) / (ρ, α)``
    """
    shifted = highest + table.rho
    value = Fraction(1)
    for alpha in table.positive_roots:
        value *= shifted.inner(alpha) / table.rho.inner(alpha)
    assert value.denominator == 1
    return int(value)


def _as_index(table, x):
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return table[x]
    return table.index[x]
