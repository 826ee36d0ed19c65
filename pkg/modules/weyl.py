"""
The Weyl algebra W(A) on ``rank`` oscillator pairs ``a_i, a*_i`` with
``[a_i, a*_j] = δ_ij``.

Elements are kept in normal order, all creation operators ``a_i`` to the left
of all annihilation operators ``a*_i``.
"""
import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import NamedTuple, Tuple

from modules.errors import NotLinearError
from modules.scalars import format_rational, rational


class WeylMonomial(NamedTuple):
    """
    ``a^creation (a*)^annihilation``
    """
    creation: Tuple[int, ...]
    annihilation: Tuple[int, ...]

    @property
    def degree(self):
        return sum(self.creation) + sum(self.annihilation)

    @property
    def sort_key(self):
        return self.degree, self.creation, self.annihilation

    def __str__(self):
        factors = []
        for star, exponents in (('', self.creation), ('*', self.annihilation)):
            for i, e in enumerate(exponents, start=1):
                if e == 1:
                    factors.append('a{}{}'.format(star, i))
                elif e > 1:
                    factors.append('a{}{}^{}'.format(star, i, e))
        return ' '.join(factors) if factors else '1'


@lru_cache(maxsize=None)
def _reorder(annihilation_power, creation_power):
    """
    ``a*^b a^c = Σ_j (-1)^j C(b,j) C(c,j) j! a^(c-j) a*^(b-j)`` for a single pair.
    """
    return tuple((j, (-1) ** j * comb(annihilation_power, j) * comb(creation_power, j) * factorial(j))
                 for j in range(min(annihilation_power, creation_power) + 1))


@lru_cache(maxsize=None)
def _monomial_product(left, right):
    """
    Normal-ordered product of two monomials as a tuple of ``(monomial, int coefficient)``.
    """
    per_index = [_reorder(b, c) for b, c in zip(left.annihilation, right.creation)]
    result = {}
    for choice in itertools.product(*per_index):
        coefficient = 1
        creation, annihilation = [], []
        for i, (j, c) in enumerate(choice):
            coefficient *= c
            creation.append(left.creation[i] + right.creation[i] - j)
            annihilation.append(left.annihilation[i] - j + right.annihilation[i])
        monomial = WeylMonomial(tuple(creation), tuple(annihilation))
        result[monomial] = result.get(monomial, 0) + coefficient
    return tuple((m, c) for m, c in result.items() if c)


class WeylElement(object):
    """
    Finite map from WeylMonomial to Fraction with no zero coefficients.

    :param int rank: number of oscillator pairs
    :param dict terms: monomial -> coefficient
    """

    def __init__(self, rank, terms=None):
        self.rank = rank
        self.terms = {}
        for monomial, c in (terms or {}).items():
            c = rational(c)
            if c:
                assert len(monomial.creation) == rank and len(monomial.annihilation) == rank
                self.terms[monomial] = c

    @classmethod
    def scalar(cls, rank, value):
        zero = (0,) * rank
        return cls(rank, {WeylMonomial(zero, zero): value})

    @classmethod
    def generator(cls, rank, i, star=False):
        """
        ``a_i`` (or ``a*_i`` when ``star``), ``i`` counted from 1.
        """
        unit = tuple(1 if j == i - 1 else 0 for j in range(rank))
        zero = (0,) * rank
        monomial = WeylMonomial(zero, unit) if star else WeylMonomial(unit, zero)
        return cls(rank, {monomial: 1})

    @classmethod
    def linear_basis(cls, rank):
        """
        ``a_1, ..., a_rank, a*_1, ..., a*_rank``
        """
        return ([cls.generator(rank, i) for i in range(1, rank + 1)]
                + [cls.generator(rank, i, star=True) for i in range(1, rank + 1)])

    def _coerce(self, other):
        if isinstance(other, WeylElement):
            assert other.rank == self.rank
            return other
        return WeylElement.scalar(self.rank, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return WeylElement(self.rank, terms)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.rank, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, WeylElement):
            other = rational(other)
            return WeylElement(self.rank, {m: c * other for m, c in self.terms.items()})
        return weyl_mul(self, other)

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            other = self._coerce(other)
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __pow__(self, exponent):
        result = WeylElement.scalar(self.rank, 1)
        for _ in range(exponent):
            result = result * self
        return result

    @property
    def degree(self):
        return max((m.degree for m in self.terms), default=-1)

    def is_linear(self):
        return all(m.degree == 1 for m in self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: item[0].sort_key)

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for m, c in self.sorted_terms():
            if m.degree == 0:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(str(m))
            elif c == -1:
                parts.append('-' + str(m))
            else:
                parts.append('{} {}'.format(format_rational(c), m))
        return ' + '.join(parts).replace('+ -', '- ')

    __repr__ = __str__

    def to_payload(self):
        return [[list(m.creation), list(m.annihilation), format_rational(c)] for m, c in self.sorted_terms()]


def weyl_mul(x, y):
    """
    Canonical normal-ordered product ``x y``.
    """
    assert x.rank == y.rank
    terms = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            for m, c in _monomial_product(m1, m2):
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2 * c
    return WeylElement(x.rank, terms)


def commutator(x, y):
    return x * y - y * x


def normal_ordered_quadratic(x, y):
    """
    ``:xy: = (xy + yx) / 2`` for linear ``x`` and ``y``.
    """
    if not (x.is_linear() and y.is_linear()):
        raise NotLinearError('normal ordering is defined on linear elements, got {} and {}'.format(x, y))
    return (x * y + y * x) * Fraction(1, 2)


def degree1_action(q, z):
    """
    ``[q, z]`` for ``q`` of degree at most two and linear ``z``; the result is linear.
    """
    if q.degree > 2 or not z.is_linear():
        raise NotLinearError('expected a quadratic acting on a linear element, got {} on {}'.format(q, z))
    result = commutator(q, z)
    if not result.is_linear():
        raise NotLinearError('bracket {} is not linear'.format(result))
    return result
