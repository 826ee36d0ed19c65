"""
PBW normal form in U(g).

Monomials are tuples of basis indices sorted by the block order
n_- < h < n_+ (basis index inside a block), coefficients are Fractions.
"""
from fractions import Fraction
from functools import lru_cache

from modules.errors import InhomogeneousStateError
from modules.lie import Weight
from modules.scalars import format_rational, parse_rational, rational


def _accumulate(target, terms, coefficient):
    for monomial, c in terms.items():
        target[monomial] = target.get(monomial, Fraction(0)) + c * coefficient


def _prune(terms):
    return {m: c for m, c in terms.items() if c}


class UEnvElement(object):
    """
    Finite map from canonical PBW words of U(g) to rationals.

    :param EnvelopingAlgebra algebra: the enveloping algebra
    :param dict terms: canonical monomial -> coefficient
    """

    def __init__(self, algebra, terms=None):
        self.algebra = algebra
        self.terms = _prune({m: rational(c) for m, c in (terms or {}).items()})

    def _new(self, terms):
        return UEnvElement(self.algebra, terms)

    def _coerce(self, other):
        if isinstance(other, UEnvElement):
            return other
        return self.algebra.one * rational(other)

    def __add__(self, other):
        terms = dict(self.terms)
        _accumulate(terms, self._coerce(other).terms, 1)
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, UEnvElement):
            return self.algebra.mul(self, other)
        other = rational(other)
        return self._new({m: c * other for m, c in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, exponent):
        result = self.algebra.one
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, UEnvElement):
            other = self._coerce(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def weight(self):
        return self.algebra.weight_of_element(self)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: self.algebra.monomial_key(item[0]))

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for monomial, c in self.sorted_terms():
            text = self.algebra.monomial_text(monomial)
            if not monomial:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(text)
            elif c == -1:
                parts.append('-' + text)
            else:
                parts.append('{} {}'.format(format_rational(c), text))
        return ' + '.join(parts).replace('+ -', '- ')

    __repr__ = __str__

    def to_payload(self):
        labels = self.algebra.table.labels
        return [[[labels[x] for x in monomial], format_rational(c)] for monomial, c in self.sorted_terms()]


class EnvelopingAlgebra(object):
    """
    :param StructureTable table: brackets of g
    """

    def __init__(self, table):
        self.table = table
        self.order = table.uenv_rank
        self._cache = {}

    def __repr__(self):
        return 'EnvelopingAlgebra({!r})'.format(self.table)

    @property
    def one(self):
        return UEnvElement(self, {(): 1})

    @property
    def zero(self):
        return UEnvElement(self)

    def index(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, str):
            return self.table[x]
        return self.table.index[x]

    def generator(self, x):
        return UEnvElement(self, {(self.index(x),): 1})

    def monomial_key(self, monomial):
        return len(monomial), tuple(self.order[x] for x in monomial)

    def monomial_text(self, monomial):
        return ' '.join(self.table.labels[x] for x in monomial) if monomial else '1'

    def is_canonical(self, monomial):
        keys = [self.order[x] for x in monomial]
        return keys == sorted(keys)

    def _lmul(self, x, monomial):
        """
        ``x`` times a canonical monomial.
        """
        if not monomial or self.order[x] <= self.order[monomial[0]]:
            return {(x,) + monomial: Fraction(1)}
        key = (x, monomial)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        y, rest = monomial[0], monomial[1:]
        result = {}
        for reordered, c in self._lmul(x, rest).items():
            _accumulate(result, self._lmul(y, reordered), c)
        for z, c in self.table.bracket(x, y).items():
            _accumulate(result, self._lmul(z, rest), c)
        result = _prune(result)
        self._cache[key] = result
        return result

    def _word_times(self, word, monomial):
        terms = {monomial: Fraction(1)}
        for x in reversed(word):
            product = {}
            for m, c in terms.items():
                _accumulate(product, self._lmul(x, m), c)
            terms = _prune(product)
        return terms

    def normal_form(self, word):
        """
        Canonical form of an arbitrary word of basis elements.
        """
        return UEnvElement(self, self._word_times([self.index(x) for x in word], ()))

    def mul(self, u, v):
        terms = {}
        for m1, c1 in u.terms.items():
            for m2, c2 in v.terms.items():
                _accumulate(terms, self._word_times(m1, m2), c1 * c2)
        return UEnvElement(self, terms)

    def ad(self, x, u):
        """
        ``[x, u]`` for a basis element ``x``.
        """
        g = self.generator(x)
        return g * u - u * g

    def monomial_weight(self, monomial):
        weight = Weight.zero(self.table.rank)
        for x in monomial:
            weight = weight + self.table.weights[x]
        return weight

    def weight_of_element(self, u):
        weight, witness = None, None
        for monomial in sorted(u.terms, key=self.monomial_key):
            w = self.monomial_weight(monomial)
            if weight is None:
                weight, witness = w, monomial
            elif w != weight:
                raise InhomogeneousStateError(self.monomial_text(witness), self.monomial_text(monomial))
        return weight

    def element_from_payload(self, payload):
        return UEnvElement(self, {tuple(self.table[label] for label in monomial): parse_rational(c)
                                  for monomial, c in payload})


@lru_cache(maxsize=None)
def enveloping_algebra(table):
    return EnvelopingAlgebra(table)


def uenv_normal_form(table, word):
    return enveloping_algebra(table).normal_form(word)


def uenv_mul(u, v):
    return u.algebra.mul(u, v)
