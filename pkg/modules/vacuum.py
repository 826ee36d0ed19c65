"""
The vacuum module N_k(g) with the level kept as a formal variable.

A PBW monomial is a tuple of factors ``(mode, basis index)`` with every mode
at most -1, sorted ascending (deepest mode first, ties by basis index); it
stands for the product of the factors applied to the vacuum vector. States
map monomials to polynomials in ``k``.
"""
import logging
from functools import lru_cache

from modules.errors import InhomogeneousStateError, SpecError
from modules.lie import Weight
from modules.reports import VerificationReport, stopwatch
from modules.scalars import (K, LEVEL_RING, level_constant, level_from_payload, level_is_constant,
                             level_specialize, level_to_payload, level_to_text)

logger = logging.getLogger()

ONE = LEVEL_RING.one
ZERO = LEVEL_RING.zero


def _accumulate(target, terms, coefficient):
    for monomial, c in terms.items():
        target[monomial] = target.get(monomial, ZERO) + c * coefficient


def _prune(terms):
    return {m: c for m, c in terms.items() if c}


class VacuumState(object):
    """
    Finite map from canonical PBW monomials to level polynomials.

    :param VacuumModule module: the module the state lives in
    :param dict terms: monomial -> level polynomial
    """

    def __init__(self, module, terms=None):
        self.module = module
        self.terms = _prune(terms or {})

    def _new(self, terms):
        return VacuumState(self.module, terms)

    def __add__(self, other):
        terms = dict(self.terms)
        _accumulate(terms, other.terms, ONE)
        return self._new(terms)

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coefficient):
        """
        Multiply by a level polynomial or a rational.
        """
        if not hasattr(coefficient, 'ring'):
            coefficient = level_constant(coefficient)
        return self._new({m: c * coefficient for m, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, VacuumState) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def specialize(self, level):
        return self._new({m: level_specialize(c, level) for m, c in self.terms.items()})

    @property
    def is_numeric(self):
        return all(level_is_constant(c) for c in self.terms.values())

    @property
    def weight(self):
        return self.module.weight_of_state(self)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: item[0])

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for monomial, c in self.sorted_terms():
            text = self.module.monomial_text(monomial)
            parts.append(text if c == ONE else '({}) {}'.format(level_to_text(c), text))
        return ' + '.join(parts)

    __repr__ = __str__

    def to_payload(self):
        labels = self.module.table.labels
        return [[[[mode, labels[x]] for mode, x in monomial], level_to_payload(c)]
                for monomial, c in self.sorted_terms()]


class VacuumModule(object):
    """
    Action of the affine modes ``x(n)`` on N_k(g), with memoized straightening.

    :param StructureTable table: brackets and invariant form of g
    """

    def __init__(self, table):
        self.table = table
        self._brackets = [{q: [(r, level_constant(c)) for r, c in sorted(table.bracket(p, q).items())]
                           for q in range(table.dim) if table.bracket(p, q)}
                          for p in range(table.dim)]
        self._act_cache = {}
        self._lmul_cache = {}

    def __repr__(self):
        return 'VacuumModule({!r})'.format(self.table)

    @property
    def vacuum(self):
        return VacuumState(self, {(): ONE})

    @property
    def zero(self):
        return VacuumState(self)

    def index(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, str):
            return self.table[x]
        return self.table.index[x]

    def monomial_text(self, monomial):
        if not monomial:
            return '1'
        return ' '.join('{}({})'.format(self.table.labels[x], mode) for mode, x in monomial)

    def _lmul(self, y, m, monomial):
        """
        ``y(m)`` times a canonical monomial, ``m < 0``.
        """
        if not monomial or (m, y) <= monomial[0]:
            return {((m, y),) + monomial: ONE}
        key = (y, m, monomial)
        cached = self._lmul_cache.get(key)
        if cached is not None:
            return cached
        (m1, z1), rest = monomial[0], monomial[1:]
        result = {}
        for reordered, c in self._lmul(y, m, rest).items():
            _accumulate(result, self._lmul(z1, m1, reordered), c)
        for w, c in self._brackets[y].get(z1, ()):
            _accumulate(result, self._lmul(w, m + m1, rest), c)
        result = _prune(result)
        self._lmul_cache[key] = result
        return result

    def _act(self, x, n, monomial):
        """
        ``x(n)`` applied to a canonical monomial, any integer ``n``.
        """
        if n < 0:
            return self._lmul(x, n, monomial)
        if not monomial:
            return {}
        key = (x, n, monomial)
        cached = self._act_cache.get(key)
        if cached is not None:
            return cached
        (m1, y1), rest = monomial[0], monomial[1:]
        result = {}
        for moved, c in self._act(x, n, rest).items():
            _accumulate(result, self._lmul(y1, m1, moved), c)
        for z, c in self._brackets[x].get(y1, ()):
            _accumulate(result, self._act(z, n + m1, rest), c)
        if n + m1 == 0:
            form = self.table.form(x, y1)
            if form:
                _accumulate(result, {rest: ONE}, level_constant(n * form) * K)
        result = _prune(result)
        self._act_cache[key] = result
        return result

    def apply(self, x, n, state):
        """
        ``x(n) · state``, fully straightened.
        """
        x = self.index(x)
        result = {}
        for monomial, c in state.terms.items():
            _accumulate(result, self._act(x, n, monomial), c)
        return VacuumState(self, result)

    def apply_word(self, word, state):
        """
        Apply ``x_1(n_1) ... x_r(n_r)`` to ``state`` (rightmost factor first).
        """
        for mode, x in reversed(list(word)):
            state = self.apply(x, mode, state)
        return state

    def apply_words(self, words, state):
        """
        Apply a linear combination ``[(coefficient, word), ...]`` of words.
        """
        result = self.zero
        for coefficient, word in words:
            result = result + self.apply_word(word, state).scale(coefficient)
        return result

    def straighten(self, word):
        word = [(mode, self.index(x)) for mode, x in word]
        if any(mode > -1 for mode, _ in word):
            raise SpecError('straightening expects modes at most -1, got {}'.format(word))
        return self.apply_word(word, self.vacuum)

    def monomial_weight(self, monomial):
        weight = Weight.zero(self.table.rank)
        for _, x in monomial:
            weight = weight + self.table.weights[x]
        return weight

    @staticmethod
    def mode_degree(monomial):
        return sum(mode for mode, _ in monomial)

    def weight_of_state(self, state):
        """
        :return: the common weight of the monomials of ``state`` (None for the zero state)
        :raises InhomogeneousStateError: with two monomials of distinct weight
        """
        weight, witness = None, None
        for monomial in sorted(state.terms):
            w = self.monomial_weight(monomial)
            if weight is None:
                weight, witness = w, monomial
            elif w != weight:
                raise InhomogeneousStateError(self.monomial_text(witness), self.monomial_text(monomial))
        return weight

    def raising_generators(self):
        """
        ``e_{α_i}(0)`` for the simple roots, then ``x_{-θ}(1)``.
        """
        return [(x, 0) for x in self.table.chevalley_e] + [(self.table.minus_theta_vector, 1)]

    def singular_check(self, state, level=None):
        """
        :param VacuumState state: nonzero weight-homogeneous state
        :param level: rational level to specialize at; None keeps k symbolic
        """
        if not state:
            raise SpecError('the zero state is not a singular vector candidate')
        with stopwatch() as elapsed:
            weight = self.weight_of_state(state)
            if level is not None:
                state = state.specialize(level)
            checks, witness = [], None
            for x, mode in self.raising_generators():
                residual = self.apply(x, mode, state)
                if level is not None:
                    residual = residual.specialize(level)
                generator = '{}({})'.format(self.table.labels[x], mode)
                checks.append({'generator': generator, 'vanishes': not residual})
                if residual and witness is None:
                    witness = {'generator': generator, 'residual': str(residual), 'terms': residual.to_payload()}
        return VerificationReport(claim='singular-vector',
                                  statement='state is annihilated by every e_i(0) and x_-theta(1)',
                                  passed=witness is None,
                                  witness=witness,
                                  parameters={'type': self.table.kind,
                                              'rank': self.table.rank,
                                              'level': 'symbolic' if level is None else str(level),
                                              'weight': str(weight)},
                                  details=checks,
                                  timing_ms=elapsed['ms'])

    def state_from_payload(self, payload):
        terms = {}
        for monomial, coefficient in payload:
            key = tuple((mode, self.table[label]) for mode, label in monomial)
            terms[key] = level_from_payload(coefficient)
        return VacuumState(self, terms)


@lru_cache(maxsize=None)
def vacuum_module(table):
    return VacuumModule(table)


def apply_generator(table, x, n, state):
    return vacuum_module(table).apply(x, n, state)


def straighten(table, word):
    return vacuum_module(table).straighten(word)


def weight_of_state(table, state):
    return vacuum_module(table).weight_of_state(state)


def singular_check(table, state, level=None):
    return vacuum_module(table).singular_check(state, level)
