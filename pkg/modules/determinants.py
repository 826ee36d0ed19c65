import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction

from sympy.combinatorics import Permutation

from modules.errors import SpecError
from modules.lie import Weight, build_algebra
from modules.reports import ANCHORS, VerificationReport, stopwatch
from modules.scalars import K, level_constant
from modules.vacuum import vacuum_module

logger = logging.getLogger()

MODE = -1


@dataclass(frozen=True)
class DeterminantSpec:
    """
    :param str kind: ``'C'`` or ``'A'``
    :param int rank: ℓ
    :param int m: matrix size
    :param int n: power
    """
    kind: str
    rank: int
    m: int
    n: int

    @property
    def level(self):
        if self.kind == 'C':
            return Fraction(self.n) - Fraction(self.m + 1, 2)
        return Fraction(self.n - self.m)

    @property
    def table(self):
        return build_algebra(self.kind, self.rank)

    @property
    def module(self):
        return vacuum_module(self.table)

    def parameters(self):
        return {'type': self.kind, 'rank': self.rank, 'm': self.m, 'n': self.n, 'k_mn': str(self.level)}

    def __str__(self):
        return '{}{} m={} n={}'.format(self.kind, self.rank, self.m, self.n)


def determinant_spec(kind, rank, m, n, check_size=True):
    """
    Validated DeterminantSpec; ``check_size=False`` skips the size constraint between m and ℓ.
    """
    if kind not in ('A', 'C'):
        raise SpecError('unknown algebra type {!r}'.format(kind))
    if rank < 2 or m < 1 or n < 1:
        raise SpecError('need rank >= 2, m >= 1, n >= 1; got rank={}, m={}, n={}'.format(rank, m, n))
    if check_size:
        if kind == 'C' and m > rank:
            raise SpecError('type C needs m <= rank, got m={} rank={}'.format(m, rank))
        if kind == 'A' and 2 * m > rank:
            raise SpecError('type A needs 2m <= rank, got m={} rank={}'.format(m, rank))
    elif m > rank:
        raise SpecError('matrix of size {} does not fit rank {}'.format(m, rank))
    return DeterminantSpec(kind, rank, m, n)


def build_matrix(spec):
    """
    ``m x m`` matrix of basis indices of the mode -1 entries; None marks a
    position that is not a root vector (only possible with the size check off).
    """
    table = spec.table
    e = lambda i: Weight.unit(spec.rank, i)
    matrix = []
    for i in range(1, spec.m + 1):
        row = []
        for j in range(1, spec.m + 1):
            if spec.kind == 'C':
                row.append(table.root_vector(e(i) + e(j)))
            else:
                column = spec.rank - j + 1
                row.append(None if column == i else table.root_vector(e(i) - e(column)))
        matrix.append(row)
    return matrix


def entries_commute_check(spec):
    table = spec.table
    matrix = build_matrix(spec)
    entries = [(i, j, x) for i, row in enumerate(matrix, 1) for j, x in enumerate(row, 1)]
    defined = [entry for entry in entries if entry[2] is not None]
    witness = None
    for (i, j, x), (p, q, y) in itertools.combinations(defined, 2):
        if table.bracket(x, y):
            witness = {'entries': '({},{}) ({},{})'.format(i, j, p, q),
                       'bracket': '[{}, {}] != 0'.format(table.labels[x], table.labels[y])}
            break
    if witness is None and len(defined) < len(entries):
        i, j, _ = next(entry for entry in entries if entry[2] is None)
        witness = {'entry': '({},{})'.format(i, j), 'reason': 'not a root vector'}
    return VerificationReport(claim='entries-commute',
                              statement='matrix entries pairwise commute as mode -1 operators',
                              passed=witness is None,
                              witness=witness,
                              parameters=spec.parameters())


def _leibniz(matrix, rows, columns):
    """
    Determinant of a submatrix with commuting entries as ``{sorted word: coefficient}``.
    """
    words = {}
    for image in itertools.permutations(range(len(columns))):
        sign = Permutation(list(image)).signature()
        word = tuple(sorted((MODE, matrix[rows[r]][columns[c]]) for r, c in enumerate(image)))
        words[word] = words.get(word, 0) + sign
    return {w: Fraction(c) for w, c in words.items() if c}


def word_product(left, right):
    """
    Product of two combinations of words whose factors all commute.
    """
    product = {}
    for w1, c1 in left.items():
        for w2, c2 in right.items():
            word = tuple(sorted(w1 + w2))
            product[word] = product.get(word, Fraction(0)) + c1 * c2
    return {w: c for w, c in product.items() if c}


def word_power(words, n):
    result = {(): Fraction(1)}
    for _ in range(n):
        result = word_product(result, words)
    return result


def _require_commuting(spec):
    report = entries_commute_check(spec)
    if not report.passed:
        raise SpecError('determinant of {} is ambiguous: {}'.format(spec, report.witness))


def determinant_words(spec):
    _require_commuting(spec)
    matrix = build_matrix(spec)
    return _leibniz(matrix, list(range(spec.m)), list(range(spec.m)))


def minor_words(spec, i, j):
    """
    Δ_m^{i,j}(-1): delete row ``i`` and column ``j`` (1-based); the empty minor is 1.
    """
    if not (1 <= i <= spec.m and 1 <= j <= spec.m):
        raise SpecError('minor index ({},{}) outside 1..{}'.format(i, j, spec.m))
    _require_commuting(spec)
    matrix = build_matrix(spec)
    rows = [r for r in range(spec.m) if r != i - 1]
    columns = [c for c in range(spec.m) if c != j - 1]
    return _leibniz(matrix, rows, columns)


def _to_state(spec, words):
    module = spec.module
    return module.apply_words([(c, w) for w, c in sorted(words.items())], module.vacuum)


def determinant_vector(spec):
    """
    ``Δ_m(-1)^n 1`` in canonical form.
    """
    logger.info('Expanding determinant vector for {}'.format(spec))
    return _to_state(spec, word_power(determinant_words(spec), spec.n))


def minor_vector(spec, i, j):
    return _to_state(spec, minor_words(spec, i, j))


def cofactor_vector(spec):
    """
    First-row cofactor expansion of ``Δ_m(-1)^n 1``, an independent route to determinant_vector.
    """
    matrix = build_matrix(spec)
    rest = word_power(determinant_words(spec), spec.n - 1)
    expansion = {}
    for j in range(1, spec.m + 1):
        sign = (-1) ** (1 + j)
        entry = {((MODE, matrix[0][j - 1]),): Fraction(sign)}
        for w, c in word_product(entry, minor_words(spec, 1, j)).items():
            expansion[w] = expansion.get(w, Fraction(0)) + c
    return _to_state(spec, word_product(expansion, rest))


def lowering_factor(spec):
    """
    β = (x_{-θ}, x_θ)
    """
    table = spec.table
    return table.form(table.minus_theta_vector, table.theta_vector)


def predicted_lowering_residual(spec, level=None):
    """
    ``β n (k - k_mn) Δ_m^{1,1}(-1) Δ_m(-1)^{n-1} 1``, symbolic in k unless ``level`` is given.
    """
    words = word_product(minor_words(spec, 1, 1), word_power(determinant_words(spec), spec.n - 1))
    factor = level_constant(lowering_factor(spec) * spec.n) * (K - level_constant(spec.level))
    state = _to_state(spec, words).scale(factor)
    return state if level is None else state.specialize(level)


def verify_theorem(spec, level=None, vector=None):
    """
    Singularity of ``Δ_m(-1)^n 1`` at ``level`` (default k_mn).

    :param vector: a precomputed determinant_vector(spec), e.g. from the cache
    """
    level = spec.level if level is None else Fraction(level)
    vector = determinant_vector(spec) if vector is None else vector
    report = spec.module.singular_check(vector, level)
    report.claim = 'determinant-singular-vector'
    report.paper_anchor = ANCHORS[report.claim]
    report.statement = 'Delta_m(-1)^n 1 is singular at level {}'.format(level)
    report.parameters = {**spec.parameters(), 'level': str(level), 'weight': report.parameters['weight']}
    return report


def negative_control(spec, vector=None):
    """
    At ``k_mn + 1`` the vector must fail, with the predicted ``x_{-θ}(1)`` residual.
    """
    level = spec.level + 1
    vector = determinant_vector(spec) if vector is None else vector
    check = verify_theorem(spec, level, vector)
    residual = spec.module.apply(spec.table.minus_theta_vector, 1, vector).specialize(level)
    predicted = predicted_lowering_residual(spec, level)
    passed = not check.passed and bool(residual) and residual == predicted
    witness = None
    if not passed:
        witness = {'singular_at_shifted_level': check.passed, 'residual': str(residual), 'predicted': str(predicted)}
    return VerificationReport(claim='negative-control',
                              statement='Delta_m(-1)^n 1 is not singular at level k_mn + 1',
                              passed=passed,
                              witness=witness,
                              parameters={**spec.parameters(), 'level': str(level)},
                              details={'failed_generator': (check.witness or {}).get('generator'),
                                       'residual': str(residual)})


def theta_lowering_factor(spec, vector=None):
    """
    ``x_{-θ}(1) Δ_m(-1)^n 1 = β n (k - k_mn) Δ_m^{1,1}(-1) Δ_m(-1)^{n-1} 1`` over Q[k].
    """
    module = spec.module
    vector = determinant_vector(spec) if vector is None else vector
    with stopwatch() as elapsed:
        lhs = module.apply(spec.table.minus_theta_vector, 1, vector)
        rhs = predicted_lowering_residual(spec)
        difference = lhs - rhs
    witness = None
    if difference:
        witness = {'lhs': str(lhs), 'predicted': str(rhs), 'difference': str(difference)}
    return VerificationReport(claim='lowering-factor',
                              statement='x_-theta(1) Delta_m(-1)^n 1 = beta n (k - k_mn) Delta_m^11(-1) Delta_m(-1)^(n-1) 1',
                              passed=not difference,
                              witness=witness,
                              parameters={**spec.parameters(), 'beta': str(lowering_factor(spec)),
                                          'residual': str(lhs)},
                              derived=spec.kind == 'A',
                              timing_ms=elapsed['ms'])


def coexisting_singulars(kind, rank, level):
    """
    Every admissible (m, n) whose determinant vector is singular at ``level``.
    """
    level = Fraction(level)
    specs = []
    sizes = range(1, rank + 1) if kind == 'C' else range(1, rank // 2 + 1)
    for m in sizes:
        n = level + (Fraction(m + 1, 2) if kind == 'C' else m)
        if n.denominator == 1 and n >= 1:
            specs.append(determinant_spec(kind, rank, m, int(n)))
    return specs


def raising_commutes_with_determinant(spec, words):
    """
    For a combination ``w`` of words in the matrix entries, check
    ``e_i(0) Δ_m(-1) w 1 = Δ_m(-1) e_i(0) w 1`` for every simple root.

    :param dict words: ``{word: coefficient}`` with factors ``(mode, basis index)``
    """
    module = spec.module
    determinant = [(c, w) for w, c in sorted(determinant_words(spec).items())]
    state = _to_state(spec, words)
    witness = None
    for x in spec.table.chevalley_e:
        left = module.apply(x, 0, module.apply_words(determinant, state))
        right = module.apply_words(determinant, module.apply(x, 0, state))
        if left != right:
            witness = {'generator': '{}(0)'.format(spec.table.labels[x]), 'difference': str(left - right)}
            break
    return VerificationReport(claim='raising-commutes',
                              statement='e_i(0) commutes with Delta_m(-1) on the given state',
                              passed=witness is None,
                              witness=witness,
                              parameters={**spec.parameters(), 'state': str(state)})
