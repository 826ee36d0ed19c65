"""
From vacuum states to U(g), and from U(g) to the Weyl algebra.
"""
import itertools
import logging

from modules.determinants import determinant_vector, determinant_words
from modules.errors import SymbolicLevelError
from modules.reports import VerificationReport, stopwatch
from modules.scalars import level_constant_value
from modules.uenv import enveloping_algebra
from modules.weyl import WeylElement, commutator

logger = logging.getLogger()


def project_F(state):
    """
    ``a_1(-i_1-1) ... a_n(-i_n-1) 1  ->  (-1)^{i_1+...+i_n} a_n ... a_1``, applied
    to the canonical monomials of ``state`` and straightened in U(g).

    :raises SymbolicLevelError: when a coefficient still depends on k
    """
    if not state.is_numeric:
        raise SymbolicLevelError('specialize the level before projecting: {}'.format(state))
    algebra = enveloping_algebra(state.module.table)
    result = algebra.zero
    for monomial, c in state.sorted_terms():
        sign = (-1) ** sum(-mode - 1 for mode, _ in monomial)
        word = [x for _, x in reversed(monomial)]
        result = result + algebra.normal_form(word) * (sign * level_constant_value(c))
    return result


def finite_determinant(spec):
    """
    Δ_m in U(g), built from the same matrix as Δ_m(-1).
    """
    algebra = enveloping_algebra(spec.table)
    result = algebra.zero
    for word, c in sorted(determinant_words(spec).items()):
        result = result + algebra.normal_form([x for _, x in word]) * c
    return result


def phi_hom(u, table=None):
    """
    Extend the basis realization multiplicatively: U(g) -> W(A).
    """
    table = table or u.algebra.table
    result = WeylElement.scalar(table.rank, 0)
    for monomial, c in u.sorted_terms():
        term = WeylElement.scalar(table.rank, c)
        for x in monomial:
            term = term * table.realizations[x]
        result = result + term
    return result


def verify_zhu_generator(spec):
    """
    ``F(Δ_m(-1)^n 1) = (Δ_m)^n`` at ``k = k_mn``.
    """
    logger.info('Projecting determinant vector for {}'.format(spec))
    with stopwatch() as elapsed:
        projected = project_F(determinant_vector(spec).specialize(spec.level))
        expected = finite_determinant(spec) ** spec.n
        difference = projected - expected
    witness = None
    if difference:
        witness = {'projected': str(projected), 'expected': str(expected), 'difference': str(difference)}
    return VerificationReport(claim='zhu-generator',
                              statement='F(Delta_m(-1)^n 1) equals (Delta_m)^n in U(g)',
                              passed=not difference,
                              witness=witness,
                              parameters={**spec.parameters(), 'terms': len(projected)},
                              timing_ms=elapsed['ms'])


def verify_phi_kills_determinant(spec):
    power = finite_determinant(spec) ** spec.n
    image = phi_hom(power)
    witness = {'image': str(image)} if image else None
    return VerificationReport(claim='phi-kills-determinant',
                              statement='Phi((Delta_m)^n) = 0 in the Weyl algebra',
                              passed=not image,
                              witness=witness,
                              parameters=spec.parameters(),
                              details={'image': image.to_payload()})


def verify_phi_bracket(table):
    """
    ``Φ([x, y]) = [Φ(x), Φ(y)]`` on every pair of basis elements.

    The bracket table was read off the same commutators, so this only certifies
    that every commutator lies in the span of the realizations and is
    re-expressed exactly. ``verify_phi_multiplicative`` checks the U(g)
    straightening against the Weyl product.
    """
    algebra = enveloping_algebra(table)
    witness = None
    for p, q in itertools.combinations(range(table.dim), 2):
        bracket = algebra.zero
        for r, c in table.bracket(p, q).items():
            bracket = bracket + algebra.generator(r) * c
        lhs = phi_hom(bracket, table)
        rhs = commutator(table.realizations[p], table.realizations[q])
        if lhs != rhs:
            witness = {'pair': '{}, {}'.format(table.labels[p], table.labels[q]), 'difference': str(lhs - rhs)}
            break
    return VerificationReport(claim='phi-bracket',
                              statement=('Phi([x, y]) = [Phi(x), Phi(y)] on basis pairs '
                                         '(exact re-expression of realization commutators)'),
                              passed=witness is None,
                              witness=witness,
                              parameters={'type': table.kind, 'rank': table.rank, 'pairs': table.dim * (table.dim - 1) // 2})


def chevalley_words(table):
    """
    Every word ``f_i e_j`` and ``e_i f_j`` in the Chevalley generators, in a fixed order.
    """
    words = []
    for i, j in itertools.product(range(len(table.simple_roots)), repeat=2):
        words.append([table.chevalley_f[i], table.chevalley_e[j]])
        words.append([table.chevalley_e[i], table.chevalley_f[j]])
    return words


def verify_phi_multiplicative(table, words=None):
    """
    ``Φ(u v) = Φ(u) Φ(v)`` where ``u v`` is straightened in U(g) by the bracket
    table and ``Φ(u) Φ(v)`` is multiplied in the Weyl algebra.

    :param words: list of words of basis indices; defaults to ``chevalley_words``
    """
    algebra = enveloping_algebra(table)
    words = chevalley_words(table) if words is None else words
    elements = [algebra.normal_form(word) for word in words]
    images = [phi_hom(u, table) for u in elements]
    witness = None
    for (p, u), (q, v) in itertools.product(enumerate(elements), repeat=2):
        difference = phi_hom(u * v, table) - images[p] * images[q]
        if difference:
            witness = {'words': '{} | {}'.format(u, v), 'difference': str(difference)}
            break
    return VerificationReport(claim='phi-multiplicative',
                              statement='Phi(u v) = Phi(u) Phi(v) on products of words in U(g)',
                              passed=witness is None,
                              witness=witness,
                              parameters={'type': table.kind, 'rank': table.rank, 'words': len(words)})
