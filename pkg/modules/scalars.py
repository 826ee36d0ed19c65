"""
Exact coefficient arithmetic shared by the other modules.

Rationals are ``fractions.Fraction``. Polynomials in the formal level ``k``,
in the Cartan coordinates ``h_1..h_l`` and in a line parameter ``x`` are
elements of sympy sparse polynomial rings over ``QQ``; sympy keeps them free
of zero coefficients, so equality of polynomials is equality of term maps.
"""
import operator
from fractions import Fraction
from functools import lru_cache

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

LEVEL_RING, K = ring('k', QQ)
LINE_RING, X = ring('x', QQ)

# degree of the zero level polynomial
ZERO_DEGREE = float('-inf')

_OPERATIONS = {'+': operator.add,
               '-': operator.sub,
               '*': operator.mul,
               '/': operator.truediv}


def rational(value):
    """
    Coerce an int, a Fraction, a ``"p/q"`` string or a sympy ``QQ`` element to a Fraction.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(int(value.numerator), int(value.denominator))


def rational_arith(a, b, op):
    """
    :param a: left operand
    :param b: right operand
    :param str op: one of ``+ - * /``
    :return: exact result in lowest terms; ``/`` by zero raises ZeroDivisionError
    """
    if op not in _OPERATIONS:
        raise ValueError('unknown operation {!r}'.format(op))
    return _OPERATIONS[op](rational(a), rational(b))


def format_rational(value):
    return str(rational(value))


def parse_rational(text):
    return Fraction(text)


def to_qq(value):
    value = rational(value)
    return QQ(value.numerator, value.denominator)


def level_constant(value):
    return LEVEL_RING.ground_new(to_qq(value))


def level_degree(p):
    if not p:
        return ZERO_DEGREE
    return max(monom[0] for monom in p.keys())


def level_eval(p, k0):
    """
    Specialize a level polynomial at ``k = k0``.
    """
    k0 = rational(k0)
    return sum((rational(c) * k0 ** monom[0] for monom, c in p.items()), Fraction(0))


def level_specialize(p, k0):
    return level_constant(level_eval(p, k0))


def level_is_constant(p):
    return level_degree(p) <= 0


def level_constant_value(p):
    assert level_is_constant(p)
    return level_eval(p, 0)


def level_to_text(p):
    return str(p) if p else '0'


def level_to_payload(p):
    return [[monom[0], format_rational(c)] for monom, c in sorted(p.items(), reverse=True)]


def level_from_payload(payload):
    p = LEVEL_RING.zero
    for degree, c in payload:
        p += level_constant(parse_rational(c)) * K ** degree
    return p


@lru_cache(maxsize=None)
def hpoly_ring(rank):
    """
    :param int rank: number of Cartan coordinates
    :return: ``(ring, (h_1, ..., h_rank))``
    """
    names = ','.join('h{}'.format(i) for i in range(1, rank + 1))
    R, *gens = ring(names, QQ)
    return R, tuple(gens)


def hpoly_eval(p, point):
    """
    Evaluate an HPolynomial at a point given in ε-coordinates.
    """
    point = [rational(v) for v in point]
    total = Fraction(0)
    for monom, c in p.items():
        term = rational(c)
        for value, e in zip(point, monom):
            term *= value ** e
        total += term
    return total


def hpoly_substitute(p, assignment):
    """
    Substitute a line-ring expression for every Cartan coordinate.

    :param p: element of ``hpoly_ring(rank)``
    :param assignment: sequence of ``rank`` elements of ``LINE_RING`` (or rationals)
    :return: element of ``LINE_RING``
    """
    if len(assignment) != p.ring.ngens:
        raise ValueError('assignment covers {} of {} variables'.format(len(assignment), p.ring.ngens))
    values = [v if hasattr(v, 'ring') else LINE_RING.ground_new(to_qq(v)) for v in assignment]
    result = LINE_RING.zero
    for monom, c in p.items():
        term = LINE_RING.ground_new(c)
        for value, e in zip(values, monom):
            if e:
                term *= value ** e
        result += term
    return result


def hpoly_to_payload(p):
    return [[list(monom), format_rational(c)] for monom, c in sorted(p.items(), reverse=True)]


def line_affine(constant, slope=0):
    """
    The line-ring element ``constant + slope * x``.
    """
    return LINE_RING.ground_new(to_qq(constant)) + LINE_RING.ground_new(to_qq(slope)) * X
