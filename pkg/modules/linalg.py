"""
Exact Gaussian elimination on sparse vectors over the rationals.

A vector is a dict from mutually comparable keys to Fractions. Rows are kept
with their pivot at the largest key, so every elimination step strictly
lowers the leading key of the vector being reduced.
"""
from fractions import Fraction


def _axpy(target, factor, source):
    for key, value in source.items():
        updated = target.get(key, Fraction(0)) + factor * value
        if updated:
            target[key] = updated
        else:
            target.pop(key, None)


class SparseEchelon(object):
    """
    Incremental row echelon form that remembers how every stored row was
    combined from the inserted vectors.
    """

    def __init__(self):
        self.rows = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vector):
        """
        :return: ``(residual, combination)`` with
            ``vector = residual + Σ combination[label] * inserted[label]``
            and the leading key of a nonzero residual not a pivot
        """
        residual = {k: Fraction(v) for k, v in vector.items() if v}
        combination = {}
        while residual:
            lead = max(residual)
            if lead not in self.rows:
                break
            row, row_combination = self.rows[lead]
            factor = residual[lead] / row[lead]
            _axpy(residual, -factor, row)
            _axpy(combination, factor, row_combination)
        return residual, combination

    def insert(self, vector, label=None):
        """
        Add ``vector`` to the span.

        :return: True when the vector was independent of the rows already stored
        """
        residual, combination = self.reduce(vector)
        if not residual:
            return False
        origin = {k: -v for k, v in combination.items()}
        if label is not None:
            origin[label] = origin.get(label, Fraction(0)) + 1
        self.rows[max(residual)] = (residual, origin)
        return True

    def contains(self, vector):
        residual, _ = self.reduce(vector)
        return not residual

    def express(self, vector):
        """
        :return: ``{label: coefficient}`` writing ``vector`` in the inserted vectors, or None
        """
        residual, combination = self.reduce(vector)
        if residual:
            return None
        return {k: v for k, v in combination.items() if v}
