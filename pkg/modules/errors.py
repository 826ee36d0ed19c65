class AlgebraError(Exception):
    """
    Base class for every error raised by the algebra modules.
    """


class NotLinearError(AlgebraError):
    pass


class RealizationError(AlgebraError):
    """
    Raised when a product of realizations leaves the span of the basis.
    """


class SpecError(AlgebraError):
    pass


class SymbolicLevelError(AlgebraError):
    pass


class OrbitTooLargeError(AlgebraError):
    pass


class InhomogeneousStateError(AlgebraError):
    """
    A state or enveloping-algebra element mixes weights.

    :param first: a monomial of the offending element
    :param second: another monomial with a different weight
    """

    def __init__(self, first, second):
        self.first = first
        self.second = second
        super().__init__('element is not weight-homogeneous: {} and {} have different weights'.format(first, second))
