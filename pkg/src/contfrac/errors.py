"""Exception hierarchy.

``MathError`` subclasses signal a mathematically degenerate input (the CLI maps
them to exit code 2); everything else is a plain usage error.
"""


class ContfracError(ValueError):
    pass


class MathError(ContfracError):
    pass


class ZeroPartialNumerator(MathError):
    def __init__(self, n):
        super().__init__(f"partial numerator a_{n} is zero")
        self.n = n


class InsufficientTerms(ContfracError):
    pass


class UndefinedConvergent(MathError):
    def __init__(self, index):
        super().__init__(f"convergent {index} is undefined (q = 0)")
        self.index = index


class NotSimple(ContfracError):
    pass


class DegenerateAt(MathError):
    def __init__(self, n):
        super().__init__(f"degenerate at n={n}")
        self.n = n


class NonIntegralResult(ArithmeticError):
    """Internal consistency failure; never caused by valid input."""


class InsufficientPrecision(MathError):
    pass


class PrecisionExhausted(MathError):
    pass


class TooFewNodes(ContfracError):
    pass


class UnsupportedDegree(ContfracError):
    pass


class ZeroArgument(ContfracError):
    pass


class UnknownTarget(ContfracError):
    pass


class EmptyTable(ContfracError):
    pass


class GridTooLarge(ContfracError):
    def __init__(self, cells, limit):
        super().__init__(f"grid has {cells} cells, limit is {limit}")
        self.cells = cells
        self.limit = limit
