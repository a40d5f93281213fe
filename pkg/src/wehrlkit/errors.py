"""Exception types shared across the package."""


class NumericalFailure(RuntimeError):
    """An iterative numerical stage did not converge.

    ``index`` identifies the failing case (polynomial degree, panel count, ...)
    and ``best_estimate`` carries whatever partial answer was available.
    """

    def __init__(self, message, index=None, best_estimate=None):
        super().__init__(message)
        self.index = index
        self.best_estimate = best_estimate


class ZeroPochhammerError(ZeroDivisionError):
    """A rising factorial in a series denominator vanished inside the summation range."""
