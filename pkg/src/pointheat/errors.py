"""Exception taxonomy used across the package."""


class PointheatError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PointheatError, ValueError):
    """Argument outside the supported domain (order, sign, index range)."""


class RangeError(PointheatError, OverflowError):
    """Result magnitude not representable without the scaled form."""


class SingularityError(PointheatError, ValueError):
    """Evaluation requested at a singular point (e.g. outgoing wave at the origin)."""


class CoincidentPointError(SingularityError):
    """Two-point quantity requested at coincident points."""


class GeometryError(PointheatError, ValueError):
    """Evaluation point conflicts with the environment geometry."""


class ResonancePoleError(PointheatError, ValueError):
    """Dipole model evaluated at the Clausius-Mossotti pole."""


class UnsupportedQueryError(PointheatError, ValueError):
    """Quantity undefined for the given variant (e.g. permittivity of a mirror)."""


class ConvergenceError(PointheatError, RuntimeError):
    """Multipole sum did not converge before the order cap.

    Carries the best partial result and diagnostics.
    """

    def __init__(self, message, partial=None, l_max=None, tail=None):
        super().__init__(message)
        self.partial = partial
        self.l_max = l_max
        self.tail = tail


class AccuracyError(PointheatError, RuntimeError):
    """Quadrature could not meet the requested tolerance.

    Carries the best estimate and its error estimate.
    """

    def __init__(self, message, best=None, error=None):
        super().__init__(message)
        self.best = best
        self.error = error
