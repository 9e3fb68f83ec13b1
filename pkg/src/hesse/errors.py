"""Exception hierarchy.

Everything that signals a mathematical domain problem (divergence, branch
cuts, singular parameters) derives from :class:`DomainError`; the CLI maps
those to exit code 2.  :class:`InternalError` marks invariant violations.
"""


class HesseError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(HesseError):
    """The inputs lie outside the domain where a formula is valid."""


class InternalError(HesseError):
    """An internal invariant failed; indicates a bug, not bad input."""


# numerics
class NonConvergent(DomainError):
    pass


class PrecisionExhausted(DomainError):
    pass


class PoleAtNonpositiveInteger(DomainError):
    pass


# hyper
class DivergentArgument(DomainError):
    pass


class NonConvergentBoundary(DomainError):
    pass


# curve
class SingularParameter(DomainError):
    pass


class DegenerateFormula(InternalError):
    pass


class SupportComputationFailed(InternalError):
    pass


# regulator
class BranchUndefined(DomainError):
    pass


# lseries
class SingularCurve(DomainError):
    pass


class RootNumberUnresolved(DomainError):
    pass


# integrality
class NotMultiplicative(DomainError):
    pass


# mahler
class RootTrackingFailed(DomainError):
    pass


class OnBoundary(DomainError):
    pass


class Inconclusive(DomainError):
    pass
