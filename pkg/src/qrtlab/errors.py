"""Exception types shared across the package.

PoleAtPoint / Indeterminate / AtSingularity are signals consumed by the
orbit and confinement machinery, not failures.
"""


class QrtlabError(Exception):
    """Base class for package errors."""


class ZeroDenominator(QrtlabError):
    pass


class PoleAtPoint(QrtlabError):
    """Denominator vanishes at the point, numerator does not."""


class Indeterminate(QrtlabError):
    """Numerator and denominator both vanish at the point."""


class DegeneratePoints(QrtlabError):
    """Random identity check could not find enough pole-free sample points."""


class ResourceLimit(QrtlabError):
    """Degree/term guard tripped (total degree > 512 or > 2e6 terms)."""


class NotEliminable(QrtlabError):
    pass


class EliminationCollapse(QrtlabError):
    """Resultant vanished identically."""


class DegenerateHomography(QrtlabError):
    pass


class MatchFailure(QrtlabError):
    """Canonical-template matching failed; carries the residual."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NoRationalSolution(QrtlabError):
    """Restoration solver found no rational solution; carries conditions."""

    def __init__(self, message, conditions=()):
        super().__init__(message)
        self.conditions = list(conditions)


class UnknownEntry(QrtlabError):
    pass


class NonIntegerExponent(QrtlabError):
    """Multiplicative parameter law produced a fractional exponent."""


class LawSyntaxError(QrtlabError):
    """Parameter-law mini-language parse error."""
