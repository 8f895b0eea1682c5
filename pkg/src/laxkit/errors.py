"""Exception types raised by the kernel and the matrix builders."""


class LaxkitError(Exception):
    """Base class for all laxkit errors."""


class NotAtomFactorable(LaxkitError):
    """A numerator could not be written as scalar * monomial * product of atoms.

    Signals a construction bug in the caller, not a mathematical failure:
    the closed formulas only ever require inverting such products.
    """


class PoleAtExpansionPoint(LaxkitError):
    """Series expansion requested in a direction where the leading
    denominator coefficient is not invertible."""


class DivergesAtInfinity(LaxkitError):
    """limit_leading called on a function whose numerator degree exceeds
    its denominator degree; usually a missing column scaling."""


class NotAdmissible(LaxkitError):
    """Divisor data does not solve the coroot equation in non-negative
    integers; the divisor is rejected at construction."""


class SizeMismatch(LaxkitError):
    """Young-diagram data with inconsistent sizes."""


class BadDiagram(LaxkitError):
    """Invalid (pseudo) Young diagram for the requested operation."""


class SignatureMismatch(LaxkitError):
    """Operands live over different algebra signatures."""


class NotPolynomial(LaxkitError):
    """A matrix entry kept a spectral-parameter denominator after
    normalization; falsifies the regularity claim as implemented."""

    def __init__(self, message, entry=None):
        super().__init__(message)
        self.entry = entry


class NotScalar(LaxkitError):
    """Shift monomials survived in a quantity that must be central."""


class NotLinearCase(LaxkitError):
    """Divisor outside the degree-1 fast-path hypotheses."""


class NonIntegerShift(LaxkitError):
    """Gauge conjugation would require a non-integer Gamma shift."""


class NegativeEpsPower(LaxkitError):
    """Degeneration produced a pole in the deformation parameter;
    wrong power bookkeeping."""


class MismatchWithRational(LaxkitError):
    """Degenerated matrix disagrees with the rational builder."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class SingularLeadingMode(LaxkitError):
    """Series Gauss decomposition hit a non-invertible leading diagonal mode."""


class ParseError(LaxkitError):
    """Canonical text form could not be parsed."""
