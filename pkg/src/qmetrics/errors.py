"""Exception hierarchy.

ValidationError covers bad inputs (wrong names, shapes, domains); NumericalError
covers computations that cannot be completed reliably. The CLI maps these to
exit codes 2 and 3 respectively.
"""


class QMetricsError(Exception):
    pass


class ValidationError(QMetricsError):
    pass


class NumericalError(QMetricsError):
    pass


class NotHermitian(ValidationError):
    pass


class NoConvergence(NumericalError):
    pass


class UnsupportedTangent(NumericalError):
    """Tangent matrix has weight outside the support of the state."""


class SingularSecondArgument(NumericalError):
    """Second argument of the relative entropy is rank deficient."""


class UnknownFamily(ValidationError):
    pass


class UnknownMetric(ValidationError):
    pass


class ParamOutOfDomain(ValidationError):
    pass


class DegeneracyUnresolved(NumericalError):
    """An off-diagonal overlap couples into a degenerate eigenvalue pair and
    no closed-form spectral presentation is available to resolve it."""


class DomainExit(ValidationError):
    pass


class RankDeficient(NumericalError):
    pass


class VanishingProbabilityWithFlow(NumericalError):
    """An outcome probability vanishes while its derivative does not."""


class MissingGauge(ValidationError):
    """Operation needs a spectral presentation (an eigenvector phase choice)."""


class DimensionMismatch(ValidationError):
    pass


class GramNotPSD(NumericalError):
    pass


class NonImaginaryOverlap(NumericalError):
    """Diagonal eigenvector overlap has a real part; orthonormality is broken."""


class FlatLikelihood(NumericalError):
    pass
