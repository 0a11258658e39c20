"""Exception hierarchy shared by all modules."""


class K3MonoError(Exception):
    """Base class for every error raised by this package."""


class ZeroForm(K3MonoError):
    pass


class MultipleRoot(K3MonoError):
    pass


class NoConvergence(K3MonoError):
    pass


class LeftTrustRegion(K3MonoError):
    pass


class DerivativeVanishes(K3MonoError):
    pass


class ZeroDiscriminant(K3MonoError):
    pass


class DegenerateParameters(K3MonoError):
    pass


class ArcCollision(K3MonoError):
    pass


class PathTooClose(K3MonoError):
    """Step size underflow: the path passes too near the branch locus."""

    def __init__(self, message, s=None, segment=None):
        super().__init__(message)
        self.s = s
        self.segment = segment


class BaseInvalid(K3MonoError):
    pass


class BaseMismatch(K3MonoError):
    pass


class DegreeMismatch(K3MonoError):
    pass


class NotPrimitive(K3MonoError):
    pass


class NotInClassification(K3MonoError):
    def __init__(self, order):
        super().__init__(f"no primitive group of degree 24 has order {order}")
        self.order = order


class DomainError(K3MonoError):
    pass


class InconsistentTable(K3MonoError):
    pass
