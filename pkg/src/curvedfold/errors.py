class GeometryError(ValueError):
    """Base class for geometric precondition failures."""


class DegenerateCurve(GeometryError):
    pass


class VanishingCurvature(GeometryError):
    pass


class NonOrthonormalFrame(GeometryError):
    pass


class NonPositiveKappa(GeometryError):
    pass


class IntegrationFailure(GeometryError):
    pass


class AlphaOutOfRange(GeometryError):
    pass


class SelfIntersectingMesh(GeometryError):
    pass


class IncompatibleCurve(GeometryError):
    pass


class NotAdmissible(GeometryError):
    pass


class TorusDomain(GeometryError):
    pass


class NotClosed(GeometryError):
    pass


class NotInterval(GeometryError):
    pass


class UnsupportedSignChange(GeometryError):
    pass


class PlanarCurve(GeometryError):
    pass


class PreconditionFailed(GeometryError):
    pass


class NegativeDiscriminant(GeometryError):
    pass
