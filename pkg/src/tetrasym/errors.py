"""Exception types raised by tetrasym."""


class TetraError(ValueError):
    """Base class for all tetrasym errors."""


class SingularMatrix(TetraError):
    pass


class DegenerateTetrahedron(TetraError):
    pass


class InvalidTriangle(TetraError):
    pass


class NotRealizable(TetraError):
    pass


class NonPositiveEdge(TetraError):
    pass


class NonPositiveArea(TetraError):
    pass


class ClosureViolation(TetraError):
    pass


class DegenerateNormals(TetraError):
    pass


class GenerationFailed(TetraError):
    pass
