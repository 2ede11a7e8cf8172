"""Exception types raised by the package.

Every error derives from :class:`DiscreteYamabeError` (itself a
``ValueError``) so callers can catch input problems with a single clause.
"""


class DiscreteYamabeError(ValueError):
    pass


# -- triangulation ---------------------------------------------------------

class IndexOutOfRange(DiscreteYamabeError):
    pass


class InvalidFace(DiscreteYamabeError):
    """A face repeats a vertex."""


class DuplicateFace(DiscreteYamabeError):
    pass


class EdgeNotTwoFaces(DiscreteYamabeError):
    def __init__(self, edge, count):
        self.edge = tuple(edge)
        self.count = count
        super().__init__(f"edge {self.edge} lies in {count} face(s), expected 2")


class BadVertexLink(DiscreteYamabeError):
    def __init__(self, vertex, reason="link is not a single cycle"):
        self.vertex = vertex
        super().__init__(f"vertex {vertex}: {reason}")


# -- metrics and factors ---------------------------------------------------

class NonPositiveLength(DiscreteYamabeError):
    def __init__(self, where, value=None):
        self.where = where
        self.value = value
        super().__init__(f"non-positive or non-finite length {value!r} at {where}")


class TriangleInequalityViolation(DiscreteYamabeError):
    def __init__(self, face, margin):
        self.face = tuple(face)
        self.margin = margin
        super().__init__(f"face {self.face} violates the triangle inequality (margin {margin:g})")


class DimensionMismatch(DiscreteYamabeError):
    def __init__(self, expected, got):
        self.expected = expected
        self.got = got
        super().__init__(f"expected a vector of length {expected}, got {got}")


class NonFinite(DiscreteYamabeError):
    pass


class OutsideDomain(DiscreteYamabeError):
    def __init__(self, min_margin):
        self.min_margin = min_margin
        super().__init__(
            f"factor too close to the boundary of the conformal domain "
            f"(min relative face margin {min_margin:.3e})"
        )


class TargetGaussBonnetViolation(DiscreteYamabeError):
    def __init__(self, total, expected):
        self.total = total
        self.expected = expected
        super().__init__(
            f"target curvatures sum to {total!r}, Gauss-Bonnet requires {expected!r}"
        )


# -- flow / obstruction ----------------------------------------------------

class InsufficientTrace(DiscreteYamabeError):
    pass


class TooManyVertices(DiscreteYamabeError):
    def __init__(self, n, limit):
        self.n = n
        super().__init__(f"{n} vertices exceeds the enumeration limit of {limit}")


# -- file input ------------------------------------------------------------

class SurfaceSyntaxError(DiscreteYamabeError):
    def __init__(self, location, message):
        self.location = location
        super().__init__(f"{location}: {message}")


class MissingEdgeLength(DiscreteYamabeError):
    def __init__(self, edge):
        self.edge = tuple(edge)
        super().__init__(f"no length given for edge {self.edge}")


class ExtraEdgeLength(DiscreteYamabeError):
    def __init__(self, edge):
        self.edge = tuple(edge)
        super().__init__(f"length given for {self.edge}, which is not an edge of the triangulation")
