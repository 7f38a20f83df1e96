"""Exception hierarchy shared by the geometry, subdivision and service layers.

Every error carries a stable machine-readable ``code`` so the CLI and the
refinement service can report failures without string matching, and an
optional ``index`` naming the offending vertex/edge where that makes sense.
"""

from __future__ import annotations


class CurveError(Exception):
    """Base class for all geometric and input errors raised by this package."""

    code = "Error"

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class AntipodalNormals(CurveError):
    """The two normals point in exactly opposite directions (angle pi)."""

    code = "AntipodalNormals"


class DegeneratePoints(CurveError):
    """The two points coincide where distinct points are required."""

    code = "DegeneratePoints"


class ZeroAngle(CurveError):
    """The normals coincide where a nonzero angle is required."""

    code = "ZeroAngle"


class WeightOutOfRange(CurveError):
    """Average weight outside the supported domain [-1/4, 5/4]."""

    code = "WeightOutOfRange"


class ParallelLines(CurveError):
    """The two normal lines are parallel and do not intersect."""

    code = "ParallelLines"


class TooFewVertices(CurveError):
    """Polygon has too few vertices for the requested operation."""

    code = "TooFewVertices"


class ZeroLengthEdge(CurveError):
    """An edge of the control polygon has (numerically) zero length."""

    code = "ZeroLengthEdge"


class AntipodalEdgeNormals(CurveError):
    """Adjacent edge normals are antipodal (a 180-degree fold in the polygon)."""

    code = "AntipodalEdgeNormals"


class CollinearPoints(CurveError):
    """The sample points are collinear; no circle fits them."""

    code = "CollinearPoints"


class SingularTangent(CurveError):
    """The curve tangent vanishes at a sample parameter."""

    code = "SingularTangent"


class PolygonParseError(CurveError):
    """A polygon file or request body could not be parsed."""

    code = "Parse"
