"""2D curve design from point-normal pairs via circle-average subdivision."""

from .errors import (
    AntipodalEdgeNormals,
    AntipodalNormals,
    CollinearPoints,
    CurveError,
    DegeneratePoints,
    ParallelLines,
    PolygonParseError,
    SingularTangent,
    TooFewVertices,
    WeightOutOfRange,
    ZeroAngle,
    ZeroLengthEdge,
)
from .geometry import (
    ArcSpec,
    AverageWeight,
    CircleSpec,
    PointNormalPair,
    UnitVector,
    angle_between,
    candidate_circles,
    chord_length,
    circle_average,
    circle_average_detailed,
    geodesic_average,
    select_arc,
)
from .normals import naive_normals
from .subdivision import (
    LEVEL_CAP,
    SCHEMES,
    PnpPolygon,
    RefinementDiagnostics,
    SchemeConfig,
    linear_step,
    m4pt_step,
    mlr_step,
    refine,
    theta_m,
)

__version__ = "0.1.0"

__all__ = [
    "AntipodalEdgeNormals",
    "AntipodalNormals",
    "ArcSpec",
    "AverageWeight",
    "CircleSpec",
    "CollinearPoints",
    "CurveError",
    "DegeneratePoints",
    "LEVEL_CAP",
    "ParallelLines",
    "PointNormalPair",
    "PolygonParseError",
    "PnpPolygon",
    "RefinementDiagnostics",
    "SCHEMES",
    "SchemeConfig",
    "SingularTangent",
    "TooFewVertices",
    "UnitVector",
    "WeightOutOfRange",
    "ZeroAngle",
    "ZeroLengthEdge",
    "angle_between",
    "candidate_circles",
    "chord_length",
    "circle_average",
    "circle_average_detailed",
    "geodesic_average",
    "linear_step",
    "m4pt_step",
    "mlr_step",
    "naive_normals",
    "refine",
    "select_arc",
    "theta_m",
]
