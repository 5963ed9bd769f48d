"""Compass-only geometric constructions: a circle-intersection engine,
replayable construction programs, the classical point constructions built
on them, constructive complex arithmetic, analytic verification oracles,
a construction script language, and a CLI emitting figures and traces."""

from .constructions import (
    CircleByCenterAndPoint,
    LineByPoints,
    antipode,
    apex,
    diameter_circle,
    extend,
    invert_exterior,
    invert_general,
    line_circle_center_on_line,
    line_circle_off_center,
    line_line,
    midpoint,
    nth_point,
    perp_foot,
)
from .geom import (
    Coincident,
    NoIntersection,
    Point,
    ResolvedCircle,
    Tangent,
    Tolerance,
    TwoPoints,
    circle_circle_intersect,
    circle_from,
    distance,
    orientation_sign,
)
from .program import (
    Builder,
    Program,
    Selector,
    Trace,
    execute,
    purity_audit,
    rebase,
    similarity_transport_check,
)

__all__ = [
    "Builder",
    "CircleByCenterAndPoint",
    "Coincident",
    "LineByPoints",
    "NoIntersection",
    "Point",
    "Program",
    "ResolvedCircle",
    "Selector",
    "Tangent",
    "Tolerance",
    "Trace",
    "TwoPoints",
    "antipode",
    "apex",
    "circle_circle_intersect",
    "circle_from",
    "diameter_circle",
    "distance",
    "execute",
    "extend",
    "invert_exterior",
    "invert_general",
    "line_circle_center_on_line",
    "line_circle_off_center",
    "line_line",
    "midpoint",
    "nth_point",
    "orientation_sign",
    "perp_foot",
    "purity_audit",
    "rebase",
    "similarity_transport_check",
]

__version__ = "0.1.0"
