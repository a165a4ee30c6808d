# infrastructure/errors.py
"""
Exception hierarchy for the routing lab.

Every error carries the process exit code the CLI should return for it.
Operational failures exit with 1, scientific failures (a checked bound or
inequality that does not hold) exit with 2.
"""
from typing import Any, Dict, Optional


class LabError(Exception):
    """Base class for all lab errors"""

    exit_code: int = 1


# Geometry
class GeometryError(LabError):
    pass


class DegenerateTriangleError(GeometryError):
    pass


class OffCircleError(GeometryError):
    pass


class InvalidPairError(GeometryError):
    pass


# Point sets
class PointSetError(LabError):
    pass


class DuplicatePointError(PointSetError):
    pass


class NonFinitePointError(PointSetError):
    pass


class CollinearPointsError(PointSetError):
    pass


class PointSetFormatError(PointSetError):
    pass


# Triangulations
class TriangulationError(LabError):
    pass


class CertificateError(TriangulationError):
    """A triangulation failed its empty-circle (or empty-square) certificate"""


# Routing
class RoutingError(LabError):
    pass


class VertexNotFoundError(RoutingError):
    pass


class VertexNotInCorridorError(RoutingError):
    pass


class RoutingInvariantError(RoutingError):
    pass


class NonTerminationError(RoutingError):
    pass


class LocalityViolationError(RoutingError):
    """A router decided differently on two congruent local views"""


class DisconnectedGraphError(LabError):
    pass


# Parameters and configuration
class ParameterOutOfRangeError(LabError):
    pass


class DensityTooLowError(LabError):
    pass


class UnknownKindError(LabError):
    pass


class ConfigError(LabError):
    pass


class BoundViolationError(LabError):
    """A lemma margin or the routing-ratio bound was violated"""

    exit_code = 2

    def __init__(self, message: str, bundle: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.bundle = bundle or {}
