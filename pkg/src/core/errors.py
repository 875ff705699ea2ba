"""Domain errors raised by tessera.

Every error derives from ``TesseraError`` (itself a ``RuntimeError``) so the
CLI can map the whole family to exit code 2 in one place.
"""


class TesseraError(RuntimeError):
    """Base class for all tessera errors."""


# Graph construction

class InconsistentRotation(TesseraError):
    """Neighbor lists are not mutually consistent."""


class SelfLoop(TesseraError):
    """A vertex lists itself as a neighbor."""


class ParallelEdge(TesseraError):
    """A vertex lists the same neighbor twice."""


class NonPlanar(TesseraError):
    """Face tracing yields an Euler defect."""


class FormatError(TesseraError):
    """Input document does not follow tessera-graph-v1."""


class EmptyDual(TesseraError):
    """No face has all of its vertices complete."""


# Subgraph safety

class InvalidSubgraph(TesseraError):
    """Vertex/edge/face triple violates closure or references unknown ids."""


class UnsafeSubgraph(TesseraError):
    """Operation needs data beyond the complete region of the patch."""


class UnsafeVertex(TesseraError):
    """Vertex is not complete in its host patch."""


class NotAdjacent(TesseraError):
    """Corner vertices are not adjacent."""


class WalkHostMismatch(TesseraError):
    """Boundary walk was produced by a different host graph."""


# Generators

class DegreeTooSmall(TesseraError):
    """Vertex or face degree below 3."""


class InfeasibleSpec(TesseraError):
    """Degree bounds cannot be realized by a non-positively curved patch."""


# Isoperimetry and extremal

class SphericalParameters(TesseraError):
    """1/p + 1/q > 1/2 where a non-positively curved tiling is required."""


class ParabolicParameters(TesseraError):
    """(p-2)(q-2) = 4 where a hyperbolic tiling is required."""


class RegionTooSmall(TesseraError):
    """Safe region holds no admissible subgraph."""


class DegreeAuditFailed(TesseraError):
    """Complete region violates the claimed degree bounds."""


class UnsupportedQ(TesseraError):
    """Weil bounds exist only for q in {3, 4, 6}."""


class HypothesisViolation(TesseraError):
    """A stated hypothesis of a checked inequality does not hold."""


class NotTriangulation(TesseraError):
    """A face of the patch is not a triangle."""
