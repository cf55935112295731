"""Exception hierarchy.

Input-validation failures derive from :class:`InvalidInput` (a ``ValueError``);
resource limits derive from :class:`BudgetError`.  Outcomes that are legitimate
answers (an inconclusive coset enumeration, a non-separating hyperplane) are
returned as values, never raised.
"""


class NPCError(Exception):
    """Base class for every error raised by :mod:`npcx`."""


class InvalidInput(NPCError, ValueError):
    """The supplied data violates a structural invariant."""


class BudgetError(NPCError):
    """A configured size, radius or enumeration budget was exceeded."""


# complex core
class DanglingReference(InvalidInput):
    pass


class OpenBoundary(InvalidInput):
    pass


class AngleCountMismatch(InvalidInput):
    pass


class BadAngle(InvalidInput):
    pass


class EuclideanAngleSum(InvalidInput):
    pass


class HyperbolicAngleSum(InvalidInput):
    pass


class UnknownVertex(InvalidInput, KeyError):
    pass


class SizeLimitExceeded(BudgetError):
    pass


# curvature
class NonPositiveWeight(InvalidInput):
    pass


class MixedGeometry(InvalidInput):
    pass


class NotFlag(InvalidInput):
    pass


class Disconnected(InvalidInput):
    pass


# cubical
class InconsistentCornerMap(InvalidInput):
    pass


# groups
class OrderBudgetExceeded(BudgetError):
    pass


class NotASubgroupElement(InvalidInput):
    pass


class OrbitBudgetExceeded(BudgetError):
    pass


class NotAHomomorphism(InvalidInput):
    pass


# complexes of groups
class EmptyIntersectionInconsistency(InvalidInput):
    pass


class RadiusBudget(BudgetError):
    pass


class NotNonpositivelyCurved(NPCError):
    pass


class NotRightAngled(InvalidInput):
    pass


# builders
class LocalObstruction(NPCError):
    """No admissible completion exists at some frontier vertex."""


class BudgetExceeded(BudgetError):
    pass


class BoundaryCell(NPCError):
    pass


class AmbiguousPairing(NPCError):
    pass


class CircuitTooShort(InvalidInput):
    pass


class PrecisionExceeded(BudgetError):
    pass


class UnsupportedPrime(InvalidInput):
    pass
