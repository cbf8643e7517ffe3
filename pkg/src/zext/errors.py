"""Exception hierarchy shared by all zext modules."""


class ZextError(Exception):
    """Base class for all errors raised by this package."""


class NotATree(ZextError):
    """Edge list does not describe a tree (cycle, disconnected, wrong edge count)."""


class SelfLoop(NotATree):
    """An edge joins a vertex to itself."""


class DuplicateEdge(NotATree):
    """The same edge appears more than once."""


class EmptyTree(ZextError):
    """Operation needs at least one edge (n >= 2)."""


class UnknownIndex(ZextError):
    """Index name not present in the registry."""


class DegreeOutOfRange(ZextError):
    """Degree pair outside the domain of the index (i < 1, or a pole such as i + j = 2)."""


class KindMismatch(ZextError):
    """Comparison of an exact value against a log-space value."""


class NonPositiveValue(ZextError):
    """Logarithm requested for a value that is zero or negative."""


class PrecisionExceeded(ZextError):
    """Adaptive-precision sign determination hit the precision cap."""


class PreconditionViolated(ZextError):
    """Tree move requested outside its hypotheses."""


class NotADoubleStar(ZextError):
    """Tree is not a double star."""


class AlreadyBalanced(ZextError):
    """Double star arms already differ by at most one."""


class NOutOfRange(ZextError):
    """Vertex count outside the supported range."""


class InvalidArms(ZextError):
    """Double star arm sizes must both be at least 1."""


class InvalidShape(ZextError):
    """Shape parameters do not describe a valid family member."""


class MoveLoopDetected(ZextError):
    """Hill climb exceeded its safety bound; indicates a bug, not expected behavior."""
