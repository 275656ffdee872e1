"""Exception hierarchy.

Input errors (bad descriptors, weights, diagrams) map to CLI exit code 1.
Internal errors (a computed invariant failed) map to exit code 2.
"""


class LimrootError(Exception):
    pass


class InputError(LimrootError, ValueError):
    pass


class InternalError(LimrootError, RuntimeError):
    pass


class UnsupportedFamily(InputError):
    pass


class RankZero(InputError):
    """The real form is compact: its split part is zero."""


class ZeroRoot(InputError):
    pass


class SizeBound(InputError):
    pass


class MalformedDiagram(InputError):
    pass


class NotWhite(InputError):
    pass


class DiagramMismatch(InputError):
    pass


class InvariantViolation(InputError):
    """A direct-system descriptor breaks one of its admissibility rules."""


class DepthTooSmall(InputError):
    pass


class NotClassifiable(InputError):
    pass


class UnsupportedTruncation(InputError):
    pass


class NotDominant(InputError):
    pass


class NonRationalEigenvalue(InternalError):
    pass


class OracleMismatch(InternalError):
    pass
