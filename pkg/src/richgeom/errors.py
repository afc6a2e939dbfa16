"""Exception hierarchy.

Everything raised on purpose derives from :class:`RichGeomError`.  The CLI maps
:class:`GuardExceeded` and :class:`HypothesisViolated` to exit code 2.
"""


class RichGeomError(ValueError):
    pass


# exact geometry
class DimensionMismatch(RichGeomError):
    pass


class CollinearSource(RichGeomError):
    pass


class DegenerateMap(RichGeomError):
    pass


class RepeatedValue(RichGeomError):
    pass


class NoSolution(RichGeomError):
    pass


class LengthMismatch(RichGeomError):
    pass


class CoincidentPoints(RichGeomError):
    pass


# guards / hypotheses (exit code 2 in the CLI)
class GuardExceeded(RichGeomError):
    pass


class HypothesisViolated(RichGeomError):
    pass


# arrangements
class DuplicateLine(RichGeomError):
    pass


class OnLine(RichGeomError):
    pass


class ForeignCell(RichGeomError):
    pass


class NotSimple(RichGeomError):
    pass


class EmptyInput(RichGeomError):
    pass


class Unlocated(RuntimeError):
    """A point off every line had no cell: the arrangement build is incomplete."""


# cuttings
class BudgetExceeded(RichGeomError):
    def __init__(self, message, partial=None, unseparated=0):
        super().__init__(message)
        self.partial = partial
        self.unseparated = unseparated


# enumeration / constructions
class KTooSmall(RichGeomError):
    pass


class KTooLarge(RichGeomError):
    pass


class BadParameters(RichGeomError):
    pass


# triple systems
class EmptySystem(RichGeomError):
    pass


class Collapse(RuntimeError):
    """Pruning lost more than three quarters of the triples (cannot happen)."""


class InvariantViolation(RichGeomError):
    pass


class PointOnLine(OnLine):
    pass


class DuplicateCell(RichGeomError):
    pass
