"""Exception hierarchy shared by every module."""


class LatopError(Exception):
    """Base class for all library errors."""


class MissingExtremum(LatopError):
    pass


class InfiniteCarrier(LatopError):
    pass


class IndexOutOfRange(LatopError):
    pass


class TagMismatch(LatopError):
    pass


class NonAssociative(LatopError):
    pass


class NotAWeightSequence(LatopError):
    pass


class NotInL(LatopError):
    pass


class LengthMismatch(LatopError):
    pass


class NotDistinctParts(LatopError):
    pass


class ArityTooLarge(LatopError):
    pass


class AlphabetMismatch(LatopError):
    pass


class StepNotInS(LatopError):
    pass


class InvalidPartitionShape(LatopError):
    pass


class PolygonMismatch(LatopError):
    pass


class OutOfWindow(LatopError):
    pass


class WindowOverflow(LatopError):
    pass


class MapNotLax(LatopError):
    pass


class MapNotMorphism(LatopError):
    pass


class WindowMismatch(LatopError):
    pass


class NotStrictlyMonotonic(LatopError):
    pass


class NotAFiltration(LatopError):
    pass


class NoRankFunction(LatopError):
    pass


class BudgetExceeded(LatopError):
    pass


class NoPermutationForClosure(LatopError):
    """Raised only if an inversion-set closure fails to be an inversion set."""


class ParseError(LatopError):
    pass
