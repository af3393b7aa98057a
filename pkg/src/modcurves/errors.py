"""Exception hierarchy shared by every module."""


class ModCurvesError(Exception):
    """Base class for all library errors."""


class CompositeModulus(ModCurvesError, ValueError):
    pass


class BadReduction(ModCurvesError, ZeroDivisionError):
    """A denominator vanishes modulo the characteristic."""


class UnsupportedField(ModCurvesError, ValueError):
    pass


class ArityMismatch(ModCurvesError, ValueError):
    pass


class DegenerateInput(ModCurvesError, ValueError):
    pass


class ZeroPolynomial(ModCurvesError, ValueError):
    pass


class DegreeTooSmall(ModCurvesError, ValueError):
    pass


class PointNotOnVariety(ModCurvesError, ValueError):
    pass


class ParseError(ModCurvesError, ValueError):
    pass


class NotInvertible(ModCurvesError, ZeroDivisionError):
    pass


class DomainMismatch(ModCurvesError, TypeError):
    pass


class OddValuation(ModCurvesError, ValueError):
    pass


class NonSquareLeadingCoefficient(ModCurvesError, ValueError):
    pass


class PrecisionTooLow(ModCurvesError, ValueError):
    pass


class EmptyBasis(ModCurvesError, ValueError):
    """No nontrivial relation exists at the requested degree."""


class NoRelationFound(ModCurvesError, ValueError):
    pass


class DependentInput(ModCurvesError, ValueError):
    pass


class InconsistentCounts(ModCurvesError, ValueError):
    pass


class Exhausted(ModCurvesError, RuntimeError):
    """No prime in the supplied list produced a witness."""


class TooManyCandidates(ModCurvesError, RuntimeError):
    pass


class OddClearingExponent(ModCurvesError, ValueError):
    pass


class NotCleared(ModCurvesError, ValueError):
    pass


class UndefinedValue(ModCurvesError, ValueError):
    pass


class UnknownEntry(ModCurvesError, KeyError):
    pass
