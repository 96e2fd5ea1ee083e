"""Exception hierarchy shared by all modules."""


class ToricError(Exception):
    """Base class for every error raised by this package."""


class ZeroVector(ToricError, ValueError):
    pass


class NonPrimitive(ToricError, ValueError):
    pass


class NotSurjective(ToricError, ValueError):
    pass


class NotFullDimensional(ToricError, ValueError):
    pass


class NotAVertex(ToricError, ValueError):
    pass


class NotASimplex(ToricError, ValueError):
    pass


class DimensionMismatch(ToricError, ValueError):
    pass


class NotPointed(ToricError, ValueError):
    pass


class GeneratorOutsideCone(ToricError, ValueError):
    pass


class WrongPicardNumber(ToricError, ValueError):
    pass


class NotInterior(ToricError, ValueError):
    pass


class NotAFibration(ToricError, ValueError):
    pass


class NotCoveredByLines(ToricError, ValueError):
    pass


class HypothesisViolation(ToricError, ValueError):
    """The configuration is outside the simple / semigroup-generated setting."""


class DegenerateConfiguration(ToricError, ValueError):
    pass


class InternalInconsistency(ToricError, RuntimeError):
    """Two independently computed quantities that must agree did not."""
