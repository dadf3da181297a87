"""Exception hierarchy shared by every module."""


class PosetMorseError(Exception):
    """Base class for all library errors."""


# poset construction
class DuplicateElement(PosetMorseError):
    pass


class UnknownElement(PosetMorseError):
    pass


class DuplicateCover(PosetMorseError):
    pass


class CoverCycle(PosetMorseError):
    pass


class RedundantCover(PosetMorseError):
    pass


class NotGraded(PosetMorseError):
    pass


# homology
class EmptyComplex(PosetMorseError):
    pass


class NotAComplex(PosetMorseError):
    pass


class NotInfiniteCyclic(PosetMorseError):
    pass


class SolveFailure(PosetMorseError):
    pass


# matchings and Morse theory
class NotACover(PosetMorseError):
    pass


class NotMorse(PosetMorseError):
    pass


class DegenerateStage(PosetMorseError):
    pass


class NotCellular(PosetMorseError):
    pass


class ChainRuleViolation(PosetMorseError):
    pass


class InadmissiblePair(PosetMorseError):
    pass


class StabilizationOverrun(PosetMorseError):
    pass


class BasisDegenerate(PosetMorseError):
    pass


class ParseError(PosetMorseError):
    """Malformed input text. ``line`` is 1-based, or None for whole-file problems."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class FixtureError(PosetMorseError):
    """A bundled data file disagrees with its recorded expectations."""
