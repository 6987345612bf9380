"""Exception types raised by coopaf."""


class CoopAFError(Exception):
    """Base class for all library errors."""


class InvalidGame(CoopAFError, ValueError):
    """A valuation table is malformed or violates a required property."""


class InessentialGame(InvalidGame):
    """The game is inessential, so (0,1)-normalization is undefined."""


class WrongPlayerCount(InvalidGame):
    pass


class NotNormalized(InvalidGame):
    """The operation needs a (0,1)-normalized game."""


class MalformedProblem(CoopAFError, ValueError):
    """Inconsistent dimensions or relations in an LP."""


class ConstructionFailed(CoopAFError, RuntimeError):
    """A constructed dominating imputation failed re-verification (internal bug)."""


class TooLarge(CoopAFError, ValueError):
    """Framework exceeds the exhaustive enumeration cap."""


class GridTooLarge(CoopAFError, ValueError):
    """Grid framework exceeds the node cap."""


class ParseError(CoopAFError, ValueError):
    """Input file could not be parsed."""
