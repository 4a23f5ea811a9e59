"""Exception hierarchy shared by the library and the CLI."""


class LaxCorrError(Exception):
    """Base class for all library errors."""


class ParseError(LaxCorrError, ValueError):
    pass


class AlgebraError(LaxCorrError, ArithmeticError):
    """Inexact division, division by zero polynomial, singular matrix."""


class UnderivableSymbolError(LaxCorrError):
    """A derivation met a variable for which no rule is declared."""

    def __init__(self, symbol, derivation):
        self.symbol = symbol
        self.derivation = derivation
        super().__init__(
            f"no rule for d/d{derivation} of symbol {symbol!r}; declare it in the jet rules"
        )


class IncompatibleSystemError(LaxCorrError):
    """The discrete (or continuous) Lax compatibility residual is nonzero."""


class ResourceLimitError(LaxCorrError):
    """The elimination engine would exceed the configured memory or size cap."""


class ModelError(LaxCorrError):
    """Invalid or unknown model description."""
