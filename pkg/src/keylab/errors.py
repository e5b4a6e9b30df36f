"""Exception types shared across the package."""


class KeylabError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(KeylabError):
    """A text document (geometry, layout, params, cache, config) is malformed.

    Carries the 1-based line number when one is known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(KeylabError):
    """An object violates a structural invariant."""


class UnreachableSymbolError(KeylabError):
    """A symbol cannot be produced by any keystroke sequence of a layout."""

    def __init__(self, symbol: str, layout_name: str = ""):
        self.symbol = symbol
        where = f" in layout '{layout_name}'" if layout_name else ""
        super().__init__(f"symbol {symbol!r} is not reachable{where}")
