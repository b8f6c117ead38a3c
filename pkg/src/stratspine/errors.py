"""Exception hierarchy shared by all modules."""


class StratSpineError(ValueError):
    """Base class for every error raised by this package."""


class MalformedSimplexError(StratSpineError):
    pass


class MissingSimplexError(StratSpineError, KeyError):
    def __str__(self) -> str:  # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class IllegalCollapseError(StratSpineError):
    pass


class NotASubcomplexError(StratSpineError):
    pass


class EmptyComplexError(StratSpineError):
    pass


class NonFullSubcomplexError(StratSpineError):
    """The singular subcomplex is not full, so vertex counting is not exact."""


class NonAssociatedError(StratSpineError):
    """A layered complex does not come from a vertex partition."""


class OracleRefusedError(StratSpineError):
    pass


class ParseError(StratSpineError):
    def __init__(self, message: str, *, source: str | None = None, line: int | None = None):
        self.source = source
        self.line = line
        where = ""
        if source is not None:
            where = f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class InvariantViolation(AssertionError):
    """A property that the theory guarantees failed to hold at runtime."""
