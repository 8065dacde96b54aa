"""Exception hierarchy shared by all katc modules."""


class KatError(Exception):
    """Base class for every error this package raises on purpose."""


class ParseError(KatError):
    """Syntax error in a term, word or program, with a source position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SortError(KatError):
    """Complement applied to a subterm that is not of Boolean sort."""


class AlphabetError(KatError):
    """Bad alphabet declaration, or an identifier that is not declared."""


class AlphabetCapError(KatError):
    """More tests than the atom enumeration cap allows."""


class DimensionError(KatError):
    """Matrix operands whose shapes do not fit the operation."""


class InvariantError(KatError):
    """A guarded-string automaton that violates a structural invariant."""


class FileFormatError(KatError):
    """A persisted automaton or certificate that cannot be parsed."""


class EmptyProgramsError(KatError):
    """Plain-sum universal term requested over an empty program alphabet."""
