"""Exception hierarchy.

Every error raised by the library derives from :class:`BirationalError`, and
each subclass carries an ``exit_code`` so the command-line front-end can map
failures to distinct process statuses.
"""


class BirationalError(Exception):
    exit_code = 10


class FieldError(BirationalError, ValueError):
    """Bad field description, or a value that does not live in the field."""

    exit_code = 11


class FieldMismatchError(BirationalError, ValueError):
    exit_code = 12


class DimensionMismatchError(BirationalError, ValueError):
    exit_code = 13


class NotHomogeneousError(BirationalError, ValueError):
    exit_code = 14


class ZeroPolynomialError(BirationalError, ZeroDivisionError):
    """Division by, gcd of, or normalization of the zero polynomial."""

    exit_code = 15


class ParseError(BirationalError, ValueError):
    exit_code = 2

    def __init__(self, message, line=1, column=1, text=None):
        self.message = message
        self.line = line
        self.column = column
        self.text = text
        super().__init__(f"{message} (line {line}, column {column})")


class PointNotOnHypersurfaceError(BirationalError, ValueError):
    exit_code = 16


class SingularPointError(BirationalError, ValueError):
    exit_code = 17


class CharacteristicError(BirationalError, ValueError):
    """The routine is not valid in the characteristic of the given field."""

    exit_code = 18


class CompositionUndefinedError(BirationalError, ValueError):
    exit_code = 19


class MapUndefinedAlongError(BirationalError, ValueError):
    """A map's canonical form is undefined along an entire hypersurface."""

    exit_code = 20


class ChartError(BirationalError, ValueError):
    exit_code = 21


class PreconditionError(BirationalError, ValueError):
    """A construction's hypotheses do not hold for the given input."""

    exit_code = 22
