"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class QuasipackError(Exception):
    exit_code = 1


class DegenerateBasis(QuasipackError, ValueError):
    """Both seeds are zero, so the rows of the basis do not span a plane."""

    exit_code = 3


class StartOutsideStrip(QuasipackError):
    exit_code = 4


class InfiniteStrip(QuasipackError):
    """Every face family is degenerate; the strip would be all of R^10."""

    exit_code = 5


class OverflowingFormat(QuasipackError, ValueError):
    """A coordinate does not fit a fixed-width F10.5 field."""

    exit_code = 6


class EmptyPattern(QuasipackError, ValueError):
    exit_code = 7
