"""Exception hierarchy shared by the geodesy, engine, oracle and I/O layers."""


class CentroidError(Exception):
    """Root of every error raised by spheroid_centroid."""


class EllipsoidError(CentroidError, ValueError):
    """Invalid ellipsoid parameters or unknown preset name."""


class ProjectionError(CentroidError, ArithmeticError):
    """Back-projection onto the spheroid is undefined or did not converge."""


class PolygonError(CentroidError, ValueError):
    """A ring or polygon violates the geometric preconditions."""


class PoleCrossingError(PolygonError):
    """A ring winds around a pole without passing through it."""


class DegeneratePolygonError(CentroidError, ArithmeticError):
    """The signed area is too small for the centroid quotient to be meaningful."""


class ResolutionError(CentroidError, ValueError):
    """The oracle grid does not resolve the polygon."""


class InputFormatError(CentroidError, ValueError):
    """Syntax or structure error in a polygon file.

    ``line`` and ``column`` are 1-based and ``None`` when the position is unknown.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class NonPolygonGeometryError(InputFormatError):
    """Well-formed input whose geometry is not a Polygon or MultiPolygon."""
