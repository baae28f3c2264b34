from .render import BUILDERS, FigureSpec, MissingSeriesError, build, render
from .schema import EXPECTED_COLUMNS, SchemaError, read_rows

__all__ = [
    "BUILDERS",
    "EXPECTED_COLUMNS",
    "FigureSpec",
    "MissingSeriesError",
    "SchemaError",
    "build",
    "read_rows",
    "render",
]
