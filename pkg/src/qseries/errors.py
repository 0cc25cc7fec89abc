"""Exception types shared across the package.

Plain ``ValueError`` is used for bad call arguments (index out of range,
mismatched lengths). The classes below exist so the CLI can map failures
to its stable exit codes: configuration 2, numeric 3, data/IO 4.
"""


class QSeriesError(Exception):
    """Base class for package-specific errors."""


class ConfigError(QSeriesError, ValueError):
    """Invalid configuration: bad sizes, guards exceeded, unknown settings."""


class DataError(QSeriesError, ValueError):
    """Malformed input data: unparseable CSV rows, bad Hamiltonian files."""


class NumericError(QSeriesError, ArithmeticError):
    """Numerical failure: NaN loss during training, non-converging searches."""
