"""Exception types shared across the package.

CLI exit codes: 1 usage/config, 2 data, 3 numerical.
"""


class NetjackError(Exception):
    """Base class for package errors."""

    exit_code = 2


class ConfigError(NetjackError):
    """Invalid experiment configuration or CLI usage."""

    exit_code = 1


class DataError(NetjackError):
    """Malformed or out-of-contract input data (edge lists, node ids)."""

    exit_code = 2


class DegenerateGraphError(NetjackError):
    """Graph too small (or otherwise degenerate) for the requested operation."""

    exit_code = 2


class UndefinedStatisticError(NetjackError):
    """Statistic undefined on this graph (e.g. transitivity with no two-stars)."""

    exit_code = 2


class NumericalError(NetjackError):
    """Numerical routine failed to converge; carries the offending residual."""

    exit_code = 3

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
