"""
Configuration Module for the Sylvester-Kac Toolkit

Defaults, cost guards and exit statuses live here as module constants.
There are no configuration files and no environment variables: a run is
fully described by a RunConfig built from the command line.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from backend.errors import DomainError


# Defaults
DEFAULT_MATRIX = 'bio'
DEFAULT_MODE = 'exact'
DEFAULT_FORMAT = 'json'
DEFAULT_TOL = 1e-12

MATRIX_CHOICES = ('kac', 'bio')
MODE_CHOICES = ('exact', 'float')
FORMAT_CHOICES = ('json', 'csv', 'text')
COMMAND_CHOICES = ('spectrum', 'charpoly', 'eigvec', 'verify', 'bench')

# Cost guards
CHARPOLY_MAX_N = 64
LEIBNIZ_MAX_ORDER = 8
LEIBNIZ_CHECK_MAX_N = 7
LEIBNIZ_SHIFTS_PER_N = 5
BISECTION_BENCH_MAX_N = 5000
CLOSED_FORM_BENCH_MAX_N = 10 ** 7
BISECTION_MAX_ITER = 200
BISECTION_AGREEMENT = 1e-10
BENCH_REPEATS = 5

# Exit statuses
EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_SIZE_GUARD = 3


@dataclass(frozen=True)
class RunConfig:
    """
    One CLI invocation.

    ``tol`` is only consulted when ``mode == 'float'``; ``value`` only by
    ``eigvec``; ``mutate_super`` only by ``verify``.
    """
    command: str
    n_values: List[int]
    matrix: str = DEFAULT_MATRIX
    fmt: str = DEFAULT_FORMAT
    mode: str = DEFAULT_MODE
    tol: float = DEFAULT_TOL
    jobs: int = 1
    value: Optional[Fraction] = None
    mutate_super: Optional[int] = None
    repeats: int = field(default=BENCH_REPEATS)

    @property
    def n(self) -> int:
        """The single order parameter of spectrum/charpoly/eigvec."""
        if len(self.n_values) != 1:
            raise DomainError(
                f"'{self.command}' takes a single n, got the range "
                f'{self.n_values[0]}..{self.n_values[-1]}'
            )
        return self.n_values[0]


def parse_n_range(text: str) -> List[int]:
    """
    Parse an order argument.

    Args:
        text: Either an integer ('7') or an inclusive range ('1..12')

    Returns:
        The list of orders, ascending

    Raises:
        DomainError: If the text is malformed, a > b, or a < 1
    """
    parts = text.strip().split('..')
    if len(parts) > 2:
        raise DomainError(f"Malformed range '{text}', expected 'a..b' or an integer")

    try:
        bounds = [int(p) for p in parts]
    except ValueError as e:
        raise DomainError(f"Malformed range '{text}': {str(e)}") from e

    low, high = bounds[0], bounds[-1]
    if low < 1:
        raise DomainError(f'n must be >= 1, got {low}')
    if low > high:
        raise DomainError(f"Empty range '{text}': {low} > {high}")

    return list(range(low, high + 1))
