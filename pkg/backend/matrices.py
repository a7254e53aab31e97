"""
Matrices Module for the Sylvester-Kac Toolkit

Constructors and validators for the Sylvester-Kac (Clement) matrix K and the
biogeography matrix A_{n+1} = (1/n) K - I, plus the tridiagonal plumbing the
charpoly and spectra modules share.

Bands are stored 0-based in Python but documented 1-based: ``super[k-1]`` is
entry (k, k+1) and ``sub[k-1]`` is entry (k+1, k).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

from backend.errors import DomainError, StructureError
from backend.exact_numeric import Rational, Scalar, rat_parse, rat_to_str

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TridiagonalMatrix:
    """
    Square tridiagonal matrix given by its three bands.

    Entries are normally ``Fraction``; ``spectra.symmetrize`` builds one with
    binary64 bands. Band lengths are checked on construction.
    """
    order: int
    diag: Tuple[Any, ...]
    super: Tuple[Any, ...]
    sub: Tuple[Any, ...]

    def __post_init__(self):
        if self.order < 1:
            raise StructureError(f'Matrix order must be >= 1, got {self.order}')
        object.__setattr__(self, 'diag', tuple(self.diag))
        object.__setattr__(self, 'super', tuple(self.super))
        object.__setattr__(self, 'sub', tuple(self.sub))
        if len(self.diag) != self.order:
            raise StructureError(f'diag has {len(self.diag)} entries, expected {self.order}')
        if len(self.super) != self.order - 1 or len(self.sub) != self.order - 1:
            raise StructureError(
                f'Off-diagonal bands must have {self.order - 1} entries, '
                f'got super={len(self.super)}, sub={len(self.sub)}'
            )


def _require_order_parameter(n: int) -> None:
    if n < 1:
        raise DomainError(f'n must be >= 1, got {n}')


def sylvester_kac(n: int) -> TridiagonalMatrix:
    """
    Build the Sylvester-Kac matrix K of order n+1.

    Zero diagonal, super_k = k and sub_k = n-k+1 for k = 1..n, so entry (2,1)
    is n and entry (n+1, n) is 1.

    Args:
        n: Order parameter, n >= 1

    Returns:
        TridiagonalMatrix of order n+1 with exact entries

    Raises:
        DomainError: If n < 1
    """
    _require_order_parameter(n)
    return TridiagonalMatrix(
        order=n + 1,
        diag=tuple(Fraction(0) for _ in range(n + 1)),
        super=tuple(Fraction(k) for k in range(1, n + 1)),
        sub=tuple(Fraction(n - k + 1) for k in range(1, n + 1)),
    )


# Clement's name for the same matrix.
clement_matrix = sylvester_kac


def biogeography_matrix(n: int) -> TridiagonalMatrix:
    """
    Build the biogeography migration matrix A_{n+1}.

    Diagonal -1, super_k = k/n, sub_k = (n-k+1)/n; equivalently
    A = (1/n) K - I with K = sylvester_kac(n).

    Args:
        n: Order parameter, n >= 1 (1/n must exist)

    Returns:
        TridiagonalMatrix of order n+1 with exact entries

    Raises:
        DomainError: If n < 1
    """
    _require_order_parameter(n)
    return TridiagonalMatrix(
        order=n + 1,
        diag=tuple(Fraction(-1) for _ in range(n + 1)),
        super=tuple(Fraction(k, n) for k in range(1, n + 1)),
        sub=tuple(Fraction(n - k + 1, n) for k in range(1, n + 1)),
    )


def build_matrix(matrix: str, n: int) -> TridiagonalMatrix:
    """Dispatch on the CLI family name ('kac' or 'bio')."""
    if matrix == 'kac':
        return sylvester_kac(n)
    if matrix == 'bio':
        return biogeography_matrix(n)
    raise DomainError(f"Unknown matrix family '{matrix}', expected 'kac' or 'bio'")


def affine_combine(M: TridiagonalMatrix, alpha: Scalar, beta: Scalar) -> TridiagonalMatrix:
    """
    Return alpha*M + beta*I entrywise.

    Args:
        M: Tridiagonal matrix
        alpha: Scale applied to every entry
        beta: Added to the diagonal

    Returns:
        New TridiagonalMatrix of the same order
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    return TridiagonalMatrix(
        order=M.order,
        diag=tuple(alpha * d + beta for d in M.diag),
        super=tuple(alpha * s for s in M.super),
        sub=tuple(alpha * s for s in M.sub),
    )


def negate(M: TridiagonalMatrix) -> TridiagonalMatrix:
    return affine_combine(M, -1, 0)


def column_sums(M: TridiagonalMatrix) -> List[Rational]:
    """
    Exact per-column sums.

    Column j holds super_{j-1} (above), diag_j and sub_j (below).

    Args:
        M: Tridiagonal matrix

    Returns:
        List of order(M) sums
    """
    sums = []
    for j in range(M.order):
        total = M.diag[j]
        if j > 0:
            total += M.super[j - 1]
        if j < M.order - 1:
            total += M.sub[j]
        sums.append(total)
    return sums


def off_diagonal_products(M: TridiagonalMatrix) -> List[Rational]:
    """super_k * sub_k for k = 1..order-1; the continuant depends only on these."""
    return [s * b for s, b in zip(M.super, M.sub)]


def to_dense(M: TridiagonalMatrix) -> List[List[Rational]]:
    """Expand to a list of rows, zeros filled in exactly."""
    dense = [[Fraction(0)] * M.order for _ in range(M.order)]
    for k in range(M.order):
        dense[k][k] = M.diag[k]
        if k < M.order - 1:
            dense[k][k + 1] = M.super[k]
            dense[k + 1][k] = M.sub[k]
    return dense


def matvec(M: TridiagonalMatrix, v: Sequence[Scalar]) -> List[Rational]:
    """
    Exact product M @ v.

    Raises:
        StructureError: If len(v) != order(M)
    """
    if len(v) != M.order:
        raise StructureError(f'Vector has {len(v)} entries, matrix order is {M.order}')

    result = []
    for k in range(M.order):
        total = M.diag[k] * v[k]
        if k > 0:
            total += M.sub[k - 1] * v[k - 1]
        if k < M.order - 1:
            total += M.super[k] * v[k + 1]
        result.append(total)
    return result


def tridiagonal_to_dict(M: TridiagonalMatrix) -> Dict[str, Any]:
    """JSON form: {'order', 'diag', 'super', 'sub'} with 'num/den' strings."""
    return {
        'order': M.order,
        'diag': [rat_to_str(x) for x in M.diag],
        'super': [rat_to_str(x) for x in M.super],
        'sub': [rat_to_str(x) for x in M.sub],
    }


def tridiagonal_from_dict(data: Dict[str, Any]) -> TridiagonalMatrix:
    return TridiagonalMatrix(
        order=int(data['order']),
        diag=tuple(rat_parse(x) for x in data['diag']),
        super=tuple(rat_parse(x) for x in data['super']),
        sub=tuple(rat_parse(x) for x in data['sub']),
    )
