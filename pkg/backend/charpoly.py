"""
Charpoly Module for the Sylvester-Kac Toolkit

This module derives the characteristic polynomial of the Sylvester-Kac
matrix by independent routes and checks them against each other:

- the Taussky-Todd shift recurrence p_{m}(X) = (X - (m-1)) p_{m-1}(X + 1)
- the Proskuryakov recurrence      p_{m}(X) = (X + (m-1)) p_{m-1}(X - 1)
- the closed product               prod_{k=1}^{n+1} (X + n - 2k + 2)
- the continuant of a tridiagonal matrix (leading principal minors)

The determinant p_{n+1}(X) has X on the diagonal and the positive Sylvester
off-diagonals, i.e. it is det(X I + K). Because the continuant only sees the
products sub*super and K has a zero diagonal, det(X I + K) = det(X I - K);
``sign_flip_consistent`` compares the two continuants directly.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List

from backend.config import LEIBNIZ_MAX_ORDER
from backend.errors import DomainError, SizeGuardError
from backend.exact_numeric import (
    Polynomial, Rational, Scalar, poly_constant, poly_from_list,
    poly_from_roots, poly_mul, poly_scale, poly_shift, poly_sub,
    poly_affine_substitute, poly_to_list, poly_x,
)
from backend.matrices import TridiagonalMatrix, negate, sylvester_kac, to_dense

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CharpolyReport:
    """
    p_{n+1}(X) computed four ways.

    ``all_equal`` is True iff the four polynomials are coefficientwise
    identical; it is always recomputed from the routes, never trusted.
    """
    n: int
    via_taussky_todd: Polynomial
    via_proskuryakov: Polynomial
    via_product: Polynomial
    via_continuant: Polynomial
    all_equal: bool = False

    def __post_init__(self):
        routes = (self.via_taussky_todd, self.via_proskuryakov, self.via_product, self.via_continuant)
        object.__setattr__(self, 'all_equal', all(r == routes[0] for r in routes[1:]))

    def routes(self) -> Dict[str, Polynomial]:
        return {
            'taussky_todd': self.via_taussky_todd,
            'proskuryakov': self.via_proskuryakov,
            'product': self.via_product,
            'continuant': self.via_continuant,
        }


def _require_order_parameter(n: int) -> None:
    if n < 1:
        raise DomainError(f'n must be >= 1, got {n}')


def charpoly_continuant(M: TridiagonalMatrix) -> Polynomial:
    """
    det(X I - M) by the three-term continuant recurrence.

    D_k(X) = (X - diag_k) D_{k-1}(X) - sub_{k-1} super_{k-1} D_{k-2}(X),
    with D_0 = 1 and D_{-1} = 0.

    Args:
        M: Tridiagonal matrix with exact entries

    Returns:
        Monic Polynomial of degree order(M)
    """
    previous = poly_constant(0)
    current = poly_constant(1)

    for k in range(M.order):
        linear = Polynomial((-Fraction(M.diag[k]), Fraction(1)))
        step = poly_mul(linear, current)
        # Subtract the coupling to the previous minor
        if k > 0:
            coupling = Fraction(M.sub[k - 1]) * Fraction(M.super[k - 1])
            step = poly_sub(step, poly_scale(previous, coupling))
        previous, current = current, step

    return current


def _run_shift_recurrence(n: int, direction: int) -> Polynomial:
    # p_m(X) = (X - direction*(m-1)) * p_{m-1}(X + direction), base p_1 = X
    p = poly_x()
    for m in range(2, n + 2):
        shifted = poly_shift(p, direction)
        linear = Polynomial((-Fraction(direction * (m - 1)), Fraction(1)))
        p = poly_mul(linear, shifted)
    return p


def sylvester_charpoly_taussky_todd(n: int) -> Polynomial:
    """
    p_{n+1} via the recurrence p_{n+1}(X) = (X - n) p_n(X + 1).

    Built bottom-up from p_1(X) = X (the 1x1 determinant with diagonal X).

    Args:
        n: Order parameter, n >= 1

    Returns:
        Monic Polynomial of degree n+1

    Raises:
        DomainError: If n < 1
    """
    _require_order_parameter(n)
    return _run_shift_recurrence(n, 1)


def sylvester_charpoly_proskuryakov(n: int) -> Polynomial:
    """
    p_{n+1} via the recurrence p_n(X) = (X + n - 1) p_{n-1}(X - 1).

    Raises:
        DomainError: If n < 1
    """
    _require_order_parameter(n)
    return _run_shift_recurrence(n, -1)


def sylvester_charpoly_product(n: int) -> Polynomial:
    """
    p_{n+1} expanded from the product of (X + n - 2k + 2), k = 1..n+1.

    Raises:
        DomainError: If n < 1
    """
    _require_order_parameter(n)
    # X + n - 2k + 2 = X - r with r = 2k - n - 2
    return poly_from_roots(2 * k - n - 2 for k in range(1, n + 2))


def biogeography_charpoly(n: int) -> Polynomial:
    """
    det(x I - A_{n+1}) from p_{n+1} by the substitution X = n(x + 1).

    Returns n^{-(n+1)} p_{n+1}(n x + n), monic of degree n+1 in x.

    Args:
        n: Order parameter, n >= 1

    Returns:
        Polynomial in x

    Raises:
        DomainError: If n < 1
    """
    _require_order_parameter(n)
    p = sylvester_charpoly_product(n)
    substituted = poly_affine_substitute(p, n, n)
    return poly_scale(substituted, Fraction(1, n ** (n + 1)))


def sign_flip_consistent(M: TridiagonalMatrix) -> bool:
    """
    Check det(X I + M) == det(X I - M) as polynomials.

    Holds when M has a zero diagonal, as K does: the continuant then only
    sees the products sub*super, which negation leaves unchanged. A nonzero
    diagonal (A_{n+1}, for one) generally breaks it.
    """
    return charpoly_continuant(M) == charpoly_continuant(negate(M))


def _permutation_sign(perm: List[int]) -> int:
    inversions = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


def leibniz_det(M: TridiagonalMatrix, shift: Scalar) -> Rational:
    """
    det(shift*I - M) by full permutation expansion of the dense matrix.

    Permutations are enumerated row by row; a branch stops as soon as it
    picks a zero entry, so only permutations with a nonzero product are
    summed. The result is independent of the continuant recurrence.

    Args:
        M: Tridiagonal matrix of order <= 8
        shift: Rational point s

    Returns:
        The exact determinant

    Raises:
        SizeGuardError: If order(M) > 8
    """
    if M.order > LEIBNIZ_MAX_ORDER:
        raise SizeGuardError(
            f'Leibniz expansion is capped at order {LEIBNIZ_MAX_ORDER}, got {M.order}'
        )

    # Dense s I - M
    shift = Fraction(shift)
    dense = to_dense(M)
    m = M.order
    shifted = [
        [(shift if i == j else Fraction(0)) - dense[i][j] for j in range(m)]
        for i in range(m)
    ]

    # Depth-first walk over permutations
    total = Fraction(0)
    perm: List[int] = []
    used = [False] * m

    def expand(row: int, product: Fraction) -> None:
        nonlocal total
        if row == m:
            total += _permutation_sign(perm) * product
            return
        for col in range(m):
            entry = shifted[row][col]
            if used[col] or entry == 0:
                continue
            used[col] = True
            perm.append(col)
            expand(row + 1, product * entry)
            perm.pop()
            used[col] = False

    expand(0, Fraction(1))
    return total


def build_charpoly_report(n: int) -> CharpolyReport:
    """
    Compute p_{n+1} by all four routes and compare them exactly.

    The continuant route is applied to -K, so it computes det(X I + K),
    the determinant exactly as displayed with X on the diagonal.

    Args:
        n: Order parameter, n >= 1

    Returns:
        CharpolyReport with all_equal set by exact comparison

    Raises:
        DomainError: If n < 1
    """
    _require_order_parameter(n)
    report = CharpolyReport(
        n=n,
        via_taussky_todd=sylvester_charpoly_taussky_todd(n),
        via_proskuryakov=sylvester_charpoly_proskuryakov(n),
        via_product=sylvester_charpoly_product(n),
        via_continuant=charpoly_continuant(negate(sylvester_kac(n))),
    )
    if not report.all_equal:
        logger.warning('Charpoly routes disagree for n=%d', n)
    else:
        logger.debug('Charpoly routes agree for n=%d (degree %d)', n, n + 1)
    return report


def charpoly_report_to_dict(report: CharpolyReport) -> Dict[str, Any]:
    """JSON form with the four coefficient arrays and the flag."""
    data: Dict[str, Any] = {'n': report.n}
    for name, poly in report.routes().items():
        data[f'via_{name}'] = poly_to_list(poly)
    data['all_equal'] = report.all_equal
    return data


def charpoly_report_from_dict(data: Dict[str, Any]) -> CharpolyReport:
    return CharpolyReport(
        n=int(data['n']),
        via_taussky_todd=poly_from_list(data['via_taussky_todd']),
        via_proskuryakov=poly_from_list(data['via_proskuryakov']),
        via_product=poly_from_list(data['via_product']),
        via_continuant=poly_from_list(data['via_continuant']),
    )
