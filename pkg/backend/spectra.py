"""
Spectra Module for the Sylvester-Kac Toolkit

This module provides the eigenvalue side of the toolkit:

- closed-form spectra of K ({-n, -n+2, ..., n}) and of A_{n+1}
  ({-2(n-k+1)/n : k = 1..n+1})
- exact rational eigenvectors from the tridiagonal forward recurrence, with
  an exact residual certificate
- the stationary (null) vector of A_{n+1} by banded Gaussian elimination
- an independent binary64 Sturm-sequence bisection solver, run on the
  symmetrized matrix, used as an oracle and as a benchmark baseline

Spectra are always listed in ascending order. For A_{n+1} the ascending
position j = 0..n corresponds to the index k = j + 1 of -2(n-k+1)/n.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from backend.config import BISECTION_MAX_ITER
from backend.errors import DomainError, StructureError, SymmetrizationError
from backend.exact_numeric import Rational, Scalar, rat_parse, rat_to_str
from backend.matrices import TridiagonalMatrix, biogeography_matrix, matvec, off_diagonal_products

logger = logging.getLogger(__name__)


class SpectrumSource(str, Enum):
    CLOSED_FORM = 'closed_form'
    BISECTION = 'bisection'


class Spectrum:
    """
    Eigenvalues in ascending order with their provenance.

    A closed-form spectrum is either a tuple of Fractions or int64
    ``numerators`` over one positive ``denominator``; in the second form the
    Fractions are only built when ``values`` is first read. Closed-form
    values must be strictly increasing.

    Bisection values are Python floats and only need to be nondecreasing:
    with a coarse tol two neighbouring brackets can share a midpoint.
    """

    def __init__(self,
                 source: SpectrumSource,
                 n: int,
                 values: Optional[Sequence[Union[Fraction, float]]] = None,
                 numerators: Optional[np.ndarray] = None,
                 denominator: int = 1):
        self.source = SpectrumSource(source)
        self.n = n
        self.numerators = numerators
        self.denominator = denominator
        self._values = tuple(values) if values is not None else None

        if self._values is None and numerators is None:
            raise StructureError('Spectrum needs either values or numerators')
        if len(self) != n + 1:
            raise StructureError(f'Spectrum for n={n} needs {n + 1} values, got {len(self)}')

        if numerators is not None:
            # integer diff over one positive denominator, no Fractions needed
            if denominator < 1 or np.any(np.diff(numerators) <= 0):
                raise StructureError('Closed-form spectrum must be strictly increasing')
        elif self.source is SpectrumSource.CLOSED_FORM:
            if any(a >= b for a, b in zip(self._values, self._values[1:])):
                raise StructureError('Closed-form spectrum must be strictly increasing')
        elif any(a > b for a, b in zip(self._values, self._values[1:])):
            raise StructureError('Bisection spectrum must be nondecreasing')

    def __len__(self) -> int:
        if self._values is not None:
            return len(self._values)
        return len(self.numerators)

    @property
    def values(self) -> Tuple[Union[Fraction, float], ...]:
        if self._values is None:
            self._values = tuple(Fraction(int(v), self.denominator) for v in self.numerators)
        return self._values

    def total(self) -> Union[Fraction, float]:
        """Sum of the eigenvalues; exact and O(n) in numpy for the numerator form."""
        if self.numerators is not None:
            return Fraction(int(self.numerators.sum()), self.denominator)
        return sum(self.values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Spectrum):
            return NotImplemented
        return self.source is other.source and self.n == other.n and self.values == other.values

    __hash__ = None

    def __repr__(self) -> str:
        return f'Spectrum(source={self.source.value!r}, n={self.n}, size={len(self)})'


@dataclass(frozen=True)
class Eigenpair:
    """
    An exact eigenvector candidate and its certificate.

    ``vector[0]`` is 1. ``residual_is_zero`` is True iff
    (M - value*I) @ vector == 0 exactly.
    """
    value: Fraction
    vector: Tuple[Fraction, ...]
    residual_is_zero: bool


def _require_order_parameter(n: int) -> None:
    if n < 1:
        raise DomainError(f'n must be >= 1, got {n}')


def closed_form_numerators(n: int, matrix: str) -> Tuple[np.ndarray, int]:
    """
    Vectorized closed form: eigenvalues as integer numerators over one denominator.

    Args:
        n: Order parameter, n >= 1
        matrix: 'kac' (values n - 2k + 2, denominator 1) or
                'bio' (values -2(n-k+1)/n, denominator n)

    Returns:
        Tuple of (ascending int64 numerators, common denominator)

    Raises:
        DomainError: If n < 1 or the family is unknown
    """
    _require_order_parameter(n)
    if matrix == 'kac':
        return np.arange(-n, n + 1, 2, dtype=np.int64), 1
    if matrix == 'bio':
        return np.arange(-2 * n, 1, 2, dtype=np.int64), n
    raise DomainError(f"Unknown matrix family '{matrix}', expected 'kac' or 'bio'")


def sylvester_eigenvalues(n: int) -> Spectrum:
    """
    Closed-form spectrum of K: {n - 2k + 2 : k = 1..n+1} ascending.

    Raises:
        DomainError: If n < 1
    """
    numerators, denominator = closed_form_numerators(n, 'kac')
    return Spectrum(source=SpectrumSource.CLOSED_FORM, n=n, numerators=numerators, denominator=denominator)


def biogeography_eigenvalues(n: int) -> Spectrum:
    """
    Closed-form spectrum of A_{n+1}: {-2(n-k+1)/n : k = 1..n+1} ascending.

    Args:
        n: Order parameter, n >= 1

    Returns:
        Spectrum from -2 to 0 in steps of 2/n

    Raises:
        DomainError: If n < 1
    """
    numerators, denominator = closed_form_numerators(n, 'bio')
    # Fractions are built on first read of .values
    return Spectrum(source=SpectrumSource.CLOSED_FORM, n=n, numerators=numerators, denominator=denominator)


def closed_form_spectrum(matrix: str, n: int) -> Spectrum:
    """Dispatch on the CLI family name."""
    if matrix == 'kac':
        return sylvester_eigenvalues(n)
    if matrix == 'bio':
        return biogeography_eigenvalues(n)
    raise DomainError(f"Unknown matrix family '{matrix}', expected 'kac' or 'bio'")


def exact_eigenvector(M: TridiagonalMatrix, lam: Scalar) -> Eigenpair:
    """
    Solve for the eigenvector of lam by the forward recurrence and certify it.

    With v_1 = 1, row k gives
    v_{k+1} = -(sub_{k-1} v_{k-1} + (diag_k - lam) v_k) / super_k.
    The full residual (M - lam I) v is then evaluated exactly; a nonzero
    residual means lam is not an eigenvalue, which is reported, not raised.

    Args:
        M: Tridiagonal matrix with exact, nonzero super entries
        lam: Candidate eigenvalue

    Returns:
        Eigenpair with the exact vector and the certificate outcome

    Raises:
        StructureError: If a super entry is zero
    """
    lam = Fraction(lam)
    for k, s in enumerate(M.super, start=1):
        if s == 0:
            raise StructureError(f'super_{k} is zero; the forward recurrence needs nonzero super entries')

    # Solve rows 1..m-1 forward from v_1 = 1
    vector = [Fraction(1)]
    for k in range(M.order - 1):
        acc = (M.diag[k] - lam) * vector[k]
        if k > 0:
            acc += M.sub[k - 1] * vector[k - 1]
        vector.append(-acc / M.super[k])

    # Last row is the certificate
    image = matvec(M, vector)
    residual_is_zero = all(mv - lam * v == 0 for mv, v in zip(image, vector))

    return Eigenpair(value=lam, vector=tuple(vector), residual_is_zero=residual_is_zero)


def null_vector(M: TridiagonalMatrix) -> List[Rational]:
    """
    Exact null vector by banded Gaussian elimination.

    Eliminates the subdiagonal to upper-bidiagonal form. The first order-1
    pivots must be nonzero and the last one exactly zero; back substitution
    from v_last = 1 then gives the null vector.

    Args:
        M: Tridiagonal matrix with exact entries

    Returns:
        Null vector with last entry 1

    Raises:
        StructureError: If a leading pivot vanishes or M is nonsingular
    """
    # Forward elimination of the subdiagonal
    pivots = [Fraction(M.diag[0])]
    for k in range(M.order - 1):
        if pivots[k] == 0:
            raise StructureError(f'Zero pivot at row {k + 1} during banded elimination')
        factor = M.sub[k] / pivots[k]
        pivots.append(M.diag[k + 1] - factor * M.super[k])

    if pivots[-1] != 0:
        raise StructureError('Matrix is nonsingular; it has no null vector')

    # Back substitution from the last entry
    vector = [Fraction(0)] * M.order
    vector[-1] = Fraction(1)
    for k in range(M.order - 2, -1, -1):
        vector[k] = -M.super[k] * vector[k + 1] / pivots[k]
    return vector


def stationary_vector(n: int) -> List[Rational]:
    """
    Stationary distribution of the generator A_{n+1}.

    Args:
        n: Order parameter, n >= 1

    Returns:
        Exact null vector of biogeography_matrix(n) normalized to sum 1
    """
    vector = null_vector(biogeography_matrix(n))
    total = sum(vector)
    return [v / total for v in vector]


def symmetrize(M: TridiagonalMatrix) -> TridiagonalMatrix:
    """
    Diagonally similar symmetric matrix with binary64 bands.

    Off-diagonal k becomes sqrt(super_k * sub_k); the diagonal is kept.

    Args:
        M: Tridiagonal matrix with exact entries

    Returns:
        TridiagonalMatrix with float bands and super == sub

    Raises:
        SymmetrizationError: If some super_k * sub_k <= 0
    """
    products = off_diagonal_products(M)
    for k, p in enumerate(products, start=1):
        if p <= 0:
            raise SymmetrizationError(f'super_{k} * sub_{k} = {p} is not positive')

    off = np.sqrt(np.array([float(p) for p in products], dtype=np.float64))
    return TridiagonalMatrix(
        order=M.order,
        diag=tuple(float(d) for d in M.diag),
        super=tuple(off.tolist()),
        sub=tuple(off.tolist()),
    )


def sturm_count(diag: np.ndarray, off: np.ndarray, x: np.ndarray) -> np.ndarray:
    """
    Number of eigenvalues below each shift of a symmetric tridiagonal.

    Counts the negative pivots of the LDL^T factorization of T - x I,
    vectorized over the shifts. Exactly-zero pivots are nudged to -pivmin.

    Args:
        diag: Diagonal, shape (m,)
        off: Off-diagonal, shape (m-1,)
        x: Shifts, any shape

    Returns:
        int64 array of counts, same shape as x
    """
    x = np.asarray(x, dtype=np.float64)
    off_sq = np.asarray(off, dtype=np.float64) ** 2
    pivmin = np.finfo(np.float64).tiny * max(1.0, float(off_sq.max()) if off_sq.size else 1.0)

    counts = np.zeros(x.shape, dtype=np.int64)
    q = diag[0] - x
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    counts += q < 0
    for i in range(1, len(diag)):
        q = diag[i] - x - off_sq[i - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        counts += q < 0
    return counts


def bisection_eigenvalues(M: TridiagonalMatrix, tol: float) -> Spectrum:
    """
    All eigenvalues by Sturm-count bisection on the symmetrized matrix.

    Every eigenvalue starts from the Gershgorin enclosure and is bisected
    until its bracket is narrower than tol*max(1, |midpoint|), at most
    200 steps. All brackets advance together, one vectorized Sturm sweep
    per step.

    Args:
        M: Symmetrizable tridiagonal matrix
        tol: Relative bracket width, > 0

    Returns:
        Spectrum of bracket midpoints, source = bisection

    Raises:
        DomainError: If tol <= 0
        SymmetrizationError: If M is not symmetrizable
    """
    if not tol > 0:
        raise DomainError(f'tol must be > 0, got {tol}')

    # Build the symmetric float bands
    sym = symmetrize(M)
    m = sym.order
    diag = np.array(sym.diag, dtype=np.float64)
    off = np.array(sym.super, dtype=np.float64)

    # Gershgorin enclosure
    radius = np.zeros(m)
    radius[:-1] += np.abs(off)
    radius[1:] += np.abs(off)
    lower = float((diag - radius).min())
    upper = float((diag + radius).max())
    pad = 2 * np.finfo(np.float64).eps * max(1.0, abs(lower), abs(upper))

    lo = np.full(m, lower - pad)
    hi = np.full(m, upper + pad)
    index = np.arange(m)

    iterations = 0
    while iterations < BISECTION_MAX_ITER:
        mid = 0.5 * (lo + hi)
        # half-width bound on the midpoint
        active = (hi - lo) > 0.5 * tol * np.maximum(1.0, np.abs(mid))
        if not active.any():
            break

        idx = index[active]
        mid_active = mid[active]
        below = sturm_count(diag, off, mid_active) > idx
        hi[idx[below]] = mid_active[below]
        lo[idx[~below]] = mid_active[~below]
        iterations += 1
    else:
        logger.warning('Bisection hit the %d-step cap for order %d', BISECTION_MAX_ITER, m)

    logger.debug('Bisection converged in %d steps for order %d', iterations, m)
    # Midpoints of the final brackets
    values = np.sort(0.5 * (lo + hi))
    return Spectrum(
        values=tuple(float(v) for v in values),
        source=SpectrumSource.BISECTION,
        n=m - 1,
    )


def spectrum_to_dict(spectrum: Spectrum) -> Dict[str, Any]:
    """JSON form: exact strings for closed_form, binary64 numbers for bisection."""
    if spectrum.source is SpectrumSource.CLOSED_FORM:
        values: List[Any] = [rat_to_str(v) for v in spectrum.values]
    else:
        values = [float(v) for v in spectrum.values]
    return {'n': spectrum.n, 'source': spectrum.source.value, 'values': values}


def spectrum_from_dict(data: Dict[str, Any]) -> Spectrum:
    source = SpectrumSource(data['source'])
    if source is SpectrumSource.CLOSED_FORM:
        values = tuple(rat_parse(v) for v in data['values'])
    else:
        values = tuple(float(v) for v in data['values'])
    return Spectrum(values=values, source=source, n=int(data['n']))


def eigenpair_to_dict(pair: Eigenpair) -> Dict[str, Any]:
    return {
        'value': rat_to_str(pair.value),
        'vector': [rat_to_str(v) for v in pair.vector],
        'residual_is_zero': pair.residual_is_zero,
    }


def value_strings(values: Sequence[Union[Fraction, float]]) -> List[str]:
    """Render spectrum values for CSV/text: exact strings or float repr."""
    return [rat_to_str(v) if isinstance(v, Fraction) else repr(float(v)) for v in values]
