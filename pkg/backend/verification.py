"""
Verification Module for the Sylvester-Kac Toolkit

Runs the invariant suite over a range of orders and tabulates the outcome.
Each (n, check) pair is an independent work item; items can be spread over
a process pool and the results are always reported in sequential order.

The matrix builders are parameters so that a deliberately corrupted build
(see ``corrupt_super``) can be pushed through the same suite.
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Callable, List, Optional, Sequence, Tuple

import pandas as pd

from backend.charpoly import (
    CharpolyReport, biogeography_charpoly, charpoly_continuant, leibniz_det,
    sign_flip_consistent, sylvester_charpoly_product, sylvester_charpoly_proskuryakov,
    sylvester_charpoly_taussky_todd,
)
from backend.config import (
    BISECTION_AGREEMENT, CHARPOLY_MAX_N, DEFAULT_TOL, LEIBNIZ_CHECK_MAX_N, LEIBNIZ_SHIFTS_PER_N,
)
from backend.errors import SpectralError, StructureError
from backend.exact_numeric import poly_eval
from backend.matrices import (
    TridiagonalMatrix, affine_combine, biogeography_matrix, column_sums, matvec, negate,
    off_diagonal_products, sylvester_kac,
)
from backend.spectra import (
    biogeography_eigenvalues, bisection_eigenvalues, exact_eigenvector, null_vector,
    sylvester_eigenvalues,
)

logger = logging.getLogger(__name__)

Builder = Callable[[int], TridiagonalMatrix]

CHECKS = (
    'charpoly_routes',
    'sign_flip',
    'affine_identity',
    'leibniz_oracle',
    'matrix_structure',
    'column_sums',
    'spectrum_structure',
    'eigenvector_certificates',
    'stationary_vector',
    'bisection_agreement',
)

PASS, FAIL, SKIPPED = 'pass', 'fail', 'skipped'


@dataclass
class VerificationResult:
    """
    Outcome of a verification run.

    ``records`` has one row per (n, check) with columns [n, check, status];
    ``summary`` has one row per check with columns [check, pass, fail, skipped].
    """
    records: pd.DataFrame
    summary: pd.DataFrame

    @property
    def passed(self) -> bool:
        return not (self.records['status'] == FAIL).any()

    @property
    def failures(self) -> List[Tuple[int, str]]:
        failed = self.records[self.records['status'] == FAIL]
        return [(int(n), str(check)) for n, check in zip(failed['n'], failed['check'])]


def corrupt_super(M: TridiagonalMatrix, k: int) -> TridiagonalMatrix:
    """
    Flip the sign of super entry k (1-based, clamped to the last one).

    Args:
        M: Matrix to corrupt, order >= 2
        k: Entry to flip

    Returns:
        Copy of M with one corrupted super entry

    Raises:
        StructureError: If M has no off-diagonal or k < 1
    """
    if M.order < 2 or k < 1:
        raise StructureError(f'Cannot corrupt super entry {k} of an order-{M.order} matrix')
    k = min(k, M.order - 1)
    flipped = list(M.super)
    flipped[k - 1] = -flipped[k - 1]
    return TridiagonalMatrix(order=M.order, diag=M.diag, super=tuple(flipped), sub=M.sub)


def _mutated_builder(base: Builder, k: int, n: int) -> TridiagonalMatrix:
    return corrupt_super(base(n), k)


def mutated(base: Builder, k: int) -> Builder:
    """A picklable builder that corrupts super entry k of every matrix."""
    return partial(_mutated_builder, base, k)


def _random_shifts(n: int) -> List[Fraction]:
    rng = random.Random(1000 + n)
    return [
        Fraction(rng.randint(-100, 100), rng.randint(1, 50))
        for _ in range(LEIBNIZ_SHIFTS_PER_N)
    ]


def check_charpoly_routes(n: int, kac: TridiagonalMatrix, bio: TridiagonalMatrix) -> Optional[bool]:
    if n > CHARPOLY_MAX_N:
        return None
    report = CharpolyReport(
        n=n,
        via_taussky_todd=sylvester_charpoly_taussky_todd(n),
        via_proskuryakov=sylvester_charpoly_proskuryakov(n),
        via_product=sylvester_charpoly_product(n),
        via_continuant=charpoly_continuant(negate(kac)),
    )
    return report.all_equal


def check_sign_flip(n: int, kac: TridiagonalMatrix, bio: TridiagonalMatrix) -> Optional[bool]:
    if n > CHARPOLY_MAX_N:
        return None
    # bio has trace -(n+1), so its flip must be detected
    return sign_flip_consistent(kac) and not sign_flip_consistent(bio)


def check_affine_identity(n: int, kac: TridiagonalMatrix, bio: TridiagonalMatrix) -> Optional[bool]:
    if n > CHARPOLY_MAX_N:
        return None
    return biogeography_charpoly(n) == charpoly_continuant(bio)


def check_leibniz_oracle(n: int, kac: TridiagonalMatrix, bio: TridiagonalMatrix) -> Optional[bool]:
    if n > LEIBNIZ_CHECK_MAX_N:
        return None
    for M in (kac, bio):
        charpoly = charpoly_continuant(M)
        for s in _random_shifts(n):
            if leibniz_det(M, s) != poly_eval(charpoly, s):
                return False
    return True


def check_matrix_structure(n: int, kac: TridiagonalMatrix, bio: TridiagonalMatrix) -> Optional[bool]:
    products = off_diagonal_products(kac)
    expected = [Fraction(k * (n + 1 - k)) for k in range(1, n + 1)]
    return products == expected and affine_combine(kac, Fraction(1, n), -1) == bio


def check_column_sums(n: int, kac: TridiagonalMatrix, bio: TridiagonalMatrix) -> Optional[bool]:
    return all(s == 0 for s in column_sums(bio))


def check_spectrum_structure(n: int, kac: TridiagonalMatrix, bio: TridiagonalMatrix) -> Optional[bool]:
    bio_values = biogeography_eigenvalues(n).values
    kac_values = sylvester_eigenvalues(n).values

    trace_ok = sum(bio_values) == -(n + 1) == sum(bio.diag)
    spacing_ok = all(b - a == Fraction(2, n) for a, b in zip(bio_values, bio_values[1:]))
    range_ok = bio_values[0] == -2 and bio_values[-1] == 0
    symmetric_ok = sum(kac_values) == 0 and list(kac_values) == [-v for v in reversed(kac_values)]

    roots_ok = True
    if n <= CHARPOLY_MAX_N:
        product = sylvester_charpoly_product(n)
        roots_ok = all(poly_eval(product, -lam) == 0 for lam in kac_values)
        roots_ok = roots_ok and poly_eval(biogeography_charpoly(n), 0) == 0

    return trace_ok and spacing_ok and range_ok and symmetric_ok and roots_ok


def check_eigenvector_certificates(n: int, kac: TridiagonalMatrix, bio: TridiagonalMatrix) -> Optional[bool]:
    pairs = [(bio, lam) for lam in biogeography_eigenvalues(n).values]
    pairs += [(kac, lam) for lam in sylvester_eigenvalues(n).values]
    return all(exact_eigenvector(M, lam).residual_is_zero for M, lam in pairs)


def check_stationary_vector(n: int, kac: TridiagonalMatrix, bio: TridiagonalMatrix) -> Optional[bool]:
    vector = null_vector(bio)
    total = sum(vector)
    stationary = [v / total for v in vector]
    return (
        all(v > 0 for v in stationary)
        and sum(stationary) == 1
        and all(x == 0 for x in matvec(bio, stationary))
    )


def check_bisection_agreement(n: int, kac: TridiagonalMatrix, bio: TridiagonalMatrix) -> Optional[bool]:
    for M, exact in ((bio, biogeography_eigenvalues(n)), (kac, sylvester_eigenvalues(n))):
        numeric = bisection_eigenvalues(M, DEFAULT_TOL)
        error = max(abs(float(e) - v) for e, v in zip(exact.values, numeric.values))
        if error > BISECTION_AGREEMENT:
            logger.warning('Bisection error %.3e exceeds %.0e for order %d', error, BISECTION_AGREEMENT, M.order)
            return False
    return True


CHECK_FUNCTIONS = {
    'charpoly_routes': check_charpoly_routes,
    'sign_flip': check_sign_flip,
    'affine_identity': check_affine_identity,
    'leibniz_oracle': check_leibniz_oracle,
    'matrix_structure': check_matrix_structure,
    'column_sums': check_column_sums,
    'spectrum_structure': check_spectrum_structure,
    'eigenvector_certificates': check_eigenvector_certificates,
    'stationary_vector': check_stationary_vector,
    'bisection_agreement': check_bisection_agreement,
}


def run_check(n: int, check: str, kac_builder: Builder = sylvester_kac,
              bio_builder: Builder = biogeography_matrix) -> str:
    """
    Run one (n, check) item.

    Args:
        n: Order parameter
        check: Name from CHECKS
        kac_builder: Builds the Sylvester-Kac matrix for n
        bio_builder: Builds the biogeography matrix for n

    Returns:
        'pass', 'fail' or 'skipped'; toolkit errors count as 'fail'
    """
    try:
        outcome = CHECK_FUNCTIONS[check](n, kac_builder(n), bio_builder(n))
    except SpectralError as e:
        logger.warning('Check %s raised for n=%d: %s', check, n, str(e))
        return FAIL

    if outcome is None:
        return SKIPPED
    if not outcome:
        logger.warning('Check %s failed for n=%d', check, n)
    return PASS if outcome else FAIL


def _run_item(item: Tuple[int, str, Builder, Builder]) -> str:
    n, check, kac_builder, bio_builder = item
    return run_check(n, check, kac_builder, bio_builder)


def run_verification(n_values: Sequence[int],
                     jobs: int = 1,
                     kac_builder: Builder = sylvester_kac,
                     bio_builder: Builder = biogeography_matrix,
                     checks: Sequence[str] = CHECKS) -> VerificationResult:
    """
    Run the invariant suite over every n in n_values.

    Args:
        n_values: Orders to verify
        jobs: Worker processes; 1 runs in-process
        kac_builder: Builds the Sylvester-Kac matrix (injectable for mutation runs)
        bio_builder: Builds the biogeography matrix
        checks: Subset of CHECKS to run

    Returns:
        VerificationResult with per-item records and a per-check summary
    """
    items = [(n, check, kac_builder, bio_builder) for n in n_values for check in checks]
    logger.info('Verifying %d items over n=%s..%s with %d job(s)',
                len(items), n_values[0] if n_values else '-', n_values[-1] if n_values else '-', jobs)

    # Run items in worker processes or inline
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            statuses = list(executor.map(_run_item, items))
    else:
        statuses = [_run_item(item) for item in items]

    # Collect per-check rows
    records = pd.DataFrame({
        'n': [item[0] for item in items],
        'check': [item[1] for item in items],
        'status': statuses,
    })

    # Count statuses per check
    summary = (
        pd.crosstab(records['check'], records['status'])
        .reindex(index=list(checks), columns=[PASS, FAIL, SKIPPED], fill_value=0)
        .reset_index()
    )
    summary.columns = ['check', PASS, FAIL, SKIPPED]

    return VerificationResult(records=records, summary=summary)
