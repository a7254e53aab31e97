"""
Benchmark Module for the Sylvester-Kac Toolkit

Times the three ways of getting at the spectrum and reports them as a
DataFrame with columns [n, method, wall_time_ns, checksum]:

- closed_form: the closed-form Spectrum (int64 numerators, Fractions built lazily), O(n)
- bisection: vectorized Sturm bisection on the symmetrized matrix
- exact_charpoly: continuant characteristic polynomial in exact arithmetic

Each timing is the median of several repetitions of the computation only;
matrix construction happens before the clock starts. The checksum is the
eigenvalue sum (for exact_charpoly, minus the subleading coefficient), so
the three methods can be cross-checked against the trace.
"""

import logging
import time
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np
import pandas as pd
from sklearn.linear_model import LinearRegression

from backend.charpoly import charpoly_continuant
from backend.config import (
    BENCH_REPEATS, BISECTION_BENCH_MAX_N, CHARPOLY_MAX_N, CLOSED_FORM_BENCH_MAX_N, DEFAULT_TOL,
)
from backend.exact_numeric import rat_to_str
from backend.matrices import build_matrix
from backend.spectra import bisection_eigenvalues, closed_form_spectrum

logger = logging.getLogger(__name__)

METHODS = ('closed_form', 'bisection', 'exact_charpoly')
BENCH_COLUMNS = ['n', 'method', 'wall_time_ns', 'checksum']
SKIPPED = 'skipped'


def median_wall_time(work: Callable[[], object], repeats: int = BENCH_REPEATS) -> Tuple[int, object]:
    """
    Median wall time of repeated calls.

    Args:
        work: Zero-argument computation to time
        repeats: Number of repetitions (>= 1)

    Returns:
        Tuple of (median nanoseconds, result of the last call)
    """
    timings = []
    result = None
    for _ in range(max(1, repeats)):
        start = time.perf_counter_ns()
        result = work()
        timings.append(time.perf_counter_ns() - start)
    return int(np.median(timings)), result


def closed_form_checksum(n: int, matrix: str) -> Fraction:
    """Exact eigenvalue sum of the closed-form spectrum."""
    return closed_form_spectrum(matrix, n).total()


def _bench_closed_form(n: int, matrix: str, repeats: int) -> Tuple[int, str]:
    # the timed call is the same spectrum build the spectrum command uses
    elapsed, spectrum = median_wall_time(lambda: closed_form_spectrum(matrix, n), repeats)
    return elapsed, rat_to_str(spectrum.total())


def _bench_bisection(n: int, matrix: str, repeats: int) -> Tuple[int, str]:
    M = build_matrix(matrix, n)
    elapsed, spectrum = median_wall_time(lambda: bisection_eigenvalues(M, DEFAULT_TOL), repeats)
    return elapsed, repr(float(np.sum(spectrum.values)))


def _bench_exact_charpoly(n: int, matrix: str, repeats: int) -> Tuple[int, str]:
    M = build_matrix(matrix, n)
    elapsed, poly = median_wall_time(lambda: charpoly_continuant(M), repeats)
    # sum of roots of a monic polynomial is minus its subleading coefficient
    return elapsed, rat_to_str(-poly.coefficients[-2])


BENCH_GUARDS: Dict[str, int] = {
    'closed_form': CLOSED_FORM_BENCH_MAX_N,
    'bisection': BISECTION_BENCH_MAX_N,
    'exact_charpoly': CHARPOLY_MAX_N,
}

BENCH_RUNNERS = {
    'closed_form': _bench_closed_form,
    'bisection': _bench_bisection,
    'exact_charpoly': _bench_exact_charpoly,
}


def run_benchmark(n_values: Sequence[int],
                  matrix: str = 'bio',
                  repeats: int = BENCH_REPEATS,
                  methods: Sequence[str] = METHODS) -> pd.DataFrame:
    """
    Time every method at every n.

    Args:
        n_values: Orders to benchmark
        matrix: 'kac' or 'bio'
        repeats: Repetitions per timing (median is reported)
        methods: Subset of METHODS

    Returns:
        DataFrame with columns [n, method, wall_time_ns, checksum];
        methods over their cost guard report 'skipped' in both value columns
    """
    rows: List[Dict[str, object]] = []
    for n in n_values:
        for method in methods:
            # Skip methods over their cost guard
            if n > BENCH_GUARDS[method]:
                rows.append({'n': n, 'method': method, 'wall_time_ns': SKIPPED, 'checksum': SKIPPED})
                continue

            elapsed, checksum = BENCH_RUNNERS[method](n, matrix, repeats)
            logger.info('bench n=%d method=%s %d ns', n, method, elapsed)
            rows.append({'n': n, 'method': method, 'wall_time_ns': elapsed, 'checksum': checksum})

    return pd.DataFrame(rows, columns=BENCH_COLUMNS)


def estimate_scaling_exponent(bench_df: pd.DataFrame, method: str) -> Dict[str, float]:
    """
    Fit wall_time ~ C * n^slope by linear regression in log-log space.

    Args:
        bench_df: Output of run_benchmark
        method: Method whose timings to fit

    Returns:
        Dictionary with keys:
        - 'slope': empirical cost exponent
        - 'intercept': log of the constant C
        - 'r_squared': fit quality (0-1)
    """
    timed = bench_df[(bench_df['method'] == method) & (bench_df['wall_time_ns'] != SKIPPED)]
    if len(timed) < 2:
        return {'slope': 0.0, 'intercept': 0.0, 'r_squared': 0.0}

    # Fit in log-log space
    log_n = np.log(timed['n'].astype(float).values).reshape(-1, 1)
    log_t = np.log(np.maximum(timed['wall_time_ns'].astype(float).values, 1.0))

    model = LinearRegression()
    model.fit(log_n, log_t)

    return {
        'slope': float(model.coef_[0]),
        'intercept': float(model.intercept_),
        'r_squared': float(model.score(log_n, log_t)),
    }
