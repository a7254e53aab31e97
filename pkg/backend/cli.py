"""
CLI Module for the Sylvester-Kac Toolkit

Command-line front end: spectrum, charpoly, eigvec, verify and bench, each
printing machine-readable output (json, csv) or a human table (text) to
stdout. Diagnostics go to stderr through logging.

Exit statuses: 0 success, 1 verification failure, 2 usage error,
3 size-guard violation.
"""

import argparse
import logging
import sys
from typing import List, Optional, Tuple

import pandas as pd

from backend.benchmark import METHODS, estimate_scaling_exponent, run_benchmark
from backend.charpoly import biogeography_charpoly, build_charpoly_report, charpoly_report_to_dict
from backend.config import (
    BENCH_REPEATS, CHARPOLY_MAX_N, COMMAND_CHOICES, DEFAULT_FORMAT, DEFAULT_MATRIX, DEFAULT_MODE,
    DEFAULT_TOL, EXIT_OK, EXIT_SIZE_GUARD, EXIT_USAGE, EXIT_VERIFY_FAILED, FORMAT_CHOICES,
    MATRIX_CHOICES, MODE_CHOICES, RunConfig, parse_n_range,
)
from backend.errors import DomainError, SizeGuardError, SpectralError
from backend.exact_numeric import poly_to_text, rat_parse, rat_to_str
from backend.matrices import biogeography_matrix, build_matrix, sylvester_kac
from backend.spectra import (
    bisection_eigenvalues, closed_form_spectrum, eigenpair_to_dict, exact_eigenvector,
    spectrum_to_dict, value_strings,
)
from backend.verification import mutated, run_verification
from utils.formatting import frame_to_csv, frame_to_text, to_json

logger = logging.getLogger(__name__)

CommandOutput = Tuple[str, int]

FAMILY_NAMES = {'kac': 'Sylvester-Kac K', 'bio': 'biogeography A'}


def configure_logging(verbosity: int) -> None:
    """WARNING by default, INFO with -v, DEBUG with -vv; always to stderr."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format='%(asctime)s - %(levelname)s - %(message)s',
    )


def cmd_spectrum(cfg: RunConfig) -> CommandOutput:
    """
    Closed-form (exact mode) or bisection (float mode) spectrum.

    Args:
        cfg: Run configuration with a single n

    Returns:
        Tuple of (serialized spectrum, exit status)
    """
    if cfg.mode == 'exact':
        spectrum = closed_form_spectrum(cfg.matrix, cfg.n)
    else:
        spectrum = bisection_eigenvalues(build_matrix(cfg.matrix, cfg.n), cfg.tol)

    if cfg.fmt == 'json':
        return to_json(spectrum_to_dict(spectrum)), EXIT_OK

    # Tabular forms
    frame = pd.DataFrame({'value': value_strings(spectrum.values)})
    if cfg.fmt == 'csv':
        return frame_to_csv(frame), EXIT_OK

    header = (
        f'Spectrum of {FAMILY_NAMES[cfg.matrix]} (n={spectrum.n}, order {spectrum.n + 1}, '
        f'{spectrum.source.value})'
    )
    return f'{header}\n{frame_to_text(frame)}', EXIT_OK


def cmd_charpoly(cfg: RunConfig) -> CommandOutput:
    """
    Four-route characteristic polynomial report.

    Raises:
        SizeGuardError: If n > CHARPOLY_MAX_N
    """
    n = cfg.n
    if n > CHARPOLY_MAX_N:
        raise SizeGuardError(f'charpoly is capped at n = {CHARPOLY_MAX_N}, got {n}')

    report = build_charpoly_report(n)

    if cfg.fmt == 'json':
        return to_json(charpoly_report_to_dict(report)), EXIT_OK

    if cfg.fmt == 'csv':
        # Pad every route to a common degree column
        routes = report.routes()
        width = max(len(p.coefficients) for p in routes.values())
        frame = pd.DataFrame({'degree': list(range(width))})
        for name, poly in routes.items():
            coeffs = [rat_to_str(c) for c in poly.coefficients]
            frame[name] = coeffs + ['0'] * (width - len(coeffs))
        return frame_to_csv(frame), EXIT_OK

    lines = [f'p_{n + 1}(X) = det(X I + K), n = {n}']
    for name, poly in report.routes().items():
        lines.append(f'  {name:<13} {poly_to_text(poly)}')
    lines.append(f'  all_equal     {str(report.all_equal).lower()}')
    lines.append(f"det(x I - A) = {poly_to_text(biogeography_charpoly(n), 'x')}")
    return '\n'.join(lines), EXIT_OK


def cmd_eigvec(cfg: RunConfig) -> CommandOutput:
    """
    Certified exact eigenvectors.

    With ``cfg.value`` set, certifies that single candidate (exit 0 either
    way). Otherwise certifies every closed-form eigenvalue of the family and
    exits 1 if any certificate fails.
    """
    M = build_matrix(cfg.matrix, cfg.n)
    if cfg.value is not None:
        candidates = [cfg.value]
    else:
        candidates = list(closed_form_spectrum(cfg.matrix, cfg.n).values)

    # Certify each candidate
    pairs = [exact_eigenvector(M, lam) for lam in candidates]
    status = EXIT_OK
    if cfg.value is None and not all(p.residual_is_zero for p in pairs):
        status = EXIT_VERIFY_FAILED

    if cfg.fmt == 'json':
        data = {
            'n': cfg.n,
            'matrix': cfg.matrix,
            'eigenpairs': [eigenpair_to_dict(p) for p in pairs],
        }
        return to_json(data), status

    frame = pd.DataFrame({
        'value': [rat_to_str(p.value) for p in pairs],
        'residual_is_zero': [p.residual_is_zero for p in pairs],
        'vector': [' '.join(rat_to_str(v) for v in p.vector) for p in pairs],
    })
    if cfg.fmt == 'csv':
        return frame_to_csv(frame), status
    return frame_to_text(frame), status


def cmd_verify(cfg: RunConfig) -> CommandOutput:
    """
    Run the invariant suite over the n range.

    Returns:
        Tuple of (summary, 0 if every check passed else 1)
    """
    # Swap in corrupted builders when asked
    kac_builder, bio_builder = sylvester_kac, biogeography_matrix
    if cfg.mutate_super is not None:
        logger.warning('Corrupting super entry %d of every matrix', cfg.mutate_super)
        kac_builder = mutated(sylvester_kac, cfg.mutate_super)
        bio_builder = mutated(biogeography_matrix, cfg.mutate_super)

    result = run_verification(cfg.n_values, jobs=cfg.jobs, kac_builder=kac_builder, bio_builder=bio_builder)
    status = EXIT_OK if result.passed else EXIT_VERIFY_FAILED
    for n, check in result.failures:
        logger.error('FAILED n=%d check=%s', n, check)

    if cfg.fmt == 'json':
        data = {
            'n_range': [cfg.n_values[0], cfg.n_values[-1]],
            'passed': result.passed,
            'checks': [
                {'check': row['check'], 'pass': int(row['pass']), 'fail': int(row['fail']),
                 'skipped': int(row['skipped'])}
                for row in result.summary.to_dict(orient='records')
            ],
            'failures': [{'n': n, 'check': check} for n, check in result.failures],
        }
        return to_json(data), status

    if cfg.fmt == 'csv':
        return frame_to_csv(result.summary), status

    lines = [
        f'Verification n={cfg.n_values[0]}..{cfg.n_values[-1]}: '
        f"{'PASS' if result.passed else 'FAIL'}",
        frame_to_text(result.summary),
    ]
    if result.failures:
        lines.append('Failures:')
        lines.extend(f'  n={n} {check}' for n, check in result.failures)
    return '\n'.join(lines), status


def cmd_bench(cfg: RunConfig) -> CommandOutput:
    """Timing report for closed_form, bisection and exact_charpoly."""
    frame = run_benchmark(cfg.n_values, matrix=cfg.matrix, repeats=cfg.repeats)

    if cfg.fmt == 'csv':
        return frame_to_csv(frame), EXIT_OK
    if cfg.fmt == 'json':
        records = [
            {'n': int(row['n']), 'method': row['method'],
             'wall_time_ns': row['wall_time_ns'] if row['wall_time_ns'] == 'skipped' else int(row['wall_time_ns']),
             'checksum': row['checksum']}
            for row in frame.to_dict(orient='records')
        ]
        return to_json(records), EXIT_OK

    lines = [frame_to_text(frame)]
    for method in METHODS:
        fit = estimate_scaling_exponent(frame, method)
        if fit['r_squared'] > 0:
            lines.append(f"{method}: time ~ n^{fit['slope']:.2f} (R^2 = {fit['r_squared']:.3f})")
    return '\n'.join(lines), EXIT_OK


COMMANDS = {
    'spectrum': cmd_spectrum,
    'charpoly': cmd_charpoly,
    'eigvec': cmd_eigvec,
    'verify': cmd_verify,
    'bench': cmd_bench,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--n', required=True, help='Order parameter: an integer or an inclusive range a..b')
    common.add_argument('--matrix', choices=MATRIX_CHOICES, default=DEFAULT_MATRIX,
                        help='kac = Sylvester-Kac K, bio = biogeography A (default: bio)')
    common.add_argument('--format', dest='fmt', choices=FORMAT_CHOICES, default=DEFAULT_FORMAT,
                        help='Output format (default: json)')
    common.add_argument('--mode', choices=MODE_CHOICES, default=DEFAULT_MODE,
                        help='exact = closed form, float = Sturm bisection (default: exact)')
    common.add_argument('--tol', type=float, default=DEFAULT_TOL,
                        help='Relative bisection bracket width, float mode only (default: 1e-12)')
    common.add_argument('-v', '--verbose', action='count', default=0, help='-v info, -vv debug (stderr)')

    parser = argparse.ArgumentParser(
        prog='kac-spectra',
        description='Exact spectral toolkit for the Sylvester-Kac and biogeography matrices',
    )
    sub = parser.add_subparsers(dest='command', required=True)

    sub.add_parser('spectrum', parents=[common], help='Eigenvalues of the selected family')
    sub.add_parser('charpoly', parents=[common], help='Characteristic polynomial by four routes')

    eigvec = sub.add_parser('eigvec', parents=[common], help='Certified exact eigenvectors')
    eigvec.add_argument('--value', default=None, help='Single candidate eigenvalue, e.g. -3/2')

    verify = sub.add_parser('verify', parents=[common], help='Run the invariant suite over a range')
    verify.add_argument('--jobs', type=int, default=1, help='Worker processes for independent checks')
    verify.add_argument('--mutate-super', type=int, default=None, metavar='K',
                        help='Corrupt super entry K of every matrix (verifier self-test)')

    bench = sub.add_parser('bench', parents=[common], help='CSV timing report')
    bench.add_argument('--repeats', type=int, default=BENCH_REPEATS, help='Repetitions per timing (median)')

    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    """
    Validate parsed arguments into a RunConfig.

    Raises:
        DomainError: For invalid n, tol, jobs or value
    """
    if args.command not in COMMAND_CHOICES:
        raise DomainError(f"Unknown command '{args.command}'")
    n_values = parse_n_range(args.n)
    if not args.tol > 0:
        raise DomainError(f'tol must be > 0, got {args.tol}')

    jobs = getattr(args, 'jobs', 1)
    if jobs < 1:
        raise DomainError(f'jobs must be >= 1, got {jobs}')
    repeats = getattr(args, 'repeats', BENCH_REPEATS)
    if repeats < 1:
        raise DomainError(f'repeats must be >= 1, got {repeats}')
    mutate_super = getattr(args, 'mutate_super', None)
    if mutate_super is not None and mutate_super < 1:
        raise DomainError(f'mutate-super index must be >= 1, got {mutate_super}')

    value_text = getattr(args, 'value', None)
    value = rat_parse(value_text) if value_text is not None else None

    cfg = RunConfig(
        command=args.command,
        n_values=n_values,
        matrix=args.matrix,
        fmt=args.fmt,
        mode=args.mode,
        tol=args.tol,
        jobs=jobs,
        value=value,
        mutate_super=mutate_super,
        repeats=repeats,
    )
    if cfg.command in ('spectrum', 'charpoly', 'eigvec') and len(n_values) != 1:
        raise DomainError(f"'{cfg.command}' takes a single n, got the range {args.n}")
    return cfg


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        Process exit status
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    configure_logging(args.verbose)

    try:
        cfg = build_config(args)
    except DomainError as e:
        print(f'error: {str(e)}', file=sys.stderr)
        return EXIT_USAGE

    try:
        output, status = COMMANDS[cfg.command](cfg)
    except SizeGuardError as e:
        print(f'error: {str(e)}', file=sys.stderr)
        return EXIT_SIZE_GUARD
    except DomainError as e:
        print(f'error: {str(e)}', file=sys.stderr)
        return EXIT_USAGE
    except SpectralError as e:
        print(f'error: {str(e)}', file=sys.stderr)
        return EXIT_VERIFY_FAILED

    sys.stdout.write(output if output.endswith('\n') else output + '\n')
    return status


if __name__ == '__main__':
    sys.exit(main())
