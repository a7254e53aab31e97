"""
Backend modules for the Sylvester-Kac spectral toolkit.

This package contains exact rational/polynomial arithmetic, the Sylvester-Kac
and biogeography matrix constructors, characteristic-polynomial routes,
closed-form and bisection spectra, the verification suite, the benchmark
harness and the command-line front end.
"""
