"""
Test suite for the Sylvester-Kac spectral toolkit.

This package contains unit tests, property-based tests and the acceptance
checks for every backend module and the CLI.
"""
