"""
Utility modules for the Sylvester-Kac toolkit.

This package contains the output formatting helpers shared by the CLI:
JSON, CSV and text rendering of the backend results.
"""
