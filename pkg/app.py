"""
Sylvester-Kac Spectral Toolkit - command-line entry point

Commands:
- spectrum: closed-form or bisection eigenvalues of K or A_{n+1}
- charpoly: characteristic polynomial by four independent routes
- eigvec:   exact eigenvectors with residual certificates
- verify:   the full invariant suite over a range of n
- bench:    timing report for closed form, bisection and exact charpoly

Example:
    python app.py spectrum --matrix bio --n 4 --format csv
"""

import sys

from backend.cli import main


if __name__ == '__main__':
    sys.exit(main())
