"""
Exact Numeric Module for the Sylvester-Kac Toolkit

This module provides the exact substrate: canonical rational scalars and
dense univariate polynomials over them. Every identity the toolkit checks
is ultimately a comparison of these values.

Rational scalars are ``fractions.Fraction`` (arbitrary-precision integers,
positive reduced denominator). Polynomials store coefficients in ascending
degree order; the zero polynomial is the single coefficient ``(0,)``.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from backend.errors import DomainError

logger = logging.getLogger(__name__)

Rational = Fraction
Scalar = Union[int, Fraction]


def rat_make(num: int, den: int = 1) -> Rational:
    """
    Build a canonical rational num/den.

    Args:
        num: Numerator (arbitrary-precision integer)
        den: Denominator, nonzero

    Returns:
        Fraction in lowest terms with positive denominator

    Raises:
        DomainError: If den is zero
    """
    try:
        return Fraction(num, den)
    except ZeroDivisionError as e:
        raise DomainError(f'Zero denominator in {num}/{den}') from e


def rat_to_str(value: Rational) -> str:
    """Serialize as 'num/den', or 'num' when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def rat_parse(text: str) -> Rational:
    """
    Parse the 'num/den' (or 'num') form produced by rat_to_str.

    Raises:
        DomainError: If the text is not an exact rational or den is zero
    """
    parts = text.strip().split('/')
    if len(parts) not in (1, 2):
        raise DomainError(f"Not a rational: '{text}'")
    try:
        num = int(parts[0])
        den = int(parts[1]) if len(parts) == 2 else 1
    except ValueError as e:
        raise DomainError(f"Not a rational: '{text}'") from e
    return rat_make(num, den)


@dataclass(frozen=True)
class Polynomial:
    """
    Dense univariate polynomial with exact rational coefficients.

    ``coefficients[i]`` multiplies X**i. Trailing zeros are trimmed on
    construction, so the highest stored coefficient is nonzero unless the
    polynomial is zero, which is stored as ``(Fraction(0),)``.
    """
    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = [Fraction(c) for c in self.coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            coeffs = [Fraction(0)]
        object.__setattr__(self, 'coefficients', tuple(coeffs))

    def degree(self) -> int:
        """Index of the last nonzero coefficient (0 for the zero polynomial)."""
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coefficients) == 1 and self.coefficients[0] == 0

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1]


def poly_constant(c: Scalar) -> Polynomial:
    return Polynomial((Fraction(c),))


def poly_x() -> Polynomial:
    """The polynomial X."""
    return Polynomial((Fraction(0), Fraction(1)))


def poly_is_monic(p: Polynomial) -> bool:
    return not p.is_zero and p.leading == 1


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    """
    Coefficientwise sum.

    Args:
        p: First summand
        q: Second summand

    Returns:
        Canonical p + q (cancellation of the top terms trims the degree)
    """
    a, b = p.coefficients, q.coefficients
    if len(a) < len(b):
        a, b = b, a
    summed = list(a)
    for i, c in enumerate(b):
        summed[i] += c
    return Polynomial(tuple(summed))


def poly_neg(p: Polynomial) -> Polynomial:
    return Polynomial(tuple(-c for c in p.coefficients))


def poly_sub(p: Polynomial, q: Polynomial) -> Polynomial:
    return poly_add(p, poly_neg(q))


def poly_scale(p: Polynomial, c: Scalar) -> Polynomial:
    """Multiply every coefficient by the scalar c."""
    c = Fraction(c)
    return Polynomial(tuple(c * a for a in p.coefficients))


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    """
    Convolution product.

    Args:
        p: First factor
        q: Second factor

    Returns:
        Canonical p * q; deg = deg p + deg q when both are nonzero
    """
    if p.is_zero or q.is_zero:
        return poly_constant(0)

    a, b = p.coefficients, q.coefficients
    product = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            product[i + j] += ai * bj
    return Polynomial(tuple(product))


def poly_from_roots(roots: Iterable[Scalar]) -> Polynomial:
    """Expand the monic product of (X - r) over the given roots."""
    result = poly_constant(1)
    for r in roots:
        result = poly_mul(result, Polynomial((-Fraction(r), Fraction(1))))
    return result


def poly_shift(p: Polynomial, c: Scalar) -> Polynomial:
    """
    Taylor shift: return q with q(X) = p(X + c), exactly.

    Repeated synthetic division by (X - c) in place; the remainders of the
    successive divisions are the coefficients of the shifted polynomial.
    Costs O(deg**2) coefficient operations.

    Args:
        p: Polynomial to shift
        c: Shift amount

    Returns:
        The shifted polynomial
    """
    c = Fraction(c)
    a = list(p.coefficients)
    d = len(a) - 1
    if c == 0 or d == 0:
        return Polynomial(tuple(a))

    # Repeated synthetic division by (X - c)
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            a[j] += c * a[j + 1]
    return Polynomial(tuple(a))


def poly_affine_substitute(p: Polynomial, a: Scalar, b: Scalar) -> Polynomial:
    """
    Return q with q(x) = p(a*x + b), exactly.

    Shift by b first, then scale the variable: r(X) = p(X + b) and
    q(x) = r(a*x), i.e. the i-th coefficient of r times a**i.

    Args:
        p: Polynomial in X
        a: Slope of the substitution
        b: Offset of the substitution

    Returns:
        The substituted polynomial in x
    """
    a = Fraction(a)
    shifted = poly_shift(p, b)

    scaled = []
    power = Fraction(1)
    for coeff in shifted.coefficients:
        scaled.append(coeff * power)
        power *= a
    return Polynomial(tuple(scaled))


def poly_eval(p: Polynomial, x: Scalar) -> Rational:
    """Exact Horner evaluation of p at x."""
    x = Fraction(x)
    acc = Fraction(0)
    for coeff in reversed(p.coefficients):
        acc = acc * x + coeff
    return acc


def poly_to_list(p: Polynomial) -> List[str]:
    """Ascending coefficients as 'num/den' strings (the JSON array form)."""
    return [rat_to_str(c) for c in p.coefficients]


def poly_from_list(items: Sequence[str]) -> Polynomial:
    return Polynomial(tuple(rat_parse(s) for s in items))


def poly_to_text(p: Polynomial, var: str = 'X') -> str:
    """
    Human-readable form, highest degree first (e.g. 'X^3 - 4X').

    Args:
        p: Polynomial to render
        var: Variable name

    Returns:
        The rendered string; '0' for the zero polynomial
    """
    if p.is_zero:
        return '0'

    terms = []
    for power in range(p.degree(), -1, -1):
        coeff = p.coefficients[power]
        if coeff == 0:
            continue

        sign = '-' if coeff < 0 else '+'
        magnitude = abs(coeff)
        if power == 0:
            body = rat_to_str(magnitude)
        else:
            monomial = var if power == 1 else f'{var}^{power}'
            if magnitude == 1:
                body = monomial
            elif magnitude.denominator == 1:
                body = f'{magnitude.numerator}{monomial}'
            else:
                body = f'({rat_to_str(magnitude)}){monomial}'
        terms.append((sign, body))

    first_sign, first_body = terms[0]
    text = ('-' if first_sign == '-' else '') + first_body
    for sign, body in terms[1:]:
        text += f' {sign} {body}'
    return text
