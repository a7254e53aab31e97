"""
Test suite for spectra and eigenvectors

Tests the closed-form spectra, exact eigenvector certificates, the
stationary vector, symmetrization and the Sturm bisection oracle.
"""

import json
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from backend.charpoly import biogeography_charpoly, sylvester_charpoly_product
from backend.errors import DomainError, StructureError, SymmetrizationError
from backend.exact_numeric import poly_eval
from backend.matrices import TridiagonalMatrix, biogeography_matrix, matvec, sylvester_kac
from backend.spectra import (
    Spectrum, SpectrumSource, biogeography_eigenvalues, bisection_eigenvalues,
    closed_form_numerators, closed_form_spectrum, eigenpair_to_dict, exact_eigenvector,
    null_vector, spectrum_from_dict, spectrum_to_dict, stationary_vector, sturm_count,
    sylvester_eigenvalues, symmetrize, value_strings,
)
from utils.formatting import to_json


def F(*values):
    return tuple(Fraction(v) for v in values)


class TestClosedForms:
    """Test the closed-form spectra of K and A_{n+1}"""

    def test_sylvester_known_values(self):
        assert sylvester_eigenvalues(1).values == F(-1, 1)
        assert sylvester_eigenvalues(2).values == F(-2, 0, 2)
        assert sylvester_eigenvalues(4).values == F(-4, -2, 0, 2, 4)

    def test_biogeography_known_values(self):
        assert biogeography_eigenvalues(1).values == F(-2, 0)
        assert biogeography_eigenvalues(2).values == F(-2, -1, 0)
        assert biogeography_eigenvalues(4).values == (
            Fraction(-2), Fraction(-3, 2), Fraction(-1), Fraction(-1, 2), Fraction(0)
        )

    def test_source_and_length(self):
        spectrum = biogeography_eigenvalues(7)
        assert spectrum.source is SpectrumSource.CLOSED_FORM
        assert len(spectrum.values) == 8
        assert spectrum.n == 7

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            sylvester_eigenvalues(0)
        with pytest.raises(DomainError):
            biogeography_eigenvalues(-3)

    def test_dispatch(self):
        assert closed_form_spectrum('kac', 3) == sylvester_eigenvalues(3)
        assert closed_form_spectrum('bio', 3) == biogeography_eigenvalues(3)
        with pytest.raises(DomainError):
            closed_form_spectrum('dense', 3)

    def test_numerators(self):
        numerators, denominator = closed_form_numerators(4, 'bio')
        assert denominator == 4
        assert numerators.tolist() == [-8, -6, -4, -2, 0]
        assert numerators.dtype == np.int64

    @pytest.mark.parametrize('n', range(1, 201))
    def test_trace_and_spacing(self, n):
        values = biogeography_eigenvalues(n).values
        assert sum(values) == -(n + 1)
        assert values[0] == -2 and values[-1] == 0
        assert all(b - a == Fraction(2, n) for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize('n', range(1, 51))
    def test_sylvester_symmetry_and_roots(self, n):
        values = sylvester_eigenvalues(n).values
        assert sum(values) == 0
        assert list(values) == [-v for v in reversed(values)]
        product = sylvester_charpoly_product(n)
        assert all(poly_eval(product, -lam) == 0 for lam in values)

    @pytest.mark.parametrize('n', [1, 2, 9, 30])
    def test_biogeography_roots(self, n):
        charpoly = biogeography_charpoly(n)
        assert all(poly_eval(charpoly, lam) == 0 for lam in biogeography_eigenvalues(n).values)

    def test_spectrum_rejects_bad_shapes(self):
        with pytest.raises(StructureError):
            Spectrum(source=SpectrumSource.CLOSED_FORM, n=2, values=F(0, 1))
        with pytest.raises(StructureError):
            Spectrum(source=SpectrumSource.CLOSED_FORM, n=1, values=F(1, 0))
        with pytest.raises(StructureError):
            Spectrum(source=SpectrumSource.CLOSED_FORM, n=1)

    def test_numerator_form_rejects_bad_shapes(self):
        with pytest.raises(StructureError):
            Spectrum(source=SpectrumSource.CLOSED_FORM, n=2, numerators=np.array([0, 2], dtype=np.int64))
        with pytest.raises(StructureError):
            Spectrum(source=SpectrumSource.CLOSED_FORM, n=2, numerators=np.array([0, 2, 2], dtype=np.int64))
        with pytest.raises(StructureError):
            Spectrum(source=SpectrumSource.CLOSED_FORM, n=1, numerators=np.array([0, 2], dtype=np.int64),
                     denominator=0)

    def test_values_built_on_first_read(self):
        spectrum = biogeography_eigenvalues(4)
        assert spectrum._values is None
        assert spectrum.total() == -5
        assert spectrum._values is None
        assert spectrum.values[1] == Fraction(-3, 2)
        assert spectrum._values is not None

    def test_numerator_form_equals_value_form(self):
        lazy = biogeography_eigenvalues(3)
        eager = Spectrum(source=SpectrumSource.CLOSED_FORM, n=3, values=lazy.values)
        assert lazy == eager
        assert eager.total() == lazy.total() == -4
        assert len(lazy) == 4

    def test_large_order_stays_cheap(self):
        n = 10 ** 6
        start = time.perf_counter()
        spectrum = closed_form_spectrum('bio', n)
        total = spectrum.total()
        assert time.perf_counter() - start < 1.0
        assert total == -(n + 1)
        assert len(spectrum) == n + 1


class TestEigenvectors:
    """Test exact eigenvector certificates"""

    def test_kac_order_two(self):
        pair = exact_eigenvector(sylvester_kac(1), 1)
        assert pair.vector == F(1, 1)
        assert pair.residual_is_zero

    def test_biogeography_null_direction(self):
        pair = exact_eigenvector(biogeography_matrix(2), 0)
        assert pair.vector == F(1, 2, 1)
        assert pair.residual_is_zero

    def test_non_eigenvalue_reports_false(self):
        pair = exact_eigenvector(biogeography_matrix(2), Fraction(1, 3))
        assert not pair.residual_is_zero
        assert pair.vector[0] == 1

    def test_zero_super_entry(self):
        M = TridiagonalMatrix(order=2, diag=F(0, 0), super=F(0), sub=F(1))
        with pytest.raises(StructureError):
            exact_eigenvector(M, 0)

    @pytest.mark.parametrize('n', range(1, 51))
    def test_certificates_for_every_eigenvalue(self, n):
        A = biogeography_matrix(n)
        for lam in biogeography_eigenvalues(n).values:
            pair = exact_eigenvector(A, lam)
            assert pair.residual_is_zero, f'lambda={lam} n={n}'
            assert matvec(A, pair.vector) == [lam * v for v in pair.vector]

    @pytest.mark.parametrize('n', [1, 4, 11])
    def test_kac_certificates(self, n):
        K = sylvester_kac(n)
        assert all(exact_eigenvector(K, lam).residual_is_zero for lam in sylvester_eigenvalues(n).values)

    def test_eigenpair_dict(self):
        data = eigenpair_to_dict(exact_eigenvector(biogeography_matrix(2), -1))
        assert data['value'] == '-1'
        assert data['vector'][0] == '1'
        assert data['residual_is_zero'] is True


class TestStationaryVector:
    """Test the exact null vector of A_{n+1}"""

    def test_n_two(self):
        assert stationary_vector(2) == [Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)]

    def test_n_one(self):
        assert stationary_vector(1) == [Fraction(1, 2), Fraction(1, 2)]

    @pytest.mark.parametrize('n', range(1, 51))
    def test_positive_normalized_and_null(self, n):
        vector = stationary_vector(n)
        assert all(v > 0 for v in vector)
        assert sum(vector) == 1
        assert all(x == 0 for x in matvec(biogeography_matrix(n), vector))

    def test_null_vector_last_entry(self):
        assert null_vector(biogeography_matrix(2)) == [1, 2, 1]

    def test_nonsingular_matrix(self):
        M = TridiagonalMatrix(order=2, diag=F(2, 2), super=F(1), sub=F(1))
        with pytest.raises(StructureError, match='nonsingular'):
            null_vector(M)

    def test_zero_leading_pivot(self):
        M = TridiagonalMatrix(order=2, diag=F(0, 0), super=F(1), sub=F(0))
        with pytest.raises(StructureError):
            null_vector(M)


class TestSymmetrize:
    """Test the diagonal similarity to a symmetric matrix"""

    def test_kac_order_three(self):
        S = symmetrize(sylvester_kac(2))
        assert S.super == S.sub
        assert S.super == pytest.approx((math.sqrt(2), math.sqrt(2)))
        assert S.diag == (0.0, 0.0, 0.0)

    def test_kac_order_two(self):
        assert symmetrize(sylvester_kac(1)).super == (1.0,)

    def test_biogeography(self):
        S = symmetrize(biogeography_matrix(2))
        assert S.diag == (-1.0, -1.0, -1.0)
        assert S.super == pytest.approx((math.sqrt(0.5), math.sqrt(0.5)))

    def test_nonpositive_product(self):
        M = TridiagonalMatrix(order=2, diag=F(0, 0), super=F(1), sub=F(-1))
        with pytest.raises(SymmetrizationError):
            symmetrize(M)

    def test_symmetrization_error_is_structural(self):
        assert issubclass(SymmetrizationError, StructureError)


class TestBisection:
    """Test the Sturm-count bisection oracle"""

    def test_sturm_count(self):
        diag = np.zeros(3)
        off = np.full(2, math.sqrt(2))
        counts = sturm_count(diag, off, np.array([-3.0, -1.0, 1.0, 3.0]))
        assert counts.tolist() == [0, 1, 2, 3]

    def test_small_orders(self):
        assert bisection_eigenvalues(sylvester_kac(2), 1e-12).values == pytest.approx((-2, 0, 2), abs=1e-10)
        assert bisection_eigenvalues(sylvester_kac(1), 1e-12).values == pytest.approx((-1, 1), abs=1e-10)
        assert bisection_eigenvalues(biogeography_matrix(4), 1e-12).values == pytest.approx(
            (-2, -1.5, -1, -0.5, 0), abs=1e-10
        )

    def test_source(self):
        spectrum = bisection_eigenvalues(biogeography_matrix(3), 1e-12)
        assert spectrum.source is SpectrumSource.BISECTION
        assert spectrum.n == 3
        assert all(isinstance(v, float) for v in spectrum.values)

    def test_bisection_ties_allowed(self):
        # a coarse tol can leave neighbouring brackets on the same midpoint
        spectrum = Spectrum(source=SpectrumSource.BISECTION, n=2, values=(-1.0, -1.0, 0.5))
        assert spectrum.values == (-1.0, -1.0, 0.5)

    def test_bisection_must_not_decrease(self):
        with pytest.raises(StructureError, match='nondecreasing'):
            Spectrum(source=SpectrumSource.BISECTION, n=2, values=(0.0, -1.0, 1.0))

    def test_coarse_tol_is_still_ordered(self):
        values = bisection_eigenvalues(sylvester_kac(6), 10.0).values
        assert len(values) == 7
        assert all(a <= b for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize('tol', [0.0, -1e-12])
    def test_rejects_nonpositive_tol(self, tol):
        with pytest.raises(DomainError):
            bisection_eigenvalues(sylvester_kac(2), tol)

    def test_propagates_symmetrization_failure(self):
        M = TridiagonalMatrix(order=2, diag=F(0, 0), super=F(1), sub=F(-1))
        with pytest.raises(SymmetrizationError):
            bisection_eigenvalues(M, 1e-12)

    @pytest.mark.parametrize('n', range(1, 201))
    def test_agrees_with_closed_forms(self, n):
        for M, exact in ((biogeography_matrix(n), biogeography_eigenvalues(n)),
                         (sylvester_kac(n), sylvester_eigenvalues(n))):
            numeric = bisection_eigenvalues(M, 1e-12).values
            error = max(abs(float(e) - v) for e, v in zip(exact.values, numeric))
            assert error <= 1e-10, f'n={n} order={M.order} error={error:.3e}'


class TestSpectrumSerialization:
    """Test the JSON form of a spectrum"""

    def test_closed_form_dict(self):
        data = spectrum_to_dict(biogeography_eigenvalues(4))
        assert data == {'n': 4, 'source': 'closed_form', 'values': ['-2', '-3/2', '-1', '-1/2', '0']}
        assert spectrum_from_dict(data) == biogeography_eigenvalues(4)

    def test_bisection_dict_uses_numbers(self):
        data = spectrum_to_dict(bisection_eigenvalues(sylvester_kac(2), 1e-12))
        assert data['source'] == 'bisection'
        assert all(isinstance(v, float) for v in data['values'])

    @pytest.mark.parametrize('spectrum', [
        biogeography_eigenvalues(6),
        sylvester_eigenvalues(3),
        bisection_eigenvalues(biogeography_matrix(5), 1e-12),
    ])
    def test_json_is_byte_stable(self, spectrum):
        text = to_json(spectrum_to_dict(spectrum))
        assert to_json(spectrum_to_dict(spectrum_from_dict(json.loads(text)))) == text

    def test_value_strings(self):
        assert value_strings(biogeography_eigenvalues(2).values) == ['-2', '-1', '0']
        assert value_strings([0.5]) == ['0.5']
