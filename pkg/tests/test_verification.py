"""
Test suite for the verification suite and the mutation harness
"""

from fractions import Fraction

import pytest

from backend.errors import StructureError
from backend.matrices import biogeography_matrix, sylvester_kac
from backend.verification import (
    CHECKS, FAIL, PASS, SKIPPED, corrupt_super, mutated, run_check, run_verification,
)


class TestRunVerification:
    """Test the invariant suite on correct builds"""

    def test_acceptance_range_passes(self):
        result = run_verification(list(range(1, 13)))
        assert result.passed, result.failures
        assert result.failures == []

    def test_smallest_instance(self):
        result = run_verification([1])
        assert result.passed
        assert len(result.records) == len(CHECKS)

    def test_summary_layout(self):
        result = run_verification([1, 2, 3])
        assert list(result.summary.columns) == ['check', PASS, FAIL, SKIPPED]
        assert list(result.summary['check']) == list(CHECKS)
        assert (result.summary[PASS] + result.summary[FAIL] + result.summary[SKIPPED] == 3).all()

    def test_leibniz_skipped_above_guard(self):
        result = run_verification([8], checks=['leibniz_oracle', 'column_sums'])
        statuses = dict(zip(result.records['check'], result.records['status']))
        assert statuses == {'leibniz_oracle': SKIPPED, 'column_sums': PASS}
        assert result.passed

    def test_charpoly_checks_skipped_above_guard(self):
        result = run_verification([65], checks=['charpoly_routes', 'affine_identity', 'column_sums'])
        assert list(result.records['status']) == [SKIPPED, SKIPPED, PASS]

    def test_records_in_sequential_order(self):
        result = run_verification([2, 3], checks=['column_sums', 'sign_flip'])
        assert list(zip(result.records['n'], result.records['check'])) == [
            (2, 'column_sums'), (2, 'sign_flip'), (3, 'column_sums'), (3, 'sign_flip'),
        ]

    def test_process_pool_matches_sequential(self):
        checks = ['column_sums', 'stationary_vector', 'bisection_agreement']
        sequential = run_verification([1, 2, 3, 4], jobs=1, checks=checks)
        parallel = run_verification([1, 2, 3, 4], jobs=2, checks=checks)
        assert sequential.records.equals(parallel.records)
        assert sequential.summary.equals(parallel.summary)


class TestMutationHarness:
    """Test that a corrupted build is caught"""

    def test_corrupt_super_flips_one_entry(self):
        K = sylvester_kac(3)
        corrupted = corrupt_super(K, 2)
        assert corrupted.super == (Fraction(1), Fraction(-2), Fraction(3))
        assert corrupted.sub == K.sub
        assert corrupted.diag == K.diag

    def test_corrupt_super_clamps_index(self):
        assert corrupt_super(sylvester_kac(2), 10).super == (Fraction(1), Fraction(-2))

    def test_corrupt_super_rejects_bad_index(self):
        with pytest.raises(StructureError):
            corrupt_super(sylvester_kac(2), 0)

    def test_mutated_build_fails(self):
        result = run_verification(
            [2, 3, 4],
            kac_builder=mutated(sylvester_kac, 1),
            bio_builder=mutated(biogeography_matrix, 1),
        )
        assert not result.passed
        failed_checks = {check for _, check in result.failures}
        assert {'column_sums', 'eigenvector_certificates', 'bisection_agreement'} <= failed_checks

    def test_toolkit_errors_count_as_failures(self):
        # a flipped super entry makes the product negative, so symmetrization raises
        status = run_check(3, 'bisection_agreement', bio_builder=mutated(biogeography_matrix, 1))
        assert status == FAIL

    def test_unmutated_check_passes(self):
        assert run_check(3, 'eigenvector_certificates') == PASS
