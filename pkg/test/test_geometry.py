import os
import sys
import unittest

import numpy as np
import numpy.testing as npt

sys.path.insert(1, os.path.join(os.path.dirname(__file__), '..'))
import eigenfib
from eigenfib.catalog import (ConditionError, EigenSpec, example_spec,
                              make_slr, make_spr, random_spec)
from eigenfib.fiber import (constructive_zero, correct_to_level, fiber_walk,
                            zero_test)
from eigenfib.geometry import (VerificationError, check_duality,
                               check_fiber, curvature_table, dual_identity_residual,
                               eigen_sweep, k_invariance_residual,
                               mean_curvature_estimate, regular_value_report,
                               resolve_lambda, sl3_canonical, sl3_chart)
from eigenfib.operators import QuadTraceFn
from eigenfib.spaces import (SpaceId, dual_space, random_compact_element,
                             random_point)

SPACES = [SpaceId('SLR_SO', 3), SpaceId('SLR_SO', 4), SpaceId('SPR_U', 2),
          SpaceId('SPR_U', 3), SpaceId('SOSTAR_U', 2), SpaceId('SOSTAR_U', 3),
          SpaceId('SUSTAR_SP', 2), SpaceId('SUSTAR_SP', 3)]


class Test(unittest.TestCase):

    def setUp(self):
        self.sl3 = SpaceId('SLR_SO', 3)
        self.spec = make_slr(3, [1., 1j, 0.])

    def test_slr_fit(self):
        report = eigen_sweep(make_slr(4, [1., 1j, 0., 0.]), 30, 0)
        self.assertTrue(report.passed, msg=report.failures)
        self.assertAlmostEqual(report.fitted_lambda, 9., places=6)
        self.assertAlmostEqual(report.fitted_mu, 3., places=6)
        self.assertEqual(report.resolved_lambda, 9.)

    def test_slr5_fit(self):
        report = eigen_sweep(make_slr(5, [1., 1j, 0., 0., 0.]), 50, 0)
        self.assertTrue(report.passed, msg=report.failures)
        self.assertAlmostEqual(report.fitted_lambda, 56. / 5., places=6)
        self.assertAlmostEqual(report.fitted_mu, 16. / 5., places=6)

    def test_spr_fit(self):
        a = np.array([1., 1j, 0., 0.])
        report = eigen_sweep(make_spr(2, a), 30, 0)
        self.assertTrue(report.passed, msg=report.failures)
        self.assertAlmostEqual(report.fitted_lambda, 6., places=6)
        self.assertAlmostEqual(report.fitted_mu, 2., places=6)

    def test_sustar_resolution(self):
        spec = example_spec(SpaceId('SUSTAR_SP', 2))
        for seed in range(3):
            report = eigen_sweep(spec, 20, seed)
            self.assertTrue(report.passed, msg=report.failures)
            self.assertEqual(report.resolved_lambda, 5.)

    def test_all_families(self):
        for space in SPACES:
            report = eigen_sweep(random_spec(space, 3), 20, 1)
            self.assertTrue(report.passed, msg=(space, report.failures))
            self.assertLessEqual(report.max_tau_residual, 1e-8)
            self.assertLessEqual(report.max_kappa_residual, 1e-8)

    def test_sweep_reproducible(self):
        r1 = eigen_sweep(self.spec, 10, 4).to_dict()
        r2 = eigen_sweep(self.spec, 10, 4).to_dict()
        self.assertEqual(r1, r2)
        self.assertEqual(r1['space'], 'slr-so')
        self.assertIn('untested', r1)

    def test_sweep_needs_points(self):
        with self.assertRaises(ValueError):
            eigen_sweep(self.spec, 0, 0)

    def test_resolve_lambda(self):
        spec = example_spec(SpaceId('SUSTAR_SP', 2))
        self.assertEqual(resolve_lambda(spec, 1. + 1e-9), 1.)
        with self.assertRaises(VerificationError):
            resolve_lambda(spec, 3.)

    def test_duality_slr(self):
        report = check_duality(eigen_sweep(self.spec, 20, 0))
        self.assertTrue(report.passed, msg=report.failures)
        self.assertAlmostEqual(report.dual_lambda, -20. / 3., places=6)
        self.assertAlmostEqual(report.dual_mu, -8. / 3., places=6)

    def test_duality_sostar(self):
        spec = example_spec(SpaceId('SOSTAR_U', 2))
        report = check_duality(eigen_sweep(spec, 20, 0))
        self.assertTrue(report.passed, msg=report.failures)
        self.assertAlmostEqual(report.dual_lambda, -2., places=6)
        self.assertAlmostEqual(report.dual_mu, -1., places=6)

    def test_duality_negates(self):
        for space in SPACES:
            report = check_duality(eigen_sweep(random_spec(space, 5), 15, 2))
            self.assertTrue(report.passed, msg=(space, report.failures))
            self.assertAlmostEqual(report.dual_lambda,
                                   -report.resolved_lambda, places=5)
            self.assertAlmostEqual(report.dual_mu,
                                   -report.spec.expected_mu, places=5)

    def test_dual_identity(self):
        for space in SPACES:
            spec = random_spec(space, 1)
            z = random_point(dual_space(space), 6).matrix
            self.assertLess(dual_identity_residual(spec, z), 1e-10)

    def test_k_invariance(self):
        for space in SPACES:
            spec = random_spec(space, 2)
            x = random_point(space, 8)
            self.assertLess(k_invariance_residual(spec, x, 3), 1e-10)

    def test_regular_values(self):
        start = constructive_zero(self.spec)
        samples = [start] + fiber_walk(self.spec, start, 20, 0.05, 0)
        report = regular_value_report(self.spec, samples)
        self.assertTrue(report.passed)
        self.assertEqual(report.regular, 21)
        self.assertGreater(report.min_margin, 0.)

    def test_regular_values_rejects(self):
        with self.assertRaises(ValueError):
            regular_value_report(self.spec, [])
        degenerate = EigenSpec(self.sl3, QuadTraceFn(np.zeros((3, 3)),
                                                     np.eye(3)),
                               np.zeros(3), None, (0.,), 0., {}, [], [])
        start = constructive_zero(self.spec)
        with self.assertRaises(ConditionError):
            regular_value_report(degenerate, [start])

    def test_mean_curvature_minimal(self):
        start = constructive_zero(self.spec)
        self.assertLessEqual(
            mean_curvature_estimate(self.spec, start, 1e-3), 5e-3)
        samples = fiber_walk(self.spec, start, 3, 0.1, 2)
        for fp in samples:
            self.assertLessEqual(
                mean_curvature_estimate(self.spec, fp, 1e-3), 5e-3)

    def test_mean_curvature_other_families(self):
        for space in [SpaceId('SPR_U', 2), SpaceId('SUSTAR_SP', 2)]:
            spec = random_spec(space, 4)
            start = constructive_zero(spec)
            self.assertLessEqual(
                mean_curvature_estimate(spec, start, 1e-3), 5e-3)

    def test_curvature_decreasing(self):
        start = constructive_zero(self.spec)
        table = curvature_table(self.spec, [start], [1e-2, 5e-3, 2.5e-3])
        self.assertTrue(table['decreasing'])
        self.assertEqual(table['failures'], [])
        self.assertEqual([row['h'] for row in table['rows']],
                         [1e-2, 5e-3, 2.5e-3])

    def test_curvature_table_walked(self):
        start = constructive_zero(self.spec)
        points = [start] + fiber_walk(self.spec, start, 5, 0.1, 2)
        hs = [1e-3, 5e-4, 2.5e-4]
        table = curvature_table(self.spec, points, hs)
        self.assertEqual(table['failures'], [])
        self.assertTrue(table['decreasing'], msg=table['rows'])
        for row in table['rows']:
            self.assertLessEqual(row['max'], 5e-3)

    def test_curvature_near_level(self):
        # A point a little off the level set must not bias the estimate
        start = constructive_zero(self.spec)
        fp = fiber_walk(self.spec, start, 1, 0.1, 5)[0]
        x = correct_to_level(self.spec, fp.matrix, level=5e-9, tol=1e-13)
        for h in (1e-3, 2.5e-4):
            self.assertLessEqual(
                mean_curvature_estimate(self.spec, x, h), 5e-3)

    def test_mean_curvature_walked_families(self):
        for space in [SpaceId('SOSTAR_U', 3), SpaceId('SPR_U', 2),
                      SpaceId('SUSTAR_SP', 2)]:
            spec = random_spec(space, 4)
            start = constructive_zero(spec)
            for fp in fiber_walk(spec, start, 5, 0.05, 1):
                self.assertLessEqual(
                    mean_curvature_estimate(spec, fp, 1e-3), 5e-3,
                    msg=str(space))

    def test_check_fiber(self):
        report = check_fiber(eigen_sweep(self.spec, 10, 0), 4, 0.05, 1e-3)
        self.assertTrue(report.passed, msg=report.failures)
        self.assertEqual(report.regular_count, 4)
        self.assertEqual(len(report.mean_curvature), 4)
        unmet = check_fiber(eigen_sweep(make_slr(3, [1., 0., 0.]), 10, 0),
                            4, 0.05, 1e-3)
        self.assertIsNone(unmet.regular_count)
        self.assertEqual(unmet.mean_curvature, [])

    def test_curvature_off_zero_level(self):
        start = constructive_zero(self.spec)
        x = correct_to_level(self.spec, start.matrix, level=0.5)
        self.assertGreater(
            mean_curvature_estimate(self.spec, x, 1e-3, level=0.5), 5e-2)
        table = curvature_table(self.spec, [start], [1e-3], level=0.5)
        self.assertGreater(table['rows'][0]['max'], 5e-2)

    def test_curvature_bad_step(self):
        start = constructive_zero(self.spec)
        with self.assertRaises(ValueError):
            mean_curvature_estimate(self.spec, start, 0.)
        with self.assertRaises(ValueError):
            mean_curvature_estimate(self.spec, start, -1e-3)

    def test_chart(self):
        npt.assert_array_equal(sl3_chart(1., 0., 0.).matrix, np.eye(3))
        x = sl3_chart(2., 1., 1.)
        self.assertAlmostEqual(np.linalg.det(x.matrix).real, 1., places=14)
        self.assertLessEqual(abs(zero_test(self.spec, x.matrix)), 1e-14)
        with self.assertRaises(ValueError):
            sl3_chart(0., 1., 1.)

    def test_chart_round_trip(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            u = rng.uniform(0.2, 3.)
            v, w = rng.normal(size=2)
            got = sl3_canonical(sl3_chart(u, v, w))
            npt.assert_allclose(got, (u, v, w), rtol=1e-10, atol=1e-10)

    def test_chart_so3_invariance(self):
        rng = np.random.default_rng(2)
        for seed in range(20):
            u = rng.uniform(0.5, 2.)
            v, w = rng.normal(size=2)
            k = random_compact_element(self.sl3, seed)
            x = sl3_chart(u, v, w).matrix @ k
            npt.assert_allclose(sl3_canonical(x), (u, v, w),
                                rtol=1e-10, atol=1e-10)

    def test_package_verify(self):
        report = eigenfib.verify('slr-so:3', [1., 1j, 0.], points=5)
        self.assertTrue(report.passed, msg=report.failures)
        self.assertAlmostEqual(report.dual_mu, -8. / 3., places=6)

    def test_canonical_off_fibre(self):
        with self.assertRaises(ValueError):
            sl3_canonical(np.diag([2., 0.5, 1.]))


if __name__ == '__main__':
    unittest.main()
