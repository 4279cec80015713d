import os
import sys
import unittest
from unittest import mock

import numpy as np
import numpy.testing as npt

sys.path.insert(1, os.path.join(os.path.dirname(__file__), '..'))
from eigenfib.catalog import (ConditionError, EigenSpec, example_spec,
                              make_slr, make_spr, random_spec)
import eigenfib.fiber
from eigenfib.fiber import (ConvergenceError, certify, constructive_zero,
                            correct_to_level, example_conditions, fiber_walk,
                            is_regular, normal_frame, numeric_zero,
                            numeric_zero_trials, spr_zero_matrix,
                            symmetric_mapping, zero_test)
from eigenfib.matrix import bilinear
from eigenfib.operators import QuadTraceFn, evaluate
from eigenfib.spaces import SpaceId, membership_residual, random_point

SPACES = [SpaceId('SLR_SO', 3), SpaceId('SPR_U', 2), SpaceId('SOSTAR_U', 3),
          SpaceId('SUSTAR_SP', 2)]


class Test(unittest.TestCase):

    def setUp(self):
        self.sl3 = SpaceId('SLR_SO', 3)
        self.spec = make_slr(3, [1., 1j, 0.])

    def test_zero_test_sign(self):
        for space in SPACES:
            spec = random_spec(space, 1)
            for seed in range(25):
                x = random_point(space, seed).matrix
                phi = evaluate(spec.fn, x)
                self.assertLess(
                    abs(zero_test(spec, x) - spec.fn.sign * phi),
                    1e-12 * (1. + abs(phi)))

    def test_zero_test_identity(self):
        self.assertEqual(zero_test(self.spec, np.eye(3)), 0.)
        for space in SPACES[2:]:
            spec = example_spec(space)
            m = space.ambient_size
            self.assertEqual(zero_test(spec, np.eye(m)), 0.)

    def test_symmetric_mapping(self):
        e1, e2 = np.array([1., 0.]), np.array([0., 1.])
        npt.assert_array_equal(symmetric_mapping(e1, np.zeros(2)),
                               np.zeros((2, 2)))
        npt.assert_allclose(symmetric_mapping(e1, -e1), -np.eye(2))
        npt.assert_allclose(symmetric_mapping(e1, e2), [[0., 1.], [1., 0.]],
                            atol=1e-15)
        with self.assertRaises(ValueError):
            symmetric_mapping(np.zeros(2), e1)

    def test_symmetric_mapping_random(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            u, v = rng.normal(size=4), rng.normal(size=4)
            s = symmetric_mapping(u, v)
            npt.assert_allclose(s, s.T, atol=1e-14)
            npt.assert_allclose(s @ u, v, atol=1e-12)

    def test_slr_constructive_example(self):
        fp = constructive_zero(self.spec)
        npt.assert_allclose(fp.matrix, np.eye(3), atol=1e-14)
        self.assertLessEqual(fp.phi_abs, 1e-10)

    def test_slr_constructive_random(self):
        for seed in range(10):
            spec = random_spec(self.sl3, seed)
            fp = constructive_zero(spec)
            image = fp.matrix.T @ spec.a
            npt.assert_allclose(image, [1., 1j, 0.], atol=1e-10)
            self.assertLessEqual(abs(bilinear(image, image)), 1e-12)
            self.assertLessEqual(fp.point.membership_residual, 1e-9)

    def test_constructive_needs_conditions(self):
        with self.assertRaises(ConditionError):
            constructive_zero(make_slr(3, [1., 0., 0.]))

    def test_spr_constructive_example(self):
        spec = example_spec(SpaceId('SPR_U', 2))
        fp = constructive_zero(spec)
        npt.assert_allclose(fp.matrix, np.eye(4), atol=1e-14)

    def test_spr_branches(self):
        rng = np.random.default_rng(5)
        branches = set()
        for _ in range(10):
            a = rng.normal(size=6) + 1j * rng.normal(size=6)
            x, branch = spr_zero_matrix(a)
            branches.add(branch)
            b, c = x.T @ np.real(a), x.T @ np.imag(a)
            self.assertLess(abs(np.linalg.norm(b) - np.linalg.norm(c)),
                            1e-10 * np.linalg.norm(b))
            self.assertLess(abs(b @ c), 1e-10 * np.linalg.norm(b) ** 2)
            self.assertLessEqual(membership_residual(SpaceId('SPR_U', 3), x),
                                 1e-9)
        self.assertIn('c3 != 0', branches)

    def test_spr_first_block_zero(self):
        a = np.array([0., 0., 1., 0.]) + 1j * np.array([1., 2., 0., 1.])
        fp = constructive_zero(make_spr(2, a))
        self.assertLessEqual(fp.phi_abs, 1e-10)

    def test_constructive_identity(self):
        for space in SPACES[2:]:
            spec = example_spec(space)
            fp = constructive_zero(spec)
            npt.assert_array_equal(fp.matrix, np.eye(space.ambient_size))

    def test_constructive_all_families(self):
        for space in SPACES + [SpaceId('SOSTAR_U', 2),
                               SpaceId('SUSTAR_SP', 3)]:
            for seed in range(3):
                spec = random_spec(space, seed)
                fp = constructive_zero(spec)
                self.assertLessEqual(fp.phi_abs, 1e-10)
                self.assertLessEqual(fp.point.membership_residual, 1e-9)
                self.assertGreater(fp.regularity_margin, 0.)

    def test_is_regular_degenerate(self):
        zero = np.zeros((3, 3))
        spec = EigenSpec(self.sl3, QuadTraceFn(zero, np.eye(3)),
                         np.zeros(3), None, (0.,), 0., {}, [], [])
        self.assertEqual(is_regular(spec, np.eye(3)), (False, 0.))

    def test_normal_frame(self):
        tangent, normal, cond = normal_frame(self.spec, np.eye(3))
        self.assertEqual(tangent.shape, (3, 5))
        self.assertEqual(normal.shape, (2, 5))
        frame = np.vstack([tangent, normal])
        npt.assert_allclose(frame @ frame.T, np.eye(5), atol=1e-12)
        # Horizontally conformal on the fibre
        self.assertLess(cond, 1. + 1e-8)

    def test_correct_to_level(self):
        x = random_point(self.sl3, 3, scale=0.1).matrix
        y = correct_to_level(self.spec, x)
        self.assertLessEqual(abs(evaluate(self.spec.fn, y)), 1e-10)
        y = correct_to_level(self.spec, x, level=0.2)
        self.assertLessEqual(abs(evaluate(self.spec.fn, y) - 0.2), 1e-10)

    def test_certify_rejects_off_fibre(self):
        x = np.diag([2., 0.5, 1.])
        with self.assertRaises(ConvergenceError):
            certify(self.spec, x)

    def test_numeric_zero(self):
        for seed in range(3):
            spec = random_spec(self.sl3, seed)
            fp = numeric_zero(spec, seed)
            self.assertLessEqual(fp.phi_abs, 1e-10)
            self.assertTrue(is_regular(spec, fp.matrix)[0])

    def test_numeric_zero_real_parameter(self):
        spec = make_slr(3, [1., 0., 0.])
        with self.assertRaises(ConvergenceError):
            numeric_zero(spec, 0)
        successes, failures = numeric_zero_trials(spec, range(3))
        self.assertEqual(successes, [])
        self.assertEqual(failures, [0, 1, 2])

    def test_walk(self):
        start = constructive_zero(self.spec)
        samples = fiber_walk(self.spec, start, 100, 0.05, 7)
        self.assertEqual(len(samples), 100)
        for fp in samples:
            self.assertLessEqual(fp.phi_abs, 1e-10)
            self.assertLessEqual(fp.point.membership_residual, 1e-9)
            regular, margin = is_regular(self.spec, fp.matrix)
            self.assertTrue(regular)
        # The walk moves
        self.assertGreater(np.linalg.norm(samples[-1].matrix - np.eye(3)),
                           1e-3)

    def test_walk_reproducible(self):
        start = constructive_zero(self.spec)
        w1 = fiber_walk(self.spec, start, 5, 0.1, 3)
        w2 = fiber_walk(self.spec, start, 5, 0.1, 3)
        for p, q in zip(w1, w2):
            npt.assert_array_equal(p.matrix, q.matrix)

    def test_walk_zero_step(self):
        start = constructive_zero(self.spec)
        for fp in fiber_walk(self.spec, start, 5, 0., 1):
            npt.assert_array_equal(fp.matrix, start.matrix)

    def test_walk_rejected_step_warns(self):
        start = constructive_zero(self.spec)
        real = eigenfib.fiber.correct_to_level
        calls = []

        def flaky(*args, **kwargs):
            calls.append(args)
            if len(calls) == 1:
                raise ConvergenceError('Newton diverged')
            return real(*args, **kwargs)

        with mock.patch('eigenfib.fiber.correct_to_level', flaky):
            with self.assertLogs('eigenfib.fiber', 'WARNING') as logs:
                samples = fiber_walk(self.spec, start, 2, 0.1, 3)
        self.assertEqual(len(samples), 2)
        self.assertEqual(len(calls), 3)
        self.assertTrue(any('Step 0 rejected' in line
                            for line in logs.output))
        for fp in samples:
            self.assertLessEqual(fp.phi_abs, 1e-10)

    def test_walk_all_families(self):
        for space in SPACES + [SpaceId('SUSTAR_SP', 3)]:
            spec = random_spec(space, 2)
            start = constructive_zero(spec)
            samples = fiber_walk(spec, start, 100, 0.05, 1)
            self.assertEqual(len(samples), 100)
            margins = [is_regular(spec, fp.matrix) for fp in samples]
            self.assertTrue(all(ok for ok, _ in margins), msg=str(space))

    def test_spr_example_rows(self):
        spec = example_spec(SpaceId('SPR_U', 2))
        start = constructive_zero(spec)
        for fp in [start] + fiber_walk(spec, start, 30, 0.1, 4):
            for value in example_conditions(spec, fp.matrix).values():
                self.assertLess(abs(value), 1e-8)

    def test_sostar_example_rows(self):
        spec = example_spec(SpaceId('SOSTAR_U', 3))
        start = constructive_zero(spec)
        for fp in [start] + fiber_walk(spec, start, 30, 0.1, 4):
            conds = example_conditions(spec, fp.matrix)
            self.assertLess(abs(conds['<z_4, z_6> + i <z_5, z_6>']), 1e-8)
            phi = evaluate(spec.fn, fp.matrix)
            self.assertLess(abs(conds['<z_4, z_6> + i <z_5, z_6>'] + phi),
                            1e-12)

    def test_sustar_example_rows(self):
        spec = example_spec(SpaceId('SUSTAR_SP', 2))
        start = constructive_zero(spec)
        for fp in [start] + fiber_walk(spec, start, 30, 0.1, 4):
            conds = example_conditions(spec, fp.matrix)
            self.assertLess(abs(conds['<z_1, z_3>']), 1e-8)
            self.assertLess(abs(conds['<z_2, z_3>']), 1e-8)

    def test_sostar_discrete_fibre(self):
        spec = example_spec(SpaceId('SOSTAR_U', 2))
        start = constructive_zero(spec)
        samples = fiber_walk(spec, start, 3, 0.1, 0)
        for fp in samples:
            npt.assert_array_equal(fp.matrix, start.matrix)


if __name__ == '__main__':
    unittest.main()
