import unittest

import numpy as np

from uq2lab.models.qparam import QParam
from uq2lab.services import fixedpt
from uq2lab.utils.errors import LevelNotDetectedError, PreconditionError

M_MAX = 40


class TestFixedPoints(unittest.TestCase):
    """bb* 不动点与 E₁ 基测试类"""

    def setUp(self):
        """测试前准备"""
        self.qp = QParam(0.5, 0.3)

    def test_closed_form(self):
        """测试闭式系数与其递推残差"""
        q = self.qp.abs_q
        self.assertEqual(fixedpt.closed_form_c(self.qp, 0), 1.0)
        self.assertAlmostEqual(fixedpt.closed_form_c(self.qp, 1), -q * np.sqrt((1 - q ** 6) / (1 - q ** 2)), places=15)
        self.assertGreater(fixedpt.closed_form_c(self.qp, 2), 0)
        with self.assertRaises(ValueError):
            fixedpt.closed_form_c(self.qp, -1)
        for name, value in fixedpt.closed_form_residuals(self.qp).items():
            self.assertLess(value, 1e-11, msg=name)
        for name, value in fixedpt.upsilon_residuals(self.qp).items():
            self.assertLess(value, 1e-12, msg=name)

    def test_recurrence_classification(self):
        """测试 λ = 1 可和，λ = 1/|q|² 与一般 λ 不可和"""
        solved = fixedpt.solve_recurrence(self.qp, 1.0, 0, 0, M_MAX)
        self.assertTrue(solved.summable)
        closed = np.array([fixedpt.closed_form_c(self.qp, m) for m in range(M_MAX + 1)])
        closed /= np.linalg.norm(closed)
        self.assertLess(np.abs(np.abs(solved.vector.coefficients) - np.abs(closed)).max(), 1e-12)

        for lam in (1.0 / self.qp.t, 0.5 / (1.0 + self.qp.t)):
            result = fixedpt.solve_recurrence(self.qp, lam, 0, 0, M_MAX)
            self.assertFalse(result.summable)
            self.assertIsNone(result.vector)

        with self.assertRaises(PreconditionError):
            fixedpt.solve_recurrence(self.qp, 1.0, 0, 0, 4)

    def test_zero_seed_law(self):
        """测试 c₀ = 0 时递推恒为零"""
        self.assertEqual(fixedpt.zero_seed_law(self.qp, (1.0, self.qp.t, 0.3)), 0.0)

    def test_omega_detect(self):
        """测试 Ω 检测：层 0 本征值为 1"""
        omega = fixedpt.omega_detect(self.qp, 2, M_MAX)
        self.assertIn(0, omega.levels)
        self.assertAlmostEqual(omega.eigenvalues[0], 1.0, delta=1e-6)
        self.assertEqual(len(omega.spectrum), M_MAX + 1)
        self.assertAlmostEqual(fixedpt.top_eigenvalue(self.qp, M_MAX), 1.0, delta=1e-6)
        with self.assertRaises(ValueError):
            fixedpt.omega_detect(self.qp, 0, M_MAX)

    def test_e1_vectors(self):
        """测试 E₁ 向量的本征残差、正交性与 k 无关性"""
        levels = (0,)
        vectors = [fixedpt.e1_vector(self.qp, i2, -i2, k, M_MAX, levels) for i2 in (-1, 0, 1) for k in (0, 1)]
        for vec in vectors:
            self.assertLess(vec.residual, 1e-8)
            self.assertAlmostEqual(float(np.linalg.norm(vec.coefficients)), 1.0, places=12)
        self.assertLess(fixedpt.gram_deviation(vectors), 1e-8)
        self.assertLess(fixedpt.k_independence(self.qp, 0, 0, (-1, 0, 1), M_MAX, levels), 1e-10)
        self.assertEqual(fixedpt.decay_bound_excess(self.qp, vectors[2]), 0.0)

    def test_e1_level_not_detected(self):
        """测试未检出的层抛出 LevelNotDetectedError"""
        with self.assertRaises(LevelNotDetectedError):
            fixedpt.e1_vector(self.qp, 2, 4, 0, M_MAX, levels=(0,))

    def test_e1_actions(self):
        """测试 b, b*, D 在层 0 上的作用"""
        worst = fixedpt.verify_e1_actions(self.qp, 0, range(-1, 2), range(-1, 2), M_MAX, levels=(0,))
        self.assertLess(worst['b_overlap'], 1e-7)
        self.assertLess(worst['b*_overlap'], 1e-7)
        self.assertLess(worst['D_phase'], 1e-8)
        self.assertLess(worst['b_norm'], 1e-8)
        self.assertLess(worst['bbstar'], 1e-8)


if __name__ == '__main__':
    unittest.main()
