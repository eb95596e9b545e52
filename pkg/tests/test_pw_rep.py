import math
import unittest

import numpy as np

from uq2lab.models.indices import TruncationWindow
from uq2lab.models.qparam import QParam
from uq2lab.services import pw_rep


class TestPeterWeylRepresentation(unittest.TestCase):
    """Peter-Weyl 窗口上的表示测试类"""

    def setUp(self):
        """测试前准备"""
        self.qp = QParam(0.5, (math.sqrt(5.0) - 1.0) / 2.0)
        self.window = TruncationWindow(6, -4, 4)

    def test_action_coefficients_examples(self):
        """测试作用系数的边界取值"""
        terms = pw_rep.action_coefficients(self.qp, 'b', 0, 0, 0)
        self.assertEqual(len(terms), 1)
        shift, coef = terms[0]
        self.assertEqual(shift, (1, -1, 1, 0))
        self.assertAlmostEqual(abs(coef), (1.0 + self.qp.t) ** -0.5, places=15)

        for l2 in range(5):
            self.assertEqual(len(pw_rep.action_coefficients(self.qp, 'a', l2, -l2, l2)), 1)

        (shift, coef), = pw_rep.action_coefficients(self.qp, 'D', 2, 2, -2)
        self.assertEqual(shift, (0, 0, 0, -1))
        self.assertAlmostEqual(coef, self.qp.omega_pow(2), places=15)

    def test_relations(self):
        """测试八条关系在内部向量上成立"""
        residuals = pw_rep.verify_relations_pw(self.qp, self.window)
        self.assertEqual(len(residuals), 8)
        for name, value in residuals.items():
            self.assertLess(value, 1e-12, msg=name)

    def test_isometry_identities(self):
        """测试逐列的 aa*+bb*=1 与 a*a+|q|²b*b=1"""
        for name, value in pw_rep.isometry_residuals(self.qp, 8).items():
            self.assertLess(value, 1e-13, msg=name)
        lo, hi = pw_rep.alpha_plus_bounds(self.qp, 8)
        self.assertGreater(lo, 0.0)
        self.assertLessEqual(hi, 1.0 + 1e-15)

    def test_adjointness_and_unitarity(self):
        """测试 b* 为 b 的伴随、D 的列正交性"""
        self.assertLess(pw_rep.adjointness_residual(self.qp, self.window, 'b', 'b*'), 1e-12)
        self.assertLess(pw_rep.adjointness_residual(self.qp, self.window, 'a', 'a*'), 1e-12)
        self.assertLess(pw_rep.d_unitarity_residual(self.qp, self.window), 1e-14)

    def test_b_on_origin(self):
        """测试 b e⁰₀₀₀ 的范数平方为 1/(1+|q|²)"""
        b = pw_rep.build_operator(self.qp, 'b', self.window)
        image = b.apply(b.basis_vector((0, 0, 0, 0)))
        self.assertAlmostEqual(float(np.vdot(image, image).real), 1.0 / (1.0 + self.qp.t), places=14)

    def test_bbstar_tridiagonal(self):
        """测试 bb* 三对角块的首项、Hermite 性与 γ₋ 的边界零点"""
        sub, main, sup = pw_rep.bbstar_tridiagonal(self.qp, 0, 0, 0, 20)
        self.assertAlmostEqual(main[0], 0.8, places=15)
        self.assertEqual(sup[0], 0)
        np.testing.assert_allclose(sub, np.conj(sup[1:]), atol=1e-12)
        self.assertEqual(pw_rep.gamma_minus(self.qp, 3, 1, -3), 0)
        self.assertLess(pw_rep.composition_residual(self.qp, self.window), 1e-12)

    def test_bbstar_tridiagonal_guards(self):
        """测试非法截断"""
        with self.assertRaises(ValueError):
            pw_rep.bbstar_tridiagonal(self.qp, 0, 0, 0, 0)


if __name__ == '__main__':
    unittest.main()


class TestPeterWeylGenericPhase(unittest.TestCase):
    """θ 非特殊值时 a、a* 相位的测试类"""

    def setUp(self):
        """测试前准备"""
        self.qp = QParam(0.5, 0.3)
        self.window = TruncationWindow(6, -4, 4)

    def test_relations(self):
        """测试 θ = 0.3 时八条关系全部成立"""
        residuals = pw_rep.verify_relations_pw(self.qp, self.window)
        self.assertEqual(len(residuals), 8)
        for name, value in residuals.items():
            self.assertLess(value, 1e-12, msg=name)

    def test_a_adjointness(self):
        """测试 θ = 0.3 时 a* 为 a 的伴随"""
        self.assertLess(pw_rep.adjointness_residual(self.qp, self.window, 'a', 'a*'), 1e-12)

    def test_coefficient_window_to_twenty(self):
        """测试 l2 ≤ 20 上逐列恒等式与 α₊ 的取值范围"""
        for name, value in pw_rep.isometry_residuals(self.qp, 20).items():
            self.assertLess(value, 1e-13, msg=name)
        lo, hi = pw_rep.alpha_plus_bounds(self.qp, 20)
        self.assertGreater(lo, 0.0)
        self.assertLessEqual(hi, 1.0 + 1e-15)
