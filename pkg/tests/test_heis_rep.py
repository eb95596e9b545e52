import cmath
import math
import unittest

from uq2lab.models.indices import HeisIndex, HeisWindow
from uq2lab.models.qparam import QParam
from uq2lab.services import heis_rep


class TestHeisenbergRepresentation(unittest.TestCase):
    """ℓ²(ℕ)⊗ℓ²(ℤ)⊗ℓ²(ℤ) 表示测试类"""

    def setUp(self):
        """测试前准备"""
        self.qp = QParam(0.5, 0.3)
        self.window = HeisWindow(10, -4, 4, -4, 4)

    def test_generator_columns(self):
        """测试生成元在基向量上的像"""
        b = heis_rep.heis_generator(self.qp, 'b', self.window)
        self.assertEqual(b.column(HeisIndex(2, 0, 0)), {HeisIndex(2, 1, 0): self.qp.q_pow(2)})
        a = heis_rep.heis_generator(self.qp, 'a', self.window)
        (target, coef), = a.column(HeisIndex(0, 1, 1)).items()
        self.assertEqual(target, HeisIndex(1, 1, 1))
        self.assertAlmostEqual(coef, math.sqrt(1.0 - self.qp.t), places=15)
        d = heis_rep.heis_generator(self.qp, 'D', self.window)
        (target, coef), = d.column(HeisIndex(3, 2, 0)).items()
        self.assertEqual(target, HeisIndex(3, 2, 1))
        self.assertAlmostEqual(coef, cmath.exp(-2j * math.pi * 0.3 * 2), places=15)

    def test_relations(self):
        """测试八条关系在内部向量上成立"""
        for name, value in heis_rep.relation_residuals_heis(self.qp, self.window).items():
            self.assertLess(value, 1e-13, msg=name)

    def test_relations_wide_window(self):
        """测试 n ≤ 40、|k|, |l| ≤ 20 窗口上八条关系成立"""
        window = HeisWindow(40, -20, 20, -20, 20)
        for name, value in heis_rep.relation_residuals_heis(self.qp, window).items():
            self.assertLess(value, 1e-13, msg=name)

    def test_compact_difference_profile(self):
        """测试 a - a₀ 尾部范数的取值与衰减"""
        self.assertAlmostEqual(heis_rep.compact_difference_profile(self.qp, 0), 1.0 - math.sqrt(0.75), places=15)
        self.assertLess(heis_rep.compact_difference_profile(self.qp, 20), 1e-12)
        self.assertLess(heis_rep.compact_difference_profile(QParam(1e-4, 0.3), 0), 1e-8)
        with self.assertRaises(ValueError):
            heis_rep.compact_difference_profile(self.qp, -1)

    def test_bbstar_spectrum(self):
        """测试 π(bb*) 的谱：最大为 1，其次为 |q|²"""
        spectrum = heis_rep.spectrum_bbstar_heis(self.qp, self.window)
        self.assertEqual(spectrum[0], 1.0)
        below = spectrum[spectrum < 1.0]
        self.assertAlmostEqual(below[0], self.qp.t, places=15)
        self.assertLess(heis_rep.bbstar_diagonality(self.qp, self.window), 1e-14)

    def test_torus_generators_on_P(self):
        """测试 P 值域上的旋转关系与酉性"""
        pb, _, residuals = heis_rep.torus_generators_on_P(self.qp, self.window)
        for name, value in residuals.items():
            self.assertLess(value, 1e-14, msg=name)
        self.assertEqual(pb.column(HeisIndex(0, 0, 0)), {HeisIndex(0, 1, 0): 1.0})

    def test_structure(self):
        """测试 b 的级数展开、矩阵单位与 K₁ 生成元"""
        for name, value in heis_rep.structure_residuals(self.qp, self.window).items():
            self.assertLess(value, 1e-12, msg=name)


if __name__ == '__main__':
    unittest.main()
