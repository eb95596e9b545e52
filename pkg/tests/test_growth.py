import math
import unittest

import numpy as np

from uq2lab.models.indices import GammaIndex
from uq2lab.models.qparam import QParam
from uq2lab.services import growth
from uq2lab.utils.errors import IndexValidationError


class TestGrowthGraph(unittest.TestCase):
    """最高权线范数与增长图测试类"""

    def setUp(self):
        """测试前准备"""
        self.qp = QParam(0.5, 0.3)

    def test_e_gamma_norm(self):
        """测试根处范数为 1 与 γ₁ = 1/2 的取值"""
        q = self.qp.abs_q
        self.assertEqual(growth.e_gamma_norm(self.qp, growth.ROOT), 1.0)
        self.assertAlmostEqual(growth.e_gamma_norm(self.qp, GammaIndex(1, 4, 1)), math.sqrt(q) / math.sqrt(1 / q + q),
                               places=15)
        with self.assertRaises(IndexValidationError):
            growth.e_gamma_norm(self.qp, GammaIndex(1, 0, 0))

    def test_ratio_bounds(self):
        """测试格点上的比值不超过解析上确界"""
        bounds = growth.ratio_bounds(self.qp)
        extremes = growth.norm_ratio_extremes(self.qp, g1_max=12, g2_max=4)
        self.assertLess(extremes['D'], 1e-12)
        self.assertLessEqual(extremes['a'], bounds['a'] * (1 + 1e-12))
        self.assertLessEqual(extremes['b'], bounds['b'] * (1 + 1e-12))
        self.assertAlmostEqual(growth.admission_constant(self.qp), 1.1 * math.sqrt(1.25) / 0.5, places=14)

    def test_edges(self):
        """测试根的出边与非对角处无 b 边"""
        root_edges = set(growth.growth_edges(self.qp, growth.ROOT))
        self.assertEqual(root_edges, {GammaIndex(0, 1, 0), GammaIndex(0, -1, 0),
                                      GammaIndex(1, 0, -1), GammaIndex(1, 0, 1)})
        self.assertNotIn(GammaIndex(2, 0, 0), growth.growth_edges(self.qp, GammaIndex(1, 0, -1)))
        self.assertNotIn('b', growth.edge_ratios(self.qp, GammaIndex(2, 0, 0)))

    def test_path_length(self):
        """测试路径长度不超过 2γ₁+|γ₂|"""
        self.assertEqual(growth.path_length(self.qp, growth.ROOT), 0)
        self.assertEqual(growth.path_length(self.qp, GammaIndex(0, -3, 0)), 3)
        self.assertLessEqual(growth.path_length(self.qp, GammaIndex(2, 3, 0)), 5)
        distances = growth.growth_distances(self.qp, 8)
        for gamma, dist in distances.items():
            self.assertLessEqual(dist, gamma.g1_2 + abs(gamma.g2), msg=gamma)


class TestSpectralDimension(unittest.TestCase):
    """L 重数与谱维数估计测试类"""

    def test_multiplicity(self):
        """测试 L(n) 的枚举值与闭式"""
        self.assertEqual([growth.L_multiplicity(n) for n in range(3)], [1, 6, 19])
        ns = np.arange(30)
        closed = growth.L_multiplicity_closed(ns)
        self.assertEqual([int(round(c)) for c in closed], [growth.L_multiplicity(int(n)) for n in ns])
        with self.assertRaises(ValueError):
            growth.L_multiplicity(-1)

    def test_partial_sums(self):
        """测试部分和首项与单调性"""
        s = growth.partial_sums(4.0, 10)
        self.assertEqual(s[0], 1.0)
        self.assertAlmostEqual(s[1], 7.0)
        self.assertTrue(np.all(np.diff(s) > 0))

    def test_estimate(self):
        """测试 p = 4.5 收敛、p ≤ 4 发散"""
        estimate = growth.spectral_dimension_estimate((3.5, 4.0, 4.5), 2000)
        self.assertTrue(estimate.convergent[4.5])
        self.assertFalse(estimate.convergent[4.0])
        self.assertFalse(estimate.convergent[3.5])
        self.assertEqual(estimate.bracket, (4.0, 4.5))
        self.assertEqual(estimate.threshold, 4.25)

    def test_estimate_arguments(self):
        """测试网格与 N_max 的校验"""
        with self.assertRaises(ValueError):
            growth.spectral_dimension_estimate((2.5, 4.0), 2000)
        with self.assertRaises(ValueError):
            growth.spectral_dimension_estimate((3.5, 4.5), 100)


if __name__ == '__main__':
    unittest.main()
