import unittest

from uq2lab.models.algebra import AlgebraElement, Monomial
from uq2lab.models.indices import PWIndex, TruncationWindow
from uq2lab.models.qparam import QParam
from uq2lab.services import dirac
from uq2lab.utils.errors import IndexValidationError


class TestDiracEigenvalues(unittest.TestCase):
    """Dirac 本征值与计数测试类"""

    def test_eigenvalue_examples(self):
        """测试两个分支的本征值"""
        self.assertEqual(dirac.dirac_eigenvalue(0, 0, 0), -1)
        self.assertEqual(dirac.dirac_eigenvalue(1, 1, 0), 2 - 1j)
        self.assertEqual(dirac.dirac_eigenvalue(1, -1, 3), -2 + 3j)
        with self.assertRaises(IndexValidationError):
            dirac.dirac_eigenvalue(1, 0, 0)

    def test_modulus_formula(self):
        """测试 |d|² = (2ℓ+1)² + (k-ℓ-i)²"""
        for l2 in range(6):
            for i2 in range(-l2, l2 + 1, 2):
                for k in range(-5, 6):
                    expected = (l2 + 1) ** 2 + (k - (l2 + i2) // 2) ** 2
                    self.assertEqual(dirac.dirac_modulus_squared(l2, i2, k), expected)

    def test_eigenvalue_count(self):
        """测试计数的取值、单调性与上下界"""
        self.assertEqual(dirac.eigenvalue_count(1), 1)
        previous = 0
        for n in range(4, 33):
            count = dirac.eigenvalue_count(n)
            lower, upper = dirac.count_bounds(n)
            self.assertLessEqual(lower, count)
            self.assertLessEqual(count, upper)
            self.assertGreaterEqual(count, previous)
            previous = count
        with self.assertRaises(ValueError):
            dirac.eigenvalue_count(0.5)

    def test_summability_slope(self):
        """测试计数的对数斜率约为 4，k = 0 平面约为 3"""
        slope = dirac.summability_slope(32.0, 12.0)
        self.assertGreaterEqual(slope, 3.7)
        self.assertLessEqual(slope, 4.3)
        plane = dirac.summability_slope(32.0, 12.0, plane=True)
        self.assertLess(abs(plane - 3.0), 0.5)
        with self.assertRaises(ValueError):
            dirac.summability_slope(4.0)


class TestDiracOperators(unittest.TestCase):
    """对易子、等变性、非退化与偶谱三元组测试类"""

    def setUp(self):
        """测试前准备"""
        self.qp = QParam(0.5, 0.3)
        self.window = TruncationWindow(6, -4, 4)

    def test_commutator_norms(self):
        """测试 [T, D] 范数为 1，其余对易子在解析上界内"""
        self.assertAlmostEqual(dirac.commutator_norm(self.qp, 'D', self.window), 1.0, places=14)
        self.assertEqual(dirac.commutator_norm(self.qp, '1', self.window), 0.0)
        self.assertEqual(dirac.commutator_bound(self.qp, 'a', 12), 4.0)
        self.assertEqual(dirac.commutator_bound(self.qp, 'D*', 12), 1.0)
        for g in ('a', 'a*', 'b', 'b*', 'D', 'D*'):
            bound = dirac.commutator_bound(self.qp, g, self.window.l2_max)
            self.assertLessEqual(dirac.commutator_norm(self.qp, g, self.window), bound * (1 + 1e-12), msg=g)
        self.assertLess(dirac.star_identity_residual(self.qp, self.window), 1e-12)

    def test_equivariance(self):
        """测试 j-混合算子与 T 对易，ℓ 平移则不对易"""
        self.assertLess(dirac.check_equivariance(self.window, 20, seed=7), 1e-14)
        self.assertGreaterEqual(dirac.equivariance_negative_control(self.window), 1.0)
        with self.assertRaises(ValueError):
            dirac.check_equivariance(self.window, 0)

    def test_nondegeneracy(self):
        """测试非退化见证：标量为 0，测试单项式均为正"""
        self.assertEqual(dirac.nondegeneracy_witness(self.qp, AlgebraElement.scalar(1.0)), 0.0)
        self.assertGreater(dirac.nondegeneracy_witness(self.qp, AlgebraElement.monomial(0, 0, 0, 1)), 1e-6)
        x = AlgebraElement.monomial(1, 0, 0, 0) + AlgebraElement.monomial(0, 1, 0, 0, coef=2.0)
        self.assertGreater(dirac.nondegeneracy_witness(self.qp, x), 1e-6)
        monomials = dirac.witness_monomials()
        self.assertEqual(len(set(monomials)), 20)
        for mono in monomials:
            self.assertGreater(dirac.nondegeneracy_witness(self.qp, AlgebraElement({mono: 1.0})), 1e-6, msg=mono)

    def test_witness_target(self):
        """测试见证目标标签"""
        self.assertEqual(dirac.WITNESS_SOURCE, PWIndex(2, 0, 0, 0))
        self.assertEqual(dirac.witness_target(Monomial(0, 0, 0, 1)), PWIndex(2, 0, 0, -1))
        self.assertEqual(dirac.witness_target(Monomial(1, 0, 0, 0)), PWIndex(3, -1, -1, 0))
        self.assertEqual(dirac.witness_target(Monomial(-1, 0, 0, 0)), PWIndex(3, 1, 1, 1))

    def test_even_triple(self):
        """测试分次反交换、𝒟² 对角与对易子范数"""
        residuals = dirac.assemble_even_triple(self.window).residuals(self.qp)
        self.assertEqual(residuals['anticommutator'], 0.0)
        self.assertEqual(residuals['grading_commutator'], 0.0)
        self.assertLess(residuals['square'], 1e-12)
        self.assertLess(residuals['commutator_norms'], 1e-12)

    def test_resolvent_decay(self):
        """测试 1/|d|² 的上界与 ε = 1 的计数"""
        report = dirac.resolvent_decay(self.window)
        self.assertEqual(report['violations'], 0)
        self.assertEqual(report['equality_mismatches'], 0)
        self.assertEqual(report['counts'][1.0], 1)


if __name__ == '__main__':
    unittest.main()
