import math
import unittest

from uq2lab.models.algebra import AlgebraElement, Monomial, UNIT
from uq2lab.models.qparam import QParam
from uq2lab.services.pw_rep import GENERATOR_TAGS
from uq2lab.services.ustar_algebra import UStarAlgebra, monomials_up_to_degree
from uq2lab.utils.errors import IndexValidationError


class TestUStarAlgebra(unittest.TestCase):
    """正规形 *-代数与 Hopf 结构测试类"""

    def setUp(self):
        """测试前准备"""
        self.qp = QParam(0.5, 0.3)
        self.alg = UStarAlgebra(self.qp)
        self.g = {tag: self.alg.generator(tag) for tag in GENERATOR_TAGS}
        self.one = AlgebraElement.scalar(1.0)

    def test_commutation_relations(self):
        """测试生成元关系的正规形"""
        ba = self.alg.mul(self.g['b'], self.g['a'])
        self.assertLess((ba - AlgebraElement.monomial(1, 1, 0, 0, coef=self.qp.q)).max_abs(), 1e-15)
        aa_s = self.alg.mul(self.g['a'], self.g['a*'])
        self.assertLess((aa_s - (self.one - AlgebraElement.monomial(0, 1, 1, 0))).max_abs(), 1e-15)
        self.assertEqual(self.alg.mul(self.g['D'], self.g['D*']), self.one)
        self.assertTrue(self.alg.mul(self.g['D*'], self.g['D']).is_scalar())

    def test_adjoint(self):
        """测试星运算"""
        self.assertEqual(self.alg.adjoint(self.g['a']), AlgebraElement.monomial(-1, 0, 0, 0))
        lam = AlgebraElement.scalar(2 + 3j)
        self.assertEqual(self.alg.adjoint(lam), AlgebraElement.scalar(2 - 3j))
        bd = self.alg.mul(self.g['b'], self.g['D'])
        rhs = self.alg.mul(self.alg.adjoint(self.g['D']), self.alg.adjoint(self.g['b']))
        self.assertLess((self.alg.adjoint(bd) - rhs).max_abs(), 1e-15)
        x = self.alg.mul(self.g['a'], self.g['b*']) + self.g['D'].scale(1j)
        self.assertLess((self.alg.adjoint(self.alg.adjoint(x)) - x).max_abs(), 1e-14)

    def test_associativity(self):
        """测试低次单项式的结合律"""
        pool = monomials_up_to_degree(1)
        for x in pool[:6]:
            for y in pool[:6]:
                for z in pool[:6]:
                    ex, ey, ez = (AlgebraElement({m: 1.0}) for m in (x, y, z))
                    lhs = self.alg.mul(self.alg.mul(ex, ey), ez)
                    rhs = self.alg.mul(ex, self.alg.mul(ey, ez))
                    self.assertLess((lhs - rhs).max_abs(), 1e-13)

    def test_matrix_coefficient_examples(self):
        """测试 ℓ = 0, 1/2 的矩阵系数"""
        self.assertEqual(self.alg.matrix_coefficient(0, 0, 0, 0), self.one)
        self.assertLess((self.alg.matrix_coefficient(1, -1, -1, 0) - self.g['a']).max_abs(), 1e-14)
        da_s = self.alg.matrix_coefficient(1, 1, 1, 0)
        self.assertEqual(set(dict(da_s.items())), {Monomial(-1, 0, 0, 1)})
        with self.assertRaises(IndexValidationError):
            self.alg.matrix_coefficient(1, 0, 1, 0)

    def test_verify_action(self):
        """测试生成元作用公式与正规形乘法一致"""
        self.assertLess(self.alg.verify_action(0, 0, 0, 0, 'D'), 1e-14)
        self.assertLess(self.alg.verify_action(0, 0, 0, 0, 'b'), 1e-12)
        for l2 in range(3):
            for i2 in range(-l2, l2 + 1, 2):
                for j2 in range(-l2, l2 + 1, 2):
                    for g in GENERATOR_TAGS:
                        self.assertLess(self.alg.verify_action(l2, i2, j2, 1, g), 1e-9)

    def test_jacobi_sectors(self):
        """测试四个扇区的 q-Jacobi 表达式"""
        for l2 in range(4):
            for i2 in range(-l2, l2 + 1, 2):
                for j2 in range(-l2, l2 + 1, 2):
                    self.assertLess(self.alg.verify_jacobi(l2, i2, j2), 1e-10)

    def test_hopf_examples(self):
        """测试余乘、余单位与对极的基本取值"""
        self.assertEqual(self.alg.comultiply(self.g['D']), {(Monomial(0, 0, 0, 1), Monomial(0, 0, 0, 1)): 1.0})
        self.assertEqual(self.alg.counit(self.g['a']), 1.0)
        self.assertEqual(self.alg.counit(self.g['b']), 0.0)
        s_b = self.alg.antipode(self.g['b'])
        self.assertLess((s_b - AlgebraElement.monomial(0, 1, 0, -1, coef=-self.qp.q)).max_abs(), 1e-15)

    def test_hopf_axioms(self):
        """测试 2 次以内单项式的 Hopf 公理"""
        for mono in monomials_up_to_degree(2):
            for name, value in self.alg.hopf_residuals(mono).items():
                self.assertLess(value, 1e-10, msg=f"{name} @ {tuple(mono)}")
        self.assertEqual(self.alg.hopf_residuals(UNIT)['counit_left'], 0.0)

    def test_hopf_axioms_degree_four_golden(self):
        """测试默认参数（黄金分割角、剪枝 1e-14）下 4 次以内单项式的 Hopf 公理"""
        alg = UStarAlgebra(QParam(0.5, (math.sqrt(5.0) - 1.0) / 2.0), 1e-14)
        worst = {}
        for mono in monomials_up_to_degree(4):
            for name, value in alg.hopf_residuals(mono).items():
                worst[name] = max(worst.get(name, 0.0), value)
        for name, value in worst.items():
            self.assertLess(value, 1e-10, msg=name)


if __name__ == '__main__':
    unittest.main()
