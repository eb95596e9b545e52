import cmath
import math
import unittest

from uq2lab.models.indices import E1Label
from uq2lab.models.qparam import QParam
from uq2lab.models.torus import TorusElement
from uq2lab.services import nctorus
from uq2lab.utils.errors import DomainError, PreconditionError

THETA = 0.3


class TestTorusAlgebra(unittest.TestCase):
    """非交换环面代数运算测试类"""

    def setUp(self):
        """测试前准备"""
        self.u = TorusElement.u(THETA)
        self.v = TorusElement.v(THETA)

    def test_rotation_relation(self):
        """测试 uv = e^{2πiθ} vu"""
        uv = nctorus.torus_mul(self.u, self.v)
        vu = nctorus.torus_mul(self.v, self.u)
        self.assertAlmostEqual(uv.coefficient(1, 1), 1.0)
        self.assertAlmostEqual(abs(uv.coefficient(1, 1) - cmath.exp(2j * math.pi * THETA) * vu.coefficient(1, 1)), 0.0,
                               places=14)

    def test_unitary_and_trace(self):
        """测试 u 酉性、单位元的迹与 (xy)* = y*x*"""
        uu = nctorus.torus_mul(self.u, nctorus.torus_adjoint(self.u))
        self.assertEqual(uu.to_dict(), {(0, 0): 1.0})
        self.assertEqual(nctorus.trace(TorusElement.unit(THETA)), 1.0)
        x = TorusElement.from_dict(THETA, {(1, 2): 0.5 + 1j, (-1, 0): 2.0})
        y = TorusElement.from_dict(THETA, {(0, -1): 1j, (2, 1): -0.3})
        lhs = nctorus.torus_adjoint(nctorus.torus_mul(x, y))
        rhs = nctorus.torus_mul(nctorus.torus_adjoint(y), nctorus.torus_adjoint(x))
        self.assertLess((lhs - rhs).max_abs(), 1e-14)


class TestPowersRieffel(unittest.TestCase):
    """Powers-Rieffel 投影与 Chern 数测试类"""

    def test_domain_errors(self):
        """测试 θ 与 eps 的定义域"""
        for theta in (0.0, 1.0, 1.2):
            with self.assertRaises(DomainError):
                nctorus.powers_rieffel(theta)
        with self.assertRaises(DomainError):
            nctorus.powers_rieffel(THETA, eps=0.5)

    def test_projection_and_chern(self):
        """测试迹为 θ、Chern 数为 ±1"""
        p = nctorus.powers_rieffel(THETA, order=64)
        self.assertLess(abs(nctorus.trace(p) - THETA), 1e-8)
        self.assertLess((nctorus.torus_adjoint(p) - p).max_abs(), 1e-10)
        chern = nctorus.chern_number(p)
        self.assertLess(abs(abs(chern) - 1.0), 1e-5)

        zero = TorusElement.zero(THETA)
        unit = TorusElement.unit(THETA)
        self.assertLess(abs(nctorus.chern_number_matrix([[p, zero], [zero, unit - p]])), 1e-5)

    def test_chern_precondition(self):
        """测试非幂等元抛出 PreconditionError，单位元的 Chern 数为 0"""
        with self.assertRaises(PreconditionError):
            nctorus.chern_number(TorusElement.u(THETA))
        self.assertEqual(nctorus.chern_number(TorusElement.unit(THETA)), 0.0)

    def test_unit_index(self):
        """测试单位元的截断指标为 0"""
        self.assertEqual(nctorus.torus_dirac_index(TorusElement.unit(THETA), 12), 0)
        pairing = nctorus.pairing_index(TorusElement.unit(THETA), (0, 1), 8)
        self.assertEqual(pairing, {'levels': {0: 0, 1: 0}, 'total': 0})

    def test_index_stable_across_boxes(self):
        """测试 M ∈ {32, 48, 64} 上截断指标一致且 |index| = |chern|"""
        p = nctorus.powers_rieffel(THETA, order=64)
        chern = int(round(nctorus.chern_number(p)))
        values = [nctorus.torus_dirac_index(p, box) for box in (32, 48, 64)]
        self.assertEqual(len(set(values)), 1)
        self.assertEqual(abs(values[0]), abs(chern))

    def test_index_chern_sign_consistent(self):
        """测试三个参考角上 index·chern 的符号相同"""
        relations = set()
        for theta in (0.30, 0.45, (math.sqrt(5.0) - 1.0) / 2.0):
            p = nctorus.powers_rieffel(theta, order=64)
            chern = int(round(nctorus.chern_number(p)))
            index = nctorus.torus_dirac_index(p, 48)
            self.assertNotEqual(index, 0)
            relations.add(index * chern)
        self.assertEqual(len(relations), 1)


class TestBlockModel(unittest.TestCase):
    """E₁ 上 F 与块模型测试类"""

    def setUp(self):
        """测试前准备"""
        self.qp = QParam(0.5, THETA)

    def test_f0_values(self):
        """测试 f₀ 取值与单位模"""
        self.assertEqual(nctorus.f0_value(0, 0, 0), -1)
        self.assertAlmostEqual(abs(nctorus.f0_value(1, -1, 0) - (2 - 1j) / math.sqrt(5)), 0.0, places=15)
        for i2, j2, k in ((2, 0, 3), (-3, 1, -2), (0, 4, 1)):
            self.assertAlmostEqual(abs(nctorus.f0_value(i2, j2, k)), 1.0, places=15)

    def test_f0_operator(self):
        """测试层上对角算子的标签与取值"""
        values = nctorus.f0_operator(1, [(0, 0), (3, -2)])
        self.assertEqual(set(values), {E1Label(1, 0, 2, 0), E1Label(1, 3, -1, -2)})
        self.assertEqual(values[E1Label(1, 0, 2, 0)], nctorus.f0_value(0, 2, 0))

    def test_block_label(self):
        """测试 (x, y) → (i2, j2, k)"""
        self.assertEqual(nctorus.block_label(0, 0, 0), (0, 0, 0))
        self.assertEqual(nctorus.block_label(0, -2, 1), (2, -2, 1))
        self.assertEqual(nctorus.block_label(1, 1, 0), (0, 2, 0))

    def test_winding(self):
        """测试层 0 卷绕数非零、层 1 为零"""
        self.assertNotEqual(nctorus.winding_number(0, 4), 0)
        self.assertEqual(nctorus.winding_number(1, 4), 0)

    def test_block_model(self):
        """测试 b, D 的块模型残差与紧扰动剖面"""
        model = nctorus.block_model(self.qp, 0, 4, 40, levels=(0,), check_radius=1)
        self.assertLess(model.b_residual, 1e-8)
        self.assertLess(model.d_residual, 1e-8)
        self.assertEqual(model.winding, nctorus.winding_number(0, 4))
        self.assertEqual(len(model.phase), 81)

        profile = nctorus.compact_perturbation_profile(self.qp, 0, (1, 2), 40, levels=(0,))
        self.assertEqual(len(profile), 2)
        self.assertLessEqual(profile[1], profile[0])


if __name__ == '__main__':
    unittest.main()
