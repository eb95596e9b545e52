"""
O(U_q(2)) 的正规序重写引擎

正规形 a_n b^m (b*)^r D^k。单项式乘积按三步化简：
D^k 右移越过 b, b*（相位 ω^{k(r'-m')}），b^m (b*)^r 右移越过 a_{n'}（因子 q^{m n'} q̄^{r n'}），
最后把 a_n a_{n'} 化为 Σ c_j a_s X^j，X = bb* 与 b, b* 可交换。
"""
import logging
from itertools import product
from typing import Dict, List, Tuple

from uq2lab.models.algebra import DEFAULT_PRUNE, UNIT, AlgebraElement, Monomial
from uq2lab.models.indices import validate_fragment
from uq2lab.models.qparam import QParam
from uq2lab.services import pw_rep
from uq2lab.services.qnum import little_q_jacobi_coefficients, q_binomial, q_integer

logger = logging.getLogger(__name__)

GENERATORS = {
    'a': Monomial(1, 0, 0, 0),
    'a*': Monomial(-1, 0, 0, 0),
    'b': Monomial(0, 1, 0, 0),
    'b*': Monomial(0, 0, 1, 0),
    'D': Monomial(0, 0, 0, 1),
    'D*': Monomial(0, 0, 0, -1),
}

Tensor = Dict[Tuple[Monomial, ...], complex]


def _poly_from_factors(factors: List[float]) -> List[float]:
    """展开 Π(1 - c X) 为 X 的系数列表"""
    poly = [1.0]
    for c in factors:
        nxt = poly + [0.0]
        for j, p in enumerate(poly):
            nxt[j + 1] -= c * p
        poly = nxt
    return poly


class UStarAlgebra:
    """
    固定 q 下的 *-代数运算与 Hopf 结构

    参数:
        qparam: 形变参数
        prune: 系数剪枝阈值
    """

    def __init__(self, qparam: QParam, prune: float = DEFAULT_PRUNE):
        self.qp = qparam
        self.prune = prune
        self._a_rules: Dict[Tuple[int, int], Tuple[int, List[float]]] = {}
        self._mono_products: Dict[Tuple[Monomial, Monomial], Tuple[Tuple[Monomial, complex], ...]] = {}
        self._matrix_coefficients: Dict[Tuple[int, int, int], AlgebraElement] = {}
        self._coproducts: Dict[Monomial, Tensor] = {}

    # ---------- 乘法 ----------

    def _a_product(self, n: int, nn: int) -> Tuple[int, List[float]]:
        """a_n · a_{nn} = a_s · Σ_j c_j X^j"""
        key = (n, nn)
        rule = self._a_rules.get(key)
        if rule is not None:
            return rule
        t = self.qp.t
        if n >= 0 and nn >= 0 or n <= 0 and nn <= 0:
            rule = (n + nn, [1.0])
        elif n > 0:
            p = -nn
            mu = min(n, p)
            rule = (n - p, _poly_from_factors([t ** (-(p - s)) for s in range(1, mu + 1)]))
        else:
            p = -n
            mu = min(p, nn)
            rule = (nn - p, _poly_from_factors([t ** (nn - s) for s in range(mu)]))
        self._a_rules[key] = rule
        return rule

    def mul_monomials(self, x: Monomial, y: Monomial) -> Tuple[Tuple[Monomial, complex], ...]:
        key = (x, y)
        cached = self._mono_products.get(key)
        if cached is not None:
            return cached
        n, m, r, k = x
        n2, m2, r2, k2 = y
        phase = self.qp.omega_pow(k * (r2 - m2)) * self.qp.q_pow(m * n2) * self.qp.qbar_pow(r * n2)
        s, poly = self._a_product(n, n2)
        terms = tuple(
            (Monomial(s, m + m2 + j, r + r2 + j, k + k2), phase * c)
            for j, c in enumerate(poly) if c != 0.0
        )
        self._mono_products[key] = terms
        return terms

    def mul(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        """正规序乘积"""
        pairs = []
        for mx, cx in x.items():
            for my, cy in y.items():
                for mono, c in self.mul_monomials(mx, my):
                    pairs.append((mono, cx * cy * c))
        return AlgebraElement.accumulate(pairs, self.prune)

    def product(self, *factors: AlgebraElement) -> AlgebraElement:
        result = AlgebraElement.scalar(1.0)
        for f in factors:
            result = self.mul(result, f)
        return result

    def power(self, x: AlgebraElement, e: int) -> AlgebraElement:
        result = AlgebraElement.scalar(1.0)
        for _ in range(e):
            result = self.mul(result, x)
        return result

    def generator(self, tag: str) -> AlgebraElement:
        return AlgebraElement({GENERATORS[tag]: 1.0})

    # ---------- 星运算 ----------

    def adjoint_monomial(self, mono: Monomial) -> AlgebraElement:
        n, m, r, k = mono
        left = AlgebraElement({Monomial(0, 0, 0, -k): 1.0})
        middle = AlgebraElement({Monomial(0, r, m, 0): 1.0})
        right = AlgebraElement({Monomial(-n, 0, 0, 0): 1.0})
        return self.product(left, middle, right)

    def adjoint(self, x: AlgebraElement) -> AlgebraElement:
        pairs = []
        for mono, c in x.items():
            for m2, c2 in self.adjoint_monomial(mono).items():
                pairs.append((m2, c.conjugate() * c2))
        return AlgebraElement.accumulate(pairs, self.prune)

    # ---------- 矩阵系数 ----------

    def c_element(self) -> AlgebraElement:
        """c = -q̄ D b* = -q̄ ω b* D"""
        return AlgebraElement({Monomial(0, 0, 1, 1): -self.qp.qbar * self.qp.omega})

    def d_element(self) -> AlgebraElement:
        """d = D a*"""
        return AlgebraElement({Monomial(-1, 0, 0, 1): 1.0})

    def _t_coefficient(self, l2: int, i2: int, j2: int) -> AlgebraElement:
        key = (l2, i2, j2)
        cached = self._matrix_coefficients.get(key)
        if cached is not None:
            return cached
        t = self.qp.t
        lmi, lmj, lpj = (l2 - i2) // 2, (l2 - j2) // 2, (l2 + j2) // 2
        lpi = (l2 + i2) // 2
        ratio = (q_binomial(l2, lpj, t) / q_binomial(l2, lpi, t)) ** 0.5
        a_el, b_el = self.generator('a'), self.generator('b')
        c_el, d_el = self.c_element(), self.d_element()
        total = AlgebraElement()
        for m in range(0, lmj + 1):
            n = lmi - m
            if n < 0 or n > lpj:
                continue
            coef = (self.qp.q_pow(n * (lmj - m)) * ratio
                    * q_binomial(lmj, m, t) * q_binomial(lpj, n, t))
            term = self.product(self.power(a_el, m), self.power(c_el, lmj - m),
                                self.power(b_el, n), self.power(d_el, lpj - n))
            total = total + term.scale(coef)
        self._matrix_coefficients[key] = total
        return total

    def matrix_coefficient(self, l2: int, i2: int, j2: int, k: int) -> AlgebraElement:
        """t^ℓ_{ij} · D^{-k} 的正规形"""
        validate_fragment(l2, i2, j2)
        base = self._t_coefficient(l2, i2, j2)
        # 右乘 D^{-k} 不产生相位
        return AlgebraElement({Monomial(mo.n, mo.m, mo.r, mo.k - k): c for mo, c in base.items()}, self.prune)

    def basis_element(self, l2: int, i2: int, j2: int, k: int) -> AlgebraElement:
        """正交基 e^ℓ_{i,j,k} = |q|^{-i} √|2ℓ+1|_{|q|} · t^ℓ_{ij} D^{-k}"""
        norm = self.qp.abs_q ** (-i2 / 2.0) * q_integer(l2 + 1, self.qp.abs_q) ** 0.5
        return self.matrix_coefficient(l2, i2, j2, k).scale(norm)

    def _x_polynomial(self, n: int, alpha: int, beta: int) -> AlgebraElement:
        coeffs = little_q_jacobi_coefficients(n, alpha, beta, self.qp.t)
        return AlgebraElement({Monomial(0, s, s, 0): c for s, c in enumerate(coeffs)}, self.prune)

    def jacobi_expression(self, l2: int, i2: int, j2: int, k: int) -> Dict[str, AlgebraElement]:
        """
        小 q-Jacobi 形式的 t^ℓ_{ij} D^{-k}

        返回:
            适用扇区名 → 展开后的正规形（边界上多个扇区同时适用）
        """
        validate_fragment(l2, i2, j2)
        t = self.qp.t
        ipj, imj = (i2 + j2) // 2, (i2 - j2) // 2
        lpj, lmj, lpi, lmi = (l2 + j2) // 2, (l2 - j2) // 2, (l2 + i2) // 2, (l2 - i2) // 2
        ratio = (q_binomial(l2, lpj, t) / q_binomial(l2, lpi, t)) ** 0.5
        a_el, a_star, b_el = self.generator('a'), self.generator('a*'), self.generator('b')
        c_el = self.c_element()

        def d_power(e):
            return AlgebraElement({Monomial(0, 0, 0, e): 1.0})

        out = {}
        if ipj <= 0 and imj >= 0:
            scal = self.qp.qbar_pow(-imj * lpj) * ratio * q_binomial(lmj, imj, t)
            out['i'] = self.product(self.power(a_el, -ipj), self.power(c_el, imj),
                                    self._x_polynomial(lpj, imj, -ipj), d_power(lpj - k)).scale(scal)
        if ipj <= 0 and imj <= 0:
            scal = self.qp.q_pow(imj * lpi) * ratio * q_binomial(lpj, -imj, t)
            out['ii'] = self.product(self.power(a_el, -ipj), self.power(b_el, -imj),
                                     self._x_polynomial(lpi, -imj, -ipj), d_power(lpi - k)).scale(scal)
        if ipj >= 0 and imj <= 0:
            scal = self.qp.q_pow(imj * lpi) * ratio * q_binomial(lpj, -imj, t)
            out['iii'] = self.product(self._x_polynomial(lmj, -imj, ipj), self.power(a_star, ipj),
                                      self.power(b_el, -imj), d_power(lpi - k)).scale(scal)
        if ipj >= 0 and imj >= 0:
            scal = self.qp.qbar_pow(-imj * lpj) * ratio * q_binomial(lmj, imj, t)
            out['iv'] = self.product(self._x_polynomial(lmi, imj, ipj), self.power(a_star, ipj),
                                     self.power(c_el, imj), d_power(lpj - k)).scale(scal)
        return out

    def verify_jacobi(self, l2: int, i2: int, j2: int, k: int = 0) -> float:
        """各适用扇区与求和公式之差的最大系数模"""
        direct = self.matrix_coefficient(l2, i2, j2, k)
        return max((expr - direct).max_abs() for expr in self.jacobi_expression(l2, i2, j2, k).values())

    def verify_action(self, l2: int, i2: int, j2: int, k: int, g: str) -> float:
        """
        g · e^ℓ_{i,j,k} 的正规形与生成元作用公式右端之差

        返回:
            差的最大系数模
        """
        lhs = self.mul(self.generator(g), self.basis_element(l2, i2, j2, k))
        rhs = AlgebraElement()
        for (dl2, di2, dj2, dk), coef in pw_rep.action_coefficients(self.qp, g, l2, i2, j2):
            rhs = rhs + self.basis_element(l2 + dl2, i2 + di2, j2 + dj2, k + dk).scale(coef)
        return (lhs - rhs).max_abs()

    # ---------- Hopf 结构 ----------

    def _tensor_mul(self, x: Tensor, y: Tensor) -> Tensor:
        acc: Tensor = {}
        for kx, cx in x.items():
            for ky, cy in y.items():
                factors = [self.mul_monomials(a, b) for a, b in zip(kx, ky)]
                for combo in product(*factors):
                    key = tuple(mono for mono, _ in combo)
                    c = cx * cy
                    for _, cc in combo:
                        c *= cc
                    acc[key] = acc.get(key, 0.0) + c
        return {k: c for k, c in acc.items() if abs(c) > self.prune}

    def _generator_coproduct(self, tag: str) -> Tensor:
        qp = self.qp
        a, a_s = GENERATORS['a'], GENERATORS['a*']
        b, b_s = GENERATORS['b'], GENERATORS['b*']
        if tag == 'a':
            return {(a, a): 1.0, (b, Monomial(0, 0, 1, 1)): -qp.qbar * qp.omega}
        if tag == 'a*':
            return {(a_s, a_s): 1.0, (b_s, Monomial(0, 1, 0, -1)): -qp.q}
        if tag == 'b':
            return {(a, b): 1.0, (b, Monomial(-1, 0, 0, 1)): 1.0}
        if tag == 'b*':
            return {(a_s, b_s): 1.0, (b_s, Monomial(1, 0, 0, -1)): 1.0}
        if tag == 'D':
            return {(GENERATORS['D'], GENERATORS['D']): 1.0}
        return {(GENERATORS['D*'], GENERATORS['D*']): 1.0}

    def comultiply_monomial(self, mono: Monomial) -> Tensor:
        cached = self._coproducts.get(mono)
        if cached is not None:
            return cached
        n, m, r, k = mono
        result: Tensor = {(UNIT, UNIT): 1.0}
        word = (['a'] * n if n >= 0 else ['a*'] * (-n)) + ['b'] * m + ['b*'] * r
        word += ['D'] * k if k >= 0 else ['D*'] * (-k)
        for tag in word:
            result = self._tensor_mul(result, self._generator_coproduct(tag))
        self._coproducts[mono] = result
        return result

    def comultiply(self, x: AlgebraElement) -> Tensor:
        acc: Tensor = {}
        for mono, c in x.items():
            for key, cc in self.comultiply_monomial(mono).items():
                acc[key] = acc.get(key, 0.0) + c * cc
        return {k: c for k, c in acc.items() if abs(c) > self.prune}

    @staticmethod
    def counit_monomial(mono: Monomial) -> complex:
        return 1.0 if mono.m == 0 and mono.r == 0 else 0.0

    def counit(self, x: AlgebraElement) -> complex:
        return sum((c * self.counit_monomial(mono) for mono, c in x.items()), 0j)

    def antipode_monomial(self, mono: Monomial) -> AlgebraElement:
        """反同态：S(a_n b^m b*^r D^k) = D^{-k} S(b*)^r S(b)^m a_{-n}"""
        n, m, r, k = mono
        s_b = AlgebraElement({Monomial(0, 1, 0, -1): -self.qp.q})
        s_bstar = AlgebraElement({Monomial(0, 0, 1, 1): -1.0 / self.qp.qbar})
        return self.product(AlgebraElement({Monomial(0, 0, 0, -k): 1.0}),
                            self.power(s_bstar, r), self.power(s_b, m),
                            AlgebraElement({Monomial(-n, 0, 0, 0): 1.0}))

    def antipode(self, x: AlgebraElement) -> AlgebraElement:
        total = AlgebraElement()
        for mono, c in x.items():
            total = total + self.antipode_monomial(mono).scale(c)
        return total

    def hopf_residuals(self, mono: Monomial) -> Dict[str, float]:
        """
        单个单项式上的余结合律、余单位律与对极律残差

        余结合律与对极律的残差除以求和项系数模的最大值（至少为 1），
        高次单项式的系数按 |q|^{-k} 增长，抵消误差随之放大。
        """
        x = AlgebraElement({mono: 1.0})
        delta = self.comultiply_monomial(mono)

        left: Tensor = {}
        right: Tensor = {}
        coassoc_scale = 1.0
        for (m1, m2), c in delta.items():
            for (p1, p2), cc in self.comultiply_monomial(m1).items():
                left[(p1, p2, m2)] = left.get((p1, p2, m2), 0.0) + c * cc
                coassoc_scale = max(coassoc_scale, abs(c * cc))
            for (p1, p2), cc in self.comultiply_monomial(m2).items():
                right[(m1, p1, p2)] = right.get((m1, p1, p2), 0.0) + c * cc
                coassoc_scale = max(coassoc_scale, abs(c * cc))
        keys = set(left) | set(right)
        coassoc = max((abs(left.get(kk, 0.0) - right.get(kk, 0.0)) for kk in keys), default=0.0) / coassoc_scale

        counit_left = AlgebraElement.accumulate(
            (m2, c * self.counit_monomial(m1)) for (m1, m2), c in delta.items())
        counit_right = AlgebraElement.accumulate(
            (m1, c * self.counit_monomial(m2)) for (m1, m2), c in delta.items())

        eps = AlgebraElement.scalar(self.counit_monomial(mono))
        s_left = AlgebraElement()
        s_right = AlgebraElement()
        left_scale, right_scale = 1.0, 1.0
        for (m1, m2), c in delta.items():
            m1_el, m2_el = AlgebraElement({m1: 1.0}), AlgebraElement({m2: 1.0})
            term_left = self.mul(self.antipode_monomial(m1), m2_el).scale(c)
            term_right = self.mul(m1_el, self.antipode_monomial(m2)).scale(c)
            left_scale = max(left_scale, term_left.max_abs())
            right_scale = max(right_scale, term_right.max_abs())
            s_left = s_left + term_left
            s_right = s_right + term_right

        return {
            'coassociativity': coassoc,
            'counit_left': (counit_left - x).max_abs(),
            'counit_right': (counit_right - x).max_abs(),
            'antipode_left': (s_left - eps).max_abs() / left_scale,
            'antipode_right': (s_right - eps).max_abs() / right_scale,
        }


def monomials_up_to_degree(max_degree: int) -> List[Monomial]:
    """|n| + m + r + |k| ≤ max_degree 的全部正规形单项式"""
    out = []
    for n in range(-max_degree, max_degree + 1):
        for m in range(0, max_degree + 1):
            for r in range(0, max_degree + 1):
                for k in range(-max_degree, max_degree + 1):
                    mono = Monomial(n, m, r, k)
                    if mono.degree <= max_degree:
                        out.append(mono)
    return out
