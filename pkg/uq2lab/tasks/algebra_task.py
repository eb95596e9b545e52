"""
algebra 套件：q-算术原语、正规形乘法、作用交叉验证与 Hopf 公理
"""
import logging

import numpy as np

from uq2lab.models.algebra import AlgebraElement, Monomial
from uq2lab.models.report import Report, RunConfig
from uq2lab.services import qnum
from uq2lab.services.pw_rep import GENERATOR_TAGS
from uq2lab.services.ustar_algebra import UStarAlgebra, monomials_up_to_degree
from uq2lab.tasks.common import check_below, check_equal, new_report, qparam_of

logger = logging.getLogger(__name__)

ACTION_L2_MAX = 6
ACTION_K_MAX = 3
JACOBI_L2_MAX = 4
HOPF_DEGREE = 4
ASSOCIATIVITY_TRIPLES = 30


def _qnum_checks(report: Report, t: float):
    closed = max(abs(qnum.q_integer(n, t) - (t ** -n - t ** n) / (t ** -1 - t)) / qnum.q_integer(n, t)
                 for n in range(1, 21))
    check_below(report, 'qnum.q_integer_closed_form', closed, 1e-12)
    check_below(report, 'qnum.q_integer(3,0.5)', abs(qnum.q_integer(3, 0.5) - 5.25), 1e-14)
    check_below(report, 'qnum.q_binomial(2,1,0.25)', abs(qnum.q_binomial(2, 1, 0.25) - 1.25), 1e-14)
    symmetry = max(abs(qnum.q_binomial(n, k, t) - qnum.q_binomial(n, n - k, t))
                   for n in range(21) for k in range(n + 1))
    check_below(report, 'qnum.q_binomial_symmetry', symmetry, 1e-13)
    pascal = max(abs(qnum.q_binomial(n, k, t) - qnum.q_binomial(n - 1, k - 1, t)
                     - t ** k * qnum.q_binomial(n - 1, k, t))
                 for n in range(1, 21) for k in range(1, n + 1))
    check_below(report, 'qnum.q_pascal', pascal, 1e-12)
    check_below(report, 'qnum.little_q_jacobi_at_zero',
                max(abs(qnum.little_q_jacobi(n, 1, 2, 0.0, t) - 1.0) for n in range(6)), 1e-14)


def run_algebra_suite(config: RunConfig) -> Report:
    report = new_report('algebra', config)
    qp = qparam_of(config)
    alg = UStarAlgebra(qp, config.prune)
    _qnum_checks(report, qp.t)

    a, a_s = alg.generator('a'), alg.generator('a*')
    b, b_s = alg.generator('b'), alg.generator('b*')
    d, d_s = alg.generator('D'), alg.generator('D*')
    one = AlgebraElement.scalar(1.0)
    check_below(report, 'mul.ba=qab', (alg.mul(b, a) - AlgebraElement.monomial(1, 1, 0, 0, coef=qp.q)).max_abs(), 1e-15)
    check_below(report, 'mul.aa*+bb*=1', (alg.mul(a, a_s) + alg.mul(b, b_s) - one).max_abs(), 1e-15)
    check_below(report, 'mul.a*a+|q|^2b*b=1', (alg.mul(a_s, a) + alg.mul(b_s, b).scale(qp.t) - one).max_abs(), 1e-15)
    check_below(report, 'mul.DD*=1', (alg.mul(d, d_s) - one).max_abs(), 1e-15)
    check_below(report, 'adjoint.(bD)*=D*b*',
                (alg.adjoint(alg.mul(b, d)) - alg.mul(alg.adjoint(d), alg.adjoint(b))).max_abs(), 1e-14)

    rng = np.random.default_rng(config.seed)
    pool = monomials_up_to_degree(2)
    worst = 0.0
    for _ in range(ASSOCIATIVITY_TRIPLES):
        x, y, z = (AlgebraElement({pool[int(rng.integers(len(pool)))]: 1.0}) for _ in range(3))
        worst = max(worst, (alg.mul(alg.mul(x, y), z) - alg.mul(x, alg.mul(y, z))).max_abs())
    check_below(report, 'mul.associativity', worst, 1e-12, detail=f'{ASSOCIATIVITY_TRIPLES} 组随机三元组')

    check_below(report, 'matrix_coefficient(1,-1,-1,0)=a', (alg.matrix_coefficient(1, -1, -1, 0) - a).max_abs(), 1e-14)
    da_s = alg.matrix_coefficient(1, 1, 1, 0)
    check_equal(report, 'matrix_coefficient(1,1,1,0)=Da*',
                len(da_s) == 1 and abs(da_s.coefficient(Monomial(-1, 0, 0, 1))) > 0, True)

    l2_max = min(ACTION_L2_MAX, config.l2_max)
    worst_action, worst_jacobi = 0.0, 0.0
    for l2 in range(l2_max + 1):
        for i2 in range(-l2, l2 + 1, 2):
            for j2 in range(-l2, l2 + 1, 2):
                if l2 <= JACOBI_L2_MAX:
                    worst_jacobi = max(worst_jacobi, alg.verify_jacobi(l2, i2, j2))
                for k in range(-ACTION_K_MAX, ACTION_K_MAX + 1):
                    for g in GENERATOR_TAGS:
                        worst_action = max(worst_action, alg.verify_action(l2, i2, j2, k, g))
    check_below(report, 'verify_action', worst_action, 1e-9, detail=f'l2 ≤ {l2_max}, |k| ≤ {ACTION_K_MAX}')
    check_below(report, 'verify_jacobi', worst_jacobi, 1e-10, detail=f'l2 ≤ {min(JACOBI_L2_MAX, l2_max)}')

    hopf = {}
    for mono in monomials_up_to_degree(HOPF_DEGREE):
        for name, value in alg.hopf_residuals(mono).items():
            hopf[name] = max(hopf.get(name, 0.0), value)
    for name, value in hopf.items():
        check_below(report, f'hopf.{name}', value, 1e-10, detail=f'次数 ≤ {HOPF_DEGREE}')

    check_equal(report, 'counit(a)', alg.counit(a), 1.0)
    s_b = alg.antipode(b) - AlgebraElement.monomial(0, 1, 0, -1, coef=-qp.q)
    check_below(report, 'antipode(b)=-qbD*', s_b.max_abs(), 1e-15)
    logger.info(f"algebra 套件完成: {len(report.checks)} 项检查")
    return report
