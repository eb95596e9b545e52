"""
torus-index 套件：A_θ 运算、Powers-Rieffel 投影、Chern 数、截断指标与 E₁ 上的指标配对
"""
import logging
import math

import numpy as np

from uq2lab.models.report import Report, RunConfig
from uq2lab.models.torus import TorusElement
from uq2lab.services import fixedpt, nctorus
from uq2lab.tasks.common import check_below, check_equal, new_report, qparam_of

logger = logging.getLogger(__name__)

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
REFERENCE_THETAS = (0.30, 0.45, GOLDEN)
INDEX_ORDERS = (32, 48, 64)
INDEX_BOXES = (32, 48, 64)
INDEX_BOX = 24
PROFILE_RADII = (1, 2, 4, 6)
RANDOM_TERMS = 5


def _random_element(theta: float, rng: np.random.Generator) -> TorusElement:
    coeffs = {}
    for _ in range(RANDOM_TERMS):
        m, n = (int(v) for v in rng.integers(-3, 4, size=2))
        coeffs[(m, n)] = complex(rng.standard_normal(), rng.standard_normal())
    return TorusElement.from_dict(theta, coeffs)


def _algebra_checks(report: Report, theta: float, seed: int):
    u, v = TorusElement.u(theta), TorusElement.v(theta)
    unit = TorusElement.unit(theta)
    rotation = nctorus.torus_mul(u, v) - nctorus.torus_mul(v, u).scale(np.exp(2j * math.pi * theta))
    check_below(report, 'torus.rotation_relation', rotation.max_abs(), 1e-15)
    check_below(report, 'torus.u_unitary', (nctorus.torus_mul(nctorus.torus_adjoint(u), u) - unit).max_abs(), 1e-15)
    check_equal(report, 'torus.trace_unit', nctorus.trace(unit), 1.0)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(10):
        x, y = _random_element(theta, rng), _random_element(theta, rng)
        lhs = nctorus.torus_adjoint(nctorus.torus_mul(x, y))
        rhs = nctorus.torus_mul(nctorus.torus_adjoint(y), nctorus.torus_adjoint(x))
        worst = max(worst, (lhs - rhs).max_abs())
    check_below(report, 'torus.adjoint_antimultiplicative', worst, 1e-13)


def _projection_checks(report: Report, theta: float, order: int):
    thetas = sorted(set(REFERENCE_THETAS) | {theta})
    for th in thetas:
        residuals = nctorus.projection_residuals(nctorus.powers_rieffel(th, order=order), order)
        tag = f'{th:.6g}'
        check_below(report, f'rieffel[{tag}].idempotent', residuals['idempotent'], 1e-6)
        check_below(report, f'rieffel[{tag}].selfadjoint', residuals['selfadjoint'], 1e-10)
        check_below(report, f'rieffel[{tag}].trace', residuals['trace'], 1e-8)
    coarse = nctorus.projection_residuals(nctorus.powers_rieffel(theta, order=order // 2), order // 2)['idempotent']
    fine = nctorus.projection_residuals(nctorus.powers_rieffel(theta, order=order), order)['idempotent']
    report.add('rieffel.idempotency_halves', [coarse, fine], 0.5, fine <= 0.5 * coarse or fine < 1e-12)


def _chern_checks(report: Report, p: TorusElement, tag: str) -> int:
    chern = nctorus.chern_number(p)
    rounded = int(round(chern))
    check_below(report, f'chern[{tag}].integrality', abs(chern - rounded), 1e-5)
    report.add(f'chern[{tag}].nonzero', rounded, '≠0', rounded != 0)
    return rounded


def _additivity_checks(report: Report, p: TorusElement):
    theta = p.theta
    unit, zero = TorusElement.unit(theta), TorusElement.zero(theta)
    check_below(report, 'chern.unit', abs(nctorus.chern_number(unit)), 1e-12)
    chern = nctorus.chern_number(p)
    doubled = nctorus.chern_number_matrix([[p, zero], [zero, p]])
    check_below(report, 'chern.additivity_pp', abs(doubled - 2 * chern), 1e-5)
    complement = nctorus.chern_number_matrix([[p, zero], [zero, unit - p]])
    check_below(report, 'chern.additivity_p_complement', abs(complement), 1e-5)


def _index_checks(report: Report, p: TorusElement, chern: int, tag: str, seed: int) -> int:
    """[-M, M]² 上 M ∈ INDEX_BOXES 的截断指标须一致，且 |index| = |chern|"""
    values = [nctorus.torus_dirac_index(p, box, seed=seed) for box in INDEX_BOXES]
    report.add(f'index[{tag}].box_stable', values, list(INDEX_BOXES), len(set(values)) == 1)
    index = values[-1]
    report.add(f'index[{tag}].matches_chern', index, chern, abs(index) == abs(chern) and index != 0,
               detail=f'符号关系 index/chern = {index * chern:+d}')
    return index


def _order_checks(report: Report, theta: float, seed: int):
    values = [nctorus.torus_dirac_index(nctorus.powers_rieffel(theta, order=order), INDEX_BOX, seed=seed)
              for order in INDEX_ORDERS]
    report.add('index.order_stable', values, list(INDEX_ORDERS), len(set(values)) == 1)
    unit_index = nctorus.torus_dirac_index(TorusElement.unit(theta), INDEX_BOX // 2, seed=seed)
    check_equal(report, 'index.unit', unit_index, 0)


def _gauge_checks(report: Report, theta: float, order: int, seed: int) -> int:
    """各参考角上 Chern 数与指标的符号关系必须一致，返回配置 θ 的指标"""
    relations, configured = {}, None
    for th in sorted(set(REFERENCE_THETAS) | {theta}):
        tag = f'{th:.6g}'
        p = nctorus.powers_rieffel(th, order=order)
        chern = _chern_checks(report, p, tag)
        index = _index_checks(report, p, chern, tag, seed)
        relations[tag] = index * chern
        if th == theta:
            configured = index
    report.add('index.sign_consistent', relations, '全部相同', len(set(relations.values())) == 1)
    return configured


def _pairing_checks(report: Report, config: RunConfig, p: TorusElement, torus_index: int):
    qp = qparam_of(config)
    levels = fixedpt.omega_detect(qp, 1, config.m_max + 1).levels
    computed = [r for r in (0, 1) if r in levels]
    pairing = nctorus.pairing_index(p, computed, INDEX_BOX, seed=config.seed)
    check_equal(report, 'pairing.level0', pairing['levels'].get(0), torus_index)
    if 1 in pairing['levels']:
        check_equal(report, 'pairing.level1', pairing['levels'][1], 0)
    check_equal(report, 'pairing.total', pairing['total'], pairing['levels'].get(0))

    for level in computed:
        values = nctorus.f0_operator(level, [(i2, k) for i2 in range(-6, 7) for k in range(-6, 7)]).values()
        check_below(report, f'f0[{level}].unimodular', max(abs(abs(v) - 1.0) for v in values), 1e-15)
        model = nctorus.block_model(qp, level, INDEX_BOX, config.m_max, levels)
        check_below(report, f'block_model[{level}].b', model.b_residual, 1e-8)
        check_below(report, f'block_model[{level}].D', model.d_residual, 1e-8)
        report.add(f'block_model[{level}].winding', model.winding, '≠0' if level == 0 else 0,
                   model.winding != 0 if level == 0 else model.winding == 0)

    profile = nctorus.compact_perturbation_profile(qp, 0, PROFILE_RADII, config.m_max, levels)
    report.add('compact_perturbation.decreasing', profile, list(PROFILE_RADII),
               all(a >= b for a, b in zip(profile, profile[1:])) and profile[-1] < profile[0])


def run_torus_suite(config: RunConfig) -> Report:
    report = new_report('torus-index', config)
    theta = config.theta % 1.0
    if theta == 0.0:
        report.add('applicable', 'real q', None, True, detail='θ ∈ {0, 1}：A_θ 可交换，环面检查不适用')
        logger.info("torus-index 套件: q 为实数，跳过")
        return report
    order = config.fourier_order
    _algebra_checks(report, theta, config.seed)
    _projection_checks(report, theta, order)
    p = nctorus.powers_rieffel(theta, order=order)
    _additivity_checks(report, p)
    index = _gauge_checks(report, theta, order, config.seed)
    _order_checks(report, theta, config.seed)
    _pairing_checks(report, config, p, index)
    return report
