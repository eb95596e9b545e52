"""
fixedpt 套件：闭式不动点、递推分类、Ω 检测与 E₁ 基
"""
import logging

import numpy as np

from uq2lab.models.report import Report, RunConfig
from uq2lab.services import fixedpt
from uq2lab.tasks.common import check_above, check_below, check_equal, check_residuals, new_report, qparam_of

logger = logging.getLogger(__name__)

CLOSED_FORM_M = 30
E1_RANGE = range(-2, 3)


def _closed_form_checks(report: Report, qp, m_max: int):
    check_residuals(report, 'closed_form', fixedpt.closed_form_residuals(qp, CLOSED_FORM_M), 1e-11)
    check_residuals(report, 'upsilon', fixedpt.upsilon_residuals(qp, CLOSED_FORM_M), 1e-12)
    check_equal(report, 'closed_form.c0', fixedpt.closed_form_c(qp, 0), 1.0)
    c1 = -qp.abs_q * np.sqrt((1 - qp.t ** 3) / (1 - qp.t))
    check_below(report, 'closed_form.c1', abs(fixedpt.closed_form_c(qp, 1) - c1), 1e-15)

    closed = np.array([fixedpt.closed_form_c(qp, m) for m in range(m_max + 1)])
    closed /= np.linalg.norm(closed)
    overlap = abs(np.vdot(closed, fixedpt.level_eigenvector(qp, 0, m_max)))
    check_above(report, 'closed_form.eigenvector_overlap', overlap, 1.0 - 1e-9)

    solved = fixedpt.solve_recurrence(qp, 1.0, 0, 0, m_max)
    report.add('recurrence.lambda=1', solved.seed_residual, 1e-8, solved.summable)
    if solved.summable:
        diff = np.abs(np.abs(solved.vector.coefficients) - np.abs(closed)).max()
        check_below(report, 'recurrence.matches_closed_form', float(diff), 1e-12)
    for name, lam in (('1/|q|^2', 1.0 / qp.t), ('generic', 0.5 / (1.0 + qp.t))):
        result = fixedpt.solve_recurrence(qp, lam, 0, 0, m_max)
        report.add(f'recurrence.divergent.{name}', result.seed_residual, 1e-8, not result.summable,
                   detail=f'尾部比={result.tail_ratio:.6g}')
    check_equal(report, 'recurrence.zero_seed', fixedpt.zero_seed_law(qp, (1.0, qp.t, 0.3)), 0.0)


def _omega_checks(report: Report, qp, m_max: int):
    omega = fixedpt.omega_detect(qp, 4, m_max)
    check_equal(report, 'omega.level0_detected', 0 in omega.levels, True)
    report.add('omega.level_count', len(omega.levels), 2, len(omega.levels) >= 2, detail=f'层 {list(omega.levels)}')
    values = list(omega.eigenvalues.values())
    check_equal(report, 'omega.eigenvalues_in_unit_interval', all(0.0 < v <= 1.0 + 1e-12 for v in values), True)
    targets = np.concatenate([[0.0], qp.t ** np.arange(4 * m_max)])
    mismatch = max(float(np.min(np.abs(targets - e))) for e in omega.spectrum)
    check_below(report, 'omega.spectrum_subset_of_levels', mismatch, 1e-9)
    return omega


def _e1_checks(report: Report, qp, m_max: int, levels):
    actions = fixedpt.verify_e1_actions(qp, 0, E1_RANGE, E1_RANGE, m_max, levels)
    check_below(report, 'e1.b_overlap', actions['b_overlap'], 1e-7)
    check_below(report, 'e1.b*_overlap', actions['b*_overlap'], 1e-7)
    check_below(report, 'e1.D_phase', actions['D_phase'], 1e-8)
    check_below(report, 'e1.b_norm', actions['b_norm'], 1e-8)
    check_below(report, 'e1.bbstar', actions['bbstar'], 1e-8)

    vectors = [fixedpt.e1_vector(qp, i2, j2, k, m_max, levels) for i2, j2, k in fixedpt.e1_labels(0, E1_RANGE, (0, 1))]
    check_below(report, 'e1.orthonormal', fixedpt.gram_deviation(vectors), 1e-8)
    check_below(report, 'e1.eigen_residual', max(v.residual for v in vectors), 1e-8)
    check_below(report, 'e1.k_independence', fixedpt.k_independence(qp, 0, 0, (-2, 0, 2), m_max, levels), 1e-10)

    if 1 in levels:
        excess = max(fixedpt.decay_bound_excess(qp, fixedpt.e1_vector(qp, i2, 2 - i2, 0, m_max, levels))
                     for i2 in (-2, -1, 0, 1))
        check_equal(report, 'e1.decay_bound_excess', excess, 0.0)


def run_fixedpt_suite(config: RunConfig) -> Report:
    report = new_report('fixedpt', config)
    qp = qparam_of(config)
    _closed_form_checks(report, qp, config.m_max)
    omega = _omega_checks(report, qp, config.m_max)
    _e1_checks(report, qp, config.m_max, omega.levels)
    return report
