"""
pw 套件：Peter-Weyl 窗口上的关系、伴随性与 bb* 三对角块
"""
import logging

import numpy as np

from uq2lab.models.indices import TruncationWindow
from uq2lab.models.report import Report, RunConfig
from uq2lab.services import pw_rep
from uq2lab.tasks.common import check_below, check_residuals, new_report, qparam_of

logger = logging.getLogger(__name__)

RELATION_L2_MAX = 10
ADJOINT_L2_MAX = 8
COEFFICIENT_L2_MAX = 20


def run_pw_suite(config: RunConfig) -> Report:
    report = new_report('pw', config)
    qp = qparam_of(config)
    window = TruncationWindow(min(RELATION_L2_MAX, config.l2_max), config.k_min, config.k_max)
    logger.info(f"pw 套件: 窗口 {window}, 维数 {len(window)}")

    check_residuals(report, 'relation', pw_rep.verify_relations_pw(qp, window, config.tol), config.tol)
    check_residuals(report, 'isometry', pw_rep.isometry_residuals(qp, COEFFICIENT_L2_MAX), 1e-13)

    lo, hi = pw_rep.alpha_plus_bounds(qp, COEFFICIENT_L2_MAX)
    report.add('alpha_plus_range', [lo, hi], [0.0, 1.0], 0.0 < lo and hi <= 1.0 + 1e-15)

    small = TruncationWindow(min(ADJOINT_L2_MAX, config.l2_max), config.k_min, config.k_max)
    for g, g_star in (('a', 'a*'), ('b', 'b*'), ('D', 'D*')):
        check_below(report, f'adjoint.{g}', pw_rep.adjointness_residual(qp, small, g, g_star), 1e-12)
    check_below(report, 'composition.bb*', pw_rep.composition_residual(qp, small), 1e-12)
    check_below(report, 'unitarity.D', pw_rep.d_unitarity_residual(qp, small), 1e-14)

    b_op = pw_rep.build_operator(qp, 'b', small)
    origin_b = b_op.apply(b_op.basis_vector((0, 0, 0, 0)))
    check_below(report, 'b_on_origin_norm', abs(np.vdot(origin_b, origin_b).real - 1.0 / (1.0 + qp.t)), 1e-14)

    sub, main, sup = pw_rep.bbstar_tridiagonal(qp, 0, 0, 0, config.m_max)
    check_below(report, 'tridiagonal.upsilon0(0)', abs(main[0] - 1.0 / (1.0 + qp.t)), 1e-14)
    check_below(report, 'tridiagonal.hermitian', float(np.max(np.abs(sub - np.conj(sup[1:])))), 1e-12)
    worst_edge = max(abs(pw_rep.gamma_minus(qp, max(abs(i2), abs(j2)), i2, j2))
                     for i2 in range(-4, 5) for j2 in range(-4, 5) if (i2 - j2) % 2 == 0)
    check_below(report, 'tridiagonal.gamma_minus_at_w', worst_edge, 1e-15)
    return report
