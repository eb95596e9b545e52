"""
heis 套件：ℓ²(ℕ)⊗ℓ²(ℤ)⊗ℓ²(ℤ) 表示的关系、谱与环面压缩
"""
import logging
import math

import numpy as np

from uq2lab.models.indices import HeisWindow
from uq2lab.models.report import Report, RunConfig
from uq2lab.services import heis_rep
from uq2lab.tasks.common import check_below, check_residuals, new_report, qparam_of

logger = logging.getLogger(__name__)

RELATION_TOL = 1e-13
SIDE = 20
STRUCTURE_N_MAX = 12


def run_heis_suite(config: RunConfig) -> Report:
    report = new_report('heis', config)
    qp = qparam_of(config)
    window = HeisWindow(config.heis_n_max, -SIDE, SIDE, -SIDE, SIDE)
    logger.info(f"heis 套件: 窗口 {window}, 维数 {len(window)}")

    check_residuals(report, 'relation', heis_rep.relation_residuals_heis(qp, window, RELATION_TOL), RELATION_TOL)
    check_below(report, 'bbstar_diagonal', heis_rep.bbstar_diagonality(qp, window), 1e-14)

    spectrum = heis_rep.spectrum_bbstar_heis(qp, window)
    distinct = np.unique(np.round(spectrum, 15))[::-1]
    check_below(report, 'spectrum.top', abs(distinct[0] - 1.0), 1e-15)
    check_below(report, 'spectrum.second', abs(distinct[1] - qp.t), 1e-15)
    levels = qp.t ** np.arange(config.heis_n_max + 1)
    mismatch = max(float(np.min(np.abs(levels - e))) for e in distinct)
    check_below(report, 'spectrum.subset_of_levels', mismatch, 1e-9)

    profile = [heis_rep.compact_difference_profile(qp, n0) for n0 in range(25)]
    check_below(report, 'compact_difference.n0=0', abs(profile[0] - (1.0 - math.sqrt(1.0 - qp.t))), 1e-15)
    report.add('compact_difference.monotone', None, None, all(x > y for x, y in zip(profile, profile[1:])))
    check_below(report, 'compact_difference.n0=20', profile[20], qp.t ** 21)

    _, _, torus = heis_rep.torus_generators_on_P(qp, window)
    check_residuals(report, 'torus_on_P', torus, 1e-14)

    small = HeisWindow(min(STRUCTURE_N_MAX, config.heis_n_max), -4, 4, -4, 4)
    check_residuals(report, 'structure', heis_rep.structure_residuals(qp, small), 1e-12)
    return report
