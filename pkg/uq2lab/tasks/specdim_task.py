"""
specdim 套件：最高权线范数比、增长图路径长度、L 重数与谱维数估计
"""
import logging

import numpy as np

from uq2lab.models.indices import GammaIndex
from uq2lab.models.report import Report, RunConfig
from uq2lab.services import growth
from uq2lab.tasks.common import check_below, check_equal, new_report, qparam_of

logger = logging.getLogger(__name__)

PATH_LENGTH_MAX = 20
P_GRID = tuple(np.round(np.linspace(3.5, 4.5, 21), 10))
N_MAX = 10_000


def _norm_checks(report: Report, qp):
    check_below(report, 'e_gamma_norm.root', abs(growth.e_gamma_norm(qp, growth.ROOT) - 1.0), 1e-15)
    extremes = growth.norm_ratio_extremes(qp)
    bounds = growth.ratio_bounds(qp)
    check_below(report, 'ratio.D', extremes['D'], 1e-12)
    check_below(report, 'ratio.a', extremes['a'], bounds['a'] * (1.0 + 1e-12))
    check_below(report, 'ratio.b', extremes['b'], bounds['b'] * (1.0 + 1e-12))

    root_edges = set(growth.growth_edges(qp, growth.ROOT))
    expected = {GammaIndex(0, 1, 0), GammaIndex(0, -1, 0), GammaIndex(1, 0, -1), GammaIndex(1, 0, 1)}
    check_equal(report, 'growth_edges.root', root_edges == expected, True)
    check_equal(report, 'growth_edges.no_b_edge_off_diagonal',
                GammaIndex(2, 0, 0) in growth.growth_edges(qp, GammaIndex(1, 0, -1)), False)


def _path_checks(report: Report, qp):
    distances = growth.growth_distances(qp, PATH_LENGTH_MAX)
    missing, excess = 0, 0
    for g1 in range(PATH_LENGTH_MAX + 1):
        for g3 in range(-g1, g1 + 1, 2):
            for g2 in range(-(PATH_LENGTH_MAX - g1), PATH_LENGTH_MAX - g1 + 1):
                gamma = GammaIndex(g1, g2, g3)
                if gamma not in distances:
                    missing += 1
                elif distances[gamma] > g1 + abs(g2):
                    excess += 1
    check_equal(report, 'path_length.unreached', missing, 0, detail=f'2γ₁+|γ₂| ≤ {PATH_LENGTH_MAX}')
    check_equal(report, 'path_length.bound_violations', excess, 0)
    check_equal(report, 'path_length.(1,3,0)', growth.path_length(qp, GammaIndex(2, 3, 0)) <= 5, True)


def _multiplicity_checks(report: Report):
    check_equal(report, 'L.n=0', growth.L_multiplicity(0), 1)
    check_equal(report, 'L.n=1', growth.L_multiplicity(1), 6)
    ns = np.arange(60)
    closed = growth.L_multiplicity_closed(ns)
    check_equal(report, 'L.closed_form', all(int(round(c)) == growth.L_multiplicity(int(n))
                                             for n, c in zip(ns, closed)), True)
    ratios = [growth.L_multiplicity(2 * n) / growth.L_multiplicity(n) for n in range(16, 65)]
    worst = max(abs(r - 8.0) / 8.0 for r in ratios)
    check_below(report, 'L.doubling_ratio', worst, 0.15)


def run_specdim_suite(config: RunConfig) -> Report:
    report = new_report('specdim', config)
    qp = qparam_of(config)
    _norm_checks(report, qp)
    _path_checks(report, qp)
    _multiplicity_checks(report)

    estimate = growth.spectral_dimension_estimate(P_GRID, N_MAX)
    lo, hi = estimate.bracket
    report.add('spectral_dimension.bracket', [lo, hi], [3.8, 4.2], 3.8 <= lo and hi <= 4.2,
               detail=f'阈值 {estimate.threshold:.4f}')
    check_equal(report, 'spectral_dimension.p=4.5_convergent', estimate.convergent[4.5], True)
    check_equal(report, 'spectral_dimension.p=3.5_divergent', estimate.convergent[3.5], False)
    return report
