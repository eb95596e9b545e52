"""
dirac 套件：本征值、有界对易子、计数与可和性、等变性、非退化与偶谱三元组
"""
import logging

from uq2lab.models.algebra import AlgebraElement
from uq2lab.models.indices import TruncationWindow
from uq2lab.models.report import Report, RunConfig
from uq2lab.services import dirac
from uq2lab.services.pw_rep import GENERATOR_TAGS
from uq2lab.tasks.common import check_above, check_below, check_equal, new_report, qparam_of

logger = logging.getLogger(__name__)

STABILITY_STEP = 4
EQUIVARIANCE_TRIALS = 100
EQUIVARIANCE_L2_MAX = 6
TRIPLE_L2_MAX = 6


def _eigenvalue_examples(report: Report):
    check_equal(report, 'eigenvalue.(0,0,0)', dirac.dirac_eigenvalue(0, 0, 0), -1 + 0j)
    check_equal(report, 'eigenvalue.(1/2,1/2,0)', dirac.dirac_eigenvalue(1, 1, 0), 2 - 1j)
    check_equal(report, 'eigenvalue.(1/2,-1/2,3)', dirac.dirac_eigenvalue(1, -1, 3), -2 + 3j)


def _commutator_checks(report: Report, qp, config: RunConfig):
    base = TruncationWindow(config.l2_max, config.k_min, config.k_max)
    grown = TruncationWindow(config.l2_max + STABILITY_STEP, config.k_min, config.k_max)
    for g in GENERATOR_TAGS:
        small = dirac.commutator_norm(qp, g, base)
        large = dirac.commutator_norm(qp, g, grown)
        growth = (large - small) / small if small > 0 else float('inf')
        check_below(report, f'commutator.{g}.growth', growth, 0.01,
                    detail=f'l2_max {base.l2_max} → {grown.l2_max}')
        bound = dirac.commutator_bound(qp, g, grown.l2_max)
        check_below(report, f'commutator.{g}.bound', large, bound * (1.0 + 1e-12))
    check_below(report, 'commutator.D.exact', abs(dirac.commutator_norm(qp, 'D', base) - 1.0), 1e-14)
    check_equal(report, 'commutator.unit', dirac.commutator_norm(qp, '1', base), 0.0)
    check_below(report, 'commutator.star_identity', dirac.star_identity_residual(qp, base), 1e-12)


def _counting_checks(report: Report):
    check_equal(report, 'count.lambda=1', dirac.eigenvalue_count(1), 1)
    worst_upper, worst_lower = 0, 0
    previous = 0
    monotone = True
    for n in range(4, 33):
        count = dirac.eigenvalue_count(n)
        lower, upper = dirac.count_bounds(n)
        worst_upper += count > upper
        worst_lower += count < lower
        monotone &= count >= previous
        previous = count
    check_equal(report, 'count.upper_bound_violations', worst_upper, 0)
    check_equal(report, 'count.lower_bound_violations', worst_lower, 0)
    check_equal(report, 'count.monotone', monotone, True)
    slope = dirac.summability_slope(32.0, 12.0)
    report.add('summability.slope', slope, [3.7, 4.3], 3.7 <= slope <= 4.3)
    plane = dirac.summability_slope(32.0, 12.0, plane=True)
    report.add('summability.plane_slope', plane, [2.5, 3.5], 2.5 <= plane <= 3.5)


def run_dirac_suite(config: RunConfig) -> Report:
    report = new_report('dirac', config)
    qp = qparam_of(config)
    _eigenvalue_examples(report)
    _commutator_checks(report, qp, config)
    _counting_checks(report)

    small = TruncationWindow(min(EQUIVARIANCE_L2_MAX, config.l2_max), config.k_min, config.k_max)
    check_below(report, 'equivariance.random_mixers',
                dirac.check_equivariance(small, EQUIVARIANCE_TRIALS, config.seed), 1e-14,
                detail=f'{EQUIVARIANCE_TRIALS} 个随机 j-混合块')
    check_above(report, 'equivariance.negative_control', dirac.equivariance_negative_control(small), 1.0 - 1e-12)

    witnesses = [dirac.nondegeneracy_witness(qp, AlgebraElement({mono: 1.0})) for mono in dirac.witness_monomials()]
    check_above(report, 'nondegeneracy.min_witness', min(witnesses), 1e-6, detail=f'{len(witnesses)} 个单项式')
    check_equal(report, 'nondegeneracy.scalar', dirac.nondegeneracy_witness(qp, AlgebraElement.scalar(2.5)), 0.0)

    triple_window = TruncationWindow(min(TRIPLE_L2_MAX, config.l2_max), config.k_min, config.k_max)
    residuals = dirac.assemble_even_triple(triple_window).residuals(qp)
    check_equal(report, 'even_triple.anticommutator', residuals['anticommutator'], 0.0)
    check_equal(report, 'even_triple.grading_commutator', residuals['grading_commutator'], 0.0)
    check_below(report, 'even_triple.square', residuals['square'], 1e-12)
    check_below(report, 'even_triple.commutator_norms', residuals['commutator_norms'], 1e-12)

    decay = dirac.resolvent_decay(triple_window)
    check_equal(report, 'resolvent.violations', decay['violations'], 0)
    check_equal(report, 'resolvent.equality_mismatches', decay['equality_mismatches'], 0)
    check_equal(report, 'resolvent.count_eps=1', decay['counts'][1.0], 1)
    return report
