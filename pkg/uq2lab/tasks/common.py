"""
套件共用：报告构建与阈值判断
"""
import logging
import math

from uq2lab.models.qparam import QParam
from uq2lab.models.report import Report, RunConfig

logger = logging.getLogger(__name__)


def new_report(suite: str, config: RunConfig) -> Report:
    return Report(suite=suite, parameters=config.echo(), seed=config.seed)


def qparam_of(config: RunConfig) -> QParam:
    return QParam(config.abs_q, config.theta)


def _finite(value) -> bool:
    return isinstance(value, (int, float)) and math.isfinite(value)


def check_below(report: Report, check_id: str, value: float, bound: float, detail: str = ''):
    """value < bound 判为通过；NaN 一律失败"""
    passed = _finite(value) and value < bound
    logger.debug(f"[{report.suite}] {check_id}: {value!r} < {bound!r} -> {passed}")
    return report.add(check_id, value, bound, passed, detail)


def check_above(report: Report, check_id: str, value: float, bound: float, detail: str = ''):
    passed = _finite(value) and value > bound
    logger.debug(f"[{report.suite}] {check_id}: {value!r} > {bound!r} -> {passed}")
    return report.add(check_id, value, bound, passed, detail)


def check_equal(report: Report, check_id: str, value, target, detail: str = ''):
    """整数或精确值比较"""
    passed = value == target
    logger.debug(f"[{report.suite}] {check_id}: {value!r} == {target!r} -> {passed}")
    return report.add(check_id, value, target, passed, detail)


def check_residuals(report: Report, prefix: str, residuals: dict, bound: float):
    for name, value in residuals.items():
        check_below(report, f"{prefix}.{name}", float(value), bound)
