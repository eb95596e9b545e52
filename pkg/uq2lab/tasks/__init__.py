"""
验证套件注册表
"""
import logging
import time
import traceback
from typing import Callable, Dict

from uq2lab.models.report import Report, RunConfig, SuiteStatus
from uq2lab.tasks.algebra_task import run_algebra_suite
from uq2lab.tasks.dirac_task import run_dirac_suite
from uq2lab.tasks.fixedpt_task import run_fixedpt_suite
from uq2lab.tasks.heis_task import run_heis_suite
from uq2lab.tasks.pw_task import run_pw_suite
from uq2lab.tasks.specdim_task import run_specdim_suite
from uq2lab.tasks.torus_task import run_torus_suite

logger = logging.getLogger(__name__)

# 顺序即报告合并顺序
SUITES: Dict[str, Callable[[RunConfig], Report]] = {
    'algebra': run_algebra_suite,
    'pw': run_pw_suite,
    'heis': run_heis_suite,
    'dirac': run_dirac_suite,
    'fixedpt': run_fixedpt_suite,
    'torus-index': run_torus_suite,
    'specdim': run_specdim_suite,
}


def run_suite(name: str, config: RunConfig) -> Report:
    """
    运行单个套件，套件内的异常转为 error 状态的报告

    参数:
        name: 套件名
        config: 已校验的运行配置
    """
    logger.info(f"开始套件 {name}")
    start = time.perf_counter()
    try:
        report = SUITES[name](config)
    except Exception as e:
        logger.error(f"套件 {name} 异常: {str(e)}\n{traceback.format_exc()}")
        report = Report(suite=name, parameters=config.echo(), seed=config.seed,
                        status=SuiteStatus.ERROR, error=f"{type(e).__name__}: {e}")
    report.wall_time = time.perf_counter() - start
    report.finalize()
    failed = [c.check_id for c in report.checks if not c.passed]
    if failed:
        logger.warning(f"套件 {name} 未通过的检查: {failed}")
    logger.info(f"套件 {name} 结束: {report.status.value}, {len(report.checks)} 项检查, 用时 {report.wall_time:.1f}s")
    return report
