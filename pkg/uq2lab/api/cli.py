"""
命令行入口：解析参数、运行套件、写出报告
"""
import argparse
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence, Tuple

from uq2lab import create_lab
from uq2lab.config.config import get_config
from uq2lab.models.report import SUITE_NAMES, Report, RunConfig
from uq2lab.tasks import SUITES, run_suite
from uq2lab.utils.errors import ConfigError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def build_parser() -> argparse.ArgumentParser:
    cfg = get_config()
    parser = argparse.ArgumentParser(prog='uq2lab', description='U_q(2) 数值验证实验室')
    parser.add_argument('--q-abs', type=float, default=cfg.Q_ABS, help='|q|，取值 (0,1)')
    parser.add_argument('--theta', type=float, default=cfg.THETA, help='相位角 θ，取值 (-1,1]')
    parser.add_argument('--l2max', type=int, default=cfg.L2_MAX, help='Peter-Weyl 窗口 2ℓ 上限')
    parser.add_argument('--kmin', type=int, default=cfg.K_MIN)
    parser.add_argument('--kmax', type=int, default=cfg.K_MAX)
    parser.add_argument('--mmax', type=int, default=cfg.M_MAX, help='三对角截断')
    parser.add_argument('--heis-nmax', type=int, default=cfg.HEIS_N_MAX, help='Heisenberg 窗口 n 上限')
    parser.add_argument('--fourier-order', type=int, default=cfg.FOURIER_ORDER)
    parser.add_argument('--tol', type=float, default=cfg.TOL)
    parser.add_argument('--suite', nargs='+', default=cfg.SUITES or list(SUITE_NAMES),
                        help=f"套件，可选 {', '.join(SUITE_NAMES)}")
    parser.add_argument('--seed', type=int, default=cfg.SEED)
    parser.add_argument('--out', default=cfg.OUT_DIR, help='报告输出目录')
    parser.add_argument('--workers', type=int, default=cfg.WORKERS)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return create_lab(
        abs_q=args.q_abs, theta=args.theta, l2_max=args.l2max, k_min=args.kmin, k_max=args.kmax,
        m_max=args.mmax, heis_n_max=args.heis_nmax, fourier_order=args.fourier_order, tol=args.tol,
        suites=list(args.suite), seed=args.seed, out_dir=args.out, workers=args.workers)


def run(config: RunConfig) -> Tuple[List[Report], int]:
    """
    按注册表顺序运行所选套件并写出报告

    返回:
        (报告列表, 退出码)：全部通过时为 0
    """
    names = [name for name in SUITES if name in config.suites]
    if config.workers > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=min(config.workers, len(names))) as executor:
            reports = list(executor.map(run_suite, names, [config] * len(names)))
    else:
        reports = [run_suite(name, config) for name in names]
    write_reports(reports, config.out_dir)
    code = EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED
    logger.info(f"运行结束: {sum(r.passed for r in reports)}/{len(reports)} 个套件通过，退出码 {code}")
    return reports, code


def write_reports(reports: Sequence[Report], out_dir: str):
    """每个套件一个 jsonl（首行为表头记录），外加 summary.txt"""
    os.makedirs(out_dir, exist_ok=True)
    for report in reports:
        path = os.path.join(out_dir, f"{report.suite}.jsonl")
        with open(path, 'w', encoding='utf8') as f:
            for record in [report.header_record()] + report.check_records():
                f.write(json.dumps(record, ensure_ascii=False) + '\n')
        logger.debug(f"报告已写入: {path}")
    with open(os.path.join(out_dir, 'summary.txt'), 'w', encoding='utf8') as f:
        f.write(format_summary(reports))


def format_summary(reports: Sequence[Report]) -> str:
    lines = [f"{'suite':<14}{'status':<9}{'checks':>8}{'failed':>8}{'time(s)':>10}"]
    for r in reports:
        failed = sum(not c.passed for c in r.checks)
        lines.append(f"{r.suite:<14}{r.status.value:<9}{len(r.checks):>8}{failed:>8}{r.wall_time:>10.2f}")
        for c in r.checks:
            if not c.passed:
                lines.append(f"    FAIL {c.check_id}: value={c.model_dump()['value']} bound={c.model_dump()['bound']}")
        if r.error:
            lines.append(f"    ERROR {r.error}")
    overall = 'PASS' if reports and all(r.passed for r in reports) else 'FAIL'
    lines.append(f"overall: {overall}")
    return '\n'.join(lines) + '\n'


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
    except ConfigError as e:
        logger.error(f"{e.message} (字段: {e.field})")
        return EXIT_CONFIG
    _, code = run(config)
    return code
