import os
from dotenv import load_dotenv

from uq2lab.config.config import get_config
from uq2lab.models.report import SUITE_NAMES, RunConfig

# 加载环境变量
load_dotenv()


def create_lab(**overrides) -> RunConfig:
    """由环境配置构建并校验运行配置，overrides 覆盖对应字段"""
    cfg = get_config()
    values = dict(
        abs_q=cfg.Q_ABS, theta=cfg.THETA, l2_max=cfg.L2_MAX, k_min=cfg.K_MIN, k_max=cfg.K_MAX,
        m_max=cfg.M_MAX, heis_n_max=cfg.HEIS_N_MAX, fourier_order=cfg.FOURIER_ORDER, tol=cfg.TOL,
        prune=cfg.PRUNE, suites=cfg.SUITES or list(SUITE_NAMES), seed=cfg.SEED, out_dir=cfg.OUT_DIR, workers=cfg.WORKERS,
    )
    values.update(overrides)
    config = RunConfig.build(**values)

    # 确保输出目录存在
    if not os.path.exists(config.out_dir):
        os.makedirs(config.out_dir)
    return config
