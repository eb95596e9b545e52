import os
import math
from dotenv import load_dotenv

# 加载环境变量
load_dotenv()


class Config:
    """实验室基础配置"""

    # 形变参数
    Q_ABS = float(os.getenv('LAB_Q_ABS', 0.5))
    THETA = float(os.getenv('LAB_THETA', (math.sqrt(5.0) - 1.0) / 2.0))

    # Peter-Weyl 截断窗口
    L2_MAX = int(os.getenv('LAB_L2_MAX', 12))
    K_MIN = int(os.getenv('LAB_K_MIN', -16))
    K_MAX = int(os.getenv('LAB_K_MAX', 16))

    # 不动点分析的三对角截断
    M_MAX = int(os.getenv('LAB_M_MAX', 60))

    # Heisenberg 表示窗口
    HEIS_N_MAX = int(os.getenv('LAB_HEIS_N_MAX', 40))

    # 非交换环面
    FOURIER_ORDER = int(os.getenv('LAB_FOURIER_ORDER', 64))

    # 数值容差
    TOL = float(os.getenv('LAB_TOL', 1e-10))
    PRUNE = float(os.getenv('LAB_PRUNE', 1e-14))

    # 运行控制
    SEED = int(os.getenv('LAB_SEED', 20240601))
    OUT_DIR = os.getenv('LAB_OUT_DIR', 'out')
    WORKERS = int(os.getenv('LAB_WORKERS', 1))
    SUITES = [s for s in os.getenv('LAB_SUITES', '').split(',') if s]

    # 日志
    LOG_LEVEL = os.getenv('LAB_LOG_LEVEL', 'INFO')
    LOG_DIR = os.getenv('LAB_LOG_DIR', 'logs')


class DevelopmentConfig(Config):
    """开发环境配置"""


class TestingConfig(Config):
    """测试环境配置，缩小窗口以加快单元测试"""
    L2_MAX = 6
    K_MIN = -6
    K_MAX = 6
    M_MAX = 40
    HEIS_N_MAX = 12
    FOURIER_ORDER = 48
    OUT_DIR = os.getenv('LAB_OUT_DIR', os.path.join('temp', 'out'))


# 根据环境变量选择配置
config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}


def get_config():
    config_name = os.getenv('LAB_ENV', 'development')
    return config.get(config_name, config['default'])
