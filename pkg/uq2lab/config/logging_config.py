import os
import logging.config

from uq2lab.config.config import get_config


def _rotating(path: str, level: str) -> dict:
    return {
        'level': level,
        'formatter': 'standard',
        'class': 'logging.handlers.RotatingFileHandler',
        'filename': path,
        'maxBytes': 10485760,
        'backupCount': 5,
        'encoding': 'utf8',
    }


def setup_logging(level=None, log_dir=None):
    """
    配置日志记录

    控制台按 level 输出；logs/uq2lab.log 记录全部 uq2lab 日志，logs/error.log 只记录错误，
    logs/checks.log 单独记录各套件逐项检查的 DEBUG 明细。
    """
    cfg = get_config()
    level = level or cfg.LOG_LEVEL
    log_dir = log_dir or cfg.LOG_DIR
    os.makedirs(log_dir, exist_ok=True)

    logging_config = {
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'standard': {
                'format': '%(asctime)s [%(levelname)s] %(name)s: %(message)s'
            },
        },
        'handlers': {
            'console': {
                'level': level,
                'formatter': 'standard',
                'class': 'logging.StreamHandler',
            },
            'file': _rotating(os.path.join(log_dir, 'uq2lab.log'), 'INFO'),
            'error_file': _rotating(os.path.join(log_dir, 'error.log'), 'ERROR'),
            'checks_file': _rotating(os.path.join(log_dir, 'checks.log'), 'DEBUG'),
        },
        'loggers': {
            '': {
                'handlers': ['console', 'error_file'],
                'level': 'WARNING',
            },
            'uq2lab': {
                'handlers': ['console', 'file', 'error_file'],
                'level': 'DEBUG',
                'propagate': False
            },
            # 逐项检查明细
            'uq2lab.tasks': {
                'handlers': ['checks_file'],
                'level': 'DEBUG',
                'propagate': True
            },
            'py.warnings': {
                'handlers': ['file'],
                'level': 'WARNING',
                'propagate': False
            },
        }
    }

    logging.config.dictConfig(logging_config)
    logging.captureWarnings(True)
