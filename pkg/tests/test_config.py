import logging
import logging.config
import os
import shutil
import tempfile
import unittest
from unittest.mock import patch

from uq2lab import create_lab
from uq2lab.config.config import DevelopmentConfig, TestingConfig, get_config
from uq2lab.config.logging_config import setup_logging
from uq2lab.models.report import SUITE_NAMES, RunConfig
from uq2lab.utils.errors import ConfigError


class TestConfig(unittest.TestCase):
    """配置选择与运行参数校验测试类"""

    @patch.dict(os.environ, {'LAB_ENV': 'testing'})
    def test_get_config_testing(self):
        """测试 LAB_ENV=testing 选择测试配置"""
        self.assertIs(get_config(), TestingConfig)
        self.assertLess(TestingConfig.L2_MAX, DevelopmentConfig.L2_MAX)

    @patch.dict(os.environ, {'LAB_ENV': 'unknown'})
    def test_get_config_default(self):
        """测试未知环境名回落到开发配置"""
        self.assertIs(get_config(), DevelopmentConfig)

    def test_run_config_validation(self):
        """测试各字段的校验错误带有字段名"""
        cases = [
            ({'abs_q': 1.0}, 'abs_q'),
            ({'theta': -1.0}, 'theta'),
            ({'l2_max': 1}, 'l2_max'),
            ({'fourier_order': 4}, 'fourier_order'),
            ({'tol': 0.0}, 'tol'),
            ({'workers': 0}, 'workers'),
            ({'prune': 1e-6}, 'prune'),
            ({'suites': ['algebra', 'nope']}, 'suites'),
            ({'suites': []}, 'suites'),
        ]
        for values, field in cases:
            with self.assertRaises(ConfigError) as ctx:
                RunConfig.build(**values)
            self.assertEqual(ctx.exception.field, field, msg=values)
        with self.assertRaises(ConfigError):
            RunConfig.build(k_min=0, k_max=2)

    def test_run_config_defaults(self):
        """测试默认值与参数回显"""
        config = RunConfig.build(theta=1.0)
        self.assertEqual(config.suites, list(SUITE_NAMES))
        echo = config.echo()
        self.assertEqual(echo['theta'], 1.0)
        self.assertNotIn('out_dir', echo)
        self.assertNotIn('workers', echo)

    def test_create_lab(self):
        """测试 create_lab 应用覆盖值并创建输出目录"""
        root = tempfile.mkdtemp()
        try:
            out = os.path.join(root, 'reports')
            config = create_lab(out_dir=out, suites=['specdim'], seed=11)
            self.assertEqual(config.suites, ['specdim'])
            self.assertEqual(config.seed, 11)
            self.assertTrue(os.path.isdir(out))
            with self.assertRaises(ConfigError):
                create_lab(out_dir=out, abs_q=2.0)
        finally:
            shutil.rmtree(root, ignore_errors=True)

    def test_setup_logging(self):
        """测试日志目录与三个日志文件"""
        root = tempfile.mkdtemp()
        try:
            setup_logging(level='WARNING', log_dir=root)
            logging.getLogger('uq2lab.tasks.fake').debug('检查明细')
            for name in ('uq2lab.log', 'error.log', 'checks.log'):
                self.assertTrue(os.path.exists(os.path.join(root, name)), msg=name)
        finally:
            logging.config.dictConfig({
                'version': 1,
                'disable_existing_loggers': False,
                'loggers': {'uq2lab': {'handlers': [], 'propagate': True},
                            'uq2lab.tasks': {'handlers': []}},
            })
            shutil.rmtree(root, ignore_errors=True)


if __name__ == '__main__':
    unittest.main()
