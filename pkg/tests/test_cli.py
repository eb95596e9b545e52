import json
import os
import shutil
import tempfile
import unittest
from unittest.mock import patch

from uq2lab.api.cli import EXIT_CONFIG, EXIT_FAILED, EXIT_OK, format_summary, main, run
from uq2lab.models.report import RunConfig, SuiteStatus
from uq2lab.tasks import SUITES, run_suite
from uq2lab.tasks.common import check_below, new_report


def _passing_suite(config):
    report = new_report('algebra', config)
    check_below(report, 'fake.ok', 0.0, 1.0)
    return report


def _failing_suite(config):
    report = new_report('pw', config)
    check_below(report, 'fake.bad', float('nan'), 1.0)
    return report


def _broken_suite(config):
    raise RuntimeError('模拟故障')


class TestCLI(unittest.TestCase):
    """命令行与报告输出测试类"""

    def setUp(self):
        """测试前准备"""
        self.out_dir = tempfile.mkdtemp()

    def tearDown(self):
        """测试后清理"""
        shutil.rmtree(self.out_dir, ignore_errors=True)

    def _read_jsonl(self, suite):
        with open(os.path.join(self.out_dir, f'{suite}.jsonl'), encoding='utf8') as f:
            return [json.loads(line) for line in f]

    def test_invalid_theta(self):
        """测试 θ 越界时退出码为 2 且不写任何报告"""
        out = os.path.join(self.out_dir, 'nothing')
        code = main(['--theta', '1.5', '--suite', 'specdim', '--out', out])
        self.assertEqual(code, EXIT_CONFIG)
        self.assertFalse(os.path.exists(out))

    def test_unknown_suite(self):
        """测试未知套件名"""
        self.assertEqual(main(['--suite', 'nope', '--out', self.out_dir]), EXIT_CONFIG)

    @patch.dict(SUITES, {'algebra': _passing_suite, 'pw': _broken_suite})
    def test_fault_isolation(self):
        """测试套件异常转为 error 状态，其余套件照常运行"""
        config = RunConfig(suites=['algebra', 'pw'], out_dir=self.out_dir)
        reports, code = run(config)
        self.assertEqual(code, EXIT_FAILED)
        self.assertEqual([r.suite for r in reports], ['algebra', 'pw'])
        self.assertEqual(reports[0].status, SuiteStatus.PASSED)
        self.assertEqual(reports[1].status, SuiteStatus.ERROR)
        self.assertIn('RuntimeError', reports[1].error)

        header = self._read_jsonl('pw')[0]
        self.assertEqual(header['record'], 'header')
        self.assertEqual(header['status'], 'error')
        summary = open(os.path.join(self.out_dir, 'summary.txt'), encoding='utf8').read()
        self.assertIn('ERROR RuntimeError', summary)
        self.assertTrue(summary.endswith('overall: FAIL\n'))

    @patch.dict(SUITES, {'pw': _failing_suite})
    def test_nan_check_fails(self):
        """测试 NaN 值判为失败"""
        report = run_suite('pw', RunConfig(suites=['pw'], out_dir=self.out_dir))
        self.assertEqual(report.status, SuiteStatus.FAILED)
        self.assertIn('FAIL fake.bad', format_summary([report]))

    @patch.dict(SUITES, {'algebra': _passing_suite})
    def test_report_format(self):
        """测试 jsonl 表头与检查记录格式"""
        code = main(['--suite', 'algebra', '--out', self.out_dir, '--seed', '7'])
        self.assertEqual(code, EXIT_OK)
        header, check = self._read_jsonl('algebra')
        self.assertEqual(header['suite'], 'algebra')
        self.assertEqual(header['seed'], 7)
        self.assertEqual(header['status'], 'passed')
        self.assertIsNone(header['error'])
        self.assertEqual(header['parameters']['abs_q'], '0.5')
        self.assertEqual(check['record'], 'check')
        self.assertEqual(check['check_id'], 'fake.ok')
        self.assertEqual(check['value'], '0')
        self.assertTrue(check['passed'])

    def test_reruns_are_identical(self):
        """测试同一配置两次运行的 jsonl 逐字节相同"""
        args = ['--suite', 'specdim', '--out', self.out_dir]
        main(args)
        with open(os.path.join(self.out_dir, 'specdim.jsonl'), 'rb') as f:
            first = f.read()
        main(args)
        with open(os.path.join(self.out_dir, 'specdim.jsonl'), 'rb') as f:
            second = f.read()
        self.assertEqual(first, second)

    def test_real_q_torus_not_applicable(self):
        """测试 θ = 1（q 为实数）时环面套件报告不适用"""
        report = run_suite('torus-index', RunConfig(theta=1.0, suites=['torus-index'], out_dir=self.out_dir))
        self.assertEqual(report.status, SuiteStatus.PASSED)
        self.assertEqual([c.check_id for c in report.checks], ['applicable'])
        self.assertEqual(report.checks[0].value, 'real q')

class TestDefaultRun(unittest.TestCase):
    """默认配置下全部套件的端到端测试类"""

    def setUp(self):
        """测试前准备"""
        self.out_dir = tempfile.mkdtemp()

    def tearDown(self):
        """测试后清理"""
        shutil.rmtree(self.out_dir, ignore_errors=True)

    def _failed_checks(self, report):
        return [c.check_id for c in report.checks if not c.passed]

    def test_algebra_suite_passes(self):
        """测试默认配置下 algebra 套件全部通过，含 4 次以内的 Hopf 公理"""
        report = run_suite('algebra', RunConfig(out_dir=self.out_dir))
        self.assertEqual(report.status, SuiteStatus.PASSED, msg=self._failed_checks(report))
        self.assertTrue(any(c.check_id.startswith('hopf.') for c in report.checks))

    def test_all_suites_pass(self):
        """测试默认配置下逐个运行全部套件，退出码为 0"""
        reports, code = run(RunConfig(out_dir=self.out_dir))
        for report in reports:
            self.assertEqual(report.status, SuiteStatus.PASSED, msg=f"{report.suite}: {self._failed_checks(report)}")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(sorted(r.suite for r in reports), sorted(SUITES))



if __name__ == '__main__':
    unittest.main()
