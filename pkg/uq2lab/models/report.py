import math
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field, ValidationError, field_serializer, field_validator, model_validator

from uq2lab.utils.errors import ConfigError

SUITE_NAMES = ('algebra', 'pw', 'heis', 'dirac', 'fixedpt', 'torus-index', 'specdim')


# 定义套件状态枚举
class SuiteStatus(Enum):
    PASSED = 'passed'
    FAILED = 'failed'
    ERROR = 'error'


def _fmt(value):
    """浮点数按 17 位有效数字序列化"""
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, complex):
        return [_fmt(value.real), _fmt(value.imag)]
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return str(value)
        return format(value, '.17g')
    if isinstance(value, (list, tuple)):
        return [_fmt(v) for v in value]
    if isinstance(value, dict):
        return {k: _fmt(v) for k, v in value.items()}
    return value


class CheckResult(BaseModel):
    """单项检查：测量值、界/目标值与是否通过"""
    check_id: str
    value: Any = None
    bound: Any = None
    passed: bool
    detail: str = ''

    @field_serializer('value', 'bound')
    def _serialize_number(self, v):
        return _fmt(v)


class Report(BaseModel):
    suite: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    checks: List[CheckResult] = Field(default_factory=list)
    status: SuiteStatus = SuiteStatus.PASSED
    seed: Optional[int] = None
    wall_time: float = 0.0
    error: Optional[str] = None

    @field_serializer('parameters')
    def _serialize_parameters(self, v):
        return _fmt(v)

    def add(self, check_id: str, value, bound, passed: bool, detail: str = '') -> CheckResult:
        check = CheckResult(check_id=check_id, value=value, bound=bound, passed=bool(passed), detail=detail)
        self.checks.append(check)
        return check

    def finalize(self) -> 'Report':
        if self.status is not SuiteStatus.ERROR:
            self.status = SuiteStatus.PASSED if all(c.passed for c in self.checks) else SuiteStatus.FAILED
        return self

    @property
    def passed(self) -> bool:
        return self.status is SuiteStatus.PASSED

    def header_record(self) -> Dict[str, Any]:
        return {
            'record': 'header',
            'suite': self.suite,
            'parameters': _fmt(self.parameters),
            'seed': self.seed,
            'status': self.status.value,
            'error': self.error,
        }

    def check_records(self) -> List[Dict[str, Any]]:
        return [{'record': 'check', 'suite': self.suite, **c.model_dump()} for c in self.checks]


class RunConfig(BaseModel):
    """一次运行的全部参数"""
    abs_q: float = 0.5
    theta: float = (math.sqrt(5.0) - 1.0) / 2.0
    l2_max: int = 12
    k_min: int = -16
    k_max: int = 16
    m_max: int = 60
    heis_n_max: int = 40
    fourier_order: int = 64
    tol: float = 1e-10
    prune: float = 1e-14
    suites: List[str] = Field(default_factory=lambda: list(SUITE_NAMES))
    seed: int = 20240601
    out_dir: str = 'out'
    workers: int = 1

    @field_validator('abs_q')
    @classmethod
    def _check_abs_q(cls, v):
        if not (0.0 < v < 1.0):
            raise ValueError('|q| 必须在 (0,1) 内')
        return v

    @field_validator('theta')
    @classmethod
    def _check_theta(cls, v):
        if not (-1.0 < v <= 1.0):
            raise ValueError('θ 必须在 (-1,1] 内')
        return v

    @field_validator('l2_max', 'm_max', 'heis_n_max')
    @classmethod
    def _check_window(cls, v):
        if v < 2:
            raise ValueError('截断尺寸至少为 2')
        return v

    @field_validator('fourier_order')
    @classmethod
    def _check_order(cls, v):
        if v < 8:
            raise ValueError('Fourier 阶数至少为 8')
        return v

    @field_validator('tol')
    @classmethod
    def _check_tol(cls, v):
        if not (0.0 < v < 1.0):
            raise ValueError('容差必须在 (0,1) 内')
        return v

    @field_validator('prune')
    @classmethod
    def _check_prune(cls, v):
        if not (0.0 <= v < 1e-8):
            raise ValueError('剪枝阈值必须在 [0, 1e-8) 内')
        return v

    @field_validator('workers')
    @classmethod
    def _check_workers(cls, v):
        if v < 1:
            raise ValueError('workers 至少为 1')
        return v

    @field_validator('suites')
    @classmethod
    def _check_suites(cls, v):
        unknown = [s for s in v if s not in SUITE_NAMES]
        if unknown:
            raise ValueError(f'未知套件: {unknown}')
        if not v:
            raise ValueError('至少选择一个套件')
        return v

    @model_validator(mode='after')
    def _check_k_bounds(self):
        if self.k_max - self.k_min < 4:
            raise ValueError('k 窗口过小（k_max - k_min 至少为 4）')
        return self

    @classmethod
    def build(cls, **values) -> 'RunConfig':
        """校验并构建，失败时抛出 ConfigError"""
        try:
            return cls(**values)
        except ValidationError as e:
            first = e.errors()[0]
            field = '.'.join(str(p) for p in first.get('loc', ())) or None
            raise ConfigError(f"配置错误: {first.get('msg')}", field=field) from e

    def echo(self) -> Dict[str, Any]:
        return self.model_dump(exclude={'suites', 'out_dir', 'workers'})
