"""
实验室统一异常定义

校验失败是报告条目而不是异常；这里的异常只用于参数、索引和数值稳定性问题。
"""


class LabError(Exception):
    """实验室异常基类"""

    def __init__(self, message):
        self.message = message
        super().__init__(self.message)


class DomainError(LabError, ValueError):
    """参数超出定义域，例如 t 不在 (0,1) 内"""

    def __init__(self, message, parameter=None):
        self.parameter = parameter
        super().__init__(message)


class IndexValidationError(LabError, IndexError):
    """基向量标签不合法（半整数奇偶、范围等）"""

    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message)


class InstabilityError(LabError):
    """截断指标计算的谱间隙不足"""

    def __init__(self, message, gap_ratio=None):
        self.gap_ratio = gap_ratio
        super().__init__(message)


class LevelNotDetectedError(LabError):
    """请求的 Ω 层级未被检测到"""

    def __init__(self, message, level=None):
        self.level = level
        super().__init__(message)


class PreconditionError(LabError):
    """输入不满足前置条件，例如投影的幂等残差过大"""

    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message)


class ConfigError(LabError):
    """运行配置不合法，在任何验证套件运行之前抛出"""

    def __init__(self, message, field=None):
        self.field = field
        super().__init__(message)
