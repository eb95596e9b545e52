import cmath
import math
from dataclasses import dataclass
from functools import cached_property

from uq2lab.utils.errors import DomainError


@dataclass(frozen=True)
class QParam:
    """
    形变参数 q = |q|·e^{iπθ}

    参数:
        abs_q: |q|，取值 (0,1)
        theta: 相位角，取值 (-1,1]
    """
    abs_q: float
    theta: float

    def __post_init__(self):
        if not (0.0 < self.abs_q < 1.0):
            raise DomainError(f"|q| 必须在 (0,1) 内: {self.abs_q}", parameter='abs_q')
        if not (-1.0 < self.theta <= 1.0):
            raise DomainError(f"θ 必须在 (-1,1] 内: {self.theta}", parameter='theta')

    @cached_property
    def t(self) -> float:
        """|q|²"""
        return self.abs_q * self.abs_q

    @cached_property
    def half_phase(self) -> complex:
        """√(q/q̄) 的固定取值 e^{iπθ}"""
        return cmath.exp(1j * math.pi * self.theta)

    @cached_property
    def omega(self) -> complex:
        """q/q̄ = e^{2iπθ}"""
        return cmath.exp(2j * math.pi * self.theta)

    @cached_property
    def q(self) -> complex:
        return self.abs_q * self.half_phase

    @cached_property
    def qbar(self) -> complex:
        return self.q.conjugate()

    @property
    def is_real_case(self) -> bool:
        """θ ∈ {0, 1} 时 q 为实数"""
        return self.theta in (0.0, 1.0)

    def q_pow(self, n: int) -> complex:
        """q^n，n 可为负"""
        return self.abs_q ** n * cmath.exp(1j * math.pi * self.theta * n)

    def qbar_pow(self, n: int) -> complex:
        return self.abs_q ** n * cmath.exp(-1j * math.pi * self.theta * n)

    def omega_pow(self, n: int) -> complex:
        return cmath.exp(2j * math.pi * self.theta * n)
