"""
非交换环面 A_θ 的 Fourier 表示

元素 Σ a_{m,n} u^m v^n 以稠密数组存储：array[m - m0, n - n0] = a_{m,n}，
关系 uv = e^{2πiθ} vu。
"""
from typing import Dict, Tuple

import numpy as np

DEFAULT_PRUNE = 1e-14


class TorusElement:
    """不可变的 Fourier 系数块"""

    __slots__ = ('theta', 'array', 'origin')

    def __init__(self, theta: float, array: np.ndarray, origin: Tuple[int, int], prune: float = DEFAULT_PRUNE):
        self.theta = float(theta)
        arr = np.array(array, dtype=np.complex128, ndmin=2)
        arr = np.where(np.abs(arr) > prune, arr, 0.0)
        m0, n0 = origin
        rows = np.flatnonzero(np.any(arr != 0, axis=1))
        cols = np.flatnonzero(np.any(arr != 0, axis=0))
        if rows.size == 0:
            arr = np.zeros((1, 1), dtype=np.complex128)
            m0, n0 = 0, 0
        else:
            arr = arr[rows[0]:rows[-1] + 1, cols[0]:cols[-1] + 1]
            m0, n0 = m0 - rows[0], n0 - cols[0]
        self.array = arr
        self.origin = (int(m0), int(n0))

    @classmethod
    def from_dict(cls, theta: float, coeffs: Dict[Tuple[int, int], complex]) -> 'TorusElement':
        if not coeffs:
            return cls.zero(theta)
        ms = [m for m, _ in coeffs]
        ns = [n for _, n in coeffs]
        m_lo, n_lo = min(ms), min(ns)
        arr = np.zeros((max(ms) - m_lo + 1, max(ns) - n_lo + 1), dtype=np.complex128)
        for (m, n), c in coeffs.items():
            arr[m - m_lo, n - n_lo] += c
        return cls(theta, arr, (-m_lo, -n_lo))

    @classmethod
    def zero(cls, theta: float) -> 'TorusElement':
        return cls(theta, np.zeros((1, 1)), (0, 0))

    @classmethod
    def unit(cls, theta: float) -> 'TorusElement':
        return cls(theta, np.ones((1, 1)), (0, 0))

    @classmethod
    def u(cls, theta: float, power: int = 1) -> 'TorusElement':
        return cls.from_dict(theta, {(power, 0): 1.0})

    @classmethod
    def v(cls, theta: float, power: int = 1) -> 'TorusElement':
        return cls.from_dict(theta, {(0, power): 1.0})

    @property
    def m_range(self) -> np.ndarray:
        return np.arange(self.array.shape[0]) - self.origin[0]

    @property
    def n_range(self) -> np.ndarray:
        return np.arange(self.array.shape[1]) - self.origin[1]

    def to_dict(self) -> Dict[Tuple[int, int], complex]:
        out = {}
        for a, m in enumerate(self.m_range):
            for b, n in enumerate(self.n_range):
                if self.array[a, b] != 0:
                    out[(int(m), int(n))] = complex(self.array[a, b])
        return out

    def coefficient(self, m: int, n: int) -> complex:
        a, b = m + self.origin[0], n + self.origin[1]
        if 0 <= a < self.array.shape[0] and 0 <= b < self.array.shape[1]:
            return complex(self.array[a, b])
        return 0j

    def _aligned(self, other: 'TorusElement'):
        m_lo = min(self.m_range[0], other.m_range[0])
        m_hi = max(self.m_range[-1], other.m_range[-1])
        n_lo = min(self.n_range[0], other.n_range[0])
        n_hi = max(self.n_range[-1], other.n_range[-1])
        shape = (m_hi - m_lo + 1, n_hi - n_lo + 1)
        out = []
        for x in (self, other):
            arr = np.zeros(shape, dtype=np.complex128)
            a0, b0 = x.m_range[0] - m_lo, x.n_range[0] - n_lo
            arr[a0:a0 + x.array.shape[0], b0:b0 + x.array.shape[1]] = x.array
            out.append(arr)
        return out[0], out[1], (-m_lo, -n_lo)

    def __add__(self, other: 'TorusElement') -> 'TorusElement':
        a, b, origin = self._aligned(other)
        return TorusElement(self.theta, a + b, origin)

    def __sub__(self, other: 'TorusElement') -> 'TorusElement':
        a, b, origin = self._aligned(other)
        return TorusElement(self.theta, a - b, origin)

    def scale(self, factor: complex) -> 'TorusElement':
        return TorusElement(self.theta, self.array * factor, self.origin)

    def __rmul__(self, factor):
        if isinstance(factor, (int, float, complex)):
            return self.scale(factor)
        return NotImplemented

    def __neg__(self):
        return self.scale(-1.0)

    def norm_l1(self) -> float:
        """Fourier 系数的 ℓ¹ 范数（算子范数的上界）"""
        return float(np.abs(self.array).sum())

    def max_abs(self) -> float:
        return float(np.abs(self.array).max())

    def __repr__(self):
        return f"TorusElement(theta={self.theta:.6g}, shape={self.array.shape}, origin={self.origin})"
