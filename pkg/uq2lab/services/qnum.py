"""
q-算术原语：对称 q-整数、Gauss 二项式与小 q-Jacobi 多项式
"""
import logging
import math
from functools import lru_cache

import mpmath

from uq2lab.utils.errors import DomainError

logger = logging.getLogger(__name__)


def _check_base(t: float):
    if not (0.0 < t < 1.0):
        raise DomainError(f"底数 t 必须在 (0,1) 内: {t}", parameter='t')


@lru_cache(maxsize=None)
def q_integer(n: int, t: float) -> float:
    """
    对称 q-整数 |n|_t = (t^{-n} - t^n)/(t^{-1} - t)

    按 Σ_{s=0}^{n-1} t^{-(n-1)+2s} 求和，避免相减抵消。
    """
    _check_base(t)
    if n < 0:
        raise DomainError(f"q_integer 需要 n ≥ 0: {n}", parameter='n')
    return math.fsum(t ** (-(n - 1) + 2 * s) for s in range(n))


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int, t: float) -> float:
    """Gauss 二项式 (n choose k)_t，k 越界时为 0"""
    _check_base(t)
    if k < 0 or k > n:
        return 0.0
    k = min(k, n - k)
    return math.prod((1.0 - t ** (n - k + s)) / (1.0 - t ** s) for s in range(1, k + 1))


@lru_cache(maxsize=None)
def little_q_jacobi_coefficients(n: int, alpha: int, beta: int, t: float) -> tuple:
    """
    小 q-Jacobi 多项式 p_n(x; t^α, t^β; t) 关于 x 的系数

    Koekoek–Swarttouw 归一化：p_n(0) = 1，
    p_n = 2φ1(t^{-n}, t^{α+β+n+1}; t^{α+1}; t; t·x)，级数在 s = n 处终止。
    """
    _check_base(t)
    if n < 0:
        raise DomainError(f"多项式次数必须非负: {n}", parameter='n')
    tt = mpmath.mpf(t)
    top_a = tt ** (-n)
    top_b = tt ** (alpha + beta + n + 1)
    bottom = tt ** (alpha + 1)
    coeffs = []
    for s in range(n + 1):
        denom = mpmath.qp(bottom, tt, s) * mpmath.qp(tt, tt, s)
        if denom == 0:
            raise DomainError(f"小 q-Jacobi 分母为零: α={alpha}, s={s}", parameter='alpha')
        coeffs.append(float(mpmath.qp(top_a, tt, s) * mpmath.qp(top_b, tt, s) / denom * tt ** s))
    return tuple(coeffs)


def little_q_jacobi(n: int, alpha: int, beta: int, x: float, t: float) -> float:
    """小 q-Jacobi 多项式在 x 处的值"""
    coeffs = little_q_jacobi_coefficients(n, alpha, beta, t)
    return math.fsum(c * x ** s for s, c in enumerate(coeffs))
