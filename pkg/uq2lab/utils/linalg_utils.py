"""
共用数值工具：稀疏列范数、带相位规范的三对角特征分解、±1 附近特征值计数、对数斜率
"""
import logging
from typing import Sequence, Tuple

import numpy as np
import scipy.linalg
from scipy.sparse import issparse
from scipy.sparse.linalg import eigsh

logger = logging.getLogger(__name__)

DENSE_LIMIT = 2500


def max_column_norm(matrix, cols: Sequence[int]) -> float:
    """选定列的 2-范数最大值"""
    if len(cols) == 0:
        return 0.0
    sub = matrix.tocsc()[:, list(cols)]
    if sub.nnz == 0:
        return 0.0
    norms = np.sqrt(np.asarray(abs(sub).power(2).sum(axis=0)).ravel())
    return float(norms.max())


def tridiagonal_gauge(sub: np.ndarray) -> np.ndarray:
    """对角相位 φ₀ = 1, φ_{m+1} = φ_m · sub[m]/|sub[m]|，使次对角线变为 |sub|"""
    phases = np.ones(len(sub) + 1, dtype=np.complex128)
    for m, s in enumerate(sub):
        unit = s / abs(s) if s != 0 else 1.0
        phases[m + 1] = phases[m] * unit
    return phases


def hermitian_tridiagonal_eigh(sub: np.ndarray, main: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Hermite 三对角矩阵（(m+1,m) 元为 sub[m]）的特征分解

    先做相位规范化为实对称矩阵，再用二分法 + 逆迭代（LAPACK stebz/stein）；
    特征向量变换回原始基。

    返回:
        (升序特征值, 以列存放的特征向量)
    """
    phases = tridiagonal_gauge(sub)
    evals, evecs = scipy.linalg.eigh_tridiagonal(
        np.asarray(main, dtype=np.float64), np.abs(sub), lapack_driver='stebz')
    return evals, phases[:, None] * evecs


def count_unit_eigenvalues(matrix, sv_tol: float, n_eigs: int = 12, seed: int = 0):
    """
    自伴算子（通常为两投影之差）在 ±1 附近的特征值计数

    每个特征值 λ 对应奇异值 σ = √(1-λ²)；σ < sv_tol 的计入。

    返回:
        (n_plus, n_minus, gap_ratio, sigmas)：gap_ratio 为最小未计入 σ 与最大计入 σ（无计入时取 sv_tol）之比
    """
    dim = matrix.shape[0]
    data = matrix.data if issparse(matrix) else np.asarray(matrix)
    if dim == 0 or not np.any(np.abs(data) > 0):
        evals = np.zeros(min(dim, n_eigs))
    elif dim <= DENSE_LIMIT:
        dense = matrix.toarray() if issparse(matrix) else np.asarray(matrix)
        evals = np.linalg.eigvalsh(dense)
    else:
        rng = np.random.default_rng(seed)
        v0 = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        evals = eigsh(matrix, k=min(n_eigs, dim - 2), which='LM', v0=v0, return_eigenvectors=False)
    evals = np.real(evals)
    sigmas = np.sqrt(np.clip(1.0 - evals ** 2, 0.0, None))
    counted = sigmas < sv_tol
    n_plus = int(np.sum(counted & (evals > 0)))
    n_minus = int(np.sum(counted & (evals < 0)))
    largest_counted = float(sigmas[counted].max()) if counted.any() else sv_tol
    smallest_rest = float(sigmas[~counted].min()) if (~counted).any() else np.inf
    gap_ratio = smallest_rest / max(largest_counted, np.finfo(float).tiny)
    logger.debug(f"±1 特征值计数: n+={n_plus}, n-={n_minus}, 间隙比={gap_ratio:.3g}")
    return n_plus, n_minus, gap_ratio, np.sort(sigmas)


def loglog_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """log y 对 log x 的最小二乘斜率"""
    return float(np.polyfit(np.log(np.asarray(x, dtype=float)), np.log(np.asarray(y, dtype=float)), 1)[0])
