"""
Peter-Weyl 基上的生成元作用

记号：lmj = ℓ-j, lpj = ℓ+j, lmi = ℓ-i, lpi = ℓ+i（均为整数），fac(e) = 1 - t^e。
目标标签位移以 (Δl2, Δi2, Δj2, Δk) 表示。
"""
import logging
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np
from scipy.sparse import identity

from uq2lab.models.indices import TruncationWindow, validate_fragment
from uq2lab.models.qparam import QParam
from uq2lab.models.sparse_op import SparseOp
from uq2lab.utils.linalg_utils import max_column_norm

logger = logging.getLogger(__name__)

GENERATOR_TAGS = ('a', 'a*', 'b', 'b*', 'D', 'D*')

Shift = Tuple[int, int, int, int]


def _parts(l2: int, i2: int, j2: int):
    return (l2 - j2) // 2, (l2 + j2) // 2, (l2 - i2) // 2, (l2 + i2) // 2


@lru_cache(maxsize=None)
def action_coefficients(qp: QParam, g: str, l2: int, i2: int, j2: int) -> Tuple[Tuple[Shift, complex], ...]:
    """
    生成元 g 作用在 e^ℓ_{i,j,k} 上的非零项

    返回:
        ((Δl2, Δi2, Δj2, Δk), 系数) 的元组；含零因子或目标不合法的 ℓ-1/2 项被省略
    """
    validate_fragment(l2, i2, j2)
    t, s = qp.t, qp.half_phase
    lmj, lpj, lmi, lpi = _parts(l2, i2, j2)

    def fac(e):
        return 1.0 - t ** e

    upper = fac(l2 + 1) * fac(l2 + 2)
    lower = fac(l2) * fac(l2 + 1)
    ji = (j2 - i2) // 2
    terms: List[Tuple[Shift, complex]] = []

    if g == 'b':
        terms.append(((1, -1, 1, 0), qp.q_pow(lmj) * np.sqrt(fac(lpj + 1) * fac(lmi + 1) / upper)))
        if lmj > 0 and lpi > 0:
            coef = -qp.q_pow(lmj - 1) * qp.qbar_pow(ji + 1) * s * np.sqrt(fac(lmj) * fac(lpi) / lower)
            terms.append(((-1, -1, 1, -1), coef))
    elif g == 'b*':
        coef = -qp.q_pow(ji - 1) * qp.qbar_pow(lmj + 1) * s * np.sqrt(fac(lmj + 1) * fac(lpi + 1) / upper)
        terms.append(((1, 1, -1, 1), coef))
        if lpj > 0 and lmi > 0:
            terms.append(((-1, 1, -1, 0), qp.qbar_pow(lmj) * np.sqrt(fac(lpj) * fac(lmi) / lower)))
    elif g == 'a':
        terms.append(((1, -1, -1, 0), np.sqrt(fac(lmj + 1) * fac(lmi + 1) / upper)))
        if lpj > 0 and lpi > 0:
            coef = qp.q_pow(lmj) * qp.qbar_pow(lmi + 1) * s * np.sqrt(fac(lpj) * fac(lpi) / lower)
            terms.append(((-1, -1, -1, -1), coef))
    elif g == 'a*':
        coef = qp.q_pow(lmi) * qp.qbar_pow(lmj + 1) * s * np.sqrt(fac(lpj + 1) * fac(lpi + 1) / upper)
        terms.append(((1, 1, 1, 1), coef))
        if lmj > 0 and lmi > 0:
            terms.append(((-1, 1, 1, 0), np.sqrt(fac(lmj) * fac(lmi) / lower)))
    elif g == 'D':
        terms.append(((0, 0, 0, -1), qp.omega_pow((i2 - j2) // 2)))
    elif g == 'D*':
        terms.append(((0, 0, 0, 1), qp.omega_pow(-(i2 - j2) // 2)))
    elif g == '1':
        terms.append(((0, 0, 0, 0), 1.0))
    else:
        raise ValueError(f"未知生成元: {g}")
    return tuple((shift, complex(c)) for shift, c in terms)


def gamma_plus(qp: QParam, l2: int, i2: int, j2: int) -> complex:
    """bb* 三项式中 e^{ℓ+1}_{i,j,k+1} 的系数"""
    t = qp.t
    lmj, lpj, lmi, lpi = _parts(l2, i2, j2)
    fac = lambda e: 1.0 - t ** e  # noqa: E731
    root = np.sqrt(fac(lpj + 1) * fac(lmj + 1) * fac(lpi + 1) * fac(lmi + 1) / (fac(l2 + 1) * fac(l2 + 3)))
    return complex(-qp.q_pow(lmi) * qp.qbar_pow(lmj + 1) * qp.half_phase / fac(l2 + 2) * root)


def gamma_mid(qp: QParam, l2: int, i2: int, j2: int) -> float:
    t = qp.t
    lmj, lpj, lmi, lpi = _parts(l2, i2, j2)
    fac = lambda e: 1.0 - t ** e  # noqa: E731
    value = t ** lmi * fac(lmj + 1) * fac(lpi + 1) / (fac(l2 + 1) * fac(l2 + 2))
    if lpj > 0 and lmi > 0:
        value += t ** lmj * fac(lpj) * fac(lmi) / (fac(l2) * fac(l2 + 1))
    return float(value)


def gamma_minus(qp: QParam, l2: int, i2: int, j2: int) -> complex:
    """ℓ = w_{ij} 时恰为 0（按指数判断，不做数值阈值）"""
    t = qp.t
    lmj, lpj, lmi, lpi = _parts(l2, i2, j2)
    if min(lmj, lpj, lmi, lpi) == 0:
        return 0j
    fac = lambda e: 1.0 - t ** e  # noqa: E731
    root = np.sqrt(fac(lpj) * fac(lmj) * fac(lpi) * fac(lmi) / (fac(l2 - 1) * fac(l2 + 1)))
    return complex(-qp.q_pow(lmj - 1) * qp.qbar_pow(lmi) * qp.half_phase / fac(l2) * root)


def bbstar_tridiagonal(qp: QParam, i2: int, j2: int, k: int, m_max: int):
    """
    bb* 在 A(i,j,k) = span{e^{w+m}_{i,j,k+m}} 上的 Jacobi 矩阵数据（m = 0..m_max）

    返回:
        (sub, main, sup)：矩阵元 (m+1, m) = sub[m]，(m, m) = main[m]，(m, m+1) = sup[m+1]；sup[0] = 0
    """
    if m_max < 1:
        raise ValueError(f"m_max 至少为 1: {m_max}")
    w2 = max(abs(i2), abs(j2))
    validate_fragment(w2, i2, j2)
    sub = np.array([gamma_plus(qp, w2 + 2 * m, i2, j2) for m in range(m_max)], dtype=np.complex128)
    main = np.array([gamma_mid(qp, w2 + 2 * m, i2, j2) for m in range(m_max + 1)], dtype=np.float64)
    sup = np.array([gamma_minus(qp, w2 + 2 * m, i2, j2) for m in range(m_max + 1)], dtype=np.complex128)
    return sub, main, sup


@lru_cache(maxsize=8)
def window_basis(window: TruncationWindow):
    """窗口的有序基与位置表，同一窗口上的算子共享"""
    basis = tuple(window)
    position = {idx: p for p, idx in enumerate(basis)}
    return basis, position


def build_operator(qp: QParam, g: str, window: TruncationWindow) -> SparseOp:
    """生成元在截断窗口上的稀疏矩阵，列为源标签"""
    basis, position = window_basis(window)
    entries = []
    for idx in basis:
        terms = action_coefficients(qp, g, idx.l2, idx.i2, idx.j2)
        entries.append((idx, [(idx.shifted(*shift), c) for shift, c in terms]))
    return SparseOp.from_entries(basis, entries, position)


def build_bbstar_operator(qp: QParam, window: TruncationWindow) -> SparseOp:
    """由 γ±, γ 直接组装的 bb*"""
    basis, position = window_basis(window)
    entries = []
    for idx in basis:
        l2, i2, j2, _ = idx
        targets = [(idx.shifted(2, 0, 0, 1), gamma_plus(qp, l2, i2, j2)),
                   (idx, gamma_mid(qp, l2, i2, j2))]
        g_minus = gamma_minus(qp, l2, i2, j2)
        if g_minus != 0:
            targets.append((idx.shifted(-2, 0, 0, -1), g_minus))
        entries.append((idx, targets))
    return SparseOp.from_entries(basis, entries, position)


def build_generators(qp: QParam, window: TruncationWindow) -> Dict[str, SparseOp]:
    return {g: build_operator(qp, g, window) for g in GENERATOR_TAGS}


def relation_operators(qp: QParam, ops: Dict[str, SparseOp]) -> Dict[str, Tuple[SparseOp, ...]]:
    """八条定义关系，每条写成一个或两个应为零的算子"""
    a, a_s, b, b_s, d, d_s = (ops[g] for g in GENERATOR_TAGS)
    one = SparseOp.identity(a.basis, a.position)
    return {
        'ba=qab': (b @ a - (a @ b) * qp.q,),
        'a*b=qba*': (a_s @ b - (b @ a_s) * qp.q,),
        'bb*=b*b': (b @ b_s - b_s @ b,),
        'aa*+bb*=1': (a @ a_s + b @ b_s - one,),
        'a*a+|q|^2b*b=1': (a_s @ a + (b_s @ b) * qp.t - one,),
        'aD=Da': (a @ d - d @ a,),
        'bD=q^2|q|^-2Db': (b @ d - (d @ b) * qp.omega,),
        'DD*=D*D=1': (d @ d_s - one, d_s @ d - one),
    }


def verify_relations_pw(qp: QParam, window: TruncationWindow, tol: float = 1e-10) -> Dict[str, float]:
    """
    在全部内部向量上检验八条关系

    返回:
        关系名 → 内部列的最大残差；失败只体现为数值，不抛异常
    """
    ops = build_generators(qp, window)
    interior = window.interior(depth=2)
    residuals = {}
    cols = [ops['a'].position[idx] for idx in interior]
    for name, diffs in relation_operators(qp, ops).items():
        residuals[name] = max(max_column_norm(op.matrix, cols) for op in diffs)
        if residuals[name] >= tol:
            logger.warning(f"Peter-Weyl 关系 {name} 残差超限: {residuals[name]:.3e}")
    logger.debug(f"Peter-Weyl 关系残差: {residuals}")
    return residuals


def alpha_plus_bounds(qp: QParam, l2_max: int) -> Tuple[float, float]:
    """全格点上 α₊ 的最小值与最大值"""
    values = []
    for l2 in range(l2_max + 1):
        for i2 in range(-l2, l2 + 1, 2):
            for j2 in range(-l2, l2 + 1, 2):
                values.append(action_coefficients(qp, 'a', l2, i2, j2)[0][1].real)
    return min(values), max(values)


def isometry_residuals(qp: QParam, l2_max: int) -> Dict[str, float]:
    """
    逐列恒等式：‖a*e‖² + ‖b*e‖² = 1 与 ‖ae‖² + |q|²‖be‖² = 1
    """
    worst = {'aa*+bb*': 0.0, 'a*a+|q|^2b*b': 0.0}
    for l2 in range(l2_max + 1):
        for i2 in range(-l2, l2 + 1, 2):
            for j2 in range(-l2, l2 + 1, 2):
                sq = {g: sum(abs(c) ** 2 for _, c in action_coefficients(qp, g, l2, i2, j2))
                      for g in GENERATOR_TAGS[:4]}
                worst['aa*+bb*'] = max(worst['aa*+bb*'], abs(sq['a*'] + sq['b*'] - 1.0))
                worst['a*a+|q|^2b*b'] = max(worst['a*a+|q|^2b*b'], abs(sq['a'] + qp.t * sq['b'] - 1.0))
    return worst


def adjointness_residual(qp: QParam, window: TruncationWindow, g: str = 'b', g_star: str = 'b*') -> float:
    """内部块上 matrix(g*) 与 matrix(g)^H 的逐元差"""
    op, op_star = build_operator(qp, g, window), build_operator(qp, g_star, window)
    cols = [op.position[idx] for idx in window.interior(depth=1)]
    block = op.matrix.tocsc()[:, cols].tocsr()[cols, :]
    block_star = op_star.matrix.tocsc()[:, cols].tocsr()[cols, :]
    diff = block_star - block.conj().T
    return float(abs(diff).max()) if diff.nnz else 0.0


def composition_residual(qp: QParam, window: TruncationWindow) -> float:
    """matrix(b)·matrix(b*) 与三对角 bb* 在内部列上的差"""
    b, b_s = build_operator(qp, 'b', window), build_operator(qp, 'b*', window)
    diff = b @ b_s - build_bbstar_operator(qp, window)
    return max_column_norm(diff.matrix, [diff.position[idx] for idx in window.interior(depth=2)])


def d_unitarity_residual(qp: QParam, window: TruncationWindow) -> float:
    """D 在 k ∈ [k_min+1, k_max] 子窗口上的列正交性"""
    d = build_operator(qp, 'D', window)
    cols = [d.position[idx] for idx in window if idx.k > window.k_min]
    sub = d.matrix.tocsc()[:, cols]
    gram = (sub.conj().T @ sub).tocsr() - identity(len(cols), dtype=np.complex128, format='csr')
    return float(abs(gram).max()) if gram.nnz else 0.0
