"""
ℓ²(ℕ)⊗ℓ²(ℤ)⊗ℓ²(ℤ) 上的忠实表示

π(a) = √(1-|q|^{2N}) V⊗1⊗1，π(b) = q^N⊗U⊗1，π(D) = 1⊗e^{-2iπθN}⊗U；
辅助算子 a₀ = V⊗1⊗1，b₀ = p⊗U⊗1，P = p⊗1⊗1。
"""
import cmath
import logging
import math
from functools import lru_cache
from typing import Dict, Tuple

import numpy as np

from uq2lab.models.indices import HeisIndex, HeisWindow
from uq2lab.models.qparam import QParam
from uq2lab.models.sparse_op import SparseOp
from uq2lab.services.pw_rep import GENERATOR_TAGS, relation_operators
from uq2lab.utils.linalg_utils import max_column_norm

logger = logging.getLogger(__name__)

HEIS_TAGS = ('a', 'a*', 'b', 'b*', 'D', 'D*', 'a0', 'a0*', 'b0', 'b0*', 'Dtheta', 'P')


@lru_cache(maxsize=8)
def heis_basis(window: HeisWindow):
    basis = tuple(window)
    return basis, {idx: p for p, idx in enumerate(basis)}


def _column(qp: QParam, g: str, idx: HeisIndex):
    n, k, l = idx
    t = qp.t
    if g == 'a':
        return [(HeisIndex(n + 1, k, l), math.sqrt(1.0 - t ** (n + 1)))]
    if g == 'a*':
        return [(HeisIndex(n - 1, k, l), math.sqrt(1.0 - t ** n))] if n > 0 else []
    if g == 'b':
        return [(HeisIndex(n, k + 1, l), qp.q_pow(n))]
    if g == 'b*':
        return [(HeisIndex(n, k - 1, l), qp.qbar_pow(n))]
    if g in ('D', 'Dtheta'):
        return [(HeisIndex(n, k, l + 1), cmath.exp(-2j * math.pi * qp.theta * k))]
    if g == 'D*':
        return [(HeisIndex(n, k, l - 1), cmath.exp(2j * math.pi * qp.theta * k))]
    if g == 'a0':
        return [(HeisIndex(n + 1, k, l), 1.0)]
    if g == 'a0*':
        return [(HeisIndex(n - 1, k, l), 1.0)] if n > 0 else []
    if g == 'b0':
        return [(HeisIndex(0, k + 1, l), 1.0)] if n == 0 else []
    if g == 'b0*':
        return [(HeisIndex(0, k - 1, l), 1.0)] if n == 0 else []
    if g == 'P':
        return [(idx, 1.0)] if n == 0 else []
    raise ValueError(f"未知生成元: {g}")


def heis_generator(qp: QParam, g: str, window: HeisWindow) -> SparseOp:
    """在窗口上构建 g 的表示算子，窗口外的像被截断"""
    basis, position = heis_basis(window)
    return SparseOp.from_entries(basis, ((idx, _column(qp, g, idx)) for idx in basis), position)


def bbstar_heis(qp: QParam, window: HeisWindow) -> SparseOp:
    """π(bb*) = |q|^{2N}⊗1⊗1，按对角直接构建"""
    basis, position = heis_basis(window)
    return SparseOp.diagonal(basis, [qp.t ** idx.n for idx in basis], position)


def _interior_cols(window: HeisWindow, position, depth: int = 2):
    return [position[idx] for idx in window.interior(depth)]


def relation_residuals_heis(qp: QParam, window: HeisWindow, tol: float = 1e-13) -> Dict[str, float]:
    """八条关系在内部向量上的最大残差"""
    ops = {g: heis_generator(qp, g, window) for g in GENERATOR_TAGS}
    cols = _interior_cols(window, ops['a'].position)
    residuals = {}
    for name, diffs in relation_operators(qp, ops).items():
        residuals[name] = max(max_column_norm(op.matrix, cols) for op in diffs)
        if residuals[name] >= tol:
            logger.warning(f"Heisenberg 关系 {name} 残差超限: {residuals[name]:.3e}")
    return residuals


def compact_difference_profile(qp: QParam, n0: int) -> float:
    """
    sup_{n ≥ n0} |√(1-|q|^{2(n+1)}) - 1|，即 a - a₀ 在 n ≥ n0 上的尾部范数

    上确界在 n = n0 处取到；写成 t^{n0+1}/(1+√(1-t^{n0+1})) 避免相减抵消。
    """
    if n0 < 0:
        raise ValueError(f"n0 必须非负: {n0}")
    x = qp.t ** (n0 + 1)
    return x / (1.0 + math.sqrt(1.0 - x))


def spectrum_bbstar_heis(qp: QParam, window: HeisWindow) -> np.ndarray:
    """π(bb*) 在窗口上的特征值（降序），直接读取对角线"""
    diag = bbstar_heis(qp, window).matrix.diagonal().real
    return np.sort(diag)[::-1]


def bbstar_diagonality(qp: QParam, window: HeisWindow) -> float:
    """π(b)π(b*) 与对角 |q|^{2N} 在内部列上的差"""
    b, b_s = heis_generator(qp, 'b', window), heis_generator(qp, 'b*', window)
    diff = b @ b_s - bbstar_heis(qp, window)
    return max_column_norm(diff.matrix, _interior_cols(window, diff.position, depth=1))


def torus_generators_on_P(qp: QParam, window: HeisWindow) -> Tuple[SparseOp, SparseOp, Dict[str, float]]:
    """
    压缩 Pb, PD 及其在内部上的检验

    返回:
        (Pb, PD, 残差表)：旋转关系 PbPD = e^{2iπθ}PDPb、两者在 P 值域上的酉性、Pbb*P = P
    """
    p = heis_generator(qp, 'P', window)
    pb = p @ heis_generator(qp, 'b', window) @ p
    pd = p @ heis_generator(qp, 'D', window) @ p
    basis, position = heis_basis(window)
    cols = [position[idx] for idx in window.interior(2) if idx.n == 0]
    rotation = pb @ pd - (pd @ pb) * qp.omega
    residuals = {
        'rotation': max_column_norm(rotation.matrix, cols),
        'Pb_unitary': max_column_norm((pb.adjoint() @ pb - p).matrix, cols),
        'PD_unitary': max_column_norm((pd.adjoint() @ pd - p).matrix, cols),
        'Pbb*P=P': max_column_norm((pb @ pb.adjoint() - p).matrix, cols),
    }
    return pb, pd, residuals


def structure_residuals(qp: QParam, window: HeisWindow, unit_max: int = 3) -> Dict[str, float]:
    """
    理想与商代数生成元的结构检验

    b = Σ q^n a₀^n b₀ a₀*^n；矩阵单位 a₀^j b₀b₀* a₀*^i = p_{ji}⊗1⊗1；
    K₁ 生成元 u₁ = D_θ(1 - a₀a₀*) + a₀a₀* 的酉性及其与 p⊗e^{-2πiθN}⊗U + (1-p) 的一致性。
    """
    basis, position = heis_basis(window)
    ops = {g: heis_generator(qp, g, window) for g in ('b', 'a0', 'a0*', 'b0', 'b0*', 'Dtheta', 'P')}
    one = SparseOp.identity(basis, position)
    cols = _interior_cols(window, position, depth=2)

    series = heis_generator(qp, 'P', window) * 0.0
    a0_pow, a0s_pow = one, one
    for n in range(window.n_max + 1):
        series = series + (a0_pow @ ops['b0'] @ a0s_pow) * qp.q_pow(n)
        a0_pow, a0s_pow = ops['a0'] @ a0_pow, a0s_pow @ ops['a0*']
    residuals = {'b_series': max_column_norm((ops['b'] - series).matrix, cols)}

    b0b0s = ops['b0'] @ ops['b0*']
    worst = 0.0
    for i in range(unit_max + 1):
        for j in range(unit_max + 1):
            unit = _power(ops['a0'], j, one) @ b0b0s @ _power(ops['a0*'], i, one)
            target = SparseOp.from_entries(
                basis, ((idx, [(HeisIndex(j, idx.k, idx.l), 1.0)] if idx.n == i else []) for idx in basis),
                position)
            worst = max(worst, max_column_norm((unit - target).matrix, cols))
    residuals['matrix_units'] = worst

    proj = one - ops['a0'] @ ops['a0*']
    u1 = ops['Dtheta'] @ proj + ops['a0'] @ ops['a0*']
    residuals['K1_unitary'] = max_column_norm((u1.adjoint() @ u1 - one).matrix, cols)
    residuals['K1_form'] = max_column_norm((u1 - (ops['Dtheta'] @ ops['P'] + one - ops['P'])).matrix, cols)
    return residuals


def _power(op: SparseOp, e: int, one: SparseOp) -> SparseOp:
    result = one
    for _ in range(e):
        result = op @ result
    return result
