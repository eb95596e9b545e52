"""
等变 Dirac 数据

T 只以本征值函数 d(ℓ,i,k) 表示，不显式存储；对易子由生成元矩阵与本征值差稀疏组装。
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence

import numpy as np
from scipy.sparse import bmat, diags

from uq2lab.models.algebra import AlgebraElement, Monomial
from uq2lab.models.indices import PWIndex, TruncationWindow, validate_fragment
from uq2lab.models.qparam import QParam
from uq2lab.models.sparse_op import SparseOp
from uq2lab.services.pw_rep import GENERATOR_TAGS, action_coefficients, build_operator, window_basis
from uq2lab.utils.linalg_utils import loglog_slope, max_column_norm

logger = logging.getLogger(__name__)

# 非退化检验的固定源向量 e^1_{0,0,0}
WITNESS_SOURCE = PWIndex(2, 0, 0, 0)


def dirac_eigenvalue(l2: int, i2: int, k: int) -> complex:
    """
    d(ℓ,i,k)：i = -ℓ 时为 -(2ℓ+1) + ik，否则为 (2ℓ+1) + i(k-ℓ-i)

    与 j 无关；|d|² = (2ℓ+1)² + (k-ℓ-i)² 在两个分支上都成立。
    """
    validate_fragment(l2, i2, l2)
    if i2 == -l2:
        return complex(-(l2 + 1), k)
    return complex(l2 + 1, k - (l2 + i2) // 2)


def dirac_modulus_squared(l2: int, i2: int, k: int) -> int:
    """|d(ℓ,i,k)|² 的整数值"""
    return (l2 + 1) ** 2 + (k - (l2 + i2) // 2) ** 2


def dirac_diagonal(window: TruncationWindow) -> np.ndarray:
    basis, _ = window_basis(window)
    return np.array([dirac_eigenvalue(idx.l2, idx.i2, idx.k) for idx in basis], dtype=np.complex128)


def commutator(qp: QParam, g: str, window: TruncationWindow, adjoint_dirac: bool = False) -> SparseOp:
    """[T, π(g)]（adjoint_dirac 时为 [T*, π(g)]）"""
    op = build_operator(qp, g, window)
    d = dirac_diagonal(window)
    if adjoint_dirac:
        d = d.conj()
    dm = diags(d, format='csr')
    return SparseOp(op.basis, dm @ op.matrix - op.matrix @ dm, op.position)


def commutator_norm(qp: QParam, g: str, window: TruncationWindow, adjoint_dirac: bool = False) -> float:
    """[T, π(g)] 在窗口内部列上的最大列范数；g = '1' 时为 0"""
    if g == '1':
        return 0.0
    comm = commutator(qp, g, window, adjoint_dirac)
    cols = [comm.position[idx] for idx in window.interior(depth=1)]
    return max_column_norm(comm.matrix, cols)


def commutator_bound(qp: QParam, g: str, l2_max: int) -> float:
    """
    对易子列范数的解析上界

    D, D* 为 1；a, b 为 1 + max(1, sup |q|^{2ℓ-1}(4ℓ+1))；a*, b* 为 1 + max(1, sup |q|^{2ℓ}(4ℓ+3))。
    """
    if g in ('D', 'D*'):
        return 1.0
    if g == '1':
        return 0.0
    q = qp.abs_q
    if g in ('a', 'b'):
        sup = max(q ** (l2 - 1) * (2 * l2 + 1) for l2 in range(1, max(l2_max, 1) + 1))
    elif g in ('a*', 'b*'):
        sup = max(q ** l2 * (2 * l2 + 3) for l2 in range(0, l2_max + 1))
    else:
        raise ValueError(f"未知生成元: {g}")
    return 1.0 + max(1.0, sup)


def star_identity_residual(qp: QParam, window: TruncationWindow, g: str = 'b', g_star: str = 'b*') -> float:
    """[T, π(g*)] + [T*, π(g)]* 在内部列上的残差"""
    lhs = commutator(qp, g_star, window)
    rhs = commutator(qp, g, window, adjoint_dirac=True).adjoint()
    cols = [lhs.position[idx] for idx in window.interior(depth=2)]
    return max_column_norm((lhs + rhs).matrix, cols)


# ---------- 本征值计数 ----------

def eigenvalue_count(lam: float) -> int:
    """#{(ℓ,i,j,k) : |d(ℓ,i,k)| ≤ Λ}，精确整数枚举"""
    if lam < 1:
        raise ValueError(f"Λ 至少为 1: {lam}")
    bound = math.floor(lam * lam)
    total = 0
    l2 = 0
    while (l2 + 1) ** 2 <= bound:
        total += (l2 + 1) ** 2 * (2 * math.isqrt(bound - (l2 + 1) ** 2) + 1)
        l2 += 1
    return total


def eigenvalue_count_k0(lam: float) -> int:
    """k = 0 平面上的计数"""
    bound = math.floor(lam * lam)
    total = 0
    l2 = 0
    while (l2 + 1) ** 2 <= bound:
        for lpi in range(l2 + 1):
            if (l2 + 1) ** 2 + lpi ** 2 <= bound:
                total += l2 + 1
        l2 += 1
    return total


def count_bounds(n: int):
    """整数 Λ = n 时的 (下界 #R_n, 上界 4n·Σ(2m+1)²)"""
    quarter = n // 4
    lower = (quarter + 1) * sum(m * m for m in range(1, quarter + 1))
    upper = 4 * n * sum((2 * m + 1) ** 2 for m in range(n + 1))
    return lower, upper


def summability_slope(lambda_max: float, lambda_min: float = None, points: int = 17, plane: bool = False) -> float:
    """log 计数对 log Λ 的拟合斜率，默认区间 [Λ_max/2, Λ_max]"""
    if lambda_max < 8:
        raise ValueError(f"Λ_max 至少为 8: {lambda_max}")
    lo = lambda_min if lambda_min is not None else lambda_max / 2.0
    grid = np.linspace(lo, lambda_max, points)
    counter = eigenvalue_count_k0 if plane else eigenvalue_count
    slope = loglog_slope(grid, [counter(x) for x in grid])
    logger.debug(f"可和性斜率 Λ∈[{lo:g},{lambda_max:g}] plane={plane}: {slope:.4f}")
    return slope


# ---------- 等变性 ----------

def _diag_commutator_residual(window: TruncationWindow, op: SparseOp) -> float:
    d = diags(dirac_diagonal(window), format='csr')
    comm = d @ op.matrix - op.matrix @ d
    return float(abs(comm).max()) if comm.nnz else 0.0


def j_mixer(window: TruncationWindow, l2: int, i2: int, k: int, block: np.ndarray) -> SparseOp:
    """只作用在固定 (ℓ,i,k) 块 j 指标上的算子"""
    basis, position = window_basis(window)
    js = list(range(-l2, l2 + 1, 2))
    entries = []
    for col, j2 in enumerate(js):
        targets = [(PWIndex(l2, i2, jt, k), block[row, col]) for row, jt in enumerate(js)]
        entries.append((PWIndex(l2, i2, j2, k), targets))
    return SparseOp.from_entries(basis, entries, position)


def check_equivariance(window: TruncationWindow, trials: int, seed: int = 0) -> float:
    """
    随机 j-混合块算子与 T 的对易子最大模

    块 (ℓ,i,k) 与复高斯矩阵由 seed 决定；单位混合算子总是包含在内。
    """
    if trials < 1:
        raise ValueError(f"trials 至少为 1: {trials}")
    rng = np.random.default_rng(seed)
    worst = _diag_commutator_residual(window, SparseOp.identity(*window_basis(window)))
    for _ in range(trials):
        l2 = int(rng.integers(0, window.l2_max + 1))
        i2 = -l2 + 2 * int(rng.integers(0, l2 + 1))
        k = int(rng.integers(window.k_min, window.k_max + 1))
        size = l2 + 1
        block = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
        worst = max(worst, _diag_commutator_residual(window, j_mixer(window, l2, i2, k, block)))
    return worst


def equivariance_negative_control(window: TruncationWindow) -> float:
    """ℓ → ℓ+1 平移（保持 i, j, k）与 T 的对易子，应不小于 1"""
    basis, position = window_basis(window)
    shift = SparseOp.from_entries(basis, ((idx, [(idx.shifted(2, 0, 0, 0), 1.0)]) for idx in basis), position)
    cols = [position[idx] for idx in window.interior(depth=2)]
    d = diags(dirac_diagonal(window), format='csr')
    return max_column_norm(d @ shift.matrix - shift.matrix @ d, cols)


# ---------- 非退化 ----------

def apply_monomial(qp: QParam, mono: Monomial, vector: Dict[PWIndex, complex]) -> Dict[PWIndex, complex]:
    """a_n b^m (b*)^r D^k 作用在有限支撑向量上（不截断）"""
    n, m, r, k = mono
    word = (['D'] * k if k >= 0 else ['D*'] * (-k)) + ['b*'] * r + ['b'] * m
    word += ['a'] * n if n >= 0 else ['a*'] * (-n)
    for g in word:
        out: Dict[PWIndex, complex] = {}
        for idx, c in vector.items():
            for shift, coef in action_coefficients(qp, g, idx.l2, idx.i2, idx.j2):
                tgt = idx.shifted(*shift)
                out[tgt] = out.get(tgt, 0j) + c * coef
        vector = out
    return vector


def witness_target(mono: Monomial, source: PWIndex = WITNESS_SOURCE) -> PWIndex:
    """单项式在源向量上最高 ℓ 分量的标签"""
    n, m, r, k = mono
    extra = abs(n) if n < 0 else 0
    return PWIndex(source.l2 + abs(n) + m + r, source.i2 - n - m + r, source.j2 - n + m - r,
                   source.k + r - k + extra)


def nondegeneracy_witness(qp: QParam, x: AlgebraElement) -> float:
    """
    |⟨e_target, [T, x] e^1_{0,0,0}⟩|

    目标取总次数最大的单项式（同次时取 |n|+m+r 较大者）的最高 ℓ 分量；x 为标量时返回 0。
    """
    nonscalar = [(mono, c) for mono, c in x.items() if mono != Monomial(0, 0, 0, 0)]
    if not nonscalar:
        return 0.0
    lead, _ = max(nonscalar, key=lambda mc: (mc[0].degree, abs(mc[0].n) + mc[0].m + mc[0].r, mc[0]))
    target = witness_target(lead)
    src = WITNESS_SOURCE
    d_src = dirac_eigenvalue(src.l2, src.i2, src.k)
    d_tgt = dirac_eigenvalue(target.l2, target.i2, target.k)
    amplitude = 0j
    for mono, c in nonscalar:
        amplitude += c * apply_monomial(qp, mono, {src: 1.0}).get(target, 0j)
    value = abs((d_tgt - d_src) * amplitude)
    logger.debug(f"非退化见证 lead={tuple(lead)} target={tuple(target)}: {value:.6g}")
    return value


def witness_monomials() -> List[Monomial]:
    """20 个非标量测试单项式"""
    return [
        Monomial(1, 0, 0, 0), Monomial(-1, 0, 0, 0), Monomial(0, 1, 0, 0), Monomial(0, 0, 1, 0),
        Monomial(0, 0, 0, 1), Monomial(0, 0, 0, -1), Monomial(2, 0, 0, 0), Monomial(-2, 0, 0, 0),
        Monomial(0, 2, 0, 0), Monomial(0, 0, 2, 0), Monomial(0, 1, 1, 0), Monomial(1, 1, 0, 0),
        Monomial(-1, 0, 1, 0), Monomial(1, 0, 0, 2), Monomial(0, 1, 0, -1), Monomial(0, 0, 1, 1),
        Monomial(-1, 1, 0, 1), Monomial(1, 1, 1, 0), Monomial(0, 0, 0, 3), Monomial(-2, 1, 0, -1),
    ]


# ---------- 偶谱三元组 ----------

@dataclass
class EvenTriple:
    """加倍空间上的 𝒟 = [[0, T*], [T, 0]] 与分次 γ = diag(1, -1)"""
    window: TruncationWindow
    dirac: object
    grading: object

    def represent(self, op: SparseOp):
        return bmat([[op.matrix, None], [None, op.matrix]], format='csr')

    def residuals(self, qp: QParam, generators: Sequence[str] = GENERATOR_TAGS) -> Dict[str, float]:
        """{𝒟,γ}、[γ,π(g)]、𝒟² 对角性，以及 [𝒟,π(g)] 与 T, T* 对易子范数之差"""
        anti = self.dirac @ self.grading + self.grading @ self.dirac
        out = {'anticommutator': float(abs(anti).max()) if anti.nnz else 0.0}
        d = dirac_diagonal(self.window)
        square = self.dirac @ self.dirac - diags(np.concatenate([np.abs(d) ** 2] * 2), format='csr')
        out['square'] = float(abs(square).max()) if square.nnz else 0.0
        size = len(d)
        interior = [window_basis(self.window)[1][idx] for idx in self.window.interior(depth=1)]
        cols = interior + [size + c for c in interior]
        grading_worst, norm_worst = 0.0, 0.0
        for g in generators:
            rep = self.represent(build_operator(qp, g, self.window))
            comm = self.grading @ rep - rep @ self.grading
            grading_worst = max(grading_worst, float(abs(comm).max()) if comm.nnz else 0.0)
            doubled = max_column_norm(self.dirac @ rep - rep @ self.dirac, cols)
            expected = max(commutator_norm(qp, g, self.window), commutator_norm(qp, g, self.window, True))
            norm_worst = max(norm_worst, abs(doubled - expected))
        out['grading_commutator'] = grading_worst
        out['commutator_norms'] = norm_worst
        return out


def assemble_even_triple(window: TruncationWindow) -> EvenTriple:
    d = dirac_diagonal(window)
    t_op = diags(d, format='csr')
    dirac = bmat([[None, t_op.conj().T], [t_op, None]], format='csr')
    grading = diags(np.concatenate([np.ones(len(d)), -np.ones(len(d))]), format='csr')
    return EvenTriple(window, dirac, grading)


# ---------- 紧预解式 ----------

def resolvent_decay(window: TruncationWindow, eps_values: Iterable[float] = (1.0, 0.5, 0.25, 0.125)) -> Dict:
    """
    1/|d|² 的三条上界、k ≤ 0 等号情形与 |𝒟|^{-1} 超过 ε 的奇异值计数

    返回:
        violations（违反上界的标签数）、equality_mismatches（等号成立 ⇔ i = -ℓ 的反例数）、
        counts（ε → 窗口内 1/|d| ≥ ε 的个数）
    """
    violations = 0
    mismatches = 0
    moduli = []
    for idx in window:
        l2, i2, _, k = idx
        mod2 = dirac_modulus_squared(l2, i2, k)
        base = (l2 + 1) ** 2
        if mod2 < base:
            violations += 1
        if k >= l2 and mod2 < base + (k - l2) ** 2:
            violations += 1
        if k <= 0:
            tail = base + k * k
            if mod2 < tail:
                violations += 1
            if (mod2 == tail) != (i2 == -l2):
                mismatches += 1
        moduli.append(mod2)
    moduli = np.asarray(moduli, dtype=float)
    counts = {float(eps): int(np.sum(moduli <= 1.0 / (eps * eps))) for eps in eps_values}
    if violations or mismatches:
        logger.warning(f"预解式上界异常: violations={violations}, mismatches={mismatches}")
    return {'violations': violations, 'equality_mismatches': mismatches, 'counts': counts}
