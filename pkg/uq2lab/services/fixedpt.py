"""
bb* 的不动点分析

A(i,j,k) = span{e^{w+m}_{i,j,k+m}} 上 bb* 为 Jacobi 矩阵，三项递推
λc_m = γ₋(w+m+1)c_{m+1} + γ(w+m)c_m + γ₊(w+m-1)c_{m-1}。
E₁ 正交基 |i,j,k⟩ 的系数 c_m 位于 e^{w+2m}_{i,j,n_r+k+m}（两倍记号）。
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from uq2lab.models.algebra import Monomial
from uq2lab.models.indices import PWIndex, validate_fragment
from uq2lab.models.qparam import QParam
from uq2lab.services.dirac import apply_monomial
from uq2lab.services.pw_rep import bbstar_tridiagonal, gamma_minus, gamma_mid, gamma_plus
from uq2lab.utils.errors import LevelNotDetectedError, PreconditionError
from uq2lab.utils.linalg_utils import hermitian_tridiagonal_eigh

logger = logging.getLogger(__name__)

Vector = Dict[PWIndex, complex]


@dataclass(frozen=True)
class FixedVector:
    """A(i,j,k) 展开系数，Σ|c_m|² = 1"""
    i2: int
    j2: int
    k: int
    level: int
    coefficients: np.ndarray = field(repr=False)
    residual: float = 0.0

    @property
    def w2(self) -> int:
        return max(abs(self.i2), abs(self.j2))

    def label(self, m: int) -> PWIndex:
        return PWIndex(self.w2 + 2 * m, self.i2, self.j2, self.level + self.k + m)

    def as_vector(self) -> Vector:
        return {self.label(m): complex(c) for m, c in enumerate(self.coefficients)}


@dataclass(frozen=True)
class OmegaSet:
    """检出的层 n_r 及其本征值；unmatched 为未匹配的截断本征值"""
    levels: Tuple[int, ...]
    eigenvalues: Dict[int, float]
    spectrum: Tuple[float, ...]
    unmatched: Tuple[float, ...]


@dataclass(frozen=True)
class RecurrenceResult:
    summable: bool
    seed_residual: float
    tail_ratio: float
    vector: Optional[FixedVector] = None


def _fragment_level(i2: int, j2: int) -> int:
    validate_fragment(max(abs(i2), abs(j2)), i2, j2)
    if (i2 + j2) % 2:
        raise PreconditionError(f"i+j 必须为整数: i2={i2}, j2={j2}")
    return (i2 + j2) // 2


# ---------- 递推 ----------

def forward_recursion(qp: QParam, lam: float, i2: int, j2: int, m_max: int, c0: complex = 1.0) -> np.ndarray:
    """按 c_{-1} = 0 前向递推；γ₋ 为零时报 PreconditionError"""
    sub, main, sup = bbstar_tridiagonal(qp, i2, j2, 0, m_max)
    c = np.zeros(m_max + 1, dtype=np.complex128)
    c[0] = c0
    with np.errstate(all='ignore'):
        for m in range(m_max):
            if sup[m + 1] == 0:
                raise PreconditionError(f"γ₋ 在 m={m + 1} 处为零", residual=0.0)
            prev = sub[m - 1] * c[m - 1] if m > 0 else 0.0
            c[m + 1] = ((lam - main[m]) * c[m] - prev) / sup[m + 1]
    return c


def _tail_ratio(c: np.ndarray) -> float:
    quarter = c[3 * len(c) // 4:]
    with np.errstate(all='ignore'):
        ratios = np.abs(quarter[1:]) / np.abs(quarter[:-1])
    ratios = ratios[np.isfinite(ratios)]
    return float(np.median(ratios)) if len(ratios) else float('nan')


def solve_recurrence(qp: QParam, lam: float, i2: int, j2: int, m_max: int, tol: float = 1e-8) -> RecurrenceResult:
    """
    c₀ = 1 的截断带状求解

    第 1..m_max 行（c_{m_max+1} = 0）给出最小解，种子方程（第 0 行）残差决定是否可和；
    前向递推的尾部比值仅作报告。
    """
    if m_max < 8:
        raise PreconditionError(f"m_max 至少为 8: {m_max}")
    level = _fragment_level(i2, j2)
    sub, main, sup = bbstar_tridiagonal(qp, i2, j2, 0, m_max)
    ab = np.zeros((3, m_max), dtype=np.complex128)
    ab[0, 1:] = sup[2:]
    ab[1, :] = main[1:] - lam
    ab[2, :-1] = sub[1:]
    rhs = np.zeros(m_max, dtype=np.complex128)
    rhs[0] = -sub[0]
    tail = scipy.linalg.solve_banded((1, 1), ab, rhs)
    c = np.concatenate([[1.0 + 0j], tail])
    seed = abs((main[0] - lam) + sup[1] * c[1]) / max(1.0, abs(lam))

    with np.errstate(all='ignore'):
        ratio = _tail_ratio(forward_recursion(qp, lam, i2, j2, m_max))
    summable = bool(seed < tol and np.all(np.isfinite(c)))
    logger.debug(f"递推 λ={lam:.6g} (i2,j2)=({i2},{j2}): 种子残差={seed:.3e}, 尾部比={ratio:.3g}")
    if not summable:
        return RecurrenceResult(False, float(seed), ratio)
    c = c / np.linalg.norm(c)
    return RecurrenceResult(True, float(seed), ratio, FixedVector(i2, j2, 0, level, c, float(seed)))


def closed_form_c(qp: QParam, m: int) -> float:
    """(i,j) = (0,0), λ = 1 的解：(-1)^m |q|^{m²} √((1-|q|^{4m+2})/(1-|q|²))"""
    if m < 0:
        raise ValueError(f"m 必须非负: {m}")
    q = qp.abs_q
    return (-1) ** m * q ** (m * m) * math.sqrt((1.0 - q ** (4 * m + 2)) / (1.0 - qp.t))


# ---------- (0,0) 扇区的 Υ ----------

def upsilon_0(qp: QParam, m: int) -> float:
    t = qp.t
    value = t ** m * (1 - t ** (m + 1)) ** 2 / ((1 - t ** (2 * m + 1)) * (1 - t ** (2 * m + 2)))
    if m > 0:
        value += t ** m * (1 - t ** m) ** 2 / ((1 - t ** (2 * m)) * (1 - t ** (2 * m + 1)))
    return value


def upsilon_1(qp: QParam, m: int) -> float:
    t = qp.t
    return (-qp.abs_q ** (2 * m + 1) * (1 - t ** (m + 1)) ** 2
            / ((1 - t ** (2 * m + 2)) * math.sqrt((1 - t ** (2 * m + 1)) * (1 - t ** (2 * m + 3)))))


def upsilon_minus_1(qp: QParam, m: int) -> float:
    if m == 0:
        return 0.0
    t = qp.t
    return (-qp.abs_q ** (2 * m - 1) * (1 - t ** m) ** 2
            / ((1 - t ** (2 * m)) * math.sqrt((1 - t ** (2 * m - 1)) * (1 - t ** (2 * m + 1)))))


def upsilon_residuals(qp: QParam, m_max: int = 30) -> Dict[str, float]:
    """闭式 Υ 与 γ 数据的差，以及 Υ₁(m-1) = Υ₋₁(m)"""
    worst = {'upsilon_0': 0.0, 'upsilon_1': 0.0, 'upsilon_-1': 0.0, 'symmetry': 0.0}
    for m in range(m_max + 1):
        worst['upsilon_0'] = max(worst['upsilon_0'], abs(upsilon_0(qp, m) - gamma_mid(qp, 2 * m, 0, 0)))
        worst['upsilon_1'] = max(worst['upsilon_1'], abs(upsilon_1(qp, m) - gamma_plus(qp, 2 * m, 0, 0)))
        worst['upsilon_-1'] = max(worst['upsilon_-1'], abs(upsilon_minus_1(qp, m) - gamma_minus(qp, 2 * m, 0, 0)))
        if m >= 1:
            worst['symmetry'] = max(worst['symmetry'], abs(upsilon_1(qp, m - 1) - upsilon_minus_1(qp, m)))
    return worst


def closed_form_residuals(qp: QParam, m_max: int = 30) -> Dict[str, float]:
    """闭式解代入种子方程与一般递推的残差"""
    c = [closed_form_c(qp, m) for m in range(m_max + 2)]
    seed = abs(c[0] - c[0] * upsilon_0(qp, 0) - c[1] * upsilon_minus_1(qp, 1))
    general = 0.0
    for m in range(1, m_max + 1):
        rhs = c[m + 1] * upsilon_minus_1(qp, m + 1) + c[m] * upsilon_0(qp, m) + c[m - 1] * upsilon_1(qp, m - 1)
        general = max(general, abs(c[m] - rhs))
    return {'seed': seed, 'general': general}


def zero_seed_law(qp: QParam, lambdas: Iterable[float], m_max: int = 30) -> float:
    """c₀ = 0 时前向递推的最大模，应为 0"""
    return max(float(np.abs(forward_recursion(qp, lam, 0, 0, m_max, c0=0.0)).max()) for lam in lambdas)


# ---------- Ω ----------

def top_eigenvalue(qp: QParam, m_max: int) -> float:
    sub, main, _ = bbstar_tridiagonal(qp, 0, 0, 0, m_max)
    evals, _ = hermitian_tridiagonal_eigh(sub, main)
    return float(evals[-1])


def omega_detect(qp: QParam, n_max: int, m_max: int, tol: float = 1e-6, leak_tol: float = 1e-8) -> OmegaSet:
    """
    截断 bb*|_{A(0,0,0)} 的本征值与 {|q|^{2n}} 匹配

    匹配条件：相对距离 < tol 且截断泄漏 |γ₊(w+m_max)·v_{m_max}| < leak_tol。
    """
    if n_max < 1:
        raise ValueError(f"n_max 至少为 1: {n_max}")
    sub, main, _ = bbstar_tridiagonal(qp, 0, 0, 0, m_max + 1)
    evals, evecs = hermitian_tridiagonal_eigh(sub[:m_max], main[:m_max + 1])
    edge = abs(sub[m_max])
    levels, found = [], {}
    used = set()
    for n in range(n_max + 1):
        target = qp.t ** n
        rel = np.abs(evals - target) / target
        pos = int(np.argmin(rel))
        leak = edge * abs(evecs[-1, pos])
        if rel[pos] < tol and leak < leak_tol:
            levels.append(n)
            found[n] = float(evals[pos])
            used.add(pos)
    unmatched = tuple(float(e) for p, e in enumerate(evals) if p not in used)
    logger.info(f"Ω 检测 m_max={m_max}: 层 {levels}")
    return OmegaSet(tuple(levels), found, tuple(float(e) for e in evals[::-1]), unmatched)


def level_eigenvector(qp: QParam, n: int, m_max: int) -> np.ndarray:
    """A(0,0,0) 上本征值 |q|^{2n} 的截断本征向量，相位取 c₀ > 0"""
    sub, main, _ = bbstar_tridiagonal(qp, 0, 0, 0, m_max)
    evals, evecs = hermitian_tridiagonal_eigh(sub, main)
    pos = int(np.argmin(np.abs(evals - qp.t ** n)))
    vec = evecs[:, pos]
    vec = vec / np.linalg.norm(vec)
    if vec[0] != 0:
        vec = vec * (abs(vec[0]) / vec[0])
    return vec


# ---------- E₁ ----------

def _norm(vec: Vector) -> float:
    return math.sqrt(math.fsum(abs(c) ** 2 for c in vec.values()))


def inner_product(x: Vector, y: Vector) -> complex:
    return sum((x[idx].conjugate() * c for idx, c in y.items() if idx in x), 0j)


def apply_word(qp: QParam, word: Sequence[Tuple[str, int]], vec: Vector) -> Vector:
    tags = {'a': Monomial(1, 0, 0, 0), 'a*': Monomial(-1, 0, 0, 0), 'b': Monomial(0, 1, 0, 0),
            'b*': Monomial(0, 0, 1, 0), 'D': Monomial(0, 0, 0, 1), 'D*': Monomial(0, 0, 0, -1)}
    for g, e in word:
        for _ in range(e):
            vec = apply_monomial(qp, tags[g], vec)
    return vec


def seed_vector(qp: QParam, level: int, m_max: int) -> Vector:
    """|n_r/2, n_r/2, 0⟩：对 A(0,0,0) 的 |q|^{2n_r} 本征向量作用 n_r 次 a*"""
    if level == 0:
        coeffs = np.array([closed_form_c(qp, m) for m in range(m_max + 1)])
        coeffs = coeffs / np.linalg.norm(coeffs)
        return {PWIndex(2 * m, 0, 0, m): complex(c) for m, c in enumerate(coeffs)}
    margin = m_max + level
    base = level_eigenvector(qp, level, margin)
    vec = {PWIndex(2 * m, 0, 0, m): complex(c) for m, c in enumerate(base)}
    return apply_word(qp, [('a*', level)], vec)


def _word_for(i2: int, level: int, k: int) -> List[Tuple[str, int]]:
    """|i,j,k⟩ = (b*)^s (D*)^{k-s}|seed⟩（s ≥ 0）或 b^{-s} (D*)^k|seed⟩，s = 2i - n_r"""
    s = i2 - level
    d_power = k - s if s >= 0 else k
    word = [('D*', d_power)] if d_power >= 0 else [('D', -d_power)]
    word.append(('b*', s) if s >= 0 else ('b', -s))
    return word


def e1_vector(qp: QParam, i2: int, j2: int, k: int, m_max: int,
              levels: Optional[Iterable[int]] = None) -> FixedVector:
    """
    构建 |i,j,k⟩ 并提取 A(i,j,k) 系数

    参数:
        levels: 已检出的层；缺省时以 omega_detect 检测
    """
    level = _fragment_level(i2, j2)
    if levels is None:
        levels = omega_detect(qp, max(level, 1), m_max + level).levels
    if level < 0 or level not in set(levels):
        raise LevelNotDetectedError(f"层 n_r={level} 未检出", level=level)

    vec = apply_word(qp, _word_for(i2, level, k), seed_vector(qp, level, m_max))
    template = FixedVector(i2, j2, k, level, np.zeros(m_max + 1))
    coeffs = np.array([vec.get(template.label(m), 0j) for m in range(m_max + 1)], dtype=np.complex128)
    norm = np.linalg.norm(coeffs)
    if norm == 0:
        raise LevelNotDetectedError(f"|{i2}/2,{j2}/2,{k}⟩ 的系数全为零", level=level)
    coeffs = coeffs / norm

    sub, main, sup = bbstar_tridiagonal(qp, i2, j2, 0, m_max + 1)
    padded = np.concatenate([coeffs, [0j]])
    image = main * padded
    image[1:] += sub * padded[:-1]
    image[:-1] += sup[1:] * padded[1:]
    residual = float(np.linalg.norm(image - padded))
    if residual >= 1e-8:
        logger.warning(f"|{i2}/2,{j2}/2,{k}⟩ 的 bb* 残差偏大: {residual:.3e}")
    return FixedVector(i2, j2, k, level, coeffs, residual)


def e1_labels(level: int, i2_range: Sequence[int], k_range: Sequence[int]):
    """i + j = n_r 上的标签 (i2, j2, k)"""
    for i2 in i2_range:
        j2 = 2 * level - i2
        for k in k_range:
            yield i2, j2, k


def verify_e1_actions(qp: QParam, level: int, i2_range: Sequence[int], k_range: Sequence[int],
                      m_max: int, levels: Optional[Iterable[int]] = None) -> Dict[str, float]:
    """
    b, b*, D 在 |i,j,k⟩ 上的作用

    b, b* 把 |i,j,k⟩ 映到 |i∓1/2, j±1/2, k'⟩（k' 依 2i 与 n_r 的大小分支）；
    D|i,j,k⟩ = e^{2πi(2i-n_r)θ}|i,j,k-1⟩。
    """
    cache: Dict[Tuple[int, int, int], Vector] = {}

    def e1(i2, j2, k):
        key = (i2, j2, k)
        if key not in cache:
            cache[key] = e1_vector(qp, i2, j2, k, m_max, levels).as_vector()
        return cache[key]

    worst = {'b_overlap': 0.0, 'b*_overlap': 0.0, 'D_phase': 0.0, 'b_norm': 0.0, 'bbstar': 0.0}
    for i2, j2, k in e1_labels(level, i2_range, k_range):
        s = i2 - level
        v = e1(i2, j2, k)
        bv = apply_word(qp, [('b', 1)], v)
        target_b = e1(i2 - 1, j2 + 1, k - 1 if s > 0 else k)
        worst['b_overlap'] = max(worst['b_overlap'], 1.0 - abs(inner_product(target_b, bv)))
        worst['b_norm'] = max(worst['b_norm'], abs(_norm(bv) - 1.0))

        bsv = apply_word(qp, [('b*', 1)], v)
        target_bs = e1(i2 + 1, j2 - 1, k + 1 if s >= 0 else k)
        worst['b*_overlap'] = max(worst['b*_overlap'], 1.0 - abs(inner_product(target_bs, bsv)))

        dv = apply_word(qp, [('D', 1)], v)
        worst['D_phase'] = max(worst['D_phase'], abs(inner_product(e1(i2, j2, k - 1), dv) - qp.omega_pow(s)))

        back = apply_word(qp, [('b', 1)], bsv)
        diff = {idx: back.get(idx, 0j) - v.get(idx, 0j) for idx in set(back) | set(v)
                if idx.l2 <= _max_l2(v)}
        worst['bbstar'] = max(worst['bbstar'], _norm(diff))
    logger.debug(f"E₁ 作用残差 n_r={level}: {worst}")
    return worst


def _max_l2(vec: Vector) -> int:
    return max(idx.l2 for idx in vec)


def gram_deviation(vectors: Sequence[FixedVector]) -> float:
    """‖G - I‖_max，G 为 PW 基下的 Gram 矩阵"""
    dicts = [v.as_vector() for v in vectors]
    worst = 0.0
    for a, x in enumerate(dicts):
        for b, y in enumerate(dicts):
            worst = max(worst, abs(inner_product(x, y) - (1.0 if a == b else 0.0)))
    return worst


def decay_bound_excess(qp: QParam, vec: FixedVector) -> float:
    """2i < n_r 时 max(|c_m| - |q|^{m(n_r-2i)}/(1-|q|)², 0)"""
    gap = vec.level - vec.i2
    if gap <= 0:
        return 0.0
    q = qp.abs_q
    bound = np.array([q ** (m * gap) for m in range(len(vec.coefficients))]) / (1 - q) ** 2
    return float(max(0.0, np.max(np.abs(vec.coefficients) - bound)))


def k_independence(qp: QParam, i2: int, j2: int, ks: Sequence[int], m_max: int,
                   levels: Optional[Iterable[int]] = None) -> float:
    """不同 k 的系数模序列之差"""
    moduli = [np.abs(e1_vector(qp, i2, j2, k, m_max, levels).coefficients) for k in ks]
    return max(float(np.max(np.abs(m - moduli[0]))) for m in moduli)
