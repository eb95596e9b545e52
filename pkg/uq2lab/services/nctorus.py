"""
非交换环面 A_θ：扭卷积、迹、Powers-Rieffel 投影、Chern 数与截断 Fredholm 指标

乘法约定 (u^m v^n)(u^{m'} v^{n'}) = e^{-2πiθ n m'} u^{m+m'} v^{n+n'}，满足 uv = e^{2πiθ} vu。
ℓ²(ℤ²) 表示：u ↦ U⊗1，v ↦ e^{-2πiθN}⊗U。
"""
import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix, diags

from uq2lab.models.indices import E1Label
from uq2lab.models.qparam import QParam
from uq2lab.models.torus import TorusElement
from uq2lab.services.dirac import dirac_eigenvalue
from uq2lab.services.fixedpt import apply_word, e1_vector, inner_product, omega_detect
from uq2lab.utils.errors import DomainError, InstabilityError, PreconditionError
from uq2lab.utils.linalg_utils import count_unit_eigenvalues

logger = logging.getLogger(__name__)

FFT_POINTS = 8192
SMOOTHSTEP_ORDER = 6
ENTRY_PRUNE = 1e-12


# ---------- 代数运算 ----------

def torus_mul(x: TorusElement, y: TorusElement) -> TorusElement:
    """扭卷积：x 的每个 v-幂次列与按 e^{-2πiθ n m'} 调相后的 y 做一维卷积"""
    theta = x.theta
    mx, nx = x.array.shape
    my, ny = y.array.shape
    out = np.zeros((mx + my - 1, nx + ny - 1), dtype=np.complex128)
    m_prime = y.m_range
    for b, n in enumerate(x.n_range):
        xcol = x.array[:, b]
        if not xcol.any():
            continue
        twisted = y.array * np.exp(-2j * math.pi * theta * n * m_prime)[:, None]
        for bb in range(ny):
            out[:, b + bb] += np.convolve(xcol, twisted[:, bb])
    return TorusElement(theta, out, (x.origin[0] + y.origin[0], x.origin[1] + y.origin[1]))


def torus_adjoint(x: TorusElement) -> TorusElement:
    """(u^m v^n)* = e^{-2πiθ mn} u^{-m} v^{-n}"""
    m, n = np.meshgrid(x.m_range, x.n_range, indexing='ij')
    phased = np.conj(x.array) * np.exp(-2j * math.pi * x.theta * m * n)
    flipped = phased[::-1, ::-1]
    return TorusElement(x.theta, flipped, (int(x.m_range[-1]), int(x.n_range[-1])))


def trace(x: TorusElement) -> complex:
    """典范迹：(0,0) 系数"""
    return x.coefficient(0, 0)


def derivation(x: TorusElement, axis: int) -> TorusElement:
    """δ₁(u^m v^n) = 2πi m u^m v^n，δ₂ 取 n"""
    grid = x.m_range[:, None] if axis == 1 else x.n_range[None, :]
    return TorusElement(x.theta, x.array * (2j * math.pi * grid), x.origin)


# ---------- Powers-Rieffel 投影 ----------

def smoothstep(y: np.ndarray, order: int = SMOOTHSTEP_ORDER) -> np.ndarray:
    """[0,1] 上的光滑阶梯，端点处前 order 阶导数为零"""
    y = np.clip(y, 0.0, 1.0)
    total = np.zeros_like(y)
    for n in range(order + 1):
        total += math.comb(order + n, n) * math.comb(2 * order + 1, order - n) * (-y) ** n
    return y ** (order + 1) * total


def rieffel_profiles(theta: float, eps: float, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """圆周坐标 x ∈ [0,1) 上的 f, g"""
    f = np.zeros_like(x)
    g = np.zeros_like(x)
    rise = (x >= 0) & (x < eps)
    plateau = (x >= eps) & (x <= theta)
    fall = (x > theta) & (x < theta + eps)
    f[rise] = np.sin(0.5 * math.pi * smoothstep(x[rise] / eps)) ** 2
    f[plateau] = 1.0
    y = (x[fall] - theta) / eps
    f[fall] = np.cos(0.5 * math.pi * smoothstep(y)) ** 2
    g[fall] = 0.5 * np.sin(math.pi * smoothstep(y))
    return f, g


def _fourier(values: np.ndarray, order: int) -> Dict[int, complex]:
    coeffs = np.fft.fft(values) / len(values)
    return {m: complex(coeffs[m % len(values)]) for m in range(-order, order + 1)}


def powers_rieffel(theta: float, eps: Optional[float] = None, order: int = 64) -> TorusElement:
    """
    p = f(u) + g(u)v + (g(u)v)*，Fourier 截断到 |m| ≤ order

    参数:
        eps: 过渡宽度，缺省 0.9·min(θ, 1-θ)
    """
    if not (0.0 < theta < 1.0):
        raise DomainError(f"θ 必须在 (0,1) 内: {theta}", parameter='theta')
    if eps is None:
        eps = 0.9 * min(theta, 1.0 - theta)
    if not (0.0 < eps < min(theta, 1.0 - theta)):
        raise DomainError(f"eps 超出范围 (0, {min(theta, 1.0 - theta):.6g}): {eps}", parameter='eps')
    grid = np.arange(FFT_POINTS) / FFT_POINTS
    f, g = rieffel_profiles(theta, eps, grid)
    f_hat, g_hat = _fourier(f, order), _fourier(g, order)
    base = TorusElement.from_dict(theta, {(m, 0): c for m, c in f_hat.items()})
    gv = TorusElement.from_dict(theta, {(m, 1): c for m, c in g_hat.items()})
    p = base + gv + torus_adjoint(gv)
    logger.debug(f"Powers-Rieffel 投影 θ={theta:.6g}, eps={eps:.6g}, M={order}: trace={trace(p).real:.12f}")
    return p


def norm_estimate(x: TorusElement, order: int, phis: int = 8) -> float:
    """
    算子范数估计：纤维表示 (u ξ)(j) = e^{2πi(φ+jθ)}ξ(j), (v ξ)(j) = ξ(j-1)，
    j ∈ [-2·order, 2·order]，φ 取 phis 个均匀点，取最大奇异值
    """
    js = np.arange(-2 * order, 2 * order + 1)
    size = len(js)
    best = 0.0
    for phi in np.arange(phis) / phis:
        mat = np.zeros((size, size), dtype=np.complex128)
        points = phi + js * x.theta
        exps = np.exp(2j * math.pi * np.outer(x.m_range, points))
        for b, n in enumerate(x.n_range):
            values = x.array[:, b] @ exps
            cols = np.arange(size) - n
            ok = (cols >= 0) & (cols < size)
            mat[np.flatnonzero(ok), cols[ok]] = values[ok]
        best = max(best, float(np.linalg.norm(mat, 2)))
    return best


def projection_residuals(p: TorusElement, order: int) -> Dict[str, float]:
    return {
        'idempotent': norm_estimate(torus_mul(p, p) - p, order),
        'selfadjoint': norm_estimate(torus_adjoint(p) - p, order),
        'trace': abs(trace(p) - p.theta),
    }


# ---------- Chern 数 ----------

def chern_number(p: TorusElement, precondition_tol: float = 1e-4) -> float:
    """(1/2πi) τ(p[δ₁p, δ₂p]) 的实部"""
    residual = (torus_mul(p, p) - p).norm_l1()
    if residual >= precondition_tol:
        raise PreconditionError(f"p 不是近似幂等元: ‖p²-p‖₁ = {residual:.3e}", residual=residual)
    d1, d2 = derivation(p, 1), derivation(p, 2)
    comm = torus_mul(d1, d2) - torus_mul(d2, d1)
    value = trace(torus_mul(p, comm)) / (2j * math.pi)
    return float(value.real)


def _matrix_mul(a: List[List[TorusElement]], b: List[List[TorusElement]]) -> List[List[TorusElement]]:
    size = len(a)
    theta = a[0][0].theta
    out = []
    for r in range(size):
        row = []
        for c in range(size):
            acc = TorusElement.zero(theta)
            for s in range(size):
                acc = acc + torus_mul(a[r][s], b[s][c])
            row.append(acc)
        out.append(row)
    return out


def chern_number_matrix(p: Sequence[Sequence[TorusElement]]) -> float:
    """矩阵投影的 Chern 数 (1/2πi) Σ τ(tr p[δ₁p, δ₂p])"""
    p = [list(row) for row in p]
    d1 = [[derivation(e, 1) for e in row] for row in p]
    d2 = [[derivation(e, 2) for e in row] for row in p]
    left, right = _matrix_mul(d1, d2), _matrix_mul(d2, d1)
    comm = [[left[r][c] - right[r][c] for c in range(len(p))] for r in range(len(p))]
    product = _matrix_mul(p, comm)
    total = sum(trace(product[r][r]) for r in range(len(p)))
    return float((total / (2j * math.pi)).real)


# ---------- 截断 Fredholm 指标 ----------

def box_labels(box: int) -> List[Tuple[int, int]]:
    return [(x, y) for x in range(-box, box + 1) for y in range(-box, box + 1)]


def represent(p: TorusElement, box: int):
    """τ(u^m v^n)(e_x⊗e_y) = e^{-2πiθ n x} e_{x+m}⊗e_{y+n}，压缩到 [-box, box]²"""
    side = 2 * box + 1
    xs, ys = np.meshgrid(np.arange(-box, box + 1), np.arange(-box, box + 1), indexing='ij')
    xs, ys = xs.ravel(), ys.ravel()
    src = np.arange(side * side)
    rows, cols, data = [], [], []
    for (m, n), coef in p.to_dict().items():
        if abs(coef) < ENTRY_PRUNE:
            continue
        tx, ty = xs + m, ys + n
        ok = (np.abs(tx) <= box) & (np.abs(ty) <= box)
        rows.append((tx[ok] + box) * side + (ty[ok] + box))
        cols.append(src[ok])
        data.append(coef * np.exp(-2j * math.pi * p.theta * n * xs[ok]))
    if not rows:
        return coo_matrix((side * side, side * side), dtype=np.complex128).tocsr()
    matrix = coo_matrix((np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
                        shape=(side * side, side * side)).tocsr()
    matrix.sum_duplicates()
    return matrix


def torus_phase(box: int) -> np.ndarray:
    """(x+iy)/|x+iy|，原点取 1"""
    values = []
    for x, y in box_labels(box):
        values.append(1.0 + 0j if x == 0 and y == 0 else complex(x, y) / math.hypot(x, y))
    return np.array(values)


def compression_index(p_matrix, phase: np.ndarray, sv_tol: float = 1e-2, gap_min: float = 10.0,
                      seed: int = 0) -> int:
    """
    pFp 的指标：A = P - F P F* 在 ±1 附近的特征值计数，index = n₋ - n₊

    间隙比小于 gap_min 时报 InstabilityError。
    """
    f = diags(phase, format='csr')
    a = p_matrix - f @ p_matrix @ f.conj().T
    n_plus, n_minus, gap, sigmas = count_unit_eigenvalues(a, sv_tol, seed=seed)
    if gap < gap_min:
        raise InstabilityError(f"奇异值间隙不足: ratio={gap:.3g}, sigmas={sigmas[:6]}", gap_ratio=gap)
    return n_minus - n_plus


def torus_dirac_index(p: TorusElement, box: int, sv_tol: float = 1e-2, gap_min: float = 10.0,
                      seed: int = 0) -> int:
    """p T_{(m+in)/√(m²+n²)} p 在 [-box, box]² 上的截断指标"""
    index = compression_index(represent(p, box), torus_phase(box), sv_tol, gap_min, seed)
    logger.debug(f"环面 Dirac 指标 box={box}: {index}")
    return index


# ---------- E₁ 上的 F 与块模型 ----------

def f0_value(i2: int, j2: int, k: int) -> complex:
    """f₀(i,j,k)：w = max(|i|,|j|)，i = -w 时实部取负，单位模"""
    w2 = max(abs(i2), abs(j2))
    imag = k + (j2 - w2) // 2
    real = -(w2 + 1) if i2 == -w2 else (w2 + 1)
    return complex(real, imag) / math.hypot(real, imag)


def f0_operator(level: int, labels: Iterable[Tuple[int, int]]) -> Dict[E1Label, complex]:
    """层 n_r 上 (i2, k) 标签的对角值，j2 = 2n_r - i2"""
    return {E1Label(level, i2, 2 * level - i2, k): f0_value(i2, 2 * level - i2, k) for i2, k in labels}


def block_label(level: int, x: int, y: int) -> Tuple[int, int, int]:
    """W_r 的逆：(x, y) → (i2, j2, k)，s = 2i - n_r = -x，k - max(s,0) = -y"""
    s = -x
    i2 = s + level
    return i2, 2 * level - i2, -y + max(s, 0)


def block_phase(level: int, box: int) -> np.ndarray:
    return np.array([f0_value(*block_label(level, x, y)) for x, y in box_labels(box)])


def winding_number(level: int, radius: int) -> int:
    """F_r 沿方框边界的卷绕数"""
    path = ([(x, -radius) for x in range(-radius, radius)] + [(radius, y) for y in range(-radius, radius)]
            + [(x, radius) for x in range(radius, -radius, -1)] + [(-radius, y) for y in range(radius, -radius, -1)])
    values = [f0_value(*block_label(level, x, y)) for x, y in path]
    total = 0.0
    for a, b in zip(values, values[1:] + values[:1]):
        total += cmath.phase(b / a)
    return int(round(total / (2 * math.pi)))


def _resolve_levels(qp: QParam, level: int, m_max: int, levels: Optional[Iterable[int]]) -> Tuple[int, ...]:
    if levels is not None:
        return tuple(levels)
    return omega_detect(qp, max(level, 1), m_max + level).levels


@dataclass
class BlockModel:
    """W_r 搬运后的 ρ_r(Pb), ρ_r(PD) 残差与 F_r 的对角值"""
    level: int
    box: int
    b_residual: float
    d_residual: float
    winding: int
    phase: np.ndarray = field(repr=False)


def block_model(qp: QParam, level: int, box: int, m_max: int, levels: Optional[Iterable[int]] = None,
                check_radius: int = 2) -> BlockModel:
    """
    W_r|i,j,k⟩ = e_x⊗e_y 下与环面表示的比较

    在 |x|,|y| ≤ check_radius 上由 E₁ 向量数值计算 ⟨W*e_{x+1,y}, b W*e_{x,y}⟩ = 1 与
    ⟨W*e_{x,y+1}, D W*e_{x,y}⟩ = e^{-2πiθx}。
    """
    levels = _resolve_levels(qp, level, m_max, levels)
    cache = {}

    def vec(x, y):
        if (x, y) not in cache:
            cache[(x, y)] = e1_vector(qp, *block_label(level, x, y), m_max, levels).as_vector()
        return cache[(x, y)]

    b_res, d_res = 0.0, 0.0
    for x in range(-check_radius, check_radius + 1):
        for y in range(-check_radius, check_radius + 1):
            v = vec(x, y)
            bv = apply_word(qp, [('b', 1)], v)
            b_res = max(b_res, abs(inner_product(vec(x + 1, y), bv) - 1.0))
            dv = apply_word(qp, [('D', 1)], v)
            d_res = max(d_res, abs(inner_product(vec(x, y + 1), dv) - cmath.exp(-2j * math.pi * qp.theta * x)))
    model = BlockModel(level, box, b_res, d_res, winding_number(level, box), block_phase(level, box))
    logger.info(f"块模型 n_r={level}: b 残差={b_res:.3e}, D 残差={d_res:.3e}, 卷绕数={model.winding}")
    return model


def pairing_index(p: TorusElement, levels: Sequence[int], box: int, sv_tol: float = 1e-2,
                  gap_min: float = 10.0, seed: int = 0) -> Dict[str, object]:
    """
    各层 P_θ^r F_r P_θ^r 的截断指标与总和

    返回:
        {'levels': {n_r: 指标}, 'total': 和}
    """
    p_matrix = represent(p, box)
    per_level = {}
    for level in levels:
        per_level[level] = compression_index(p_matrix, block_phase(level, box), sv_tol, gap_min, seed)
    return {'levels': per_level, 'total': sum(per_level.values())}


def compact_perturbation_profile(qp: QParam, level: int, radii: Sequence[int], m_max: int,
                                 levels: Optional[Iterable[int]] = None) -> List[float]:
    """
    sup_{R ≤ max(|x|,|y|) ≤ R_out} |⟨v, T|T|⁻¹ v⟩ - f₀|

    |c_m| 与 k 无关，每个 s 只计算一次 k = 0 的系数。
    """
    levels = _resolve_levels(qp, level, m_max, levels)
    outer = max(radii) + 1
    moduli = {}
    for x in range(-outer, outer + 1):
        i2, j2, _ = block_label(level, x, 0)
        moduli[x] = np.abs(e1_vector(qp, i2, j2, 0, m_max, levels).coefficients) ** 2

    deviation = {}
    for x in range(-outer, outer + 1):
        for y in range(-outer, outer + 1):
            i2, j2, k = block_label(level, x, y)
            w2 = max(abs(i2), abs(j2))
            expected = 0j
            for m, weight in enumerate(moduli[x]):
                d = dirac_eigenvalue(w2 + 2 * m, i2, level + k + m)
                expected += weight * d / abs(d)
            deviation[(x, y)] = abs(expected - f0_value(i2, j2, k))
    profile = []
    for radius in radii:
        profile.append(max(v for (x, y), v in deviation.items() if max(abs(x), abs(y)) >= radius))
    return profile
