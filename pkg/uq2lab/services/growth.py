"""
最高权线范数、增长图与谱维数

γ = (γ₁, γ₂, γ₃) 以 GammaIndex(2γ₁, γ₂, 2γ₃) 存储；ε₂ 对应 D，ε₁-ε₃ 对应 a，ε₁+ε₃ 对应 b。
"""
import logging
import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np

from uq2lab.models.indices import GammaIndex
from uq2lab.models.qparam import QParam
from uq2lab.services.qnum import q_integer

logger = logging.getLogger(__name__)

ROOT = GammaIndex(0, 0, 0)
ADMISSION_MARGIN = 1.1


def e_gamma_norm(qp: QParam, gamma: GammaIndex) -> float:
    """‖e^γ‖ = |q|^{γ₃}/√|2γ₁+1|_{|q|}"""
    gamma = GammaIndex(*gamma).validate()
    return qp.abs_q ** (gamma.g3_2 / 2.0) / math.sqrt(q_integer(gamma.g1_2 + 1, qp.abs_q))


def ratio_bounds(qp: QParam) -> Dict[str, float]:
    """三类边的范数比上确界（都在根处取到）"""
    root = math.sqrt(1.0 + qp.t)
    return {'D': 1.0, 'a': root, 'b': root / qp.abs_q}


def admission_constant(qp: QParam) -> float:
    return ADMISSION_MARGIN * max(1.0, *ratio_bounds(qp).values())


def _candidate_edges(gamma: GammaIndex) -> List[Tuple[str, GammaIndex]]:
    g1, g2, g3 = gamma
    edges = [('D', GammaIndex(g1, g2 + 1, g3)), ('D*', GammaIndex(g1, g2 - 1, g3)),
             ('a', GammaIndex(g1 + 1, g2, g3 - 1))]
    if g1 == g3:
        edges.append(('b', GammaIndex(g1 + 1, g2, g3 + 1)))
    return edges


def edge_ratios(qp: QParam, gamma: GammaIndex) -> Dict[str, Tuple[GammaIndex, float]]:
    """生成元标签 → (目标, ‖e^γ‖/‖e^{γ'}‖)"""
    base = e_gamma_norm(qp, gamma)
    return {tag: (target, base / e_gamma_norm(qp, target)) for tag, target in _candidate_edges(gamma)}


def growth_edges(qp: QParam, gamma: GammaIndex) -> List[GammaIndex]:
    """范数比低于准入常数的出边"""
    c = admission_constant(qp)
    return [target for target, ratio in edge_ratios(qp, GammaIndex(*gamma).validate()).values() if ratio < c]


def _measure(gamma: GammaIndex) -> int:
    return gamma.g1_2 + abs(gamma.g2)


@lru_cache(maxsize=16)
def growth_distances(qp: QParam, max_length: int) -> Dict[GammaIndex, int]:
    """从根出发的 BFS 距离，只保留 2γ₁+|γ₂| ≤ max_length 的顶点"""
    dist = {ROOT: 0}
    queue = deque([ROOT])
    while queue:
        node = queue.popleft()
        for target in growth_edges(qp, node):
            if target in dist or _measure(target) > max_length:
                continue
            dist[target] = dist[node] + 1
            queue.append(target)
    logger.debug(f"增长图 BFS: {len(dist)} 个顶点 (2γ₁+|γ₂| ≤ {max_length})")
    return dist


def path_length(qp: QParam, gamma: GammaIndex) -> int:
    gamma = GammaIndex(*gamma).validate()
    return growth_distances(qp, _measure(gamma))[gamma]


def norm_ratio_extremes(qp: QParam, g1_max: int = 40, g2_max: int = 20) -> Dict[str, float]:
    """全格点上 ε₂ 比值与 1 的最大偏差，以及 a、b 边比值的最大值"""
    out = {'D': 0.0, 'a': 0.0, 'b': 0.0}
    for g1 in range(g1_max + 1):
        for g3 in range(-g1, g1 + 1, 2):
            for g2 in range(-g2_max, g2_max + 1):
                ratios = edge_ratios(qp, GammaIndex(g1, g2, g3))
                out['D'] = max(out['D'], abs(ratios['D'][1] - 1.0), abs(ratios['D*'][1] - 1.0))
                out['a'] = max(out['a'], ratios['a'][1])
                if 'b' in ratios:
                    out['b'] = max(out['b'], ratios['b'][1])
    return out


# ---------- L 与谱维数 ----------

def L_multiplicity(n: int) -> int:
    """Σ_{2γ₁+|γ₂|=n} (2γ₁+1)²"""
    if n < 0:
        raise ValueError(f"n 必须非负: {n}")
    total = 0
    for g1 in range(n + 1):
        rest = n - g1
        total += (g1 + 1) ** 2 * (1 if rest == 0 else 2)
    return total


def L_multiplicity_closed(n: np.ndarray) -> np.ndarray:
    """(n+1)² + n(n+1)(2n+1)/3"""
    n = np.asarray(n, dtype=np.float64)
    return (n + 1) ** 2 + n * (n + 1) * (2 * n + 1) / 3.0


def partial_sums(p: float, n_max: int) -> np.ndarray:
    """S_N = Σ_{n=0}^{N} L(n)·ℓ(n)^{-p}，根处 ℓ = 1"""
    n = np.arange(n_max + 1, dtype=np.float64)
    length = np.where(n == 0, 1.0, n)
    return np.cumsum(L_multiplicity_closed(n) * length ** (-p))


@dataclass(frozen=True)
class DimensionEstimate:
    threshold: float
    bracket: Tuple[float, float]
    ratios: Dict[float, float]
    convergent: Dict[float, bool]


def spectral_dimension_estimate(p_grid: Sequence[float], n_max: int, cutoff: float = 0.95) -> DimensionEstimate:
    """
    二进增量比 R = (S_N - S_{N/2})/(S_{N/2} - S_{N/4})，R < cutoff 判为收敛

    返回最大发散 p 与最小收敛 p 构成的区间及其中点。
    """
    grid = sorted(float(p) for p in p_grid)
    if not grid or grid[0] <= 3.0 or grid[-1] >= 5.0:
        raise ValueError(f"p_grid 必须在 (3,5) 内: {p_grid}")
    if n_max < 200:
        raise ValueError(f"N_max 至少为 200: {n_max}")
    ratios, convergent = {}, {}
    for p in grid:
        s = partial_sums(p, n_max)
        ratio = (s[n_max] - s[n_max // 2]) / (s[n_max // 2] - s[n_max // 4])
        ratios[p] = float(ratio)
        convergent[p] = bool(ratio < cutoff)
    divergent = [p for p in grid if not convergent[p]]
    passing = [p for p in grid if convergent[p]]
    lo = max(divergent) if divergent else grid[0]
    hi = min(passing) if passing else grid[-1]
    estimate = DimensionEstimate(0.5 * (lo + hi), (lo, hi), ratios, convergent)
    logger.info(f"谱维数估计: 阈值={estimate.threshold:.4f}, 区间=({lo:.4f}, {hi:.4f})")
    return estimate
