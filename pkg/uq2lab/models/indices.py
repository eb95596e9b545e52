"""
基向量标签与截断窗口

半整数一律以两倍整数存储：l2 = 2ℓ，i2 = 2i，j2 = 2j。
"""
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from uq2lab.utils.errors import IndexValidationError


class PWIndex(NamedTuple):
    """Peter-Weyl 基 e^ℓ_{i,j,k} 的标签"""
    l2: int
    i2: int
    j2: int
    k: int

    def validate(self) -> 'PWIndex':
        validate_fragment(self.l2, self.i2, self.j2)
        return self

    def shifted(self, dl2: int, di2: int, dj2: int, dk: int) -> 'PWIndex':
        return PWIndex(self.l2 + dl2, self.i2 + di2, self.j2 + dj2, self.k + dk)


def validate_fragment(l2: int, i2: int, j2: int):
    """检查 (ℓ,i,j) 片段：|i|,|j| ≤ ℓ 且奇偶一致"""
    if l2 < 0 or abs(i2) > l2 or abs(j2) > l2:
        raise IndexValidationError(f"标签超出范围: l2={l2}, i2={i2}, j2={j2}", index=(l2, i2, j2))
    if (l2 - i2) % 2 or (l2 - j2) % 2:
        raise IndexValidationError(f"标签奇偶不一致: l2={l2}, i2={i2}, j2={j2}", index=(l2, i2, j2))


@dataclass(frozen=True)
class TruncationWindow:
    """Peter-Weyl 截断窗口：0 ≤ 2ℓ ≤ l2_max, k_min ≤ k ≤ k_max"""
    l2_max: int
    k_min: int
    k_max: int

    def __post_init__(self):
        if self.l2_max < 0 or self.k_min > self.k_max:
            raise IndexValidationError(
                f"窗口不合法: l2_max={self.l2_max}, k=[{self.k_min},{self.k_max}]")

    def __iter__(self) -> Iterator[PWIndex]:
        for l2 in range(self.l2_max + 1):
            for i2 in range(-l2, l2 + 1, 2):
                for j2 in range(-l2, l2 + 1, 2):
                    for k in range(self.k_min, self.k_max + 1):
                        yield PWIndex(l2, i2, j2, k)

    def __len__(self) -> int:
        return sum((l2 + 1) ** 2 for l2 in range(self.l2_max + 1)) * (self.k_max - self.k_min + 1)

    def __contains__(self, idx) -> bool:
        l2, i2, j2, k = idx
        return (0 <= l2 <= self.l2_max and abs(i2) <= l2 and abs(j2) <= l2
                and (l2 - i2) % 2 == 0 and (l2 - j2) % 2 == 0
                and self.k_min <= k <= self.k_max)

    def is_interior(self, idx: PWIndex, depth: int = 1) -> bool:
        """depth 步生成元作用的所有像都留在窗口内"""
        return idx.l2 + depth <= self.l2_max and self.k_min + depth <= idx.k <= self.k_max - depth

    def interior(self, depth: int = 1) -> list:
        return [idx for idx in self if self.is_interior(idx, depth)]


class HeisIndex(NamedTuple):
    """ℓ²(ℕ)⊗ℓ²(ℤ)⊗ℓ²(ℤ) 的基标签"""
    n: int
    k: int
    l: int


@dataclass(frozen=True)
class HeisWindow:
    n_max: int
    k_min: int
    k_max: int
    l_min: int
    l_max: int

    def __iter__(self) -> Iterator[HeisIndex]:
        for n in range(self.n_max + 1):
            for k in range(self.k_min, self.k_max + 1):
                for l in range(self.l_min, self.l_max + 1):
                    yield HeisIndex(n, k, l)

    def __len__(self) -> int:
        return (self.n_max + 1) * (self.k_max - self.k_min + 1) * (self.l_max - self.l_min + 1)

    def __contains__(self, idx) -> bool:
        n, k, l = idx
        return (0 <= n <= self.n_max and self.k_min <= k <= self.k_max
                and self.l_min <= l <= self.l_max)

    def is_interior(self, idx: HeisIndex, depth: int = 1) -> bool:
        return (idx.n + depth <= self.n_max
                and self.k_min + depth <= idx.k <= self.k_max - depth
                and self.l_min + depth <= idx.l <= self.l_max - depth)

    def interior(self, depth: int = 1) -> list:
        return [idx for idx in self if self.is_interior(idx, depth)]


class GammaIndex(NamedTuple):
    """最高权标签 γ = (γ₁, γ₂, γ₃)，g1_2 = 2γ₁，g3_2 = 2γ₃"""
    g1_2: int
    g2: int
    g3_2: int

    def validate(self) -> 'GammaIndex':
        if self.g1_2 < 0 or abs(self.g3_2) > self.g1_2 or (self.g1_2 - self.g3_2) % 2:
            raise IndexValidationError(f"γ 标签不合法: {tuple(self)}", index=tuple(self))
        return self


class E1Label(NamedTuple):
    """E₁ 正交基 |i,j,k⟩ 的标签，i+j = n_r"""
    r: int
    i2: int
    j2: int
    k: int
