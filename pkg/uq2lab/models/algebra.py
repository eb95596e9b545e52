"""
O(U_q(2)) 的正规形元素

正规形单项式 a_n b^m (b*)^r D^k：n ≥ 0 表示 a^n，n < 0 表示 (a*)^{|n|}；k < 0 表示 (D*)^{|k|}。
"""
from typing import Dict, Iterable, NamedTuple, Tuple

DEFAULT_PRUNE = 1e-14


class Monomial(NamedTuple):
    n: int
    m: int
    r: int
    k: int

    @property
    def degree(self) -> int:
        return abs(self.n) + self.m + self.r + abs(self.k)


UNIT = Monomial(0, 0, 0, 0)


class AlgebraElement:
    """单项式到复系数的有限映射，不可变"""

    __slots__ = ('_terms',)

    def __init__(self, terms=None, prune: float = DEFAULT_PRUNE):
        cleaned = {}
        for mono, coef in (terms or {}).items():
            coef = complex(coef)
            if abs(coef) > prune:
                cleaned[Monomial(*mono)] = coef
        self._terms = cleaned

    @classmethod
    def monomial(cls, n=0, m=0, r=0, k=0, coef=1.0) -> 'AlgebraElement':
        return cls({Monomial(n, m, r, k): coef})

    @classmethod
    def scalar(cls, value) -> 'AlgebraElement':
        return cls({UNIT: value})

    @classmethod
    def accumulate(cls, pairs: Iterable[Tuple[Monomial, complex]], prune: float = DEFAULT_PRUNE):
        acc: Dict[Monomial, complex] = {}
        for mono, coef in pairs:
            acc[mono] = acc.get(mono, 0.0) + coef
        return cls(acc, prune)

    @property
    def terms(self) -> Dict[Monomial, complex]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, mono) -> complex:
        return self._terms.get(Monomial(*mono), 0.0)

    def is_scalar(self) -> bool:
        return all(mono == UNIT for mono in self._terms)

    def max_abs(self) -> float:
        """系数的最大模，用作残差"""
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def __len__(self):
        return len(self._terms)

    def __add__(self, other: 'AlgebraElement') -> 'AlgebraElement':
        return AlgebraElement.accumulate(list(self._terms.items()) + list(other._terms.items()))

    def __sub__(self, other: 'AlgebraElement') -> 'AlgebraElement':
        return self + other.scale(-1.0)

    def __neg__(self):
        return self.scale(-1.0)

    def scale(self, factor: complex) -> 'AlgebraElement':
        return AlgebraElement({mono: factor * c for mono, c in self._terms.items()})

    def __rmul__(self, factor):
        if isinstance(factor, (int, float, complex)):
            return self.scale(factor)
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and (self - other).max_abs() == 0.0

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        body = ' + '.join(f"({c:.6g})·{tuple(mono)}" for mono, c in sorted(self._terms.items()))
        return f"AlgebraElement({body or '0'})"
