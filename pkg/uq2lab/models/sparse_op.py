"""
截断基窗口上的稀疏复线性算子

列以源标签为索引；作用到窗口外的分量被丢弃，因此恒等式只在内部向量上成立。
"""
from typing import Dict, Hashable, Iterable, List, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix, identity


class SparseOp:
    """
    基标签列表 + scipy CSR 矩阵

    参数:
        basis: 有序基标签，同一窗口上的算子共享同一个列表
        matrix: (len(basis), len(basis)) 复稀疏矩阵
    """

    def __init__(self, basis: Sequence[Hashable], matrix, position: Dict[Hashable, int] = None):
        self.basis = basis
        self.position = position if position is not None else {idx: p for p, idx in enumerate(basis)}
        self.matrix = csr_matrix(matrix, dtype=np.complex128)

    @classmethod
    def from_entries(cls, basis: Sequence[Hashable],
                     entries: Iterable[Tuple[Hashable, Iterable[Tuple[Hashable, complex]]]],
                     position: Dict[Hashable, int] = None) -> 'SparseOp':
        """由 源 → [(目标, 系数)] 构建；窗口外的目标被截断"""
        if position is None:
            position = {idx: p for p, idx in enumerate(basis)}
        row, col, data = [], [], []
        for src, targets in entries:
            c = position[src]
            for tgt, coef in targets:
                r = position.get(tgt)
                if r is None:
                    continue
                row.append(r)
                col.append(c)
                data.append(coef)
        size = len(basis)
        matrix = csr_matrix((np.asarray(data, dtype=np.complex128), (row, col)), shape=(size, size))
        matrix.sum_duplicates()
        return cls(basis, matrix, position)

    @classmethod
    def diagonal(cls, basis, values, position=None) -> 'SparseOp':
        size = len(basis)
        matrix = csr_matrix((np.asarray(values, dtype=np.complex128),
                             (np.arange(size), np.arange(size))), shape=(size, size))
        return cls(basis, matrix, position)

    @classmethod
    def identity(cls, basis, position=None) -> 'SparseOp':
        return cls(basis, identity(len(basis), dtype=np.complex128, format='csr'), position)

    def _wrap(self, matrix) -> 'SparseOp':
        return SparseOp(self.basis, matrix, self.position)

    @property
    def entries(self) -> Dict[Hashable, List[Tuple[Hashable, complex]]]:
        """源 → [(目标, 系数)] 视图"""
        csc = self.matrix.tocsc()
        out = {}
        for c, src in enumerate(self.basis):
            start, stop = csc.indptr[c], csc.indptr[c + 1]
            out[src] = [(self.basis[r], complex(v))
                        for r, v in zip(csc.indices[start:stop], csc.data[start:stop])]
        return out

    def column(self, src) -> Dict[Hashable, complex]:
        col = self.matrix[:, self.position[src]].tocoo()
        return {self.basis[r]: complex(v) for r, v in zip(col.row, col.data)}

    def columns(self, sources: Iterable[Hashable]):
        """选定列组成的稀疏子矩阵（行仍为全窗口）"""
        cols = [self.position[s] for s in sources]
        return self.matrix.tocsc()[:, cols]

    def adjoint(self) -> 'SparseOp':
        return self._wrap(self.matrix.conj().T.tocsr())

    def __matmul__(self, other: 'SparseOp') -> 'SparseOp':
        return self._wrap(self.matrix @ other.matrix)

    def __add__(self, other: 'SparseOp') -> 'SparseOp':
        return self._wrap(self.matrix + other.matrix)

    def __sub__(self, other: 'SparseOp') -> 'SparseOp':
        return self._wrap(self.matrix - other.matrix)

    def __neg__(self):
        return self._wrap(-self.matrix)

    def __mul__(self, factor) -> 'SparseOp':
        return self._wrap(self.matrix * factor)

    __rmul__ = __mul__

    def apply(self, vector: np.ndarray) -> np.ndarray:
        return self.matrix @ vector

    def basis_vector(self, idx) -> np.ndarray:
        vec = np.zeros(len(self.basis), dtype=np.complex128)
        vec[self.position[idx]] = 1.0
        return vec

    def __len__(self):
        return len(self.basis)
