# 模型包初始化文件
from uq2lab.models.qparam import QParam
from uq2lab.models.indices import (PWIndex, TruncationWindow, HeisIndex, HeisWindow,
                                   GammaIndex, E1Label, validate_fragment)
from uq2lab.models.algebra import Monomial, AlgebraElement, UNIT
from uq2lab.models.sparse_op import SparseOp
from uq2lab.models.torus import TorusElement
