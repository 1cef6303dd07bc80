"""
GF(q) 上的线性代数

向量与矩阵都是元素编码组成的 numpy int64 数组，运算全部经由域的查表。
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, List, Optional, Tuple

import numpy as np

from geomrank.gf.field import Field
from geomrank.utils.errors import DimensionMismatch


def as_matrix(rows: Iterable[Iterable[int]] | np.ndarray, dim: Optional[int] = None) -> np.ndarray:
    M = np.asarray(rows, dtype=np.int64)
    if M.ndim == 1:
        M = M.reshape(1, -1) if M.size else np.zeros((0, dim or 0), dtype=np.int64)
    if dim is not None and M.shape[1] != dim:
        raise DimensionMismatch(f"向量维数 {M.shape[1]} 与期望 {dim} 不符")
    return M


def matmul(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """查表矩阵乘法"""
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"矩阵乘法维数不符: {A.shape} × {B.shape}")
    acc = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for t in range(A.shape[1]):
        acc = F.add[acc, F.mul[A[:, t][:, None], B[t, :][None, :]]]
    return acc


def row_dot(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """逐行内积 Σ_j A[i,j]·B[i,j]"""
    acc = np.zeros(A.shape[0], dtype=np.int64)
    for t in range(A.shape[1]):
        acc = F.add[acc, F.mul[A[:, t], B[:, t]]]
    return acc


def rref(F: Field, M: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """
    简化行阶梯形

    Returns:
        (去掉零行后的 RREF, 主元列列表)
    """
    R = np.array(M, dtype=np.int64, copy=True)
    rows, cols = R.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        pivot = r + int(nz[0])
        if pivot != r:
            R[[r, pivot]] = R[[pivot, r]]
        R[r] = F.mul[F.inv[R[r, c]], R[r]]
        for i in range(rows):
            if i != r and R[i, c]:
                R[i] = F.sub[R[i], F.mul[R[i, c], R[r]]]
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank(F: Field, M: np.ndarray) -> int:
    return len(rref(F, M)[1])


def nullspace(F: Field, M: np.ndarray) -> np.ndarray:
    """{x : M xᵀ = 0} 的一组基（行向量）"""
    cols = M.shape[1]
    R, pivots = rref(F, M)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = F.neg[R[i, f]]
    return basis


def normalize(F: Field, v: np.ndarray) -> np.ndarray:
    """缩放使第一个非零坐标为 1；零向量原样返回"""
    nz = np.flatnonzero(v)
    if nz.size == 0:
        return v
    return F.mul[F.inv[v[nz[0]]], v]


def normalize_rows(F: Field, V: np.ndarray) -> np.ndarray:
    if V.shape[0] == 0:
        return V
    nonzero = V != 0
    lead = np.where(nonzero.any(axis=1), nonzero.argmax(axis=1), 0)
    leading = V[np.arange(V.shape[0]), lead]
    scale = np.where(leading == 0, 1, F.inv[leading])
    return F.mul[scale[:, None], V]


def encode(F: Field, V: np.ndarray) -> np.ndarray:
    """按字典序把向量编码为整数（第一个坐标最高位）"""
    weights = F.q ** np.arange(V.shape[1] - 1, -1, -1, dtype=np.int64)
    return V @ weights


def all_vectors(F: Field, dim: int) -> np.ndarray:
    """V(dim, q) 的全部向量，字典序"""
    if dim == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(product(range(F.q), repeat=dim)), dtype=np.int64).reshape(-1, dim)


def projective_points(F: Field, dim: int) -> np.ndarray:
    """PG(dim-1, q) 的点：第一个非零坐标为 1 的向量，字典序"""
    V = all_vectors(F, dim)
    nonzero = V != 0
    has = nonzero.any(axis=1)
    lead = nonzero.argmax(axis=1)
    keep = has & (V[np.arange(V.shape[0]), lead] == 1)
    return V[keep]


class LinearSubspace:
    """V(dim, q) 的线性子空间，以 RREF 基表示"""

    __slots__ = ("field", "dim", "basis", "pivots")

    def __init__(self, F: Field, dim: int, vectors: Iterable[Iterable[int]] | np.ndarray = ()):
        M = as_matrix(vectors, dim)
        self.field = F
        self.dim = dim
        self.basis, self.pivots = rref(F, M)

    @classmethod
    def span(cls, F: Field, vectors: np.ndarray, dim: Optional[int] = None) -> "LinearSubspace":
        M = np.asarray(vectors, dtype=np.int64)
        return cls(F, dim if dim is not None else M.shape[-1], M)

    @classmethod
    def whole(cls, F: Field, dim: int) -> "LinearSubspace":
        return cls(F, dim, np.eye(dim, dtype=np.int64))

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    def _check(self, other: "LinearSubspace") -> None:
        if other.dim != self.dim or other.field.q != self.field.q:
            raise DimensionMismatch(f"子空间不在同一向量空间中: V({self.dim},{self.field.q}) 与 V({other.dim},{other.field.q})")

    def contains_all(self, V: np.ndarray) -> np.ndarray:
        """逐行判断向量是否属于子空间"""
        V = as_matrix(V, self.dim)
        if self.rank == 0:
            return ~(V != 0).any(axis=1)
        coeffs = V[:, self.pivots]
        rebuilt = matmul(self.field, coeffs, self.basis)
        return (rebuilt == V).all(axis=1)

    def contains(self, v: Iterable[int]) -> bool:
        return bool(self.contains_all(np.asarray(list(v), dtype=np.int64).reshape(1, -1))[0])

    def __add__(self, other: "LinearSubspace") -> "LinearSubspace":
        self._check(other)
        return LinearSubspace(self.field, self.dim, np.vstack([self.basis, other.basis]))

    def annihilator(self) -> "LinearSubspace":
        """{x : x·u = 0 对所有 u}"""
        if self.rank == 0:
            return LinearSubspace.whole(self.field, self.dim)
        return LinearSubspace(self.field, self.dim, nullspace(self.field, self.basis))

    def intersection(self, other: "LinearSubspace") -> "LinearSubspace":
        self._check(other)
        joined = self.annihilator() + other.annihilator()
        return joined.annihilator()

    def __le__(self, other: "LinearSubspace") -> bool:
        self._check(other)
        return bool(other.contains_all(self.basis).all())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearSubspace):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.basis, other.basis)

    def __hash__(self) -> int:
        return hash((self.dim, self.field.q, self.basis.tobytes()))

    def vectors(self) -> np.ndarray:
        """全部 q^rank 个向量"""
        if self.rank == 0:
            return np.zeros((1, self.dim), dtype=np.int64)
        return matmul(self.field, all_vectors(self.field, self.rank), self.basis)

    def projective_points(self) -> np.ndarray:
        """子空间中的一维子空间代表（规范化、字典序去重）"""
        V = self.vectors()
        V = normalize_rows(self.field, V[(V != 0).any(axis=1)])
        if V.shape[0] == 0:
            return V
        _, first = np.unique(encode(self.field, V), return_index=True)
        return V[first]

    def __repr__(self) -> str:
        return f"LinearSubspace(V({self.dim},{self.field.q}), rank={self.rank})"
