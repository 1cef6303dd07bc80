"""
带形式的向量空间

支持的形式（基按 e1..en, f1..fn, 其后为附加坐标排列）：
- sp:      交错形式，Gram = [[0, I], [-I, 0]]
- o-plus:  Q = Σ x_i·x_{n+i}
- o-par:   Q 再加 x_{2n}²
- o-minus: Q 再加 x_{2n}² + x_{2n}·x_{2n+1} + μ·x_{2n+1}²，t² + t + μ 在域上无根
- herm:    h(x, y) = x·G·σ(y)ᵀ，G = [[0, I], [I, 0]]，q 必须是平方数

二次形式以上三角系数矩阵保存（特征 2 时 Gram 不足以确定 Q），
配极双线性形式 b(u, v) = Q(u+v) - Q(u) - Q(v) 的 Gram 由系数矩阵导出。
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Literal, Optional, Tuple

import numpy as np

from geomrank.gf.field import Field
from geomrank.gf.linalg import LinearSubspace, as_matrix, matmul, nullspace, row_dot
from geomrank.utils.errors import InvariantViolation, UnsupportedField, UnsupportedParameter

FormKind = Literal["sp", "o-plus", "o-par", "o-minus", "herm"]
FORM_KINDS: Tuple[str, ...] = ("sp", "o-plus", "o-par", "o-minus", "herm")

KIND_ALIASES = {
    "symplectic": "sp",
    "hyperbolic": "o-plus",
    "parabolic": "o-par",
    "elliptic": "o-minus",
    "hermitian": "herm",
}


def canonical_kind(kind: str) -> str:
    kind = KIND_ALIASES.get(kind, kind)
    if kind not in FORM_KINDS:
        raise UnsupportedParameter(f"未知的形式类型: {kind}，支持 {list(FORM_KINDS) + list(KIND_ALIASES)}")
    return kind


@dataclass(frozen=True)
class FormSpec:
    """
    向量空间 V(dim, q) 上的形式

    Attributes:
        kind: 形式类型
        dim: 向量空间维数
        field: 基域
        gram: 双线性（或半双线性）部分的 Gram 矩阵
        quad: 二次形式的上三角系数矩阵；非二次类型为 None
    """

    kind: str
    dim: int
    field: Field
    gram: np.ndarray
    quad: Optional[np.ndarray] = None

    @property
    def is_quadratic(self) -> bool:
        return self.quad is not None

    @property
    def is_hermitian(self) -> bool:
        return self.kind == "herm"

    def sigma(self, V: np.ndarray) -> np.ndarray:
        """半双线性时对第二个参数作用的域自同构"""
        return self.field.conj[V] if self.is_hermitian else V


def ambient_dim(kind: str, n: int) -> int:
    kind = canonical_kind(kind)
    return {"sp": 2 * n, "o-plus": 2 * n, "herm": 2 * n, "o-par": 2 * n + 1, "o-minus": 2 * n + 2}[kind]


def _elliptic_mu(F: Field) -> int:
    """第一个使 t² + t + μ 在 F 上无根的 μ"""
    t = F.elements
    values = F.add[F.mul[t, t], t]
    for mu in range(F.q):
        if not np.any(F.add[values, mu] == 0):
            return mu
    raise InvariantViolation(f"GF({F.q}) 上找不到不可约的 t² + t + μ")


def _polar_gram(F: Field, quad: np.ndarray) -> np.ndarray:
    """二次形式系数矩阵 -> 配极双线性形式的 Gram"""
    return F.add[quad, quad.T]


def standard_form(kind: str, n: int, F: Field) -> FormSpec:
    """
    标准形式

    Args:
        kind: sp / o-plus / o-par / o-minus / herm（或其别名）
        n: Witt 指数（双曲对的个数）
        F: 基域

    Raises:
        UnsupportedParameter: n < 1
        UnsupportedField: herm 要求 q 是平方数
    """
    kind = canonical_kind(kind)
    if n < 1:
        raise UnsupportedParameter(f"Witt 指数 n 必须 ≥ 1（当前 {n}）")
    dim = ambient_dim(kind, n)
    one, minus_one = 1, int(F.neg[1])

    if kind in ("sp", "herm"):
        if kind == "herm" and not F.is_square:
            raise UnsupportedField(f"hermitian 形式需要平方阶域（当前 q={F.q}）")
        gram = np.zeros((dim, dim), dtype=np.int64)
        for i in range(n):
            gram[i, n + i] = one
            gram[n + i, i] = minus_one if kind == "sp" else one
        return FormSpec(kind, dim, F, gram)

    quad = np.zeros((dim, dim), dtype=np.int64)
    for i in range(n):
        quad[i, n + i] = one
    if kind == "o-par":
        quad[2 * n, 2 * n] = one
    elif kind == "o-minus":
        quad[2 * n, 2 * n] = one
        quad[2 * n, 2 * n + 1] = one
        quad[2 * n + 1, 2 * n + 1] = _elliptic_mu(F)
    return FormSpec(kind, dim, F, _polar_gram(F, quad), quad)


def bilinear_matrix(form: FormSpec, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """B[i, j] = f(U_i, V_j) = U_i·G·σ(V_j)ᵀ"""
    F = form.field
    U = as_matrix(U, form.dim)
    V = as_matrix(V, form.dim)
    return matmul(F, matmul(F, U, form.gram), form.sigma(V).T)


def quadratic_values(form: FormSpec, V: np.ndarray) -> np.ndarray:
    """逐行计算 Q(v)"""
    if form.quad is None:
        raise UnsupportedParameter(f"{form.kind} 形式没有二次部分")
    F = form.field
    V = as_matrix(V, form.dim)
    acc = np.zeros(V.shape[0], dtype=np.int64)
    for i, j in zip(*np.nonzero(form.quad)):
        acc = F.add[acc, F.mul[form.quad[i, j], F.mul[V[:, i], V[:, j]]]]
    return acc


def is_singular_vectors(form: FormSpec, V: np.ndarray) -> np.ndarray:
    """
    逐行判断向量是否奇异

    二次类型按 Q(v) = 0 判定（特征 2 的抛物型必须如此），其余按 f(v, v) = 0。
    """
    V = as_matrix(V, form.dim)
    if form.is_quadratic:
        return quadratic_values(form, V) == 0
    F = form.field
    return row_dot(F, matmul(F, V, form.gram), form.sigma(V)) == 0


def is_totally_singular(form: FormSpec, W: np.ndarray) -> bool:
    """子空间（行向量张成）完全奇异：基向量奇异且两两正交"""
    W = as_matrix(W, form.dim)
    if W.shape[0] == 0:
        return True
    if not is_singular_vectors(form, W).all():
        return False
    return not bilinear_matrix(form, W, W).any()


def perp(form: FormSpec, W: LinearSubspace | np.ndarray) -> LinearSubspace:
    """{x : f(x, w) = 0 对所有 w ∈ W}"""
    F = form.field
    basis = W.basis if isinstance(W, LinearSubspace) else as_matrix(W, form.dim)
    if basis.shape[0] == 0:
        return LinearSubspace.whole(F, form.dim)
    # x·G·σ(w)ᵀ = 0  ⇔  x ∈ nullspace(σ(W)·Gᵀ)
    return LinearSubspace(F, form.dim, nullspace(F, matmul(F, form.sigma(basis), form.gram.T)))


def radical(form: FormSpec) -> LinearSubspace:
    return perp(form, LinearSubspace.whole(form.field, form.dim))


HyperbolicPair = Tuple[np.ndarray, np.ndarray]


def hyperbolic_basis(
    form: FormSpec,
    W: LinearSubspace | np.ndarray | None = None,
    rng: Optional[random.Random] = None,
) -> Tuple[List[HyperbolicPair], LinearSubspace]:
    """
    Witt 分解：在 W（缺省为整个 V）中逐个分出双曲对

    每一步取 W 中第一个奇异向量 v（rng 给定时随机取），要求 v 不在 W 的根中；
    取 w 使 f(v, w) = 1，再用 w + c·v 使 w 奇异，最后令 W ← W ∩ ⟨v, w⟩^⊥。

    Returns:
        (双曲对列表 [(e_i, f_i)], 剩余的子空间)
    """
    F = form.field
    if W is None:
        current = LinearSubspace.whole(F, form.dim)
    elif isinstance(W, LinearSubspace):
        current = W
    else:
        current = LinearSubspace(F, form.dim, W)

    pairs: List[HyperbolicPair] = []
    while current.rank >= 2:
        basis = current.basis
        vecs = current.vectors()
        vecs = vecs[(vecs != 0).any(axis=1)]
        singular = vecs[is_singular_vectors(form, vecs)]
        order = list(range(singular.shape[0]))
        if rng is not None:
            rng.shuffle(order)
        chosen = None
        for idx in order:
            v = singular[idx]
            against = bilinear_matrix(form, v, basis)[0]
            if against.any():
                chosen = (v, basis[int(np.flatnonzero(against)[0])])
                break
        if chosen is None:
            break
        v, w = chosen
        # f(v, λw) = f(v, w)·σ(λ)，在 F* 中找 λ 使其为 1
        for lam in range(1, F.q):
            scaled = F.mul[lam, w]
            if bilinear_matrix(form, v, scaled)[0, 0] == 1:
                w = scaled
                break
        for c in range(F.q):
            candidate = F.add[w, F.mul[c, v]]
            if is_singular_vectors(form, candidate)[0]:
                w = candidate
                break
        else:
            raise InvariantViolation("双曲对的第二个向量无法调整为奇异")
        if bilinear_matrix(form, v, w)[0, 0] != 1:
            raise InvariantViolation("双曲对不满足 f(e, f) = 1")
        pairs.append((v.copy(), w.copy()))
        # 系数 a 满足 a·[f(W_i, v), f(W_i, w)] = 0
        K = np.concatenate([bilinear_matrix(form, basis, v), bilinear_matrix(form, basis, w)], axis=1)
        coeffs = nullspace(F, K.T)
        rest = matmul(F, coeffs, basis) if coeffs.shape[0] else np.zeros((0, form.dim), dtype=np.int64)
        current = LinearSubspace(F, form.dim, rest)
    return pairs, current


def witt_index(
    form: FormSpec, W: LinearSubspace | np.ndarray | None = None, rng: Optional[random.Random] = None
) -> int:
    """限制在 W 上的形式的 Witt 指数（分出的双曲对个数）"""
    pairs, _ = hyperbolic_basis(form, W, rng)
    return len(pairs)
