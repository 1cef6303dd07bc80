"""
有限域 GF(q) 的查表实现

元素编码为 0..q-1：GF(p) 即整数模 p；GF(p²) 中 a0 + a1·α 编码为 a0 + a1·p，
α 是下表不可约二次多项式 x² + c1·x + c0 的根。
加、减、乘、负、逆、Frobenius 与共轭都预先算成 numpy 表，构造时校验域公理。
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Tuple

import numpy as np
from loguru import logger

from geomrank.utils.errors import InvariantViolation, UnsupportedField

# q -> (p, e, (c0, c1))，e = 2 时 x² + c1·x + c0 在 GF(p) 上不可约
_SUPPORTED: Dict[int, Tuple[int, int, Tuple[int, int]]] = {
    2: (2, 1, (0, 0)),
    3: (3, 1, (0, 0)),
    4: (2, 2, (1, 1)),
    5: (5, 1, (0, 0)),
    7: (7, 1, (0, 0)),
    9: (3, 2, (1, 0)),
    25: (5, 2, (2, 0)),
    49: (7, 2, (1, 0)),
}

SUPPORTED_ORDERS = tuple(sorted(_SUPPORTED))


class Field:
    """
    GF(q)，q ∈ SUPPORTED_ORDERS

    Attributes:
        q: 域的阶
        p: 特征
        e: 扩张次数
        add, sub, mul: q×q 表
        neg, inv, frob, conj: 长度 q 的表（inv[0] = 0 不使用）
    """

    def __init__(self, q: int):
        if q not in _SUPPORTED:
            raise UnsupportedField(f"不支持的域阶 q={q}，支持 {list(SUPPORTED_ORDERS)}")
        p, e, (c0, c1) = _SUPPORTED[q]
        self.q, self.p, self.e = q, p, e
        self.modulus = (c0, c1)

        idx = np.arange(q)
        a0, a1 = idx % p, idx // p
        A0, B0 = a0[:, None], a0[None, :]
        A1, B1 = a1[:, None], a1[None, :]
        self.add = ((A0 + B0) % p + ((A1 + B1) % p) * p).astype(np.int64)
        self.neg = ((-a0) % p + ((-a1) % p) * p).astype(np.int64)
        self.sub = self.add[:, self.neg]
        # (a0 + a1α)(b0 + b1α)，α² = -c1·α - c0
        hi = A1 * B1
        low = (A0 * B0 - hi * c0) % p
        mid = (A0 * B1 + A1 * B0 - hi * c1) % p
        self.mul = (low + mid * p).astype(np.int64)

        self.inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            hits = np.flatnonzero(self.mul[a] == 1)
            if hits.size != 1:
                raise InvariantViolation(f"GF({q}) 中元素 {a} 没有唯一的逆")
            self.inv[a] = hits[0]

        self.frob = np.array([self.power(a, p) for a in range(q)], dtype=np.int64)
        # 平方阶域上 σ(x) = x^√q，其余情形取恒等
        self.is_square = e % 2 == 0
        self.root = p ** (e // 2) if self.is_square else q
        self.conj = self.frob.copy() if self.is_square else idx.astype(np.int64)
        self._verify_axioms()
        logger.debug(f"构造 GF({q}) 查表完成")

    def power(self, a: int, k: int) -> int:
        result = 1
        base = int(a)
        while k > 0:
            if k & 1:
                result = int(self.mul[result, base])
            base = int(self.mul[base, base])
            k >>= 1
        return result

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError(f"GF({self.q}) 中除以 0")
        return int(self.mul[a, self.inv[b]])

    @property
    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    @property
    def nonzero(self) -> np.ndarray:
        return np.arange(1, self.q, dtype=np.int64)

    def trace(self, a: int) -> int:
        """相对迹 a + σ(a)，只在平方阶域上有意义"""
        return int(self.add[a, self.conj[a]])

    @property
    def poly(self) -> str:
        """定义多项式的文本形式，素域为空串"""
        if self.e == 1:
            return ""
        c0, c1 = self.modulus
        terms = ["x^2"]
        if c1:
            terms.append("x" if c1 == 1 else f"{c1}x")
        if c0:
            terms.append(str(c0))
        return "+".join(terms)

    def tag(self) -> Dict[str, object]:
        """向量序列化时附带的域标签"""
        return {"q": self.q, "poly": self.poly}

    def _verify_axioms(self) -> None:
        q = self.q
        a = np.arange(q)
        add, mul = self.add, self.mul
        checks = {
            "加法交换": np.array_equal(add, add.T),
            "乘法交换": np.array_equal(mul, mul.T),
            "加法单位元": np.array_equal(add[0], a),
            "乘法单位元": np.array_equal(mul[1], a),
            "加法逆元": np.all(add[a, self.neg] == 0),
            "乘法逆元": np.all(mul[a[1:], self.inv[1:]] == 1),
            "加法结合": np.array_equal(add[add[:, :, None], a[None, None, :]], add[a[:, None, None], add[None, :, :]]),
            "乘法结合": np.array_equal(mul[mul[:, :, None], a[None, None, :]], mul[a[:, None, None], mul[None, :, :]]),
            "分配律": np.array_equal(mul[a[:, None, None], add[None, :, :]], add[mul[:, :, None], mul[:, None, :]]),
            "共轭是对合": np.array_equal(self.conj[self.conj], a),
        }
        failed = [name for name, ok in checks.items() if not ok]
        if failed:
            raise InvariantViolation(f"GF({q}) 查表不满足: {', '.join(failed)}")

    def __repr__(self) -> str:
        return f"Field(q={self.q})"


@lru_cache(maxsize=None)
def get_field(q: int) -> Field:
    """按阶取（缓存的）有限域"""
    return Field(q)
