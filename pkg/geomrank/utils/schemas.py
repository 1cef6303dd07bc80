"""
结构化输出 Schema 定义

使用 Pydantic 模型定义各类报告的输出格式，CLI 与 HTTP 层直接序列化这些模型。
集合一律以升序列表输出，保证 JSON 对固定输入逐字节稳定。
"""

from __future__ import annotations

from typing import Any, Dict, List, Literal, Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field


class EPWitness(BaseModel):
    """交换性质失败的见证 (X, x, y)"""

    X: List[int] = Field(description="点集 X（升序）")
    x: int = Field(description="加入 X 的点 x")
    y: int = Field(description="y ∈ ⟨X∪{x}⟩ 但 y ∉ ⟨X⟩，且 x ∉ ⟨X∪{y}⟩")


class EPReport(BaseModel):
    """交换性质 (EP) 检查结果"""

    status: Literal["holds", "fails", "sampled_ok"] = Field(description="holds / fails / sampled_ok")
    mode: Literal["exhaustive", "sampled"] = Field(description="检查模式")
    witness: Optional[EPWitness] = Field(default=None, description="失败时的见证，可重放")
    checks_performed: int = Field(default=0, description="检查过的 (X, x, y) 三元组个数")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "status": "fails",
                "mode": "exhaustive",
                "witness": {"X": [5, 6], "x": 1, "y": 7},
                "checks_performed": 1234,
            }
        }
    )


class RankValue(BaseModel):
    """精确值或上下界"""

    value: Optional[int] = Field(default=None, description="精确值（exact=true 时有效）")
    exact: bool = Field(description="是否为精确值")
    lower: int = Field(description="下界")
    upper: Optional[int] = Field(default=None, description="上界（未知时为 null）")
    witness: Optional[List[int]] = Field(default=None, description="达到该值的见证点集")

    @classmethod
    def exact_value(cls, value: int, witness: Optional[List[int]] = None) -> "RankValue":
        return cls(value=value, exact=True, lower=value, upper=value, witness=witness)

    @classmethod
    def bounds(cls, lower: int, upper: Optional[int], witness: Optional[List[int]] = None) -> "RankValue":
        if upper is not None and lower == upper:
            return cls.exact_value(lower, witness)
        return cls(value=None, exact=False, lower=lower, upper=upper, witness=witness)


class RankReport(BaseModel):
    """几何的各种秩汇总"""

    rk_gen: RankValue = Field(description="生成秩 rk_gen")
    rk_wo: RankValue = Field(description="最长子空间链长度（有限情形下即 rk_C = rk_WO）")
    rk_ind_lower: int = Field(description="找到的最大独立集大小")
    rk_ind_exact: bool = Field(default=False, description="rk_ind_lower 是否为精确的 rk_ind")
    rk_ind_witness: List[int] = Field(default_factory=list, description="独立集见证")
    ep: EPReport = Field(description="交换性质检查结果")
    basis_sizes: List[int] = Field(default_factory=list, description="找到的基的大小（多重集，升序）")
    basis_sizes_exhaustive: bool = Field(default=False, description="basis_sizes 是否来自全部基的枚举")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "rk_gen": {"value": 3, "exact": True, "lower": 3, "upper": 3, "witness": [0, 1, 2]},
                "rk_wo": {"value": 5, "exact": True, "lower": 5, "upper": 5, "witness": None},
                "rk_ind_lower": 4,
                "rk_ind_exact": True,
                "rk_ind_witness": [5, 6, 7, 8],
                "ep": {"status": "fails", "mode": "exhaustive", "witness": None, "checks_performed": 0},
                "basis_sizes": [3, 3, 3],
                "basis_sizes_exhaustive": True,
            }
        }
    )


class ChainLengthsReport(BaseModel):
    """全部极大链长度的多重集"""

    lengths: Dict[int, int] = Field(description="长度 -> 该长度的极大链条数")
    exhaustive: bool = Field(description="是否完整枚举")
    subspaces_visited: int = Field(default=0, description="访问过的子空间数")

    @property
    def distinct(self) -> List[int]:
        return sorted(self.lengths)


class MaximalityReport(BaseModel):
    """极大链判定结果"""

    is_maximal: bool = Field(description="是否为极大链")
    violation: Optional[Literal["first_not_empty", "last_not_full", "not_a_cover"]] = Field(
        default=None, description="第一个被违反的条件"
    )
    index: Optional[int] = Field(default=None, description="not_a_cover 时出问题的相邻对下标 i（成员 i 与 i+1）")
    between: Optional[List[int]] = Field(default=None, description="夹在中间的子空间见证")


class BasisChainReport(BaseModel):
    """有序独立集对应链的等价条件检查"""

    is_basis: bool = Field(description="X 是基")
    top_is_full: bool = Field(description="链的顶端等于 P")
    chain_is_maximal: bool = Field(description="链是极大链")
    chain_length: int = Field(description="链长度")


class E1SpanResult(BaseModel):
    """自然数几何中的有界闭包结果"""

    status: Literal["converged", "truncated", "iteration_cap"] = Field(description="收敛/被数值上限截断/迭代上限")
    points: List[int] = Field(description="闭包（截断时为 [0, cap] 内的部分闭包）")
    iterations: int = Field(description="工作表出队次数")
    magnitude_cap: int = Field(description="数值上限")

    @property
    def converged(self) -> bool:
        return self.status == "converged"


class E1Check(BaseModel):
    """素数集验证的一个子检查"""

    name: str = Field(description="子检查名")
    status: Literal["pass", "fail"] = Field(description="结果")
    detail: str = Field(default="", description="说明")
    counterexample: Optional[Dict[str, Any]] = Field(default=None, description="反例")


class E1VerificationReport(BaseModel):
    """素数集验证报告"""

    bound: int = Field(description="验证上界 N")
    checks: List[E1Check] = Field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def check(self, name: str) -> E1Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


class CorankReport(BaseModel):
    """极余秩计算结果"""

    method: Literal["chain", "perp"] = Field(description="计算方法")
    value: int = Field(description="余秩")
    M: List[int] = Field(description="极大奇异子空间 M 的点")
    M_prime: List[int] = Field(description="与 M 不交的极大奇异子空间 M' 的点")
    witness_chain: Optional[List[List[int]]] = Field(default=None, description="chain 方法：nice 子空间链")
    witness_subspace: Optional[List[List[int]]] = Field(default=None, description="perp 方法：正交补的基向量（元素编码）")
    ambient_dim: int = Field(description="嵌入维数 dim(V)")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "method": "perp",
                "value": 1,
                "M": [0, 1, 2, 3],
                "M_prime": [20, 21, 22, 23],
                "witness_chain": None,
                "witness_subspace": [[0, 0, 0, 0, 1]],
                "ambient_dim": 5,
            }
        }
    )


class EmbeddingBounds(BaseModel):
    """嵌入维数与秩的不等式"""

    embedding_dim: int = Field(description="dim(e)，嵌入的向量空间维数")
    polar_rank: int = Field(description="prk")
    dim_at_least_twice_prk: bool = Field(description="dim(e) ≥ 2·prk")
    rk_gen: Optional[int] = Field(default=None, description="精确 rk_gen（未知时为 null）")
    rk_gen_at_least_dim: Optional[bool] = Field(default=None, description="rk_gen ≥ dim(e)；rk_gen 未知时为 null")
    dim_equals_rk_gen: Optional[bool] = Field(default=None, description="dim(e) = rk_gen（忠实嵌入的必要条件）")


class FaithfulnessViolation(BaseModel):
    """S ≠ e⁻¹([e(S)]) 的见证"""

    S: List[int] = Field(description="nice 子空间 S")
    pullback: List[int] = Field(description="e⁻¹([e(S)])")
    span_dim: int = Field(description="[e(S)] 的向量维数")
    M: List[int] = Field(description="所用的 M")
    M_prime: List[int] = Field(description="所用的 M'")
    X: List[int] = Field(default_factory=list, description="额外加入的点")


class FaithfulnessReport(BaseModel):
    """嵌入忠实性检查"""

    mode: Literal["exhaustive_minimal", "sampled"] = Field(description="检查模式")
    holds_on_tested: bool = Field(description="测试过的 nice 子空间上均成立")
    tested: int = Field(description="检查过的不同 nice 子空间数")
    violation: Optional[FaithfulnessViolation] = Field(default=None, description="第一个违反")


class CheckResult(BaseModel):
    """验证套件中的单个检查"""

    name: str = Field(description="检查名")
    status: Literal["pass", "fail", "skipped"] = Field(description="结果")
    expected: Any = Field(default=None, description="期望值")
    computed: Any = Field(default=None, description="计算值")
    provenance: str = Field(default="DERIVED", description="期望值来源标签")
    elapsed: float = Field(default=0.0, description="耗时（秒）")
    replay: str = Field(default="", description="单独重放该检查的命令行")
    detail: Optional[str] = Field(default=None, description="失败/跳过说明")


class SuiteResult(BaseModel):
    """验证套件结果"""

    suite: str = Field(description="套件名")
    seed: Optional[int] = Field(default=None, description="随机种子")
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        """无失败项；paper 套件里的验收检查还不能被跳过"""
        if self.suite == "paper" and any(c.status == "skipped" for c in self.checks):
            return False
        return all(c.status != "fail" for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if c.status == "fail"]

    def to_frame(self) -> pd.DataFrame:
        """汇总为 DataFrame，便于终端打印"""
        rows = [
            {
                "name": c.name,
                "status": c.status,
                "expected": c.expected,
                "computed": c.computed,
                "elapsed": round(c.elapsed, 3),
            }
            for c in self.checks
        ]
        return pd.DataFrame(rows, columns=["name", "status", "expected", "computed", "elapsed"])
