from __future__ import annotations

import os
from typing import Any, Dict, List, Optional

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, ConfigDict, Field

from geomrank.chains import longest_chain
from geomrank.config.config import get_config
from geomrank.core.closure import span
from geomrank.core.geometry import Geometry, geometry_from_dict
from geomrank.polar import corank
from geomrank.rank import rank_report
from geomrank.utils.budget import Budget
from geomrank.utils.errors import BudgetExceeded, GeomError, UnsupportedParameter
from geomrank.utils.schemas import CorankReport, RankReport, SuiteResult
from geomrank.verify import SUITES, resolve_builtin, resolve_polar, run_suite


class GeometryRequest(BaseModel):
    """几何入参：内置名字或内联 {points, lines}，二选一"""

    builtin: Optional[str] = Field(default=None, description="内置几何名，例如 fano、pg:3:2、example2:4、sp:2:3")
    geometry: Optional[Dict[str, Any]] = Field(default=None, description="内联几何 {\"points\": n, \"lines\": [[...], ...]}")
    budget: Optional[int] = Field(default=None, ge=1, description="span 调用次数上限（缺省取配置）")
    seed: int = Field(default=0, description="随机种子")

    model_config = ConfigDict(json_schema_extra={"example": {"builtin": "example2:4", "budget": 1000000, "seed": 0}})


class SpanRequest(GeometryRequest):
    points: List[int] = Field(default_factory=list, description="待闭包的点")


class SpanResponse(BaseModel):
    span: List[int] = Field(..., description="⟨X⟩（升序）")


class LongestChainResponse(BaseModel):
    length: int = Field(..., description="最长子空间链长度")
    chain: List[List[int]] = Field(..., description="见证链")


class CorankRequest(BaseModel):
    kind: str = Field(..., description="sp / o-par / o-plus / o-minus / herm 或其全名")
    rank: int = Field(..., ge=1, description="极秩参数 n")
    q: int = Field(..., ge=2, description="域的阶")
    method: str = Field(default="chain", pattern=r"^(chain|perp)$", description="chain 或 perp")
    seed: Optional[int] = Field(default=None, description="(M, M') 选取与插入顺序的种子")

    model_config = ConfigDict(json_schema_extra={"example": {"kind": "o-par", "rank": 2, "q": 3, "method": "chain"}})


def _resolve(payload: GeometryRequest) -> Geometry:
    if payload.builtin and payload.geometry:
        raise UnsupportedParameter("builtin 与 geometry 只能给一个")
    if payload.builtin:
        return resolve_builtin(payload.builtin)
    if payload.geometry is not None:
        return geometry_from_dict(payload.geometry, name="inline")
    raise UnsupportedParameter("需要 builtin 或 geometry")


def _budget(payload: GeometryRequest) -> Budget:
    return Budget(span_calls=payload.budget) if payload.budget else Budget.from_config()


def _http_error(exc: GeomError) -> HTTPException:
    status = 409 if isinstance(exc, BudgetExceeded) else 400
    return HTTPException(status_code=status, detail={"error": exc.to_payload()})


def build_application() -> FastAPI:
    app = FastAPI(title="geomrank API", version="0.1.0")

    config = get_config().config
    deployment_mode = config.get("deployment_mode", "development")

    # CORS配置：生产环境限制允许的域名
    if deployment_mode == "production":
        allowed_origins = os.getenv("ALLOWED_ORIGINS", "").split(",")
        allowed_origins = [origin.strip() for origin in allowed_origins if origin.strip()]
        if not allowed_origins:
            allowed_origins = ["*"]
    else:
        allowed_origins = ["*"]

    app.add_middleware(
        CORSMiddleware,
        allow_origins=allowed_origins,
        allow_credentials=True,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/api/health")
    async def health() -> Dict[str, str]:
        return {"status": "ok"}

    # 同步路由，在线程池中执行
    @app.post("/api/span", response_model=SpanResponse)
    def compute_span(payload: SpanRequest) -> SpanResponse:
        try:
            G = _resolve(payload)
            return SpanResponse(span=span(G, payload.points, budget=_budget(payload)).to_list())
        except GeomError as exc:
            raise _http_error(exc) from exc

    @app.post("/api/rank", response_model=RankReport)
    def compute_rank(payload: GeometryRequest) -> RankReport:
        try:
            return rank_report(_resolve(payload), budget=_budget(payload), seed=payload.seed)
        except GeomError as exc:
            raise _http_error(exc) from exc

    @app.post("/api/chains/longest", response_model=LongestChainResponse)
    def compute_longest_chain(payload: GeometryRequest) -> LongestChainResponse:
        try:
            length, chain = longest_chain(_resolve(payload), _budget(payload))
        except GeomError as exc:
            raise _http_error(exc) from exc
        return LongestChainResponse(length=length, chain=chain.to_lists())

    @app.post("/api/polar/corank", response_model=CorankReport)
    def compute_corank(payload: CorankRequest) -> CorankReport:
        try:
            PG = resolve_polar(f"{payload.kind}:{payload.rank}:{payload.q}")
            return corank(PG, method=payload.method, seed=payload.seed)
        except GeomError as exc:
            raise _http_error(exc) from exc

    @app.post("/api/verify/{suite}", response_model=SuiteResult)
    def verify(
        suite: str,
        check: Optional[List[str]] = Query(default=None),
        seed: Optional[int] = None,
        trials: Optional[int] = None,
    ) -> SuiteResult:
        if suite not in SUITES:
            raise HTTPException(status_code=404, detail=f"未知的验证套件: {suite}")
        try:
            return run_suite(suite, seed=seed, trials=trials, only=check)
        except GeomError as exc:
            raise _http_error(exc) from exc

    return app


app = build_application()
