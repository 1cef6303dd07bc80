"""HTTP 接口"""

import pytest
from fastapi.testclient import TestClient

from geomrank.api.server import build_application


@pytest.fixture(scope="module")
def client():
    return TestClient(build_application())


def test_health(client):
    response = client.get("/api/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_span_builtin(client):
    response = client.post("/api/span", json={"builtin": "fano", "points": [0, 1]})
    assert response.status_code == 200
    assert response.json() == {"span": [0, 1, 2]}


def test_span_inline_geometry(client):
    geometry = {"points": 4, "lines": [[0, 1, 2]]}
    response = client.post("/api/span", json={"geometry": geometry, "points": [0, 1]})
    assert response.json() == {"span": [0, 1, 2]}


def test_rank(client):
    response = client.post("/api/rank", json={"builtin": "example2:4"})
    assert response.status_code == 200
    body = response.json()
    assert body["rk_gen"]["value"] == 3
    assert body["rk_wo"]["value"] == 5
    assert body["ep"]["status"] == "fails"


def test_longest_chain(client):
    response = client.post("/api/chains/longest", json={"builtin": "pg:3:2"})
    assert response.status_code == 200
    assert response.json()["length"] == 4


def test_corank(client):
    response = client.post("/api/polar/corank", json={"kind": "o-par", "rank": 2, "q": 3, "method": "perp"})
    assert response.status_code == 200
    assert response.json()["value"] == 1


def test_verify(client):
    response = client.post("/api/verify/paper", params={"check": ["e1.primes", "projective.fano"]})
    assert response.status_code == 200
    body = response.json()
    assert [c["name"] for c in body["checks"]] == ["e1.primes", "projective.fano"]
    assert all(c["status"] == "pass" for c in body["checks"])


def test_unknown_suite(client):
    assert client.post("/api/verify/nope").status_code == 404


def test_input_errors(client):
    response = client.post("/api/rank", json={"builtin": "nope"})
    assert response.status_code == 400
    assert response.json()["detail"]["error"]["type"] == "UnsupportedParameter"
    both = client.post("/api/rank", json={"builtin": "fano", "geometry": {"points": 1, "lines": []}})
    assert both.status_code == 400
    bad_line = client.post("/api/span", json={"geometry": {"points": 3, "lines": [[0]]}, "points": []})
    assert bad_line.json()["detail"]["error"]["type"] == "InvalidLine"


def test_budget_error(client):
    response = client.post("/api/span", json={"builtin": "fano", "points": [0, 1], "budget": 1})
    assert response.status_code == 200
    response = client.post("/api/chains/longest", json={"builtin": "example2:8", "budget": 1})
    assert response.status_code == 409
    assert response.json()["detail"]["error"]["type"] == "BudgetExceeded"


def test_validation_error(client):
    response = client.post("/api/polar/corank", json={"kind": "sp", "rank": 2, "q": 3, "method": "other"})
    assert response.status_code == 422


def test_openapi_carries_request_examples(client):
    schemas = client.get("/openapi.json").json()["components"]["schemas"]
    assert schemas["CorankRequest"]["example"] == {"kind": "o-par", "rank": 2, "q": 3, "method": "chain"}
    assert schemas["GeometryRequest"]["example"]["builtin"] == "example2:4"
