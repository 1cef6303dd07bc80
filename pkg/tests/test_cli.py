"""geom 命令行：输出格式与退出码"""

import json
import sys

import pytest
from loguru import logger

from geomrank import cli
from geomrank.core import dump_geometry, load_geometry
from geomrank.gallery import fano
from geomrank.utils.schemas import CheckResult, SuiteResult


@pytest.fixture(autouse=True)
def _restore_logging():
    yield
    logger.remove()
    logger.add(sys.__stderr__, level="INFO")


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out.strip()


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_span(capsys):
    assert run_json(capsys, "span", "--builtin", "fano", "0", "1") == (0, {"span": [0, 1, 2]})


def test_longest_chain(capsys):
    assert run(capsys, "chains", "longest", "--builtin", "fano") == (0, "3")
    code, payload = run_json(capsys, "chains", "longest", "--builtin", "example2:4")
    assert code == 0
    assert payload["length"] == 5
    assert len(payload["chain"]) == 6


def test_verify_maximal(capsys):
    chain = "[[],[0],[0,1,2],[0,1,2,3,4,5,6]]"
    assert run(capsys, "chains", "verify-maximal", "--builtin", "fano", "--chain", chain) == (0, "maximal")
    code, out = run(capsys, "chains", "verify-maximal", "--builtin", "fano", "--chain", "[[],[0],[0,1,2,3,4,5,6]]")
    assert code == 0 and out == "not maximal: not_a_cover"


def test_chain_lengths(capsys):
    code, payload = run_json(capsys, "chains", "lengths", "--builtin", "fano")
    assert code == 0
    assert payload["lengths"] == {"3": 21}


def test_extend_requires_chain(capsys):
    code, _ = run(capsys, "chains", "extend", "--builtin", "fano")
    assert code == cli.EXIT_INPUT_ERROR


def test_rank(capsys):
    code, payload = run_json(capsys, "rank", "--builtin", "example2:4")
    assert code == 0
    assert payload["rk_gen"]["value"] == 3
    assert payload["rk_wo"]["value"] == 5
    assert payload["ep"]["status"] == "fails"


def test_ep_check(capsys):
    code, payload = run_json(capsys, "ep-check", "--builtin", "fano")
    assert code == 0 and payload["status"] == "holds"


def test_geometry_file(capsys, tmp_path):
    path = dump_geometry(fano(), tmp_path / "fano.json")
    assert run(capsys, "chains", "longest", "--geometry", str(path)) == (0, "3")


def test_example2_emit(capsys, tmp_path):
    target = tmp_path / "e2.json"
    code, payload = run_json(capsys, "example2", "--n", "3", "--emit", str(target))
    assert code == 0
    assert payload["points"] == 7
    assert load_geometry(target).n_lines == 13


def test_e1(capsys):
    assert run(capsys, "e1", "span", "3", "5") == (0, "converged: 3 5")
    assert run(capsys, "e1", "collinear", "4", "6") == (0, "false")
    code, payload = run_json(capsys, "e1", "verify-primes", "--bound", "100")
    assert code == 0
    assert {c["name"]: c["status"] for c in payload["checks"]}["line_closed"] == "fail"


def test_polar(capsys, tmp_path):
    assert run(capsys, "polar", "corank", "--kind", "o-par", "--rank", "2", "--q", "3", "--method", "perp") == (0, "1")
    emit, sidecar = tmp_path / "sp.json", tmp_path / "sp.embedding.json"
    code, payload = run_json(
        capsys, "polar", "build", "--kind", "sp", "--rank", "2", "--q", "2", "--emit", str(emit), "--sidecar", str(sidecar)
    )
    assert code == 0
    assert payload == {"name": "sp:2:2", "points": 15, "lines": 15, "dim": 4}
    assert load_geometry(emit).n_points == 15
    assert len(json.loads(sidecar.read_text(encoding="utf-8"))["vectors"]) == 15


def test_polar_emit_writes_default_sidecar(capsys, tmp_path):
    emit = tmp_path / "sp.json"
    code, _ = run_json(capsys, "polar", "build", "--kind", "sp", "--rank", "2", "--q", "2", "--emit", str(emit))
    assert code == 0
    sidecar = tmp_path / "sp.embedding.json"
    assert sidecar.exists()
    data = json.loads(sidecar.read_text(encoding="utf-8"))
    assert len(data["vectors"]) == 15
    assert load_geometry(emit).n_points == 15


def test_polar_rank(capsys):
    code, payload = run_json(capsys, "polar", "rank", "--kind", "o-minus", "--rank", "2", "--q", "2")
    assert code == 0
    assert payload["witt"] == payload["chain"] == 2


def test_verify(capsys):
    code, payload = run_json(capsys, "verify", "--suite", "paper", "--check", "e1.primes")
    assert code == 0
    assert payload["checks"][0]["status"] == "pass"
    code, out = run(capsys, "verify", "--suite", "fuzz", "--list")
    assert code == 0
    assert out.splitlines() == ["fuzz.ep_equalities", "fuzz.rank_bound", "fuzz.roundtrip"]


def test_verify_failure_exit_code(capsys, monkeypatch):
    failed = SuiteResult(suite="paper", seed=42, checks=[CheckResult(name="x", status="fail", expected=1, computed=2)])
    monkeypatch.setattr(cli, "run_suite", lambda *args, **kwargs: failed)
    code, _ = run(capsys, "verify", "--suite", "paper")
    assert code == cli.EXIT_SUITE_FAILED


def test_input_error(capsys):
    code, payload = run_json(capsys, "rank", "--builtin", "nope")
    assert code == cli.EXIT_INPUT_ERROR
    assert payload["error"]["type"] == "UnsupportedParameter"


def test_budget_error(capsys):
    code, payload = run_json(capsys, "ep-check", "--builtin", "example2:8")
    assert code == cli.EXIT_BUDGET
    assert payload["error"]["type"] == "BudgetExceeded"
    assert payload["error"]["partial"]["n_points"] == 17


def test_span_budget(capsys):
    code, _ = run(capsys, "span", "--builtin", "fano", "0", "1", "--budget", "0")
    assert code == cli.EXIT_BUDGET
