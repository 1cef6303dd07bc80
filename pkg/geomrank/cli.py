"""
命令行入口（python main.py，程序名 geom）

用法示例：
    python main.py rank --builtin example2:4 --json
    python main.py chains longest --builtin fano
    python main.py polar corank --kind o-par --rank 2 --q 3 --method chain
    python main.py verify --suite paper

退出码：0 成功；1 验证套件有失败；2 输入或计算错误；3 超出预算。
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, List, Optional

from dotenv import load_dotenv
from loguru import logger
from pydantic import BaseModel

from geomrank.chains import extend_to_maximal, is_maximal_chain, longest_chain, maximal_chain_lengths
from geomrank.config.config import get_config
from geomrank.core.closure import span
from geomrank.core.exchange import check_exchange_property
from geomrank.core.geometry import Geometry, dump_geometry, load_geometry
from geomrank.gallery.example2 import example2
from geomrank.gallery.nat_lines import e1_collinear, e1_span, e1_verify_prime_span
from geomrank.gallery.projective import projective_space
from geomrank.polar import build_polar, check_faithful, corank, embedding_bounds, polar_rank
from geomrank.rank import rank_report
from geomrank.utils.budget import Budget
from geomrank.utils.errors import BudgetExceeded, GeomError, UnsupportedParameter
from geomrank.utils.log import setup_logging
from geomrank.verify import SUITES, builtin_names, list_checks, resolve_builtin, run_suite

EXIT_OK = 0
EXIT_SUITE_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET = 3


# ---------------------------------------------------------------- 输出


def _emit(args: argparse.Namespace, payload: Any, human: Optional[Callable[[], str]] = None) -> None:
    """--json 时输出稳定 JSON，否则输出 human() 的文本"""
    if args.json or human is None:
        if isinstance(payload, BaseModel):
            print(payload.model_dump_json())
        else:
            print(json.dumps(payload, ensure_ascii=False))
    else:
        print(human())


def _budget(args: argparse.Namespace) -> Budget:
    if args.budget is None:
        return Budget.from_config()
    return Budget(span_calls=int(args.budget))


def _geometry(args: argparse.Namespace) -> Geometry:
    if args.geometry:
        return load_geometry(args.geometry)
    if args.builtin:
        return resolve_builtin(args.builtin)
    raise UnsupportedParameter("需要 --builtin <名字> 或 --geometry <文件>")


def _parse_chain(raw: str) -> List[List[int]]:
    try:
        members = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UnsupportedParameter(f"--chain 不是合法 JSON: {exc}") from exc
    if not isinstance(members, list) or not all(isinstance(m, list) for m in members):
        raise UnsupportedParameter("--chain 必须是点列表的列表，例如 [[],[0],[0,1,3]]")
    return members


# ---------------------------------------------------------------- 子命令


def cmd_span(args: argparse.Namespace) -> int:
    G = _geometry(args)
    result = span(G, args.points, budget=_budget(args))
    _emit(args, {"span": result.to_list()}, lambda: " ".join(map(str, result.to_list())))
    return EXIT_OK


def cmd_rank(args: argparse.Namespace) -> int:
    G = _geometry(args)
    report = rank_report(G, budget=_budget(args), seed=args.seed or 0)

    def human() -> str:
        rk_gen = report.rk_gen.value if report.rk_gen.exact else f"[{report.rk_gen.lower}, {report.rk_gen.upper}]"
        rk_wo = report.rk_wo.value if report.rk_wo.exact else f"≥ {report.rk_wo.lower}"
        return "\n".join(
            [
                f"几何: {G!r}",
                f"rk_gen: {rk_gen}",
                f"最长链: {rk_wo}",
                f"独立集: {report.rk_ind_lower}{'' if report.rk_ind_exact else '（下界）'} {report.rk_ind_witness}",
                f"EP: {report.ep.status}" + (f" 见证 {report.ep.witness.model_dump()}" if report.ep.witness else ""),
                f"基的大小: {sorted(set(report.basis_sizes))}",
            ]
        )

    _emit(args, report, human)
    return EXIT_OK


def cmd_ep_check(args: argparse.Namespace) -> int:
    G = _geometry(args)
    report = check_exchange_property(G, mode=args.mode, seed=args.seed or 0, trials=args.trials, budget=_budget(args))
    _emit(args, report, lambda: report.status if report.witness is None else f"{report.status} {report.witness.model_dump()}")
    return EXIT_OK


def cmd_chains(args: argparse.Namespace) -> int:
    G = _geometry(args)
    budget = _budget(args)
    if args.action == "longest":
        length, chain = longest_chain(G, budget)
        _emit(args, {"length": length, "chain": chain.to_lists()}, lambda: str(length))
    elif args.action == "lengths":
        report = maximal_chain_lengths(G, budget)
        _emit(args, report, lambda: " ".join(f"{k}×{v}" for k, v in report.lengths.items()))
    else:
        if not args.chain:
            raise UnsupportedParameter(f"chains {args.action} 需要 --chain")
        members = _parse_chain(args.chain)
        if args.action == "extend":
            chain = extend_to_maximal(G, members, budget)
            _emit(args, {"length": chain.length, "chain": chain.to_lists()}, lambda: json.dumps(chain.to_lists()))
        else:
            report = is_maximal_chain(G, members, budget)
            _emit(args, report, lambda: "maximal" if report.is_maximal else f"not maximal: {report.violation}")
    return EXIT_OK


def cmd_example2(args: argparse.Namespace) -> int:
    G = example2(args.n)
    if args.emit:
        path = dump_geometry(G, args.emit)
        logger.info(f"已写出 {path}")
    _emit(args, G.to_dict(), lambda: repr(G))
    return EXIT_OK


def cmd_pg(args: argparse.Namespace) -> int:
    G = projective_space(args.d, args.q)
    if args.emit:
        path = dump_geometry(G, args.emit)
        logger.info(f"已写出 {path}")
    _emit(args, G.to_dict(), lambda: repr(G))
    return EXIT_OK


def cmd_e1(args: argparse.Namespace) -> int:
    if args.action == "collinear":
        if len(args.values) != 2:
            raise UnsupportedParameter("e1 collinear 需要两个自然数")
        result = e1_collinear(*args.values)
        _emit(args, {"collinear": result}, lambda: str(result).lower())
    elif args.action == "span":
        cap = int(args.budget) if args.budget is not None else None
        result = e1_span(args.values, magnitude_cap=cap, iteration_cap=args.iterations)
        _emit(args, result, lambda: f"{result.status}: {' '.join(map(str, result.points))}")
    else:
        report = e1_verify_prime_span(args.bound)
        _emit(
            args,
            report,
            lambda: "\n".join(f"{c.name}: {c.status} {c.counterexample or ''}".rstrip() for c in report.checks),
        )
    return EXIT_OK


def cmd_polar(args: argparse.Namespace) -> int:
    PG = build_polar(args.kind, args.rank, args.q)
    if args.action == "build":
        sidecar = args.sidecar
        if args.emit:
            emitted = dump_geometry(PG.geometry, args.emit)
            logger.info(f"已写出 {emitted}")
            # 缺省旁车与几何文件同目录：<stem>.embedding.json
            sidecar = sidecar or emitted.with_name(f"{emitted.stem}.embedding.json")
        if sidecar:
            with open(sidecar, "w", encoding="utf-8") as f:
                json.dump(PG.sidecar(), f)
            logger.info(f"已写出嵌入旁车 {sidecar}")
        payload = {"name": PG.name, "points": PG.geometry.n_points, "lines": PG.geometry.n_lines, "dim": PG.form.dim}
        _emit(args, payload, lambda: repr(PG))
    elif args.action == "rank":
        payload = {
            "witt": polar_rank(PG, "witt"),
            "chain": polar_rank(PG, "chain"),
            "bounds": embedding_bounds(PG).model_dump(),
        }
        _emit(args, payload, lambda: f"prk witt={payload['witt']} chain={payload['chain']}")
    elif args.action == "corank":
        report = corank(PG, method=args.method, seed=args.seed)
        _emit(args, report, lambda: str(report.value))
    else:
        report = check_faithful(PG, mode=args.mode, seed=args.seed or 0, trials=args.trials or 200)
        _emit(args, report, lambda: f"{'holds' if report.holds_on_tested else 'violated'}（{report.tested} 个 nice 子空间）")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.list:
        names = list_checks(args.suite, args.seed, args.trials)
        _emit(args, {"checks": names}, lambda: "\n".join(names))
        return EXIT_OK
    result = run_suite(args.suite, seed=args.seed, trials=args.trials, only=args.check or None)

    def human() -> str:
        lines = [result.to_frame().to_string(index=False)]
        for failure in result.failures:
            lines.append(f"失败 {failure.name}: {failure.detail}，重放: {failure.replay}")
        lines.append("全部通过" if result.passed else f"{len(result.failures)} 项失败")
        return "\n".join(lines)

    _emit(args, result, human)
    return EXIT_OK if result.passed else EXIT_SUITE_FAILED


# ---------------------------------------------------------------- 解析器


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="输出机器可读的 JSON")
    common.add_argument("--seed", type=int, default=None, help="随机种子")
    common.add_argument("--budget", type=float, default=None, help="span 调用次数上限（可写成 1e6）")
    common.add_argument("--debug", action="store_true", help="DEBUG 级别日志")

    source = argparse.ArgumentParser(add_help=False)
    group = source.add_mutually_exclusive_group()
    group.add_argument("--builtin", help=f"内置几何名，例如 {', '.join(builtin_names())}")
    group.add_argument("--geometry", help="几何 JSON 文件")

    polar_args = argparse.ArgumentParser(add_help=False)
    polar_args.add_argument("--kind", required=True, help="sp / o-par / o-plus / o-minus / herm 或其全名")
    polar_args.add_argument("--rank", type=int, required=True, help="极秩参数 n")
    polar_args.add_argument("--q", type=int, required=True, help="域的阶")

    parser = argparse.ArgumentParser(prog="geom", description="有限点线几何的秩、链与极空间计算")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("span", parents=[common, source], help="点集的闭包")
    p.add_argument("points", type=int, nargs="*")
    p.set_defaults(handler=cmd_span)

    p = sub.add_parser("rank", parents=[common, source], help="秩报告")
    p.set_defaults(handler=cmd_rank)

    p = sub.add_parser("ep-check", parents=[common, source], help="交换性质检查")
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--trials", type=int, default=None)
    p.set_defaults(handler=cmd_ep_check)

    p = sub.add_parser("chains", parents=[common, source], help="子空间链")
    p.add_argument("action", choices=["longest", "extend", "verify-maximal", "lengths"])
    p.add_argument("--chain", help="JSON 格式的链，例如 [[],[0],[0,1,3]]")
    p.set_defaults(handler=cmd_chains)

    p = sub.add_parser("example2", parents=[common], help="交换性质反例几何")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--emit", help="把几何写到 JSON 文件")
    p.set_defaults(handler=cmd_example2)

    p = sub.add_parser("e1", parents=[common], help="自然数上的无限几何")
    p.add_argument("action", choices=["collinear", "span", "verify-primes"])
    p.add_argument("values", type=int, nargs="*")
    p.add_argument("--iterations", type=int, default=None, help="e1 span 的迭代上限")
    p.add_argument("--bound", type=int, default=100, help="verify-primes 的上界 N")
    p.set_defaults(handler=cmd_e1)

    p = sub.add_parser("pg", parents=[common], help="射影空间 PG(d, q)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--emit", help="把几何写到 JSON 文件")
    p.set_defaults(handler=cmd_pg)

    p = sub.add_parser("polar", parents=[common, polar_args], help="有限经典极空间")
    p.add_argument("action", choices=["build", "rank", "corank", "faithful"])
    p.add_argument("--method", choices=["chain", "perp"], default="chain")
    p.add_argument("--mode", choices=["exhaustive_minimal", "sampled"], default="exhaustive_minimal")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--emit", help="把几何写到 JSON 文件")
    p.add_argument("--sidecar", help="嵌入旁车 JSON 文件（缺省为 --emit 旁的 <stem>.embedding.json）")
    p.set_defaults(handler=cmd_polar)

    p = sub.add_parser("verify", parents=[common], help="验证套件")
    p.add_argument("--suite", choices=list(SUITES), default="paper")
    p.add_argument("--check", action="append", help="只运行指定检查（可重复）")
    p.add_argument("--trials", type=int, default=None, help="随机几何个数")
    p.add_argument("--list", action="store_true", help="只列出检查名")
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """解析参数并执行子命令，返回退出码"""
    load_dotenv()
    args = build_parser().parse_args(argv)
    setup_logging(args.debug or bool(get_config().get("debug", False)))
    try:
        return args.handler(args)
    except BudgetExceeded as exc:
        logger.warning(f"超出预算: {exc}")
        if args.json:
            print(json.dumps({"error": exc.to_payload()}, ensure_ascii=False, default=str))
        else:
            print(f"超出预算: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except GeomError as exc:
        if args.json:
            print(json.dumps({"error": exc.to_payload()}, ensure_ascii=False, default=str))
        else:
            print(f"错误: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
