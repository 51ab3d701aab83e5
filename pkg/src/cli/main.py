"""
Knödel支配数検証システム - コマンドラインインターフェース

サブコマンド: gen / gamma / classify / sweep / verify
レポートは stdout（UTF-8, LF）、ログと進捗表示は stderr に出す。
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from ..core.config import config
from ..core.knodel import KnodelParams, VertexId, build_graph, to_dimacs, to_json
from ..core.report_generator import OUTPUT_FORMATS, ReportGenerator
from ..core.solver import DeletionMode, SolverOptions
from ..utils.utils import Logger, ValidationError, ValidationUtils
from .error_handler import EXIT_CONSISTENCY, EXIT_OK, EXIT_VALIDATION, ErrorHandler
from .services.sweep_service import SweepService
from .services.verification_service import SUITES, VerificationService

logger = logging.getLogger(__name__)

GRAPH_FORMATS = ("dimacs", "json")
DELETION_MODES = tuple(mode.value for mode in DeletionMode)


def _emit(text: str, output: Optional[str] = None):
    """stdout またはファイルへ書き出す"""
    if output:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        logger.info(f"出力しました: {path}")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def _solver_options(args: argparse.Namespace) -> SolverOptions:
    return SolverOptions(workers=args.workers)


def _progress_enabled() -> bool:
    return bool(config.PROGRESS) and sys.stderr.isatty()


@ErrorHandler.handle_command_error
def cmd_gen(args: argparse.Namespace) -> int:
    """グラフを DIMACS / JSON で出力"""
    g = build_graph(KnodelParams(args.delta, args.n))
    text = to_dimacs(g) if args.format == "dimacs" else to_json(g)
    _emit(text, args.output)
    return EXIT_OK


@ErrorHandler.handle_command_error
def cmd_gamma(args: argparse.Namespace) -> int:
    """γ(G) と、指定があれば γ(G − w)"""
    delete = VertexId.parse(args.delete) if args.delete else None
    service = SweepService(_solver_options(args), progress=False)
    base, deleted = service.gamma(args.delta, args.n, delete)

    lines = [f"gamma={base.gamma}"]
    if args.show_witness:
        lines.append(f"witness={','.join(base.witness.labels())}")
    if deleted is not None:
        lines.append(f"gamma_deleted={deleted.gamma}")
        if args.show_witness:
            lines.append(f"witness_deleted={','.join(deleted.witness.labels())}")
    _emit("\n".join(lines) + "\n")
    return EXIT_OK


@ErrorHandler.handle_command_error
def cmd_classify(args: argparse.Namespace) -> int:
    """ソルバーの判定と閉形式の予測を比較"""
    service = SweepService(_solver_options(args), progress=False)
    outcome = service.classify(args.delta, args.n, args.mode)
    profile = outcome.classification.profile

    lines = [
        f"verdict={outcome.verdict.value}",
        f"gamma={profile.base_gamma}",
        f"gamma_deleted={profile.deletion_gamma}",
        f"mode={profile.mode.value}",
    ]
    if outcome.predicted is not None:
        lines.append(f"predicted={outcome.predicted.value}")
        lines.append(f"agree={'true' if outcome.agree else 'false'}")
    _emit("\n".join(lines) + "\n")

    if outcome.agree is False:
        logger.error(f"W({args.delta},{args.n}): 判定が予測と一致しません")
        return EXIT_CONSISTENCY
    return EXIT_OK


@ErrorHandler.handle_command_error
def cmd_sweep(args: argparse.Namespace) -> int:
    """偶数 n ごとの比較表"""
    if args.n_min > args.n_max:
        logger.info(f"範囲が空です: min={args.n_min} max={args.n_max}")
    service = SweepService(SolverOptions(), progress=_progress_enabled())
    rows = service.sweep(args.delta, args.n_min, args.n_max, args.mode, args.workers)
    _emit(ReportGenerator.render(rows, args.out), args.output)

    disagreements = [row.n for row in rows if row.has_disagreement]
    if disagreements:
        logger.error(f"閉形式と一致しない n: {disagreements}")
        return EXIT_CONSISTENCY
    return EXIT_OK


@ErrorHandler.handle_command_error
def cmd_verify(args: argparse.Namespace) -> int:
    """検証スイートを実行して要約を出力"""
    service = VerificationService(_solver_options(args), quick=args.quick,
                                  progress=_progress_enabled())
    reports = service.run(args.suite)
    _emit(ReportGenerator.render_verification(reports))
    return EXIT_OK if all(report.ok for report in reports) else EXIT_CONSISTENCY


def _positive_int(raw: str) -> int:
    try:
        return ValidationUtils.parse_positive_int("workers", raw)
    except ValidationError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knodel",
        description="Knödelグラフ W(Δ,n) の支配数・臨界性検証",
    )
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
                        help="ログレベル（既定: KNODEL_LOG_LEVEL または設定値）")
    parser.add_argument("--workers", type=_positive_int, default=None,
                        help="並列ワーカー数（既定: KNODEL_WORKERS または 1）")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_graph_args(sub: argparse.ArgumentParser):
        sub.add_argument("--delta", type=int, required=True, help="次数 Δ")
        sub.add_argument("--n", type=int, required=True, help="頂点数 n（偶数）")

    gen = subparsers.add_parser("gen", help="グラフを出力")
    add_graph_args(gen)
    gen.add_argument("--format", choices=GRAPH_FORMATS, default="dimacs")
    gen.add_argument("--output", help="出力ファイル（省略時は stdout）")
    gen.set_defaults(handler=cmd_gen)

    gamma = subparsers.add_parser("gamma", help="厳密支配数を計算")
    add_graph_args(gamma)
    gamma.add_argument("--delete", help="削除する頂点（例: v1, u7）")
    gamma.add_argument("--show-witness", action="store_true", help="最小支配集合も出力")
    gamma.set_defaults(handler=cmd_gamma)

    classify = subparsers.add_parser("classify", help="γ-critical / γ-stable を判定")
    add_graph_args(classify)
    classify.add_argument("--mode", choices=DELETION_MODES, default=None,
                          help=f"削除モード（既定: n ≤ {config.SMALL_N_ALL_MODE_LIMIT} は all）")
    classify.set_defaults(handler=cmd_classify)

    sweep = subparsers.add_parser("sweep", help="n の範囲で閉形式と比較")
    sweep.add_argument("--delta", type=int, required=True, help="次数 Δ")
    sweep.add_argument("--min", dest="n_min", type=int, required=True, help="n の下限")
    sweep.add_argument("--max", dest="n_max", type=int, required=True, help="n の上限")
    sweep.add_argument("--out", choices=OUTPUT_FORMATS, default="csv", help="出力形式")
    sweep.add_argument("--output", help="出力ファイル（省略時は stdout）")
    sweep.add_argument("--mode", choices=DELETION_MODES, default=None)
    sweep.set_defaults(handler=cmd_sweep)

    verify = subparsers.add_parser("verify", help="性質検証スイートを実行")
    verify.add_argument("--suite", choices=SUITES + ("all",), default="all")
    verify.add_argument("--quick", action="store_true", help="範囲を縮小して実行")
    verify.set_defaults(handler=cmd_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """CLIエントリーポイント（終了コードを返す）"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_VALIDATION if e.code else EXIT_OK

    try:
        level = args.log_level or config.log_level()
        Logger.setup_logger("src", config.log_file(), level)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION

    logger.debug(f"コマンド: {args.command}")
    return args.handler(args)
