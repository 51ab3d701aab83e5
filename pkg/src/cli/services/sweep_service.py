"""
支配数・臨界性の計算サービス
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

from tqdm import tqdm

from ...core.config import config
from ...core.formulas import gamma_formula, predicted_verdict
from ...core.knodel import KnodelParams, VertexId, build_graph, deleted_view, full_view
from ...core.report_generator import SweepRow
from ...core.solver import (
    Classification, GammaResult, SolverOptions, Verdict, classify, exact_gamma,
)
from ...utils.utils import BudgetExceededError, DataUtils, StatisticsUtils

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassifyOutcome:
    """判定結果と閉形式による予測"""
    delta: int
    n: int
    classification: Classification
    predicted: Optional[Verdict]

    @property
    def verdict(self) -> Verdict:
        return self.classification.verdict

    @property
    def agree(self) -> Optional[bool]:
        if self.predicted is None:
            return None
        return self.predicted == self.verdict


def _compute_row(delta: int, n: int, mode: Optional[str], options: SolverOptions) -> SweepRow:
    """1行分を計算（プロセスワーカーからも呼ばれる）"""
    started = time.perf_counter()
    g = build_graph(KnodelParams(delta, n))
    try:
        base = exact_gamma(full_view(g), options)
        outcome = classify(g, mode or config.default_deletion_mode(n), options)
    except BudgetExceededError as e:
        raise BudgetExceededError(f"n={n} ({e.description})", e.nodes, e.budget)

    predicted = predicted_verdict(delta, n)
    return SweepRow(
        delta=delta,
        n=n,
        gamma_solver=base.gamma,
        gamma_formula=gamma_formula(delta, n),
        gamma_deleted=outcome.profile.deletion_gamma,
        verdict_solver=outcome.verdict.value,
        verdict_theorem=predicted.value if predicted is not None else None,
        nodes=outcome.profile.nodes_explored,
        millis=int((time.perf_counter() - started) * 1000),
    )


class SweepService:
    """gamma / classify / sweep の各コマンドの処理"""

    def __init__(self, options: Optional[SolverOptions] = None, progress: Optional[bool] = None):
        self.options = options or SolverOptions()
        self.progress = config.PROGRESS if progress is None else progress

    def gamma(self, delta: int, n: int,
              delete: Optional[VertexId] = None) -> Tuple[GammaResult, Optional[GammaResult]]:
        """γ(G) と、指定があれば γ(G − w)"""
        g = build_graph(KnodelParams(delta, n))
        base = exact_gamma(full_view(g), self.options)
        deleted = None
        if delete is not None:
            deleted = exact_gamma(deleted_view(g, delete), self.options)
        return base, deleted

    def classify(self, delta: int, n: int, mode: Optional[str] = None) -> ClassifyOutcome:
        g = build_graph(KnodelParams(delta, n))
        classification = classify(g, mode, self.options)
        return ClassifyOutcome(delta, n, classification, predicted_verdict(delta, n))

    def sweep(self, delta: int, n_min: int, n_max: int, mode: Optional[str] = None,
              workers: Optional[int] = None) -> List[SweepRow]:
        """偶数 n ごとに1行、n の昇順で返す"""
        orders = [n for n in range(n_min + (n_min % 2), n_max + 1, 2)]
        for n in orders:
            KnodelParams(delta, n)  # 範囲全体を先に検証
        if not orders:
            logger.info("スイープ範囲が空です")
            return []

        workers = workers or self.options.resolved().workers
        logger.info(f"スイープ開始: delta={delta} n={n_min}..{n_max} rows={len(orders)} workers={workers}")
        if workers <= 1:
            rows = [
                _compute_row(delta, n, mode, self.options)
                for n in tqdm(orders, desc=f"sweep W({delta},n)", disable=not self.progress)
            ]
        else:
            # 行単位で並列化するので求解自体は逐次
            row_options = replace(self.options, workers=1)
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_compute_row, delta, n, mode, row_options) for n in orders]
                rows = [
                    future.result()
                    for future in tqdm(futures, desc=f"sweep W({delta},n)", disable=not self.progress)
                ]
        rows = sorted(rows, key=lambda row: row.n)
        self._log_summary(rows)
        return rows

    @staticmethod
    def _log_summary(rows: List[SweepRow]):
        seconds = [row.millis / 1000 for row in rows]
        stats = StatisticsUtils.calculate_statistics(seconds)
        logger.info(
            f"スイープ完了: rows={len(rows)} 合計={DataUtils.format_duration(sum(seconds))} "
            f"平均={DataUtils.format_duration(stats['mean'])} "
            f"最大={DataUtils.format_duration(stats['max'])} nodes={sum(row.nodes for row in rows)}"
        )
