"""
Knödel支配数検証システム - ユーティリティモジュール
"""

import re
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import colorlog


class Logger:
    """ログ管理クラス"""

    @staticmethod
    def setup_logger(name: str, log_file: Path = None, level: str = "INFO"):
        """ロガーをセットアップ"""
        logger = logging.getLogger(name)
        logger.setLevel(getattr(logging, level.upper()))

        # ハンドラーが既に存在する場合は削除
        if logger.handlers:
            logger.handlers.clear()

        # コンソールはstderrへ（stdoutはレポート専用）
        console_handler = colorlog.StreamHandler()
        console_handler.setFormatter(colorlog.ColoredFormatter(
            '%(log_color)s%(asctime)s - %(name)s - %(levelname)s%(reset)s - %(message)s'
        ))
        logger.addHandler(console_handler)

        # ファイルハンドラー
        if log_file:
            log_file = Path(log_file)
            log_file.parent.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(log_file, encoding='utf-8')
            file_handler.setFormatter(logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            ))
            logger.addHandler(file_handler)

        logger.propagate = False
        return logger


class ValidationUtils:
    """バリデーションユーティリティ"""

    VERTEX_PATTERN = re.compile(r'^\s*([uUvV])\s*(\d+)\s*$')

    @staticmethod
    def parse_vertex_label(label: str) -> Tuple[str, int]:
        """'u7' / 'v3' 形式の頂点ラベルを (side, index) に分解"""
        if label is None:
            raise ValidationError("頂点ラベルが指定されていません")
        match = ValidationUtils.VERTEX_PATTERN.match(str(label))
        if not match:
            raise ValidationError(
                f"頂点ラベル '{label}' は不正です（'u<k>' または 'v<k>' 形式で指定してください）"
            )
        index = int(match.group(2))
        if index < 1:
            raise ValidationError(f"頂点番号は1以上で指定してください: '{label}'")
        return match.group(1).upper(), index

    @staticmethod
    def require_int(name: str, value) -> int:
        """整数パラメータを検証"""
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationError(f"{name} は整数で指定してください: {value!r}")
        return value

    @staticmethod
    def parse_positive_int(name: str, raw: Optional[str]) -> Optional[int]:
        """環境変数などの文字列を正の整数として解釈"""
        if raw is None or str(raw).strip() == "":
            return None
        try:
            value = int(str(raw).strip())
        except ValueError:
            raise ValidationError(f"{name} は正の整数で指定してください: {raw!r}")
        if value < 1:
            raise ValidationError(f"{name} は正の整数で指定してください: {raw!r}")
        return value


class DataUtils:
    """データ整形ユーティリティ"""

    @staticmethod
    def format_bool(value: Optional[bool]) -> str:
        """真偽値をレポート用の小文字表記に変換（Noneは空文字）"""
        if value is None:
            return ""
        return "true" if value else "false"

    @staticmethod
    def format_optional(value) -> str:
        """任意値をレポート用文字列に変換（Noneは空文字）"""
        return "" if value is None else str(value)

    @staticmethod
    def format_duration(seconds: float) -> str:
        """秒を読みやすい形式に変換"""
        if seconds < 1:
            return f"{seconds * 1000:.1f}ms"
        elif seconds < 60:
            return f"{seconds:.2f}s"
        minutes = int(seconds // 60)
        return f"{minutes}m{seconds - minutes * 60:.0f}s"


class StatisticsUtils:
    """統計処理ユーティリティ"""

    @staticmethod
    def calculate_statistics(values: List[float]) -> Dict[str, float]:
        """基本統計量を計算"""
        if not values:
            return {}

        import numpy as np
        return {
            "count": len(values),
            "mean": float(np.mean(values)),
            "median": float(np.median(values)),
            "std": float(np.std(values)),
            "min": float(np.min(values)),
            "max": float(np.max(values))
        }


# 共通エラークラス
class KnodelError(Exception):
    """システム共通エラー"""
    pass


class ValidationError(KnodelError):
    """バリデーション関連エラー"""
    pass


class SolverError(KnodelError):
    """探索関連エラー"""
    pass


class BudgetExceededError(SolverError):
    """探索ノード上限超過"""

    def __init__(self, description: str, nodes: int, budget: int):
        self.description = description
        self.nodes = nodes
        self.budget = budget
        super().__init__(
            f"探索ノード数が上限を超えました: {description} (nodes={nodes}, budget={budget})"
        )

    def __reduce__(self):
        # ワーカープロセスから戻すときの復元用
        return (self.__class__, (self.description, self.nodes, self.budget))


class ConsistencyError(SolverError):
    """ソルバー整合性エラー（頂点推移グラフでのMixed判定など）"""
    pass
