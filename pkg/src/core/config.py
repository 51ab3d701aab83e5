"""
Knödel支配数検証システム - 設定管理モジュール
"""

import os
from pathlib import Path

from ..utils.utils import ValidationUtils, ValidationError


class Config:
    """システム設定クラス"""

    # プロジェクトルートディレクトリ
    PROJECT_ROOT = Path(__file__).parent.parent.parent

    # ログ設定
    LOG_LEVEL = "INFO"
    LOG_FILE = None

    # 探索設定
    NODE_BUDGET = 50_000_000  # 1回の求解で許す探索ノード数
    WORKERS = 1
    LOWER_BOUND = "strong"  # "basic" または "strong"
    SYMMETRY_BREAKING = True

    # 削除プロファイル設定
    SMALL_N_ALL_MODE_LIMIT = 32  # n以下は全頂点削除モード

    # 検証スイート設定
    RANDOM_SEED = 20240601
    NEIGHBORHOOD_SAMPLES = 1000
    NEIGHBORHOOD_ORDERS = (16, 32, 64)
    CORE_MAX_DELTA = 6
    CORE_MAX_N = 128
    W3_RANGE = (8, 48)
    W4_RANGE = (16, 46)
    TRANSITIVITY_MAX_N = 32
    W3_WITNESS_T = (1, 6)
    W4_MOD2_WITNESS_T = (2, 6)
    W4_MOD8_AUDIT_T = 3

    # 簡易モード（テスト・動作確認用）
    QUICK_CORE_MAX_N = 40
    QUICK_W3_RANGE = (8, 24)
    QUICK_W4_RANGE = (16, 26)
    QUICK_NEIGHBORHOOD_SAMPLES = 100
    QUICK_W3_WITNESS_T = (1, 3)
    QUICK_W4_MOD2_WITNESS_T = (2, 3)

    # 進捗表示
    PROGRESS = True

    @classmethod
    def node_budget(cls) -> int:
        """有効な探索ノード上限（KNODEL_NODE_BUDGETで上書き可）"""
        override = ValidationUtils.parse_positive_int(
            "KNODEL_NODE_BUDGET", os.getenv("KNODEL_NODE_BUDGET")
        )
        return override if override is not None else cls.NODE_BUDGET

    @classmethod
    def workers(cls) -> int:
        """有効なワーカー数（KNODEL_WORKERSで上書き可）"""
        override = ValidationUtils.parse_positive_int(
            "KNODEL_WORKERS", os.getenv("KNODEL_WORKERS")
        )
        return override if override is not None else cls.WORKERS

    @classmethod
    def log_level(cls) -> str:
        """有効なログレベル"""
        level = os.getenv("KNODEL_LOG_LEVEL", cls.LOG_LEVEL).upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValidationError(f"KNODEL_LOG_LEVEL が不正です: {level!r}")
        return level

    @classmethod
    def log_file(cls):
        """ログファイルパス（未設定ならNone）"""
        raw = os.getenv("KNODEL_LOG_FILE")
        if raw:
            return Path(raw)
        return cls.LOG_FILE

    @classmethod
    def default_deletion_mode(cls, n: int) -> str:
        """既定の削除モード（小さいnは全頂点、それ以外は代表頂点）"""
        return "all" if n <= cls.SMALL_N_ALL_MODE_LIMIT else "representative"


# 開発環境設定
class DevelopmentConfig(Config):
    """開発環境用設定"""
    DEBUG = True
    LOG_LEVEL = "INFO"


# 本番環境設定
class ProductionConfig(Config):
    """本番（長時間スイープ）用設定"""
    DEBUG = False
    LOG_LEVEL = "WARNING"
    PROGRESS = False


# 設定の選択
def get_config():
    """環境に応じた設定を返す"""
    env = os.getenv("ENVIRONMENT", "development")

    if env == "production":
        return ProductionConfig()
    else:
        return DevelopmentConfig()


# デフォルト設定
config = get_config()
