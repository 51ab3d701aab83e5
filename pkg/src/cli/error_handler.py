"""
統一エラーハンドリングユーティリティ（CLI用）
"""

import logging
import sys
from functools import wraps
from typing import Callable

from ..utils.utils import (
    BudgetExceededError, ConsistencyError, KnodelError, SolverError, ValidationError,
)

logger = logging.getLogger(__name__)

# 終了コード
EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_VALIDATION = 2
EXIT_BUDGET = 3
EXIT_CONSISTENCY = 4


class ErrorHandler:
    """例外を終了コードとstderrのメッセージに変換する"""

    @staticmethod
    def exit_code_for(error: BaseException) -> int:
        if isinstance(error, ValidationError):
            return EXIT_VALIDATION
        if isinstance(error, BudgetExceededError):
            return EXIT_BUDGET
        if isinstance(error, (ConsistencyError, SolverError)):
            return EXIT_CONSISTENCY
        return EXIT_UNEXPECTED

    @staticmethod
    def handle_command_error(f: Callable[..., int]) -> Callable[..., int]:
        """サブコマンドエラーハンドリングデコレータ"""
        @wraps(f)
        def wrapper(*args, **kwargs) -> int:
            try:
                return f(*args, **kwargs)
            except ValidationError as e:
                logger.warning(f"バリデーションエラー in {f.__name__}: {e}")
                print(f"error: {e}", file=sys.stderr)
                return EXIT_VALIDATION
            except BudgetExceededError as e:
                logger.error(f"探索上限超過 in {f.__name__}: {e}")
                print(f"error: {e}", file=sys.stderr)
                return EXIT_BUDGET
            except KnodelError as e:
                logger.error(f"整合性エラー in {f.__name__}: {e}")
                print(f"error: {e}", file=sys.stderr)
                return ErrorHandler.exit_code_for(e)
            except Exception as e:
                logger.exception(f"予期しないエラー in {f.__name__}: {e}")
                print(f"error: 予期しないエラーが発生しました: {e}", file=sys.stderr)
                return EXIT_UNEXPECTED
        return wrapper
