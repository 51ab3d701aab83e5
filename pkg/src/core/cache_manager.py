"""
求解結果キャッシュマネージャー
"""
import logging
from collections import OrderedDict
from typing import Any, Dict

logger = logging.getLogger(__name__)


class CacheManager:
    """プロセス内の求解結果キャッシュ（サイズ上限付きLRU）"""

    def __init__(self, max_items: int = 1000):
        self.max_items = max_items
        self._memory_cache: "OrderedDict[str, Any]" = OrderedDict()
        self.hits = 0
        self.misses = 0

    def get(self, key: str, default: Any = None) -> Any:
        """キャッシュから値を取得"""
        if key in self._memory_cache:
            self._memory_cache.move_to_end(key)
            self.hits += 1
            return self._memory_cache[key]
        self.misses += 1
        return default

    def set(self, key: str, value: Any) -> bool:
        """値をキャッシュに保存"""
        self._memory_cache[key] = value
        self._memory_cache.move_to_end(key)

        # サイズ制限: 古いものから削除
        while len(self._memory_cache) > self.max_items:
            evicted, _ = self._memory_cache.popitem(last=False)
            logger.debug(f"Cache evicted: {evicted}")
        return True

    def delete(self, key: str) -> bool:
        """キーを削除"""
        return self._memory_cache.pop(key, None) is not None

    def exists(self, key: str) -> bool:
        """キーの存在確認"""
        return key in self._memory_cache

    def clear(self, pattern: str = None) -> int:
        """キャッシュクリア（patternを含むキーのみ、または全件）"""
        if pattern:
            keys = [k for k in self._memory_cache if pattern in k]
            for k in keys:
                del self._memory_cache[k]
            return len(keys)
        cleared = len(self._memory_cache)
        self._memory_cache.clear()
        self.hits = 0
        self.misses = 0
        return cleared

    def get_stats(self) -> Dict:
        """キャッシュ統計情報"""
        return {
            'memory_cache_size': len(self._memory_cache),
            'hits': self.hits,
            'misses': self.misses,
        }


# グローバルインスタンス
cache_manager = CacheManager()
