"""
ユーティリティモジュール - 共通機能
"""