"""
コマンドラインインターフェース
"""
