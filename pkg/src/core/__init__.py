"""
コアモジュール - グラフ構築・厳密ソルバー・閉形式
"""
