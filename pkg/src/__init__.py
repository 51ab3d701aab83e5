"""
Knödel支配数検証システム - メインパッケージ
"""

__version__ = "1.0.0"
__description__ = "Knödelグラフの支配数・臨界性検証システム"
