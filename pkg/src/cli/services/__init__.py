"""
CLIサービス層
"""
