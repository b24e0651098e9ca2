"""
TitleSum test suite
"""
