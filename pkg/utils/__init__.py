"""
TitleSum Utilities Package
"""
