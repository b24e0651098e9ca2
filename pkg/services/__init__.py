"""
TitleSum Services Package
"""

# Importing config installs the stderr/WARNING structlog default
import config  # noqa: F401
