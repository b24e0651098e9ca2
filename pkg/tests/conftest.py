"""
Shared fixtures for the TitleSum test suite
"""

from pathlib import Path

import pytest

from config import RunConfig
from models import InputFormat
from services.ingestion import read_document
from services.linguistic import build_pipeline_config

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def pipeline_config():
    """Default pipeline: porter stemmer, bundled stoplist and lexicon"""
    return build_pipeline_config()


@pytest.fixture
def run_config() -> RunConfig:
    return RunConfig()


@pytest.fixture
def mini_document():
    return read_document(FIXTURES / "mini.txt")


@pytest.fixture
def oop_document():
    return read_document(FIXTURES / "oop.txt", format=InputFormat.PLAIN)


def read_lines(name: str):
    """Non-comment lines of a fixture file"""
    text = (FIXTURES / name).read_text(encoding="utf-8")
    return [line for line in text.splitlines() if line and not line.startswith("#")]
