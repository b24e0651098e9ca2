"""
TitleSum - Configuration Settings
"""

import logging
import sys
from pathlib import Path
from typing import Dict, FrozenSet, Optional

import orjson
import structlog
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from models import InputFormat, OrderingMode, OutputFormat, ScoringVariant, StemmerName

BASE_DIR = Path(__file__).resolve().parent
DATA_DIR = BASE_DIR / "data"

# Summary length: k = ceil(ratio * n) unless k is given
DEFAULT_RATIO = 0.2

# Elements whose id or class contains "comment"
DEFAULT_COMMENT_SELECTOR = '[id*="comment"], [class*="comment"]'


class Settings(BaseSettings):
    """Process-level settings; none of them change summary output"""

    # Application Settings
    APP_NAME: str = "TitleSum"
    VERSION: str = "1.0.0"

    # Logging Settings
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "console"  # console | json

    # Batch Settings
    MAX_WORKERS: int = 4

    # Bundled linguistic resources
    DEFAULT_STOPWORDS_FILE: Path = DATA_DIR / "stopwords.txt"
    DEFAULT_LEXICON_FILE: Path = DATA_DIR / "lemmas.tsv"

    model_config = SettingsConfigDict(
        env_prefix="TITLESUM_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )


# Global settings instance
settings = Settings()


class PipelineConfig(BaseModel):
    """Linguistic pipeline knobs shared by title and sentence processing"""

    model_config = ConfigDict(frozen=True)

    stoplist: FrozenSet[str] = frozenset()
    lexicon: Dict[str, str] = Field(default_factory=dict)
    stemmer: StemmerName = StemmerName.PORTER


class RunConfig(BaseModel):
    """Everything a CLI run can set; validated once, read-only afterwards"""

    model_config = ConfigDict(frozen=True)

    input_format: Optional[InputFormat] = None  # None: pick by file extension
    k: Optional[int] = None
    ratio: Optional[float] = None
    variant: ScoringVariant = ScoringVariant.LITERAL
    ordering: OrderingMode = OrderingMode.SCORE
    stemmer: StemmerName = StemmerName.PORTER
    stopwords_path: Optional[Path] = None
    lexicon_path: Optional[Path] = None
    use_lexicon: bool = True
    comment_selector: str = DEFAULT_COMMENT_SELECTOR
    allow_h1_title: bool = True
    include_zero: bool = False
    output: OutputFormat = OutputFormat.TEXT
    workers: int = Field(default=1, ge=1)

    @model_validator(mode="before")
    @classmethod
    def default_ratio(cls, data):
        if isinstance(data, dict) and data.get("k") is None and data.get("ratio") is None:
            data = {**data, "ratio": DEFAULT_RATIO}
        return data

    @model_validator(mode="after")
    def validate_length(self) -> "RunConfig":
        if self.k is not None and self.ratio is not None:
            raise ValueError("set exactly one of k or ratio")
        if self.k is not None and self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.ratio is not None and not 0 < self.ratio <= 1:
            raise ValueError(f"ratio must be in (0, 1], got {self.ratio}")
        return self

    @field_validator("stopwords_path", "lexicon_path")
    @classmethod
    def validate_path(cls, v: Optional[Path]) -> Optional[Path]:
        if v is not None and not Path(v).is_file():
            raise ValueError(f"file not found: {v}")
        return v

    @field_validator("comment_selector")
    @classmethod
    def validate_selector(cls, v: str) -> str:
        if not v.strip():
            raise ValueError("comment selector must not be blank")
        return v


# Logging

def _renderer(log_format: str):
    if log_format == "json":
        return structlog.processors.JSONRenderer(
            serializer=lambda obj, **kw: orjson.dumps(obj, default=kw.get("default", str)).decode("utf-8")
        )
    return structlog.dev.ConsoleRenderer(colors=False)


def configure_structlog(log_format: str = "console") -> None:
    """Send structlog events through stdlib logging, which filters by level"""
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            _renderer(log_format),
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )


def configure_logging(level: str = "WARNING", log_format: str = "console") -> None:
    """Route structlog through stdlib logging on stderr at the given level"""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
        force=True,
    )
    configure_structlog(log_format)


# Library default: stdlib's last-resort handler writes WARNING and above to stderr
configure_structlog(settings.LOG_FORMAT)
