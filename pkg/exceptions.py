"""
TitleSum - Error Types

Every failure a caller can act on is a SummarizerError subclass carrying a
one-line diagnostic. Library code raises; only the CLI maps errors to exit
statuses.
"""

from typing import Optional


class SummarizerError(Exception):
    """Base class for all summarizer failures"""

    code = "error"

    def __init__(self, detail: str, source_id: Optional[str] = None):
        super().__init__(detail)
        self.detail = detail
        self.source_id = source_id

    def with_source(self, source_id: str) -> "SummarizerError":
        """Attach the document source if the raiser did not know it"""
        if self.source_id is None:
            self.source_id = source_id
        return self

    def diagnostic(self) -> str:
        """
        One-line message naming the source

        Returns:
            "source_id: code: detail", or "code: detail" without a source
        """
        detail = " ".join(self.detail.split())
        if self.source_id:
            return f"{self.source_id}: {self.code}: {detail}"
        return f"{self.code}: {detail}"

    def __str__(self) -> str:
        return self.diagnostic()


class MalformedInput(SummarizerError):
    code = "malformed-input"


class MissingTitle(SummarizerError):
    code = "missing-title"


class EmptyBody(SummarizerError):
    code = "empty-body"


class EmptyTermset(SummarizerError):
    code = "empty-termset"


class NoSentences(SummarizerError):
    code = "no-sentences"


class IndexOutOfRange(SummarizerError):
    code = "index-out-of-range"


class InvalidK(SummarizerError):
    code = "invalid-k"


class UndefinedMetric(SummarizerError):
    code = "undefined-metric"


class EmptyModelSummary(SummarizerError):
    code = "empty-model-summary"
