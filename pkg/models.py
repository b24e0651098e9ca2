"""
TitleSum - Domain Models and Schemas
"""

from enum import Enum
from fractions import Fraction
from typing import Dict, NewType, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


# Enums for run choices
class InputFormat(str, Enum):
    HTML = "html"
    RECORD = "record"
    PLAIN = "plain"


class ScoringVariant(str, Enum):
    LITERAL = "literal"
    COVERAGE = "coverage"


class OrderingMode(str, Enum):
    SCORE = "score"
    DOCUMENT = "document"


class StemmerName(str, Enum):
    PORTER = "porter"
    PORTER_ORIGINAL = "porter-original"
    NONE = "none"


class OutputFormat(str, Enum):
    TEXT = "text"
    RECORD = "record"
    MATRICES = "matrices"


# A normalized term: lowercase, no surrounding punctuation, has a letter or digit
Term = NewType("Term", str)


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True)


# Ingestion models
class BlogDocument(_Frozen):
    """A parsed blog page; comments are carried but never scored"""

    title: str
    body: str
    comments: Tuple[str, ...] = ()
    source_id: str = "<memory>"

    @field_validator("title", "body")
    @classmethod
    def validate_not_blank(cls, v: str) -> str:
        if not v.strip():
            raise ValueError("must contain a non-whitespace character")
        return v


class Sentence(_Frozen):
    index: int = Field(ge=1)
    raw_text: str
    span: Tuple[int, int]

    @model_validator(mode="after")
    def validate_span(self) -> "Sentence":
        start, end = self.span
        if not 0 <= start < end or end - start != len(self.raw_text):
            raise ValueError(f"span {self.span} does not fit raw_text of length {len(self.raw_text)}")
        return self


class SentenceSet(_Frozen):
    """Sentences S1..Sn of a post body in the order they appear"""

    sentences: Tuple[Sentence, ...]

    @model_validator(mode="after")
    def validate_order(self) -> "SentenceSet":
        previous_end = 0
        for position, sentence in enumerate(self.sentences, start=1):
            if sentence.index != position:
                raise ValueError(f"sentence indices must be consecutive from 1, got {sentence.index} at {position}")
            if sentence.span[0] < previous_end:
                raise ValueError(f"sentence {sentence.index} overlaps its predecessor")
            previous_end = sentence.span[1]
        return self

    def __len__(self) -> int:
        return len(self.sentences)

    def get(self, index: int) -> Sentence:
        return self.sentences[index - 1]

    def texts(self) -> Tuple[str, ...]:
        return tuple(s.raw_text for s in self.sentences)


# Linguistic models
class TitleTermset(_Frozen):
    """Distinct processed title terms in first-occurrence order"""

    terms: Tuple[str, ...]

    @field_validator("terms")
    @classmethod
    def validate_terms(cls, v: Tuple[str, ...]) -> Tuple[str, ...]:
        if not v:
            raise ValueError("termset must not be empty")
        if len(set(v)) != len(v):
            raise ValueError("termset must not contain duplicates")
        return v

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: object) -> bool:
        return term in self.terms


class SentenceTerms(_Frozen):
    """Processed term multiset of one sentence"""

    sentence_index: int = Field(ge=1)
    counts: Dict[str, int] = Field(default_factory=dict)

    @field_validator("counts")
    @classmethod
    def validate_counts(cls, v: Dict[str, int]) -> Dict[str, int]:
        for term, count in v.items():
            if count < 1:
                raise ValueError(f"count for {term!r} must be >= 1")
        return v

    def count(self, term: str) -> int:
        return self.counts.get(term, 0)

    @property
    def size(self) -> int:
        return sum(self.counts.values())


# Scoring models
class _TermSentenceGrid(BaseModel):
    """m x n grid, rows = title terms, columns = sentences (1-based indices)"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: np.ndarray
    row_terms: TitleTermset
    sentence_indices: Tuple[int, ...]

    @model_validator(mode="after")
    def validate_shape(self):
        expected = (len(self.row_terms), len(self.sentence_indices))
        if self.entries.ndim != 2 or self.entries.shape != expected:
            raise ValueError(f"grid shape {self.entries.shape} != {expected}")
        if (self.entries < 0).any():
            raise ValueError("grid entries must be non-negative")
        self.entries.setflags(write=False)
        return self

    @property
    def n_terms(self) -> int:
        return self.entries.shape[0]

    @property
    def n_sentences(self) -> int:
        return self.entries.shape[1]

    def column(self, j: int) -> np.ndarray:
        return self.entries[:, j - 1]

    def value(self, term: str, j: int) -> int:
        return int(self.entries[self.row_terms.terms.index(term), j - 1])


class TitleSentenceMatrix(_TermSentenceGrid):
    """TSM: frequency of each title term in each sentence"""


class PresenceFactorMatrix(_TermSentenceGrid):
    """PFM: 1 where the title term occurs in the sentence, else 0"""

    @model_validator(mode="after")
    def validate_binary(self) -> "PresenceFactorMatrix":
        if not np.isin(self.entries, (0, 1)).all():
            raise ValueError("presence entries must be 0 or 1")
        return self


class ScoredSentence(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    sentence: Sentence
    score: Fraction
    distinct_hits: int = Field(ge=0)

    @field_validator("score", mode="before")
    @classmethod
    def coerce_score(cls, v):
        if isinstance(v, int) and not isinstance(v, bool):
            return Fraction(v)
        return v

    @model_validator(mode="after")
    def validate_hits(self) -> "ScoredSentence":
        if self.score < 0:
            raise ValueError("score must be non-negative")
        if (self.score == 0) != (self.distinct_hits == 0):
            raise ValueError("score is zero exactly when no title term is present")
        return self

    @property
    def index(self) -> int:
        return self.sentence.index


class RankedSummary(_Frozen):
    """Top-k sentences chosen as the blog summary"""

    selected: Tuple[ScoredSentence, ...]
    k: int = Field(ge=1)
    ordering_mode: OrderingMode = OrderingMode.SCORE
    variant: ScoringVariant = ScoringVariant.LITERAL

    @model_validator(mode="after")
    def validate_ordering(self) -> "RankedSummary":
        if len(self.selected) > self.k:
            raise ValueError("summary holds more than k sentences")
        pairs = zip(self.selected, self.selected[1:])
        if self.ordering_mode == OrderingMode.SCORE:
            for a, b in pairs:
                if (a.score, -a.index) <= (b.score, -b.index):
                    raise ValueError("score ordering requires non-increasing scores, ties by index")
        else:
            for a, b in pairs:
                if a.index >= b.index:
                    raise ValueError("document ordering requires ascending indices")
        return self

    def texts(self) -> Tuple[str, ...]:
        return tuple(s.sentence.raw_text for s in self.selected)


# Evaluation models
class EvaluationReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n_common: int = Field(ge=0)
    n_sum: int = Field(ge=0)
    n_msum: int = Field(ge=0)
    precision: Optional[Fraction] = None
    recall: Optional[Fraction] = None
    matched_pairs: Tuple[Tuple[int, int], ...] = ()

    @model_validator(mode="after")
    def validate_counts(self) -> "EvaluationReport":
        if self.n_common > min(self.n_sum, self.n_msum):
            raise ValueError("n_common cannot exceed either summary size")
        if len(self.matched_pairs) != self.n_common:
            raise ValueError("matched_pairs must hold exactly n_common pairs")
        candidates = [c for c, _ in self.matched_pairs]
        models = [m for _, m in self.matched_pairs]
        if len(set(candidates)) != len(candidates) or len(set(models)) != len(models):
            raise ValueError("each sentence may appear in at most one pair")
        if self.n_sum and self.precision != Fraction(self.n_common, self.n_sum):
            raise ValueError("precision must equal n_common / n_sum")
        if self.n_msum and self.recall != Fraction(self.n_common, self.n_msum):
            raise ValueError("recall must equal n_common / n_msum")
        return self
