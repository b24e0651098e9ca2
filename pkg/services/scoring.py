"""
TitleSum - Sentence Score Generator

Builds the Title-Sentence Matrix (TSM) and Presence Factor Matrix (PFM),
scores every sentence, ranks them and selects the top-k summary.

    SS(Sj) = sum_i TSM(i, j) * PFM(i, j)

Scores are exact Fractions: integers for the literal variant, rationals for
the coverage variant (literal score * distinct title terms present / m).
"""

import math
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd
import structlog

from exceptions import EmptyTermset, IndexOutOfRange, InvalidK, NoSentences
from models import (
    OrderingMode,
    PresenceFactorMatrix,
    RankedSummary,
    ScoredSentence,
    ScoringVariant,
    SentenceSet,
    SentenceTerms,
    TitleSentenceMatrix,
    TitleTermset,
)

logger = structlog.get_logger(__name__)


def build_tsm(termset: TitleTermset, sentence_terms: Sequence[SentenceTerms]) -> TitleSentenceMatrix:
    """
    Build the Title-Sentence Matrix

    Args:
        termset: Title terms (rows)
        sentence_terms: Processed sentences S1..Sn (columns)

    Returns:
        TSM with entries[i][j] = count of term i in sentence j

    Raises:
        EmptyTermset: If the termset has no terms
        NoSentences: If there are no sentences
    """
    if len(termset.terms) == 0:
        raise EmptyTermset("title termset is empty")
    if not sentence_terms:
        raise NoSentences("document has no sentences")
    indices = tuple(st.sentence_index for st in sentence_terms)
    if indices != tuple(range(1, len(indices) + 1)):
        raise ValueError(f"sentence indices must be 1..{len(indices)} in order")

    entries = np.array(
        [[st.count(term) for st in sentence_terms] for term in termset.terms],
        dtype=np.int64,
    )
    return TitleSentenceMatrix(entries=entries, row_terms=termset, sentence_indices=indices)


def build_pfm(tsm: TitleSentenceMatrix) -> PresenceFactorMatrix:
    entries = (tsm.entries >= 1).astype(np.int64)
    return PresenceFactorMatrix(entries=entries, row_terms=tsm.row_terms, sentence_indices=tsm.sentence_indices)


def distinct_hits(pfm: PresenceFactorMatrix, j: int) -> int:
    """Number of title terms present in sentence j"""
    _check_index(pfm.n_sentences, j)
    return int(pfm.column(j).sum())


def sentence_score(
    tsm: TitleSentenceMatrix,
    pfm: PresenceFactorMatrix,
    j: int,
    variant: ScoringVariant = ScoringVariant.LITERAL,
) -> Fraction:
    """
    Sentence Score of sentence j

    Args:
        tsm: Title-Sentence Matrix
        pfm: Presence Factor Matrix of the same shape
        j: 1-based sentence index
        variant: literal (the formula as printed) or coverage

    Returns:
        Exact non-negative score

    Raises:
        IndexOutOfRange: If j is not in 1..n
    """
    if tsm.entries.shape != pfm.entries.shape:
        raise ValueError(f"TSM shape {tsm.entries.shape} != PFM shape {pfm.entries.shape}")
    _check_index(tsm.n_sentences, j)

    literal = Fraction(int((tsm.column(j) * pfm.column(j)).sum()))
    if ScoringVariant(variant) == ScoringVariant.LITERAL:
        return literal
    return literal * Fraction(distinct_hits(pfm, j), tsm.n_terms)


def score_sentences(
    sentence_set: SentenceSet,
    tsm: TitleSentenceMatrix,
    pfm: PresenceFactorMatrix,
    variant: ScoringVariant = ScoringVariant.LITERAL,
) -> List[ScoredSentence]:
    """Score every sentence, in document order"""
    return [
        ScoredSentence(
            sentence=sentence,
            score=sentence_score(tsm, pfm, sentence.index, variant),
            distinct_hits=distinct_hits(pfm, sentence.index),
        )
        for sentence in sentence_set.sentences
    ]


def rank_sentences(scores: Iterable[ScoredSentence]) -> List[ScoredSentence]:
    """Non-increasing by score; ties go to the earlier sentence"""
    return sorted(scores, key=lambda s: (-s.score, s.index))


def resolve_k(n: int, k: Optional[int] = None, ratio: Optional[float] = None) -> int:
    """
    Summary length for an n-sentence document

    Args:
        n: Number of sentences
        k: Absolute sentence count
        ratio: Fraction of the document; k = ceil(ratio * n)

    Returns:
        Requested k (callers clamp to n)

    Raises:
        InvalidK: Unless exactly one of k/ratio is given and in range
    """
    if (k is None) == (ratio is None):
        raise InvalidK("give exactly one of k or ratio")
    if k is not None:
        if isinstance(k, bool) or k < 1:
            raise InvalidK(f"k must be >= 1, got {k}")
        return k
    exact = Fraction(repr(ratio)) if isinstance(ratio, float) else Fraction(ratio)
    if not 0 < exact <= 1:
        raise InvalidK(f"ratio must be in (0, 1], got {ratio}")
    return max(1, math.ceil(exact * n))


def select_summary(
    ranked: Sequence[ScoredSentence],
    k: Optional[int] = None,
    ratio: Optional[float] = None,
    ordering_mode: OrderingMode = OrderingMode.SCORE,
    include_zero: bool = False,
    variant: ScoringVariant = ScoringVariant.LITERAL,
) -> RankedSummary:
    """
    Select the top-k ranked sentences as the blog summary

    Args:
        ranked: Output of rank_sentences
        k: Sentence count (exclusive with ratio)
        ratio: Fraction of the document (exclusive with k)
        ordering_mode: score (rank order) or document (original order)
        include_zero: Allow sentences sharing no title term
        variant: Scoring variant, recorded on the summary

    Returns:
        RankedSummary with min(k, n) sentences, fewer when zero scores are excluded

    Raises:
        InvalidK: If k/ratio are missing, doubled or out of range
    """
    wanted = resolve_k(len(ranked), k=k, ratio=ratio)
    chosen = list(ranked[:wanted])
    if not include_zero:
        chosen = [s for s in chosen if s.score > 0]
    if OrderingMode(ordering_mode) == OrderingMode.DOCUMENT:
        chosen.sort(key=lambda s: s.index)
    logger.debug("summary_selected", k=wanted, selected=[s.index for s in chosen])
    return RankedSummary(selected=tuple(chosen), k=wanted, ordering_mode=ordering_mode, variant=variant)


def dump_matrices(tsm: TitleSentenceMatrix, pfm: PresenceFactorMatrix) -> str:
    """
    Tab-separated dump of both grids

    Each grid is preceded by "# TSM" / "# PFM"; the header row holds sentence
    indices and the first column the title terms.
    """
    blocks = []
    for label, grid in (("TSM", tsm), ("PFM", pfm)):
        frame = pd.DataFrame(grid.entries, index=list(grid.row_terms.terms), columns=list(grid.sentence_indices))
        frame.index.name = "term"
        blocks.append(f"# {label}\n" + frame.to_csv(sep="\t", lineterminator="\n"))
    return "".join(blocks)


def _check_index(n: int, j: int) -> None:
    if not 1 <= j <= n:
        raise IndexOutOfRange(f"sentence index {j} outside 1..{n}")
