"""
TitleSum - Document Summarizer

End-to-end pipeline for one blog page:
ingestion -> linguistic processing -> TSM/PFM -> scores -> ranked summary.
"""

from pathlib import Path
from typing import List, Optional, Tuple

import structlog
from pydantic import BaseModel, ConfigDict

from config import PipelineConfig, RunConfig
from exceptions import SummarizerError
from models import (
    BlogDocument,
    PresenceFactorMatrix,
    RankedSummary,
    ScoredSentence,
    SentenceSet,
    SentenceTerms,
    TitleSentenceMatrix,
    TitleTermset,
)
from services.ingestion import read_document, segment_sentences
from services.linguistic import build_pipeline_config, build_title_termset, process_sentence
from services.scoring import build_pfm, build_tsm, rank_sentences, score_sentences, select_summary

logger = structlog.get_logger(__name__)


class DocumentResult(BaseModel):
    """Every intermediate artifact of one summarized document"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    document: BlogDocument
    sentence_set: SentenceSet
    termset: TitleTermset
    sentence_terms: Tuple[SentenceTerms, ...]
    tsm: TitleSentenceMatrix
    pfm: PresenceFactorMatrix
    ranked: Tuple[ScoredSentence, ...]
    summary: RankedSummary

    @property
    def source_id(self) -> str:
        return self.document.source_id


def pipeline_for(run_config: RunConfig) -> PipelineConfig:
    """Pipeline configuration implied by a run configuration"""
    return build_pipeline_config(
        stopwords_path=run_config.stopwords_path,
        lexicon_path=run_config.lexicon_path,
        stemmer=run_config.stemmer,
        use_lexicon=run_config.use_lexicon,
    )


def summarize_document(
    document: BlogDocument,
    run_config: RunConfig,
    pipeline_config: Optional[PipelineConfig] = None,
) -> DocumentResult:
    """
    Summarize a parsed blog document

    Args:
        document: Parsed page
        run_config: Summary length, variant, ordering and segmentation knobs
        pipeline_config: Linguistic configuration (derived from run_config when None)

    Returns:
        DocumentResult holding the matrices, the full ranking and the summary

    Raises:
        SummarizerError: Any pipeline failure, tagged with the document source
    """
    pipeline_config = pipeline_config or pipeline_for(run_config)
    try:
        sentence_set = segment_sentences(document.body)
        termset = build_title_termset(document.title, pipeline_config)
        sentence_terms: List[SentenceTerms] = [
            process_sentence(sentence, pipeline_config) for sentence in sentence_set.sentences
        ]
        tsm = build_tsm(termset, sentence_terms)
        pfm = build_pfm(tsm)
        ranked = rank_sentences(score_sentences(sentence_set, tsm, pfm, run_config.variant))
        summary = select_summary(
            ranked,
            k=run_config.k,
            ratio=run_config.ratio,
            ordering_mode=run_config.ordering,
            include_zero=run_config.include_zero,
            variant=run_config.variant,
        )
    except SummarizerError as e:
        raise e.with_source(document.source_id)

    logger.info(
        "document_summarized",
        source_id=document.source_id,
        sentences=len(sentence_set),
        title_terms=list(termset.terms),
        selected=[s.index for s in summary.selected],
    )
    return DocumentResult(
        document=document,
        sentence_set=sentence_set,
        termset=termset,
        sentence_terms=tuple(sentence_terms),
        tsm=tsm,
        pfm=pfm,
        ranked=tuple(ranked),
        summary=summary,
    )


def summarize_path(
    path: Path,
    run_config: RunConfig,
    pipeline_config: Optional[PipelineConfig] = None,
) -> DocumentResult:
    """Read, parse and summarize one input file"""
    document = read_document(
        path,
        format=run_config.input_format,
        comment_selector=run_config.comment_selector,
        allow_h1_title=run_config.allow_h1_title,
    )
    return summarize_document(document, run_config, pipeline_config)
