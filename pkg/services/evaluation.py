"""
TitleSum - Evaluation Harness

Precision and recall of a candidate summary against a model summary:

    P = N_common / N_sum        R = N_common / N_msum

Sentences are matched one-to-one on their normalized form.
"""

import re
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import structlog

from exceptions import EmptyModelSummary, MalformedInput, UndefinedMetric
from models import EvaluationReport, RankedSummary

logger = structlog.get_logger(__name__)

_TERMINAL = re.compile(r"[.!?]+$")


def normalize_for_match(sentence: str) -> str:
    """Lowercase, collapse whitespace, strip terminal punctuation"""
    collapsed = " ".join(sentence.lower().split())
    return _TERMINAL.sub("", collapsed).rstrip()


def match_sentences(candidate: Sequence[str], model: Sequence[str]) -> List[Tuple[int, int]]:
    """
    Greedy one-to-one sentence matching

    Args:
        candidate: Candidate summary sentences, processed in order
        model: Model summary sentences

    Returns:
        (candidate position, model position) pairs, both 1-based; each
        candidate takes the first unmatched model sentence with an equal
        normalized form
    """
    available: Dict[str, List[int]] = {}
    for position, sentence in enumerate(model, start=1):
        available.setdefault(normalize_for_match(sentence), []).append(position)

    pairs = []
    for position, sentence in enumerate(candidate, start=1):
        slots = available.get(normalize_for_match(sentence))
        if slots:
            pairs.append((position, slots.pop(0)))
    return pairs


def precision_recall(n_common: int, n_sum: int, n_msum: int) -> Tuple[Fraction, Fraction]:
    """
    Exact precision and recall

    Args:
        n_common: Sentences in both summaries
        n_sum: Candidate summary size
        n_msum: Model summary size

    Returns:
        (precision, recall) as Fractions

    Raises:
        UndefinedMetric: If n_sum or n_msum is 0
        ValueError: If the counts are inconsistent
    """
    if n_common < 0 or n_sum < 0 or n_msum < 0:
        raise ValueError("counts must be non-negative")
    if n_common > min(n_sum, n_msum):
        raise ValueError(f"n_common={n_common} exceeds min(n_sum={n_sum}, n_msum={n_msum})")
    if n_sum == 0:
        raise UndefinedMetric("precision is undefined for an empty candidate summary")
    if n_msum == 0:
        raise UndefinedMetric("recall is undefined for an empty model summary")
    return Fraction(n_common, n_sum), Fraction(n_common, n_msum)


def percent_display(value: Optional[Fraction]) -> str:
    """
    Percentage rounded half-up to one decimal

    6/7 -> "85.7", 2/7 -> "28.6", 1 -> "100.0"; None -> "n/a"
    """
    if value is None:
        return "n/a"
    tenths = Fraction(value) * 1000
    rounded = (tenths.numerator * 2 + tenths.denominator) // (tenths.denominator * 2)
    return f"{rounded // 10}.{rounded % 10}"


def evaluate(candidate: Union[RankedSummary, Sequence[str]], model: Sequence[str]) -> EvaluationReport:
    """
    Score a candidate summary against a model summary

    Args:
        candidate: RankedSummary or plain list of sentences
        model: Model summary sentences

    Returns:
        EvaluationReport; precision is None when the candidate is empty

    Raises:
        EmptyModelSummary: If the model summary has no sentences
    """
    model = [s for s in model if s.strip()]
    if not model:
        raise EmptyModelSummary("model summary has no sentences")
    sentences = list(candidate.texts()) if isinstance(candidate, RankedSummary) else list(candidate)

    pairs = match_sentences(sentences, model)
    n_common, n_sum, n_msum = len(pairs), len(sentences), len(model)
    if n_sum:
        precision, recall = precision_recall(n_common, n_sum, n_msum)
    else:
        precision, recall = None, Fraction(0)

    logger.debug("summary_evaluated", n_common=n_common, n_sum=n_sum, n_msum=n_msum)
    return EvaluationReport(
        n_common=n_common,
        n_sum=n_sum,
        n_msum=n_msum,
        precision=precision,
        recall=recall,
        matched_pairs=tuple(pairs),
    )


def compare_summaries(candidates: Mapping[str, Sequence[str]], model: Sequence[str]) -> Dict[str, EvaluationReport]:
    """Evaluate several labelled candidates against one model summary, keeping label order"""
    return {label: evaluate(sentences, model) for label, sentences in candidates.items()}


def read_summary_file(path: Path) -> List[str]:
    """
    Read a summary file: UTF-8, one sentence per line, blank lines ignored

    Raises:
        MalformedInput: If the file cannot be read or decoded
    """
    try:
        text = Path(path).read_text(encoding="utf-8-sig")
    except UnicodeDecodeError as e:
        raise MalformedInput(f"not valid UTF-8: {e.reason}", source_id=str(path))
    except OSError as e:
        raise MalformedInput(f"cannot read file: {e.strerror}", source_id=str(path))
    return [line.strip() for line in text.splitlines() if line.strip()]


def load_model_summary(path: Path) -> List[str]:
    """
    Read a model summary file

    Raises:
        MalformedInput: If the file cannot be read or decoded
        EmptyModelSummary: If no sentence remains
    """
    sentences = read_summary_file(path)
    if not sentences:
        raise EmptyModelSummary("summary file has no sentences", source_id=str(path))
    return sentences
