"""
TitleSum - Output Formatters

Renders summaries, matrix dumps and evaluation reports. Every renderer is a
pure function of its input, so repeated runs are byte-identical.
"""

from fractions import Fraction
from typing import Dict, List, Optional, Union

import orjson
import pandas as pd

from models import EvaluationReport, ScoredSentence
from services.evaluation import percent_display
from services.scoring import dump_matrices
from services.summarizer import DocumentResult


def _number(value: Fraction) -> Union[int, float]:
    return value.numerator if value.denominator == 1 else float(value)


def _exact(value: Optional[Fraction]) -> Optional[str]:
    return None if value is None else str(value)


def format_summary_text(result: DocumentResult) -> str:
    """Summary sentences exactly as they appear in the body, separated by blank lines"""
    texts = result.summary.texts()
    return "\n\n".join(texts) + "\n" if texts else ""


def _sentence_record(scored: ScoredSentence) -> Dict:
    return {
        "index": scored.index,
        "score": _number(scored.score),
        "score_exact": str(scored.score),
        "distinct_hits": scored.distinct_hits,
        "text": scored.sentence.raw_text,
    }


def summary_record(result: DocumentResult) -> Dict:
    summary = result.summary
    return {
        "source_id": result.source_id,
        "k": summary.k,
        "variant": summary.variant.value,
        "ordering": summary.ordering_mode.value,
        "title_terms": list(result.termset.terms),
        "sentences": [_sentence_record(s) for s in summary.selected],
    }


def format_summary_record(result: DocumentResult) -> str:
    """
    JSON Lines record for one document

    Keys are sorted; "score" is an int for integral scores and a float
    otherwise, "score_exact" always carries the exact "p/q" value.
    """
    return orjson.dumps(summary_record(result), option=orjson.OPT_SORT_KEYS).decode("utf-8") + "\n"


def format_matrices(result: DocumentResult) -> str:
    return dump_matrices(result.tsm, result.pfm)


def format_result(result: DocumentResult, output: str) -> str:
    """Render a document result in the requested output format"""
    if output == "record":
        return format_summary_record(result)
    if output == "matrices":
        return format_matrices(result)
    return format_summary_text(result)


def source_header(source_id: str) -> str:
    return f"==> {source_id} <==\n"


def parse_summary_record(line: str) -> List[str]:
    """Sentence texts from one summary record line"""
    payload = orjson.loads(line)
    if not isinstance(payload, dict) or not isinstance(payload.get("sentences"), list):
        raise ValueError("record has no sentences list")
    texts = []
    for entry in payload["sentences"]:
        if not isinstance(entry, dict) or not isinstance(entry.get("text"), str):
            raise ValueError("record sentence has no text")
        texts.append(entry["text"])
    return texts


# Evaluation reports

def format_headline(report: EvaluationReport) -> str:
    """'P 85.7% R 85.7%'; 'n/a' replaces an undefined precision"""
    precision = percent_display(report.precision)
    recall = percent_display(report.recall)
    return f"P {precision}{'%' if report.precision is not None else ''} R {recall}%"


def format_report_text(report: EvaluationReport) -> str:
    pairs = " ".join(f"{c}:{m}" for c, m in report.matched_pairs) or "-"
    lines = [
        format_headline(report),
        f"n_common {report.n_common}  n_sum {report.n_sum}  n_msum {report.n_msum}",
        f"precision {_exact(report.precision) or 'n/a'}  recall {_exact(report.recall)}",
        f"pairs {pairs}",
    ]
    return "\n".join(lines) + "\n"


def report_record(report: EvaluationReport) -> Dict:
    return {
        "n_common": report.n_common,
        "n_sum": report.n_sum,
        "n_msum": report.n_msum,
        "precision": _exact(report.precision),
        "recall": _exact(report.recall),
        "precision_pct": None if report.precision is None else percent_display(report.precision),
        "recall_pct": percent_display(report.recall),
        "matched_pairs": [list(pair) for pair in report.matched_pairs],
    }


def format_report_record(report: EvaluationReport) -> str:
    return orjson.dumps(report_record(report), option=orjson.OPT_SORT_KEYS).decode("utf-8") + "\n"


def format_comparison(reports: Dict[str, EvaluationReport]) -> str:
    """
    One row per candidate summary

    Args:
        reports: label -> report, in display order

    Returns:
        Fixed-width table: candidate, common, sum, msum, P%, R%
    """
    frame = pd.DataFrame(
        [
            {
                "candidate": label,
                "common": report.n_common,
                "sum": report.n_sum,
                "msum": report.n_msum,
                "P%": percent_display(report.precision),
                "R%": percent_display(report.recall),
            }
            for label, report in reports.items()
        ],
        columns=["candidate", "common", "sum", "msum", "P%", "R%"],
    )
    return frame.to_string(index=False) + "\n"


def format_comparison_record(reports: Dict[str, EvaluationReport]) -> str:
    return "".join(
        orjson.dumps({"candidate": label, **report_record(report)}, option=orjson.OPT_SORT_KEYS).decode("utf-8")
        + "\n"
        for label, report in reports.items()
    )
