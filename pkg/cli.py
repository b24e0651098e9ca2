"""
TitleSum - Command Line Interface

    titlesum summarize INPUTS... [--k N | --ratio R] [--output text|record|matrices]
    titlesum matrices INPUT
    titlesum evaluate CANDIDATE --model PATH [--candidate-kind summary|record|document]
    titlesum compare --model PATH CANDIDATES...

Exit codes: 0 success, 1 any per-file failure, 2 bad invocation.
"""

import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Union

import click
import orjson
import structlog
from pydantic import ValidationError

from config import PipelineConfig, RunConfig, configure_logging, settings
from exceptions import MalformedInput, SummarizerError
from models import InputFormat, OrderingMode, ScoringVariant, StemmerName
from services.evaluation import compare_summaries, evaluate as evaluate_summary, load_model_summary, read_summary_file
from services.summarizer import DocumentResult, pipeline_for, summarize_path
from utils.formatters import (
    format_comparison,
    format_comparison_record,
    format_matrices,
    format_report_record,
    format_report_text,
    format_result,
    parse_summary_record,
    source_header,
)

logger = structlog.get_logger(__name__)

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


def run_options(func: Callable) -> Callable:
    """Options shared by every command that summarizes documents"""
    options = [
        click.option("--format", "input_format", type=click.Choice([f.value for f in InputFormat]),
                     default=None, help="Input format (default: by file extension)"),
        click.option("--k", "k", type=int, default=None, help="Summary length in sentences"),
        click.option("--ratio", type=float, default=None, help="Summary length as a fraction of the post (default 0.2)"),
        click.option("--variant", type=click.Choice([v.value for v in ScoringVariant]),
                     default=ScoringVariant.LITERAL.value, show_default=True),
        click.option("--order", "ordering", type=click.Choice([o.value for o in OrderingMode]),
                     default=OrderingMode.SCORE.value, show_default=True),
        click.option("--stemmer", type=click.Choice([s.value for s in StemmerName]),
                     default=StemmerName.PORTER.value, show_default=True),
        click.option("--stopwords", "stopwords_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
                     default=None, help="Stoplist file, one term per line"),
        click.option("--lexicon", "lexicon_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
                     default=None, help="Lemma lexicon, surface<TAB>lemma per line"),
        click.option("--no-lexicon", "no_lexicon", is_flag=True, help="Skip lemmatization"),
        click.option("--comment-selector", default=None, help="CSS selector for comment regions (html)"),
        click.option("--include-zero", is_flag=True, help="Allow sentences sharing no title term"),
        click.option("--no-h1-title", "no_h1_title", is_flag=True, help="Do not fall back to <h1> for the title"),
        click.option("--workers", type=int, default=None, help="Documents processed concurrently"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def build_run_config(output: str = "text", **options) -> RunConfig:
    """
    Validate CLI options into a RunConfig

    Raises:
        click.UsageError: On any invalid combination (exit status 2)
    """
    values = {
        "input_format": options.get("input_format"),
        "k": options.get("k"),
        "ratio": options.get("ratio"),
        "variant": options.get("variant") or ScoringVariant.LITERAL,
        "ordering": options.get("ordering") or OrderingMode.SCORE,
        "stemmer": options.get("stemmer") or StemmerName.PORTER,
        "stopwords_path": options.get("stopwords_path"),
        "lexicon_path": options.get("lexicon_path"),
        "use_lexicon": not options.get("no_lexicon", False),
        "allow_h1_title": not options.get("no_h1_title", False),
        "include_zero": options.get("include_zero", False),
        "output": output,
        "workers": settings.MAX_WORKERS if options.get("workers") is None else options["workers"],
    }
    if options.get("comment_selector") is not None:
        values["comment_selector"] = options["comment_selector"]
    try:
        return RunConfig(**values)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or "options"
        raise click.UsageError(f"{field}: {first['msg']}")


def load_pipeline(run_config: RunConfig) -> PipelineConfig:
    try:
        return pipeline_for(run_config)
    except SummarizerError as e:
        raise click.UsageError(e.diagnostic())


def run_batch(
    inputs: Sequence[Path], run_config: RunConfig, pipeline_config: PipelineConfig
) -> List[Union[DocumentResult, SummarizerError]]:
    """
    Summarize every input; results come back in argument order

    Failures are returned in place of results so the rest of the batch still runs.
    """

    def work(path: Path) -> Union[DocumentResult, SummarizerError]:
        try:
            return summarize_path(path, run_config, pipeline_config)
        except SummarizerError as e:
            logger.info("document_failed", source_id=str(path), code=e.code)
            return e.with_source(str(path))

    workers = min(run_config.workers, len(inputs))
    if workers <= 1:
        return [work(path) for path in inputs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(work, inputs))


@click.group()
@click.version_option(version=settings.VERSION, prog_name=settings.APP_NAME)
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None,
              help="Diagnostics verbosity on stderr")
def cli(log_level: Optional[str]) -> None:
    """TitleSum - title-driven extractive blog summarizer."""
    configure_logging(log_level or settings.LOG_LEVEL, settings.LOG_FORMAT)


@cli.command()
@click.argument("inputs", nargs=-1, required=True, type=click.Path(path_type=Path))
@run_options
@click.option("--output", type=click.Choice(["text", "record", "matrices"]), default="text", show_default=True)
def summarize(inputs: Sequence[Path], output: str, **options) -> None:
    """Summarize each INPUT blog page."""
    run_config = build_run_config(output=output, **options)
    pipeline_config = load_pipeline(run_config)

    failed = False
    emitted = 0
    for outcome in run_batch(inputs, run_config, pipeline_config):
        if isinstance(outcome, SummarizerError):
            click.echo(outcome.diagnostic(), err=True)
            failed = True
            continue
        block = format_result(outcome, run_config.output.value)
        if len(inputs) > 1 and run_config.output.value != "record":
            block = ("\n" if emitted else "") + source_header(outcome.source_id) + block
        click.echo(block, nl=False)
        emitted += 1

    if failed:
        sys.exit(1)


@cli.command()
@click.argument("input_path", metavar="INPUT", type=click.Path(path_type=Path))
@run_options
def matrices(input_path: Path, **options) -> None:
    """Dump the TSM and PFM of INPUT as tab-separated grids."""
    run_config = build_run_config(output="matrices", **options)
    pipeline_config = load_pipeline(run_config)
    try:
        result = summarize_path(input_path, run_config, pipeline_config)
    except SummarizerError as e:
        click.echo(e.with_source(str(input_path)).diagnostic(), err=True)
        sys.exit(1)
    click.echo(format_matrices(result), nl=False)


def _candidate_sentences(
    candidate: Path, kind: str, run_config: RunConfig, pipeline_config: PipelineConfig
) -> List[str]:
    if kind == "document":
        return list(summarize_path(candidate, run_config, pipeline_config).summary.texts())
    lines = read_summary_file(candidate)
    if kind == "summary":
        return lines
    if not lines:
        raise MalformedInput("record file is empty", source_id=str(candidate))
    try:
        return parse_summary_record(lines[0])
    except (orjson.JSONDecodeError, ValueError) as e:
        raise MalformedInput(f"bad summary record: {e}", source_id=str(candidate))


@cli.command()
@click.argument("candidate", required=False, type=click.Path(path_type=Path))
@click.option("--model", "model_path", required=True, type=click.Path(path_type=Path),
              help="Model summary, one sentence per line")
@click.option("--candidate-kind", type=click.Choice(["summary", "record", "document"]), default="summary",
              show_default=True, help="How to read CANDIDATE")
@click.option("-s", "--sentence", "inline", multiple=True, help="Inline candidate sentence (repeatable)")
@click.option("--output", type=click.Choice(["text", "record"]), default="text", show_default=True)
@run_options
def evaluate(
    candidate: Optional[Path], model_path: Path, candidate_kind: str, inline: Sequence[str], output: str, **options
) -> None:
    """Precision and recall of CANDIDATE against a model summary."""
    if (candidate is None) == (not inline):
        raise click.UsageError("give either a CANDIDATE file or --sentence, not both")
    run_config = build_run_config(**options)
    pipeline_config = load_pipeline(run_config)

    try:
        model = load_model_summary(model_path)
        if candidate is None:
            sentences = [s for s in inline if s.strip()]
        else:
            sentences = _candidate_sentences(candidate, candidate_kind, run_config, pipeline_config)
        report = evaluate_summary(sentences, model)
    except SummarizerError as e:
        click.echo(e.diagnostic(), err=True)
        sys.exit(1)

    click.echo(format_report_record(report) if output == "record" else format_report_text(report), nl=False)


@cli.command()
@click.option("--model", "model_path", required=True, type=click.Path(path_type=Path),
              help="Model summary, one sentence per line")
@click.argument("candidates", nargs=-1, required=True, type=click.Path(path_type=Path))
@click.option("--output", type=click.Choice(["text", "record"]), default="text", show_default=True)
def compare(model_path: Path, candidates: Sequence[Path], output: str) -> None:
    """Compare several CANDIDATES summary files against one model summary."""
    try:
        model = load_model_summary(model_path)
        reports = compare_summaries({str(path): read_summary_file(path) for path in candidates}, model)
    except SummarizerError as e:
        click.echo(e.diagnostic(), err=True)
        sys.exit(1)

    click.echo(format_comparison_record(reports) if output == "record" else format_comparison(reports), nl=False)


if __name__ == "__main__":
    cli()
