"""
TitleSum - Ingestion Module

Reads a blog page (html, record or plain), separates title, post body and
visitor comments, and segments the body into an ordered sentence set.
"""

import re
from pathlib import Path
from typing import List, Optional, Tuple

import orjson
import structlog
from bs4 import BeautifulSoup, Tag
from pydantic import BaseModel, ValidationError
from soupsieve import SelectorSyntaxError

from config import DEFAULT_COMMENT_SELECTOR
from exceptions import EmptyBody, MalformedInput, MissingTitle
from models import BlogDocument, InputFormat, Sentence, SentenceSet

logger = structlog.get_logger(__name__)

# Terminator run plus any closing quotes/brackets, then whitespace or end of text
_BOUNDARY = re.compile(r"[.!?]+[\"'”’)\]]*(?=\s|$)")

_EXTENSION_FORMATS = {
    ".html": InputFormat.HTML,
    ".htm": InputFormat.HTML,
    ".json": InputFormat.RECORD,
    ".txt": InputFormat.PLAIN,
}


class BlogRecord(BaseModel):
    """Record-format payload"""

    title: Optional[str] = None
    body: Optional[str] = None
    comments: List[str] = []
    source_id: Optional[str] = None


def detect_format(path: Path) -> InputFormat:
    """Input format from file extension; unknown extensions read as plain text"""
    return _EXTENSION_FORMATS.get(Path(path).suffix.lower(), InputFormat.PLAIN)


def parse_document(
    raw: bytes,
    format: InputFormat,
    source_id: str = "<memory>",
    comment_selector: str = DEFAULT_COMMENT_SELECTOR,
    allow_h1_title: bool = True,
) -> BlogDocument:
    """
    Parse a blog page into title, body and comments

    Args:
        raw: Undecoded page bytes (UTF-8)
        format: Declared input format
        source_id: File path or URI used in diagnostics
        comment_selector: CSS selector for comment regions (html only)
        allow_h1_title: Fall back to the first <h1> when <title> is missing

    Returns:
        BlogDocument with comments kept apart from the body

    Raises:
        MalformedInput: Undecodable bytes or a format violation
        MissingTitle: No title could be found
        EmptyBody: No post content
    """
    text = _decode(raw, source_id)
    fmt = InputFormat(format)

    if fmt == InputFormat.PLAIN:
        title, body, comments = _parse_plain(text, source_id)
    elif fmt == InputFormat.RECORD:
        title, body, comments, source_id = _parse_record(text, source_id)
    else:
        title, body, comments = _parse_html(text, source_id, comment_selector, allow_h1_title)

    if not title or not title.strip():
        raise MissingTitle("no title found", source_id=source_id)
    if not body or not body.strip():
        raise EmptyBody("no post content", source_id=source_id)

    document = BlogDocument(
        title=title.strip(),
        body=body.strip(),
        comments=tuple(c for c in comments if c.strip()),
        source_id=source_id,
    )
    logger.debug(
        "document_parsed",
        source_id=source_id,
        format=fmt.value,
        body_chars=len(document.body),
        comments=len(document.comments),
    )
    return document


def read_document(
    path: Path,
    format: Optional[InputFormat] = None,
    comment_selector: str = DEFAULT_COMMENT_SELECTOR,
    allow_h1_title: bool = True,
) -> BlogDocument:
    """Read and parse a file; the format defaults to the one its extension implies"""
    source_id = str(path)
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise MalformedInput(f"cannot read input: {e.strerror}", source_id=source_id)
    return parse_document(
        raw,
        format or detect_format(path),
        source_id=source_id,
        comment_selector=comment_selector,
        allow_h1_title=allow_h1_title,
    )


def _decode(raw: bytes, source_id: str) -> str:
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise MalformedInput(f"not valid UTF-8 at byte {e.start}", source_id=source_id)
    if not text.strip():
        raise MalformedInput("input is empty", source_id=source_id)
    return text


def _parse_plain(text: str, source_id: str) -> Tuple[str, str, List[str]]:
    # Title block runs to the first blank line; its lines form the title
    lines = text.strip().splitlines()
    title_lines: List[str] = []
    for position, line in enumerate(lines):
        if not line.strip():
            return " ".join(title_lines), "\n".join(lines[position + 1:]), []
        title_lines.append(line.strip())
    raise EmptyBody("no blank line separates the title from a body", source_id=source_id)


def _parse_record(text: str, source_id: str) -> Tuple[str, str, List[str], str]:
    try:
        payload = orjson.loads(text)
    except orjson.JSONDecodeError as e:
        raise MalformedInput(f"invalid JSON: {e}", source_id=source_id)
    if not isinstance(payload, dict):
        raise MalformedInput("record must be a JSON object", source_id=source_id)
    try:
        record = BlogRecord.model_validate(payload, strict=True)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"])
        raise MalformedInput(f"field {field!r}: {first['msg']}", source_id=source_id)
    if record.title is None:
        raise MissingTitle("record has no title field", source_id=record.source_id or source_id)
    return record.title, record.body or "", record.comments, record.source_id or source_id


def _squash(text: str) -> str:
    return " ".join(text.split())


def _parse_html(
    text: str, source_id: str, comment_selector: str, allow_h1_title: bool
) -> Tuple[str, str, List[str]]:
    soup = BeautifulSoup(text, "lxml")

    title = ""
    if soup.title is not None:
        title = _squash(soup.title.get_text())
    if not title and allow_h1_title:
        heading = soup.find("h1")
        if heading is not None:
            title = _squash(heading.get_text())
    if not title:
        raise MissingTitle("no <title> or <h1> element", source_id=source_id)

    try:
        regions = soup.select(comment_selector)
    except SelectorSyntaxError as e:
        raise MalformedInput(f"bad comment selector {comment_selector!r}: {e}", source_id=source_id)
    comments = _comment_texts(regions)
    for region in _outermost(regions):
        region.decompose()

    # First post wins on multi-post pages
    container = soup.find("article")
    if container is None:
        container = soup.body if soup.body is not None else soup
    paragraphs = [_squash(p.get_text()) for p in container.find_all("p")]
    body = "\n\n".join(p for p in paragraphs if p)
    return title, body, comments


def _comment_texts(regions: List[Tag]) -> List[str]:
    """One text per innermost matched region"""
    matched = {id(region) for region in regions}
    texts = []
    for region in regions:
        if any(id(inner) in matched for inner in region.find_all(True)):
            continue
        content = _squash(region.get_text(" "))
        if content:
            texts.append(content)
    return texts


def _outermost(regions: List[Tag]) -> List[Tag]:
    matched = {id(region) for region in regions}
    return [r for r in regions if not any(id(parent) in matched for parent in r.parents)]


# Sentence segmentation

def _is_boundary(body: str, end: int) -> bool:
    following = body[end:].lstrip()
    return not following or following[0].isupper()


def _trimmed(body: str, start: int, end: int) -> Optional[Tuple[int, int]]:
    chunk = body[start:end]
    stripped = chunk.strip()
    if not any(ch.isalnum() for ch in stripped):
        return None
    lead = len(chunk) - len(chunk.lstrip())
    return start + lead, start + lead + len(stripped)


def segment_sentences(body: str) -> SentenceSet:
    """
    Split a post body into sentences S1..Sn

    A run of ".", "!" or "?" (with any closing quotes) ends a sentence when it
    is followed by end of text, or by whitespace and an uppercase letter. So
    "etc. then" and "e.g. green" stay inside their sentence.

    Args:
        body: Post body text

    Returns:
        SentenceSet whose spans index verbatim, whitespace-trimmed slices of body

    Raises:
        EmptyBody: If body is blank
    """
    if not body.strip():
        raise EmptyBody("post body is blank")

    spans: List[Tuple[int, int]] = []
    start = 0
    for match in _BOUNDARY.finditer(body):
        if not _is_boundary(body, match.end()):
            continue
        span = _trimmed(body, start, match.end())
        if span is not None:
            spans.append(span)
        start = match.end()
    tail = _trimmed(body, start, len(body))
    if tail is not None:
        spans.append(tail)

    sentences = tuple(
        Sentence(index=i, raw_text=body[s:e], span=(s, e)) for i, (s, e) in enumerate(spans, start=1)
    )
    return SentenceSet(sentences=sentences)
