"""
TitleSum - Linguistic Module

Turns title and sentence text into processed terms:
tokenize -> normalize -> remove_stopwords -> lemmatize -> stem.
"""

import re
import unicodedata
from collections import Counter
from functools import lru_cache
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional

import structlog
from nltk.stem.porter import PorterStemmer

from config import PipelineConfig, settings
from exceptions import EmptyTermset, MalformedInput
from models import Sentence, SentenceTerms, StemmerName, Term, TitleTermset

logger = structlog.get_logger(__name__)

# Runs of letters/digits joined by internal apostrophes or hyphens
TOKEN_PATTERN = re.compile(r"[^\W_]+(?:['’\-][^\W_]+)*")

_EDGE_CHARS = "'’- \t\r\n\f\v"

# MARTIN_EXTENSIONS reproduces the published reference vocabulary/output pairs;
# ORIGINAL_ALGORITHM is the rule set exactly as first printed.
_STEMMERS = {
    StemmerName.PORTER: PorterStemmer(mode=PorterStemmer.MARTIN_EXTENSIONS),
    StemmerName.PORTER_ORIGINAL: PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM),
}


def tokenize(text: str) -> List[str]:
    """
    Split text into raw tokens

    Args:
        text: Any text

    Returns:
        Maximal runs of letters/digits with internal apostrophes and hyphens,
        in order of appearance
    """
    return TOKEN_PATTERN.findall(text)


def normalize(token: str) -> Optional[Term]:
    """
    Normalize a raw token

    Args:
        token: Raw token

    Returns:
        Lowercased, compatibility-folded token without leading/trailing
        apostrophes or hyphens, or None when nothing alphanumeric remains
    """
    folded = unicodedata.normalize("NFKC", unicodedata.normalize("NFKC", token).lower())
    folded = folded.strip(_EDGE_CHARS)
    if not any(ch.isalnum() for ch in folded):
        return None
    return Term(folded)


def remove_stopwords(terms: Iterable[str], stoplist: FrozenSet[str]) -> List[str]:
    return [term for term in terms if term not in stoplist]


def lemmatize(term: str, lexicon: Mapping[str, str]) -> str:
    return lexicon.get(term, term)


def stem(term: str, stemmer: StemmerName = StemmerName.PORTER) -> str:
    """Porter stem of a normalized term ("none" returns it unchanged)"""
    if stemmer == StemmerName.NONE:
        return term
    return _STEMMERS[stemmer].stem(term, to_lowercase=False)


def process_text(text: str, config: PipelineConfig) -> List[str]:
    """Run the full pipeline over text, keeping duplicates and order"""
    # Compose first so combining marks stay inside their token
    folded = unicodedata.normalize("NFKC", text)
    normalized = [term for term in map(normalize, tokenize(folded)) if term is not None]
    kept = remove_stopwords(normalized, config.stoplist)
    return [stem(lemmatize(term, config.lexicon), config.stemmer) for term in kept]


def build_title_termset(title: str, config: PipelineConfig) -> TitleTermset:
    """
    Build the title termset T

    Args:
        title: Blog title text
        config: Pipeline configuration shared with sentence processing

    Returns:
        Distinct title terms in first-occurrence order

    Raises:
        EmptyTermset: If no title token survives the pipeline
    """
    terms = list(dict.fromkeys(process_text(title, config)))
    if not terms:
        raise EmptyTermset(f"no title term survives the pipeline: {title.strip()!r}")
    logger.debug("title_termset_built", terms=terms)
    return TitleTermset(terms=tuple(terms))


def process_sentence(sentence: Sentence, config: PipelineConfig) -> SentenceTerms:
    counts = Counter(process_text(sentence.raw_text, config))
    return SentenceTerms(sentence_index=sentence.index, counts=dict(counts))


# Resource loading

def _read_lines(path: Path) -> List[str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise MalformedInput(f"not valid UTF-8: {e.reason}", source_id=str(path))
    except OSError as e:
        raise MalformedInput(f"cannot read file: {e.strerror}", source_id=str(path))
    return [line for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]


def load_stoplist(path: Path) -> FrozenSet[str]:
    """Load a stoplist file: one term per line, "#" lines ignored, terms normalized"""
    terms = (normalize(line.strip()) for line in _read_lines(path))
    stoplist = frozenset(term for term in terms if term is not None)
    logger.debug("stoplist_loaded", path=str(path), size=len(stoplist))
    return stoplist


def load_lexicon(path: Path) -> Dict[str, str]:
    """Load a lemma lexicon file of "surface<TAB>lemma" lines"""
    lexicon: Dict[str, str] = {}
    for line in _read_lines(path):
        parts = line.split("\t")
        if len(parts) != 2:
            raise MalformedInput(f"expected surface<TAB>lemma, got {line!r}", source_id=str(path))
        surface, lemma = normalize(parts[0].strip()), normalize(parts[1].strip())
        if surface is None or lemma is None:
            raise MalformedInput(f"lexicon entry has no letters or digits: {line!r}", source_id=str(path))
        lexicon[surface] = lemma
    logger.debug("lexicon_loaded", path=str(path), size=len(lexicon))
    return lexicon


@lru_cache(maxsize=32)
def _cached_stoplist(path: Path) -> FrozenSet[str]:
    return load_stoplist(path)


@lru_cache(maxsize=32)
def _cached_lexicon(path: Path) -> Dict[str, str]:
    return load_lexicon(path)


def build_pipeline_config(
    stopwords_path: Optional[Path] = None,
    lexicon_path: Optional[Path] = None,
    stemmer: StemmerName = StemmerName.PORTER,
    use_lexicon: bool = True,
) -> PipelineConfig:
    """
    Assemble a PipelineConfig from resource files

    Args:
        stopwords_path: Stoplist file (bundled default when None)
        lexicon_path: Lemma lexicon file (bundled demo lexicon when None)
        stemmer: Stemmer choice
        use_lexicon: False disables lemmatization entirely

    Returns:
        Read-only pipeline configuration
    """
    stoplist = _cached_stoplist(Path(stopwords_path or settings.DEFAULT_STOPWORDS_FILE).resolve())
    lexicon: Dict[str, str] = {}
    if use_lexicon:
        lexicon = dict(_cached_lexicon(Path(lexicon_path or settings.DEFAULT_LEXICON_FILE).resolve()))
    return PipelineConfig(stoplist=stoplist, lexicon=lexicon, stemmer=stemmer)
