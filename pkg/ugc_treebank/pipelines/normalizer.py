"""Surface-form analysis of UGC tokens.

Recognizers for meta-tokens (hashtags, at-mentions, URLs, emoticons, RT,
markup), graphemic-stretch candidates, punctuation-reduplication lemmas and
lexicon lookups. Every function here is pure; the lint rules and fixers build
on them.
"""

import itertools
import logging
from functools import lru_cache
from typing import Iterable, Optional

import regex

from ugc_treebank.models.enums import Confidence, TokenClass
from ugc_treebank.models.lexicon import AbbreviationHit, NormCandidate
from ugc_treebank.models.vocabulary import EXEMPT_PUNCTUATION, MARKUP_SYMBOLS
from ugc_treebank.services.lexicon_store import Lexicon

logger = logging.getLogger(__name__)


HASHTAG = regex.compile(r"^#\w+$")
MENTION = regex.compile(r"^@\w+$")
URL = regex.compile(
    r"""^(?:
        [A-Za-z][A-Za-z0-9+.\-]*://[\w\-]+(?:\.[\w\-]+)*   # scheme://host
        | www\.[\w\-]+(?:\.[\w\-]+)+                       # www.host.tld
    )
    (?::\d+)?(?:[/?\#]\S*)?$""",
    regex.VERBOSE,
)
MARKUP_RUN = regex.compile(r"^[+<>=]{2,}$")

# One emoticon unit: heart, eyes-nose-mouth, ^^ faces. A unit of letters and
# digits only ("XD", "xo", "8D") is a word, not a face.
EMOTICON_UNIT = regex.compile(
    r"""
    <3+
    | [:;8xX=] [\-^o']? [)(\]\[DPpOo3/\\|*]+
    | \^_?\^
    """,
    regex.VERBOSE,
)
GRAPHEME = regex.compile(r"\X")
SYMBOL_OTHER = regex.compile(r"\p{So}")
PICTOGRAPH_FLOOR = 0x2100  # below this, So is mostly ©, ° and friends

STRETCH_RUN = regex.compile(r"(\p{L})\1{2,}")
PUNCTUATION_RUN = regex.compile(r"^[\p{P}1]+$")
PUNCTUATION_CHAR = regex.compile(r"\p{P}")
MAX_STRETCH_CANDIDATES = 16
MAX_MEMOIZED_FORMS = 500_000


# --- Recognizers ---

def _is_pictograph(cluster: str) -> bool:
    return bool(SYMBOL_OTHER.match(cluster)) and ord(cluster[0]) >= PICTOGRAPH_FLOOR


def emoticon_recognizer(form: str) -> Optional[list[str]]:
    """
    Segment a form into emoticons.

    Returns:
        The emoticon parts when the whole form is consumed, else None
    """
    parts: list[str] = []
    pos = 0
    while pos < len(form):
        match = EMOTICON_UNIT.match(form, pos)
        if match is not None and match.group().isalnum():
            return None
        if match is None:
            cluster = GRAPHEME.match(form, pos)
            if cluster is None or not _is_pictograph(cluster.group()):
                return None
            match = cluster
        parts.append(match.group())
        pos = match.end()
    return parts or None


class TokenClassifier:
    """Assigns exactly one TokenClass to every form; results are memoized per form."""

    def __init__(
        self,
        rt_case_sensitive: bool = True,
        markup_symbols: Iterable[str] = MARKUP_SYMBOLS,
    ):
        self.rt_case_sensitive = rt_case_sensitive
        self.markup_symbols = frozenset(markup_symbols)
        self._seen: dict[str, TokenClass] = {}

    def classify(self, form: str) -> TokenClass:
        cls = self._seen.get(form)
        if cls is None:
            if len(self._seen) >= MAX_MEMOIZED_FORMS:
                self._seen.clear()
            cls = self._seen[form] = self._classify(form)
        return cls

    def _classify(self, form: str) -> TokenClass:
        if URL.match(form):
            return TokenClass.URL
        if HASHTAG.match(form):
            return TokenClass.HASHTAG
        if MENTION.match(form):
            return TokenClass.MENTION
        if self.is_rt(form):
            return TokenClass.RT
        if emoticon_recognizer(form) is not None:
            return TokenClass.EMOTICON
        if form in self.markup_symbols or MARKUP_RUN.match(form):
            return TokenClass.MARKUP
        return TokenClass.PLAIN

    def is_rt(self, form: str) -> bool:
        return form == "RT" if self.rt_case_sensitive else form.upper() == "RT"


@lru_cache(maxsize=16)
def shared_classifier(
    rt_case_sensitive: bool = True,
    markup_symbols: tuple[str, ...] = MARKUP_SYMBOLS,
) -> TokenClassifier:
    """One classifier per option set, reused across sentences and files."""
    return TokenClassifier(rt_case_sensitive, markup_symbols)


def classify_token(form: str, classifier: Optional[TokenClassifier] = None) -> TokenClass:
    """Classify a form as hashtag, mention, url, emoticon, rt, markup or plain."""
    return (classifier or shared_classifier()).classify(form)


# --- Graphemic stretching ---

def collapse_stretch(form: str) -> list[NormCandidate]:
    """Candidates with every run of >= 3 identical letters shortened to 2 or 1."""
    runs = list(STRETCH_RUN.finditer(form))
    if not runs:
        return []
    seen: set[str] = set()
    candidates = []
    for lengths in itertools.product((2, 1), repeat=len(runs)):
        pieces = []
        pos = 0
        for run, keep in zip(runs, lengths):
            pieces.append(form[pos:run.start()])
            pieces.append(run.group(1) * keep)
            pos = run.end()
        pieces.append(form[pos:])
        candidate = "".join(pieces)
        if candidate not in seen:
            seen.add(candidate)
            candidates.append(NormCandidate(
                original=form,
                candidate=candidate,
                phenomenon="Stretch",
                confidence=Confidence.HEURISTIC,
            ))
        if len(candidates) >= MAX_STRETCH_CANDIDATES:
            break
    return candidates


# --- Punctuation reduplication ---

def reduplication_lemma(form: str) -> Optional[str]:
    """Repeated unit of a form shaped (ab)+a? with a 1-2 character unit, else None."""
    if len(form) < 2:
        return None
    if form == form[0] * len(form):
        return form[0]
    unit = form[:2]
    if len(form) >= 3 and unit[0] != unit[1]:
        repeated = unit * (len(form) // 2 + 1)
        if repeated[: len(form)] == form:
            return unit
    return None


def is_reduplicated_punctuation(form: str, exempt: Iterable[str] = EXEMPT_PUNCTUATION) -> bool:
    """Punctuation run with at least one repeated character, outside the exempt list."""
    if len(form) < 2 or form in exempt:
        return False
    if not PUNCTUATION_RUN.match(form) or not PUNCTUATION_CHAR.search(form):
        return False
    return len(set(form)) < len(form)


def punctuation_lemma(form: str) -> str:
    """Lemma for a reduplicated punctuation token: the pattern unit, or the form itself."""
    return reduplication_lemma(form) or form


# --- Lexicon ---

def lookup_abbreviation(form: str, lexicon: Lexicon) -> Optional[AbbreviationHit]:
    """Exact lookup (case-folded when the lexicon says so)."""
    entry = lexicon.get(form)
    if entry is None:
        return None
    return AbbreviationHit(full_form=entry.expansion, phenomenon=entry.phenomenon, upos_hint=entry.upos_hint)


def normalization_candidates(form: str, lexicon: Optional[Lexicon] = None) -> list[NormCandidate]:
    """Lexicon hit first (certain), then stretch candidates (certain when the lexicon knows them)."""
    out: list[NormCandidate] = []
    if lexicon is not None:
        hit = lookup_abbreviation(form, lexicon)
        if hit is not None:
            out.append(NormCandidate(
                original=form, candidate=hit.full_form,
                phenomenon=hit.phenomenon, confidence=Confidence.CERTAIN,
            ))
    for candidate in collapse_stretch(form):
        if lexicon is not None and lexicon.knows(candidate.candidate):
            candidate = candidate.model_copy(update={"confidence": Confidence.CERTAIN})
        out.append(candidate)
    return out
