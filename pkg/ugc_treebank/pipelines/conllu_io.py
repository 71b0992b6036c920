"""CoNLL-U parsing and byte-exact serialization."""

import logging
import os
import re
import tempfile
from pathlib import Path
from typing import Optional, Union

from ugc_treebank.models.conllu import (
    Feats,
    Misc,
    Sentence,
    SourceSpan,
    Token,
    TokenId,
    sort_feats,
    split_comment,
)
from ugc_treebank.models.errors import ParseError

logger = logging.getLogger(__name__)

_LINE_BREAK = re.compile(r"\r\n|\r|\n")
_WORD_ID = re.compile(r"^[1-9][0-9]*$")
_RANGE_ID = re.compile(r"^([1-9][0-9]*)-([1-9][0-9]*)$")
_EMPTY_ID = re.compile(r"^(0|[1-9][0-9]*)\.([1-9][0-9]*)$")
_HEAD = re.compile(r"^(0|[1-9][0-9]*)$")
_FEATURE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9\[\]]*=")

COLUMNS = 10


class ConllUParser:
    """Parse CoNLL-U text into frozen sentences, refusing anything it could not re-emit verbatim."""

    def __init__(self, source: Optional[str] = None):
        self.source = source

    def parse(self, data: Union[bytes, str]) -> list[Sentence]:
        """
        Parse a whole document.

        Args:
            data: UTF-8 bytes or already decoded text

        Returns:
            Sentences in file order; empty input gives an empty list
        """
        if isinstance(data, bytes):
            try:
                text = data.decode("utf-8")
            except UnicodeDecodeError as e:
                raise ParseError(1, f"input is not UTF-8: {e.reason}", self.source)
        else:
            text = data
        if not text:
            return []

        lines = _LINE_BREAK.split(text)
        if lines[-1] != "":
            raise ParseError(len(lines), "file does not end with a newline", self.source)
        lines.pop()

        sentences: list[Sentence] = []
        comments: list[str] = []
        rows: list[tuple[int, list[str]]] = []
        first_line = 1

        for lineno, line in enumerate(lines, start=1):
            if not line:
                if rows:
                    sentences.append(self._build_sentence(comments, rows, first_line, lineno - 1))
                    comments, rows = [], []
                elif comments:
                    raise ParseError(lineno, "comment block without token lines", self.source)
                else:
                    raise ParseError(lineno, "spurious empty line", self.source)
                first_line = lineno + 1
            elif line.startswith("#"):
                if rows:
                    raise ParseError(lineno, "comment line inside token lines", self.source)
                comments.append(line)
            else:
                cols = line.split("\t")
                if len(cols) != COLUMNS:
                    raise ParseError(
                        lineno, f"expected {COLUMNS} columns, found {len(cols)}", self.source
                    )
                rows.append((lineno, cols))

        if rows or comments:
            raise ParseError(len(lines), "missing empty line after the last sentence", self.source)
        return sentences

    # --- sentence assembly ---

    def _build_sentence(
        self,
        comments: list[str],
        rows: list[tuple[int, list[str]]],
        first_line: int,
        last_line: int,
    ) -> Sentence:
        self._check_comments(comments, first_line)

        tokens: list[Token] = []
        token_lines: list[int] = []
        words = 0
        last_minor = 0
        range_end = 0
        pending_ranges: list[tuple[int, int]] = []

        for lineno, cols in rows:
            token_id = self._parse_id(cols[0], lineno)
            if token_id.kind == "word":
                if token_id.major != words + 1:
                    raise ParseError(
                        lineno,
                        f"word index {token_id.major} out of sequence (expected {words + 1})",
                        self.source,
                    )
                words = token_id.major
                last_minor = 0
            elif token_id.kind == "range":
                if token_id.major != words + 1:
                    raise ParseError(lineno, f"misplaced range {token_id}", self.source)
                if token_id.major <= range_end:
                    raise ParseError(lineno, f"overlapping range {token_id}", self.source)
                range_end = token_id.end
                pending_ranges.append((lineno, token_id.end))
            else:
                if token_id.major != words or token_id.minor != last_minor + 1:
                    raise ParseError(lineno, f"misplaced empty node {token_id}", self.source)
                last_minor = token_id.minor
            tokens.append(self._parse_token(token_id, cols, lineno))
            token_lines.append(lineno)

        for lineno, end in pending_ranges:
            if end > words:
                raise ParseError(lineno, f"range ends at {end} beyond last word {words}", self.source)
        for token, lineno in zip(tokens, token_lines):
            if token.head is not None and token.head > words:
                raise ParseError(
                    lineno, f"head {token.head} out of range (sentence has {words} words)", self.source
                )

        return Sentence(
            metadata=tuple(comments),
            tokens=tuple(tokens),
            source=SourceSpan(self.source, first_line, last_line),
        )

    def _check_comments(self, comments: list[str], first_line: int) -> None:
        seen: set[str] = set()
        for offset, line in enumerate(comments):
            parsed = split_comment(line)
            if parsed and parsed[0] in ("sent_id", "text"):
                if parsed[0] in seen:
                    raise ParseError(first_line + offset, f"duplicate {parsed[0]} comment", self.source)
                seen.add(parsed[0])

    # --- column parsing ---

    def _parse_id(self, value: str, lineno: int) -> TokenId:
        if _WORD_ID.match(value):
            return TokenId(major=int(value))
        match = _RANGE_ID.match(value)
        if match:
            start, end = int(match.group(1)), int(match.group(2))
            if start >= end:
                raise ParseError(lineno, f"reversed range {value}", self.source)
            return TokenId(major=start, end=end, kind="range")
        match = _EMPTY_ID.match(value)
        if match:
            return TokenId(major=int(match.group(1)), minor=int(match.group(2)), kind="empty")
        raise ParseError(lineno, f"non-numeric ID {value!r}", self.source)

    def _parse_token(self, token_id: TokenId, cols: list[str], lineno: int) -> Token:
        form, lemma, upos, xpos, feats, head, deprel, deps, misc = cols[1:]
        if token_id.kind == "range":
            if any(c != "_" for c in (lemma, upos, xpos, feats, head, deprel, deps)):
                raise ParseError(lineno, f"range {token_id} may only fill FORM and MISC", self.source)
            return Token(id=token_id, form=form, misc=self._parse_misc(misc))

        if head == "_":
            head_value = None
        elif _HEAD.match(head):
            head_value = int(head)
        else:
            raise ParseError(lineno, f"non-numeric HEAD {head!r}", self.source)
        if token_id.kind == "empty" and (head_value is not None or deprel != "_"):
            raise ParseError(lineno, f"empty node {token_id} must leave HEAD and DEPREL unspecified", self.source)

        return Token(
            id=token_id,
            form=form,
            lemma=lemma,
            upos=upos,
            xpos=xpos,
            feats=self._parse_feats(feats, lineno),
            head=head_value,
            deprel=deprel,
            deps=deps,
            misc=self._parse_misc(misc),
        )

    def _parse_feats(self, value: str, lineno: int) -> Feats:
        if value == "_":
            return ()
        pairs = []
        for item in value.split("|"):
            if not _FEATURE.match(item):
                raise ParseError(lineno, f"invalid feature {item!r}", self.source)
            key, val = item.split("=", 1)
            pairs.append((key, val))
        keys = [k for k, _ in pairs]
        if len(set(keys)) != len(keys):
            raise ParseError(lineno, f"repeated feature in {value!r}", self.source)
        lowered = [k.lower() for k in keys]
        if lowered != sorted(lowered):
            raise ParseError(lineno, f"features must be sorted: {value!r}", self.source)
        return tuple(pairs)

    @staticmethod
    def _parse_misc(value: str) -> Misc:
        if value == "_":
            return ()
        entries = []
        for item in value.split("|"):
            if "=" in item:
                key, val = item.split("=", 1)
                entries.append((key, val))
            else:
                entries.append((item, None))
        return tuple(entries)


# --- Serialization ---

def format_feats(feats: Feats) -> str:
    if not feats:
        return "_"
    return "|".join(f"{k}={v}" for k, v in sort_feats(feats))


def format_misc(misc: Misc) -> str:
    if not misc:
        return "_"
    return "|".join(k if v is None else f"{k}={v}" for k, v in misc)


def format_token(token: Token) -> str:
    if token.is_range:
        return "\t".join((str(token.id), token.form, "_", "_", "_", "_", "_", "_", "_", format_misc(token.misc)))
    return "\t".join((
        str(token.id),
        token.form,
        token.lemma,
        token.upos,
        token.xpos,
        format_feats(token.feats),
        "_" if token.head is None else str(token.head),
        token.deprel,
        token.deps,
        format_misc(token.misc),
    ))


def serialize_sentence(sentence: Sentence) -> str:
    lines = list(sentence.metadata)
    lines.extend(format_token(t) for t in sentence.tokens)
    return "\n".join(lines) + "\n\n"


def serialize_document(sentences: list[Sentence]) -> bytes:
    """Sentences back to CoNLL-U bytes, "\\n" line endings."""
    return "".join(serialize_sentence(s) for s in sentences).encode("utf-8")


def parse_document(data: Union[bytes, str], source: Optional[str] = None) -> list[Sentence]:
    """Parse CoNLL-U bytes (or text) into sentences."""
    return ConllUParser(source).parse(data)


# --- Files ---

def parse_file(path: Path) -> list[Sentence]:
    """Read and parse one CoNLL-U file."""
    sentences = parse_document(Path(path).read_bytes(), source=str(path))
    logger.debug("parse_ok file=%s sentences=%d", path, len(sentences))
    return sentences


def write_file(path: Path, sentences: list[Sentence]) -> None:
    """Write atomically: temp file in the target directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(serialize_document(sentences))
        os.replace(tmp, path)
    except Exception as e:
        logger.error(f"Error writing {path}: {e}")
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
