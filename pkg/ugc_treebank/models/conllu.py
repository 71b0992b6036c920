"""In-memory CoNLL-U records.

Tokens and sentences are frozen; every edit goes through a copy
(``Token.with_misc``, ``Sentence.with_tokens`` ...), so parsed sentences can be
shared between threads and worker processes.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator, Literal, Optional

# Ordered key/value pairs; MISC flag entries (no "=") carry value None.
Feats = tuple[tuple[str, str], ...]
Misc = tuple[tuple[str, Optional[str]], ...]

UNSPECIFIED = "_"


@dataclass(frozen=True, slots=True, order=True)
class TokenId:
    """Value of the ID column: a word, a multiword range or an empty node."""
    major: int
    minor: int = 0
    end: int = 0
    kind: Literal["word", "range", "empty"] = "word"

    @classmethod
    def word(cls, index: int) -> TokenId:
        if index < 1:
            raise ValueError(f"word index must be >= 1, got {index}")
        return cls(major=index)

    @classmethod
    def range(cls, start: int, end: int) -> TokenId:
        if not 1 <= start < end:
            raise ValueError(f"invalid range {start}-{end}")
        return cls(major=start, end=end, kind="range")

    @classmethod
    def empty(cls, major: int, minor: int) -> TokenId:
        if major < 0 or minor < 1:
            raise ValueError(f"invalid empty node {major}.{minor}")
        return cls(major=major, minor=minor, kind="empty")

    @property
    def is_word(self) -> bool:
        return self.kind == "word"

    def __str__(self) -> str:
        if self.kind == "range":
            return f"{self.major}-{self.end}"
        if self.kind == "empty":
            return f"{self.major}.{self.minor}"
        return str(self.major)


@dataclass(frozen=True, slots=True)
class Token:
    """One CoNLL-U row."""
    id: TokenId
    form: str
    lemma: str = UNSPECIFIED
    upos: str = UNSPECIFIED
    xpos: str = UNSPECIFIED
    feats: Feats = ()
    head: Optional[int] = None
    deprel: str = UNSPECIFIED
    deps: str = UNSPECIFIED
    misc: Misc = ()

    @property
    def is_word(self) -> bool:
        return self.id.kind == "word"

    @property
    def is_range(self) -> bool:
        return self.id.kind == "range"

    @property
    def is_empty(self) -> bool:
        return self.id.kind == "empty"

    @property
    def index(self) -> int:
        """Word index (major part of the ID)."""
        return self.id.major

    @property
    def base_deprel(self) -> str:
        """Relation without subtype or deep extension: "parataxis:url" -> "parataxis"."""
        return self.deprel.split("@", 1)[0].split(":", 1)[0]

    @property
    def space_after(self) -> bool:
        return get_misc(self, "SpaceAfter") != "No"

    def with_misc(self, key: str, value: Optional[str]) -> Token:
        """Copy with one MISC entry set (appended when new) or removed (value None)."""
        entries = list(self.misc)
        for i, (k, _) in enumerate(entries):
            if k == key:
                if value is None:
                    del entries[i]
                else:
                    entries[i] = (key, value)
                return replace(self, misc=tuple(entries))
        if value is None:
            return self
        return replace(self, misc=tuple(entries) + ((key, value),))

    def with_feat(self, key: str, value: Optional[str]) -> Token:
        """Copy with one feature set or removed; kept in canonical order."""
        feats = {k: v for k, v in self.feats if k != key}
        if value is not None:
            feats[key] = value
        return replace(self, feats=sort_feats(feats.items()))

    def edit(self, **changes) -> Token:
        return replace(self, **changes)


@dataclass(frozen=True, slots=True)
class SourceSpan:
    """Where a sentence came from."""
    path: Optional[str]
    first_line: int
    last_line: int


@dataclass(frozen=True, slots=True)
class Sentence:
    """Metadata comment lines followed by token rows."""
    metadata: tuple[str, ...] = ()
    tokens: tuple[Token, ...] = ()
    source: Optional[SourceSpan] = field(default=None, compare=False)

    @property
    def sent_id(self) -> Optional[str]:
        return self.meta("sent_id")

    @property
    def text(self) -> Optional[str]:
        return self.meta("text")

    def meta(self, key: str) -> Optional[str]:
        """Value of a ``# key = value`` comment, if present."""
        for line in self.metadata:
            parsed = split_comment(line)
            if parsed and parsed[0] == key:
                return parsed[1]
        return None

    def set_meta(self, key: str, value: Optional[str]) -> Sentence:
        """Copy with one ``# key = value`` line replaced, appended or dropped."""
        lines = list(self.metadata)
        new_line = None if value is None else f"# {key} = {value}"
        for i, line in enumerate(lines):
            parsed = split_comment(line)
            if parsed and parsed[0] == key:
                if new_line is None:
                    del lines[i]
                else:
                    lines[i] = new_line
                return replace(self, metadata=tuple(lines))
        if new_line is not None:
            lines.append(new_line)
        return replace(self, metadata=tuple(lines))

    def words(self) -> list[Token]:
        return [t for t in self.tokens if t.id.kind == "word"]

    def ranges(self) -> list[Token]:
        return [t for t in self.tokens if t.id.kind == "range"]

    def word(self, index: int) -> Token:
        """Word row with the given 1-based index."""
        for token in self.tokens:
            if token.id.kind == "word" and token.id.major == index:
                return token
        raise KeyError(index)

    def word_map(self) -> dict[int, Token]:
        return {t.id.major: t for t in self.tokens if t.id.kind == "word"}

    def iter_words(self) -> Iterator[Token]:
        return (t for t in self.tokens if t.id.kind == "word")

    def with_tokens(
        self,
        tokens: tuple[Token, ...] | list[Token],
        metadata: Optional[tuple[str, ...] | list[str]] = None,
    ) -> Sentence:
        return Sentence(
            metadata=self.metadata if metadata is None else tuple(metadata),
            tokens=tuple(tokens),
            source=self.source,
        )

    def replace_word(self, token: Token) -> Sentence:
        """Copy with the word of the same index swapped for ``token``."""
        tokens = tuple(
            token if t.id.kind == "word" and t.id.major == token.id.major else t
            for t in self.tokens
        )
        return replace(self, tokens=tokens)


# --- Accessors ---

def get_misc(token: Token, key: str) -> Optional[str]:
    """Case-sensitive MISC lookup; a flag entry returns its own name."""
    for k, v in token.misc:
        if k == key:
            return k if v is None else v
    return None


def get_feat(token: Token, key: str) -> Optional[str]:
    """Case-sensitive FEATS lookup."""
    for k, v in token.feats:
        if k == key:
            return v
    return None


def sort_feats(items) -> Feats:
    """Canonical FEATS order: case-insensitive by key."""
    return tuple(sorted(((k, v) for k, v in items), key=lambda kv: kv[0].lower()))


def split_comment(line: str) -> Optional[tuple[str, str]]:
    """``# key = value`` -> (key, value); None for free comments."""
    body = line[1:] if line.startswith("#") else line
    if "=" not in body:
        return None
    key, value = body.split("=", 1)
    return key.strip(), value.strip()
