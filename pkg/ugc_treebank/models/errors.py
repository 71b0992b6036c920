"""Exception hierarchy shared by the treebank toolchain."""
from typing import Optional, Sequence


class TreebankError(Exception):
    """Base class for every error raised by ugc_treebank."""


class ParseError(TreebankError):
    """Malformed CoNLL-U input."""

    def __init__(self, line: int, reason: str, source: Optional[str] = None):
        self.line = line
        self.reason = reason
        self.source = source
        where = f"{source}:{line}" if source else f"line {line}"
        super().__init__(f"{where}: {reason}")


class StructureError(TreebankError):
    """Dependency rows do not form a single rooted tree."""

    def __init__(self, kind: str, token_ids: Sequence[str]):
        self.kind = kind
        self.token_ids = list(token_ids)
        super().__init__(f"{kind} involving tokens {','.join(self.token_ids)}")


class NonContiguousUnit(TreebankError):
    """A sentential unit interleaves with another one and cannot be cut out."""

    def __init__(self, edge: tuple[int, int], reason: str = "unit tokens interleave"):
        self.edge = edge
        super().__init__(f"parataxis:sentence edge {edge[0]}->{edge[1]}: {reason}")


class FixConflict(TreebankError):
    """Two fixes want different values for the same field of the same token."""

    def __init__(self, token_id: str, field: str, rule_ids: Sequence[str]):
        self.token_id = token_id
        self.field = field
        self.rule_ids = sorted(set(rule_ids))
        super().__init__(
            f"token {token_id} field {field} targeted by {', '.join(self.rule_ids)}"
        )


class ConfigError(TreebankError):
    """Invalid run configuration; the CLI aborts before touching any file."""


class LexiconError(TreebankError):
    """Malformed lexicon file."""

    def __init__(self, path: str, line: int, reason: str):
        self.path = path
        self.line = line
        self.reason = reason
        super().__init__(f"{path}:{line}: {reason}")


# --- Conversion errors ---

class ConversionError(TreebankError):
    """Base class for UD/SUD conversion failures."""


class UnsupportedRelation(ConversionError):
    """Relation outside the closed conversion inventory."""

    def __init__(self, deprel: str, token_id: str, sent_id: Optional[str] = None):
        self.deprel = deprel
        self.token_id = token_id
        self.sent_id = sent_id
        where = f"sentence {sent_id} token {token_id}" if sent_id else f"token {token_id}"
        super().__init__(f"unsupported relation {deprel!r} on {where}")


class NonTreeResult(ConversionError):
    """Conversion produced something that is not a tree (internal failure)."""


class NonAdjacentSpan(ConversionError):
    """Contraction span members are not adjacent words."""

    def __init__(self, span: Sequence[int]):
        self.span = tuple(span)
        super().__init__(f"span {self.span} is not a run of adjacent words")


class UnresolvedPrimary(ConversionError):
    """Co-dependent span members need an explicit primary member."""

    def __init__(self, span: Sequence[int]):
        self.span = tuple(span)
        super().__init__(f"span {self.span} is SharedDependents; no primary member given")
