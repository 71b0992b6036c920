"""Data models for the UGC treebank toolchain."""

# CoNLL-U records
from ugc_treebank.models.conllu import (
    Feats,
    Misc,
    Sentence,
    SourceSpan,
    Token,
    TokenId,
    get_feat,
    get_misc,
    sort_feats,
    split_comment,
)

# Enums
from ugc_treebank.models.enums import (
    SEVERITY_RANK,
    Confidence,
    ConvertDirection,
    ExitCode,
    FixMode,
    Framework,
    FusionCase,
    OutputFormat,
    SegmentDirection,
    Severity,
    StructureKind,
    TokenClass,
)

# Errors
from ugc_treebank.models.errors import (
    ConfigError,
    ConversionError,
    FixConflict,
    LexiconError,
    NonAdjacentSpan,
    NonContiguousUnit,
    NonTreeResult,
    ParseError,
    StructureError,
    TreebankError,
    UnresolvedPrimary,
    UnsupportedRelation,
)

# Vocabulary
from ugc_treebank.models.vocabulary import (
    CSTYPE_VALUES,
    NONCAN_VALUES,
    SUD_RELATIONS,
    UD_RELATIONS,
    UPOS_TAGS,
    Vocabulary,
    default_vocabulary,
    split_relation,
)

# Lint reports
from ugc_treebank.models.lint import (
    AppliedFix,
    Diagnostic,
    FixConflictRecord,
    FixReport,
    RuleInfo,
    token_sort_key,
)

# Lexicon, conversion and statistics
from ugc_treebank.models.lexicon import AbbreviationHit, LexiconEntry, NormCandidate
from ugc_treebank.models.conversion import ConversionRow
from ugc_treebank.models.stats import CorpusStats

__all__ = [
    # CoNLL-U
    "Feats",
    "Misc",
    "Sentence",
    "SourceSpan",
    "Token",
    "TokenId",
    "get_feat",
    "get_misc",
    "sort_feats",
    "split_comment",
    # Enums
    "SEVERITY_RANK",
    "Confidence",
    "ConvertDirection",
    "ExitCode",
    "FixMode",
    "Framework",
    "FusionCase",
    "OutputFormat",
    "SegmentDirection",
    "Severity",
    "StructureKind",
    "TokenClass",
    # Errors
    "ConfigError",
    "ConversionError",
    "FixConflict",
    "LexiconError",
    "NonAdjacentSpan",
    "NonContiguousUnit",
    "NonTreeResult",
    "ParseError",
    "StructureError",
    "TreebankError",
    "UnresolvedPrimary",
    "UnsupportedRelation",
    # Vocabulary
    "CSTYPE_VALUES",
    "NONCAN_VALUES",
    "SUD_RELATIONS",
    "UD_RELATIONS",
    "UPOS_TAGS",
    "Vocabulary",
    "default_vocabulary",
    "split_relation",
    # Lint
    "AppliedFix",
    "Diagnostic",
    "FixConflictRecord",
    "FixReport",
    "RuleInfo",
    "token_sort_key",
    # Lexicon, conversion, statistics
    "AbbreviationHit",
    "LexiconEntry",
    "NormCandidate",
    "ConversionRow",
    "CorpusStats",
]
