"""Treebank pipelines: CoNLL-U IO, tree algebra, normalization, linting, conversion."""

from ugc_treebank.pipelines.conllu_io import ConllUParser, parse_document, parse_file, serialize_document, write_file
from ugc_treebank.pipelines.tree_algebra import (
    DepGraph,
    build_graph,
    check_structure,
    derive_text,
    goeswith_spans,
    merge_units,
    split_units,
)
from ugc_treebank.pipelines.normalizer import TokenClassifier, classify_token, normalization_candidates
from ugc_treebank.pipelines.ugc_lint import LintConfig, emoticon_recognizer, fix, list_rules, validate
from ugc_treebank.pipelines.sud_bridge import (
    classify_fusion,
    contract_span,
    convert_sentences,
    sud_to_ud,
    ud_to_sud,
)
from ugc_treebank.pipelines.corpus_stats import corpus_stats

__all__ = [
    "ConllUParser",
    "parse_document",
    "parse_file",
    "serialize_document",
    "write_file",
    "DepGraph",
    "build_graph",
    "check_structure",
    "derive_text",
    "goeswith_spans",
    "merge_units",
    "split_units",
    "TokenClassifier",
    "classify_token",
    "normalization_candidates",
    "LintConfig",
    "emoticon_recognizer",
    "fix",
    "list_rules",
    "validate",
    "classify_fusion",
    "contract_span",
    "convert_sentences",
    "sud_to_ud",
    "ud_to_sud",
    "corpus_stats",
]
