"""Rule engine: validation, deterministic fixes and rule configuration."""

import logging
from collections import defaultdict
from dataclasses import replace
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from ugc_treebank.config import OFF, RunConfig, load_rule_config
from ugc_treebank.models.conllu import Sentence, Token, TokenId, get_misc
from ugc_treebank.models.enums import Severity
from ugc_treebank.models.errors import ConfigError, FixConflict, StructureError
from ugc_treebank.models.lint import (
    AppliedFix,
    Diagnostic,
    FixConflictRecord,
    FixReport,
    RuleInfo,
)
from ugc_treebank.models.vocabulary import (
    EXEMPT_PUNCTUATION,
    HESITATION_MARKERS,
    MARKUP_SYMBOLS,
)
from ugc_treebank.pipelines.conllu_io import format_feats
from ugc_treebank.pipelines.lint_rules import (
    CATALOG,
    TREE_RULE_ID,
    FieldEdit,
    LintContext,
    Rule,
)
from ugc_treebank.pipelines.normalizer import emoticon_recognizer
from ugc_treebank.pipelines.tree_algebra import build_graph, check_structure, derive_text
from ugc_treebank.services.lexicon_store import Lexicon

logger = logging.getLogger(__name__)

__all__ = ["LintConfig", "validate", "fix", "list_rules", "emoticon_recognizer", "split_token"]

# catalog order; R-TREE-01 only runs when the tree cannot be built
PHENOMENON_RULE_IDS = tuple(rule_id for rule_id in sorted(CATALOG) if rule_id != TREE_RULE_ID)


class LintConfig(BaseModel):
    """Resolved rule settings for one run."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    severities: dict[str, str] = Field(default_factory=dict)
    strict: bool = False
    url_alternatives: bool = False
    rt_case_sensitive: bool = True
    hesitation_markers: tuple[str, ...] = HESITATION_MARKERS
    markup_symbols: tuple[str, ...] = MARKUP_SYMBOLS
    exempt_punctuation: tuple[str, ...] = EXEMPT_PUNCTUATION
    lexicon: Optional[Lexicon] = None  # source of FullForm/CorrectForm suggestions

    @classmethod
    def from_run_config(cls, run: RunConfig, lexicon: Optional[Lexicon] = None) -> "LintConfig":
        """
        Merge the rule file with explicit severities (explicit ones win).

        Raises:
            ConfigError: unreadable rule file or unknown rule id
        """
        known = set(CATALOG)
        severities: dict[str, str] = {}
        if run.rule_config is not None:
            severities.update(load_rule_config(Path(run.rule_config), known))
        unknown = sorted(set(run.severities) - known)
        if unknown:
            raise ConfigError(f"unknown rule id(s): {', '.join(unknown)}")
        severities.update(run.severities)
        return cls(
            severities=severities,
            strict=run.strict,
            url_alternatives=run.url_alternatives,
            rt_case_sensitive=run.rt_case_sensitive,
            hesitation_markers=tuple(run.hesitation_markers),
            markup_symbols=tuple(run.markup_symbols),
            exempt_punctuation=tuple(run.exempt_punctuation),
            lexicon=lexicon,
        )

    def severity_for(self, rule: Rule) -> Optional[Severity]:
        """Configured severity, or None when the rule is switched off."""
        level = self.severities.get(rule.id)
        if level is None:
            return rule.info.default_severity
        if level == OFF:
            return None
        return Severity(level)


_DEFAULT_CONFIG = LintConfig()


def list_rules() -> list[RuleInfo]:
    """Catalog metadata sorted by rule id."""
    return [CATALOG[rule_id].info for rule_id in sorted(CATALOG)]


# --- Validation ---

def _run_rule(rule: Rule, ctx: LintContext, config: LintConfig, sent_id: Optional[str]) -> list[Diagnostic]:
    severity = config.severity_for(rule)
    if severity is None:
        return []
    return [
        Diagnostic(
            rule_id=rule.id,
            severity=finding.severity or severity,
            sent_id=sent_id,
            token_ids=finding.token_ids,
            message=finding.message,
            fix_available=finding.fixable and rule.fixer is not None,
        )
        for finding in rule.checker(ctx)
    ]


def validate(sentence: Sentence, config: Optional[LintConfig] = None) -> list[Diagnostic]:
    """
    Run the rule catalog over one sentence.

    A sentence whose words do not form a tree only gets R-TREE-01
    diagnostics; the phenomenon rules need the tree.

    Returns:
        Diagnostics sorted by (token, rule id, message)
    """
    config = config or _DEFAULT_CONFIG
    if not sentence.words():
        return []
    sent_id = sentence.sent_id
    try:
        graph = build_graph(sentence)
    except StructureError:
        ctx = LintContext(sentence, None, config, check_structure(sentence))
        diagnostics = _run_rule(CATALOG[TREE_RULE_ID], ctx, config, sent_id)
    else:
        ctx = LintContext(sentence, graph, config)
        diagnostics = []
        for rule_id in PHENOMENON_RULE_IDS:
            diagnostics.extend(_run_rule(CATALOG[rule_id], ctx, config, sent_id))
    diagnostics.sort(key=Diagnostic.sort_key)
    return diagnostics


# --- Fixing ---

def _apply_edit(token: Token, field: str, value) -> tuple[Optional[str], Token]:
    """Returns (old value as text, edited token)."""
    if field.startswith("misc:"):
        key = field.split(":", 1)[1]
        return get_misc(token, key), token.with_misc(key, value)
    if field == "feats":
        return format_feats(token.feats), replace(token, feats=value)
    return getattr(token, field), replace(token, **{field: value})


def split_token(sentence: Sentence, index: int, parts: tuple[str, ...]) -> Sentence:
    """
    Replace word ``index`` by one SYM/discourse word per part, attached to the root.

    Later words shift right; dependents of the old word attach to the first
    part; the last part keeps the original MISC, the others get SpaceAfter=No.
    """
    extra = len(parts) - 1
    if extra < 1:
        return sentence

    def shift(i: int) -> int:
        return i + extra if i > index else i

    root = shift(build_graph(sentence).root)
    tokens: list[Token] = []
    for token in sentence.tokens:
        major = token.id.major
        if token.is_range:
            tokens.append(replace(token, id=TokenId.range(shift(major), shift(token.id.end))))
        elif token.is_empty:
            new_major = major + extra if major >= index else major
            tokens.append(replace(token, id=TokenId.empty(new_major, token.id.minor)))
        elif major == index:
            for k, part in enumerate(parts):
                tokens.append(Token(
                    id=TokenId.word(index + k),
                    form=part,
                    lemma=part,
                    upos="SYM",
                    xpos=token.xpos,
                    head=root,
                    deprel="discourse",
                    deps=token.deps if k == 0 else "_",
                    misc=token.misc if k == extra else (("SpaceAfter", "No"),),
                ))
        else:
            head = token.head if not token.head else shift(token.head)
            tokens.append(replace(token, id=TokenId.word(shift(major)), head=head))
    return sentence.with_tokens(tokens)


def fix(
    sentence: Sentence,
    diagnostics: Optional[list[Diagnostic]] = None,
    config: Optional[LintConfig] = None,
) -> tuple[Sentence, FixReport]:
    """
    Apply the deterministic fixes behind ``diagnostics``.

    Two edits of one token field with different values are a conflict: the
    token is left untouched and the conflict is recorded in the report.

    Returns:
        (fixed copy of the sentence, report of applied fixes and conflicts)
    """
    config = config or _DEFAULT_CONFIG
    if diagnostics is None:
        diagnostics = validate(sentence, config)
    report = FixReport(sent_id=sentence.sent_id)
    fixable = [d for d in diagnostics if d.fix_available]
    if not fixable:
        return sentence, report

    ctx = LintContext(sentence, build_graph(sentence), config)
    slots: dict[tuple[int, str], list[FieldEdit]] = defaultdict(list)
    for diagnostic in fixable:
        rule = CATALOG[diagnostic.rule_id]
        for edit in rule.fixer(ctx, int(diagnostic.first_token)):
            slots[(edit.index, edit.field)].append(edit)

    blocked: set[int] = set()
    for (index, field), edits in sorted(slots.items()):
        if len({e.value for e in edits}) > 1:
            conflict = FixConflict(str(index), field, [e.rule_id for e in edits])
            logger.warning("fix_conflict sent_id=%s %s", sentence.sent_id, conflict)
            report.conflicts.append(FixConflictRecord(
                token_id=conflict.token_id, field=field, rule_ids=tuple(conflict.rule_ids)
            ))
            blocked.add(index)

    words = sentence.word_map()
    splits: list[tuple[int, FieldEdit]] = []
    for (index, field), edits in sorted(slots.items()):
        if index in blocked:
            continue
        edit = edits[0]
        rule_id = min(e.rule_id for e in edits)
        if field == "split":
            splits.append((index, edit))
            continue
        old, edited = _apply_edit(words[index], field, edit.value)
        if edited == words[index]:
            continue
        words[index] = edited
        new = format_feats(edit.value) if field == "feats" else edit.value
        report.applied.append(AppliedFix(rule_id=rule_id, token_id=str(index), field=field, old=old, new=new))

    fixed = sentence.with_tokens(
        [words[t.index] if t.is_word else t for t in sentence.tokens]
    )
    for index, edit in sorted(splits, reverse=True):
        form = words[index].form
        fixed = split_token(fixed, index, edit.value)
        report.applied.append(AppliedFix(
            rule_id=edit.rule_id, token_id=str(index), field="form", old=form, new=" ".join(edit.value)
        ))
    if splits and fixed.text is not None:
        fixed = fixed.set_meta("text", derive_text(fixed))
    report.applied.sort(key=lambda a: (int(a.token_id), a.field))
    if report.applied:
        logger.debug("fix_applied sent_id=%s fixes=%d conflicts=%d",
                     sentence.sent_id, len(report.applied), len(report.conflicts))
    return fixed, report
