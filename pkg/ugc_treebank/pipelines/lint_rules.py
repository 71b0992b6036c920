"""Catalog of UGC annotation rules.

Each rule is a checker over a ``LintContext`` (sentence, tree view, run
settings) plus an optional fixer that turns one finding into field edits.
Checkers never mutate anything; the engine in ``ugc_lint`` assembles
diagnostics and applies edits.
"""

import logging
from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, Any, Callable, Iterable, Iterator, Optional

from ugc_treebank.models.conllu import Sentence, Token, get_feat, get_misc
from ugc_treebank.models.enums import Severity, TokenClass
from ugc_treebank.models.errors import StructureError
from ugc_treebank.models.lint import RuleInfo
from ugc_treebank.models.vocabulary import (
    BOOLEAN_UGC_FEATS,
    Vocabulary,
    default_vocabulary,
)
from ugc_treebank.pipelines.normalizer import (
    PUNCTUATION_RUN,
    emoticon_recognizer,
    is_reduplicated_punctuation,
    lookup_abbreviation,
    punctuation_lemma,
    shared_classifier,
)
from ugc_treebank.pipelines.tree_algebra import DepGraph, goeswith_spans

if TYPE_CHECKING:
    from ugc_treebank.pipelines.ugc_lint import LintConfig

logger = logging.getLogger(__name__)

# Relations that make a token part of the clause rather than a side element
ARGUMENT_RELATIONS = frozenset({
    "nsubj", "obj", "iobj", "csubj", "ccomp", "xcomp", "obl", "nmod", "amod",
    "advmod", "advcl", "acl", "appos", "nummod", "compound", "conj", "expl",
    # surface-syntactic counterparts
    "subj", "comp", "mod", "udep",
})
NON_INTEGRATED_RELATIONS = frozenset({"parataxis", "discourse", "dep", "list", "vocative"})
ORPHAN_HOSTS = frozenset({"conj", "parataxis", "root"})
PREDICATE_UPOS = frozenset({"VERB", "AUX"})
RT_INTEGRATED_UPOS = frozenset({"NOUN", "VERB"})

# NonCan value -> MISC keys it should come with
NONCAN_COMPANIONS = {
    "SpellVar": ("CorrectForm",),
    "CharOm": ("CorrectForm",),
    "Phon": ("CorrectForm",),
    "Stretch": ("CorrectForm",),
    "Transl": ("CorrectForm",),
    "AutoC": ("CorrectForm",),
    "Trunc": ("FullForm",),
}

TREE_RULE_ID = "R-TREE-01"


@dataclass(frozen=True)
class Finding:
    """What a checker reports; the engine adds sentence id and severity."""
    token_ids: tuple[str, ...]
    message: str
    fixable: bool = False
    severity: Optional[Severity] = None  # overrides the rule's configured severity


@dataclass(frozen=True)
class FieldEdit:
    """One requested change of one token field.

    ``field`` is upos, lemma, feats, deprel, ``misc:<Key>`` or ``split``
    (value: the new forms) for the structural emoticon split.
    """
    index: int
    field: str
    value: Any
    rule_id: str


class LintContext:
    """Per-sentence view shared by all checkers."""

    def __init__(
        self,
        sentence: Sentence,
        graph: Optional[DepGraph],
        config: "LintConfig",
        structure_errors: Optional[list[StructureError]] = None,
    ):
        self.sentence = sentence
        self.graph = graph
        self.config = config
        self.structure_errors = structure_errors or []
        self.words = sentence.word_map()
        self.classifier = shared_classifier(config.rt_case_sensitive, tuple(config.markup_symbols))
        self.vocabulary: Vocabulary = default_vocabulary(config.strict)
        self._classes: dict[int, TokenClass] = {}
        self._by_class: Optional[dict[TokenClass, list[Token]]] = None
        self._ranged: Optional[set[int]] = None

    @property
    def tree(self) -> DepGraph:
        if self.graph is None:
            raise RuntimeError("phenomenon rules need a well-formed tree")
        return self.graph

    def iter_words(self) -> Iterator[Token]:
        return iter(self.words.values())

    def token_class(self, token: Token) -> TokenClass:
        cls = self._classes.get(token.index)
        if cls is None:
            cls = self.classifier.classify(token.form)
            self._classes[token.index] = cls
        return cls

    def of_class(self, token_class: TokenClass) -> Iterator[Token]:
        if self._by_class is None:
            self._by_class = {}
            for token in self.iter_words():
                self._by_class.setdefault(self.token_class(token), []).append(token)
        return iter(self._by_class.get(token_class, ()))

    def attached_to_root(self, token: Token) -> bool:
        return token.head == self.tree.root and token.head != 0

    def is_integrated(self, token: Token) -> bool:
        """Argument/modifier relation, or a root that takes arguments itself."""
        if token.base_deprel in ARGUMENT_RELATIONS:
            return True
        if token.deprel == "root":
            return any(
                self.words[c].base_deprel in ARGUMENT_RELATIONS
                for c in self.tree.children(token.index)
            )
        return False

    def in_multiword_token(self, index: int) -> bool:
        if self._ranged is None:
            self._ranged = {
                i for r in self.sentence.ranges() for i in range(r.id.major, r.id.end + 1)
            }
        return index in self._ranged


Checker = Callable[[LintContext], Iterable[Finding]]
Fixer = Callable[[LintContext, int], list[FieldEdit]]


@dataclass(frozen=True)
class Rule:
    """A catalog entry: metadata, checker and optional fixer."""
    info: RuleInfo
    checker: Checker
    fixer: Optional[Fixer] = None

    @property
    def id(self) -> str:
        return self.info.id


CATALOG: dict[str, Rule] = {}


def rule(rule_id: str, phenomenon: str, severity: Severity, description: str) -> Callable[[Checker], Checker]:
    """Register a checker in the catalog."""
    def register(checker: Checker) -> Checker:
        CATALOG[rule_id] = Rule(
            info=RuleInfo(
                id=rule_id,
                phenomenon=phenomenon,
                default_severity=severity,
                description=description,
            ),
            checker=checker,
        )
        return checker
    return register


def fixer(rule_id: str) -> Callable[[Fixer], Fixer]:
    """Attach a fixer to an already registered rule."""
    def register(func: Fixer) -> Fixer:
        entry = CATALOG[rule_id]
        CATALOG[rule_id] = replace(
            entry,
            info=entry.info.model_copy(update={"fixable": True}),
            fixer=func,
        )
        return func
    return register


def _ids(*indices: int) -> tuple[str, ...]:
    return tuple(str(i) for i in indices)


def _noncan_values(token: Token) -> list[str]:
    value = get_misc(token, "NonCan")
    return [] if value is None else value.split(",")


# --- Structure and vocabulary ---

@rule(TREE_RULE_ID, "Tree structure", Severity.ERROR,
      "Words form one tree: a single root labelled root, no cycles, every head set")
def check_tree(ctx: LintContext) -> Iterator[Finding]:
    for error in ctx.structure_errors:
        yield Finding(tuple(error.token_ids), f"{error.kind}: dependency rows do not form a tree")


@rule("R-VOCAB-01", "Vocabulary", Severity.ERROR, "UPOS is one of the 17 universal tags")
def check_upos(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.iter_words():
        if not ctx.vocabulary.is_known_upos(token.upos):
            yield Finding(_ids(token.index), f"unknown UPOS {token.upos!r}")


@rule("R-VOCAB-02", "Vocabulary", Severity.ERROR,
      "DEPREL base is a UD or SUD relation; strict mode also requires registered subtypes")
def check_deprel(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.iter_words():
        status = ctx.vocabulary.relation_status(token.deprel)
        if status == "unknown_base":
            yield Finding(_ids(token.index), f"unknown relation {token.deprel!r}")
        elif status == "unregistered_subtype" and ctx.vocabulary.strict:
            yield Finding(_ids(token.index), f"unregistered relation subtype {token.deprel!r}")


@rule("R-FEATS-01", "UGC features", Severity.ERROR, "Abbr, Typo and Foreign take Yes; no empty feature values")
def check_ugc_feats(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.iter_words():
        problems = []
        for key, value in token.feats:
            if key in BOOLEAN_UGC_FEATS and value != "Yes":
                problems.append(f"{key}={value} (only Yes is allowed)")
            elif not value:
                problems.append(f"{key} has an empty value")
        if problems:
            yield Finding(_ids(token.index), "; ".join(problems))


# --- Hashtags ---

@rule("R-HASH-01", "Hashtags", Severity.ERROR, "Hashtag tokens are tagged X")
def check_hashtag_upos(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.of_class(TokenClass.HASHTAG):
        if token.upos != "X":
            yield Finding(_ids(token.index), f"hashtag {token.form!r} has UPOS {token.upos}, expected X", fixable=True)


@fixer("R-HASH-01")
def fix_hashtag_upos(ctx: LintContext, index: int) -> list[FieldEdit]:
    return [FieldEdit(index, "upos", "X", "R-HASH-01")]


@rule("R-HASH-02", "Hashtags", Severity.ERROR,
      "Classificatory hashtags under the root use parataxis:hashtag; integrated ones may carry MISC FuncPOS")
def check_hashtag_relation(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.of_class(TokenClass.HASHTAG):
        if token.deprel == "parataxis" and ctx.attached_to_root(token):
            yield Finding(
                _ids(token.index),
                f"hashtag {token.form!r} attached to the root should use parataxis:hashtag",
                fixable=True,
            )
        elif ctx.is_integrated(token) and token.xpos == "_" and get_misc(token, "FuncPOS") is None:
            yield Finding(
                _ids(token.index),
                f"integrated hashtag {token.form!r} has no XPOS; MISC FuncPOS recommended",
                severity=Severity.INFO,
            )


@fixer("R-HASH-02")
def fix_hashtag_relation(ctx: LintContext, index: int) -> list[FieldEdit]:
    return [FieldEdit(index, "deprel", "parataxis:hashtag", "R-HASH-02")]


# --- At-mentions ---

@rule("R-MENT-01", "At-mentions", Severity.ERROR, "At-mentions are tagged PROPN")
def check_mention_upos(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.of_class(TokenClass.MENTION):
        if token.upos != "PROPN":
            yield Finding(_ids(token.index), f"at-mention {token.form!r} has UPOS {token.upos}, expected PROPN", fixable=True)


@fixer("R-MENT-01")
def fix_mention_upos(ctx: LintContext, index: int) -> list[FieldEdit]:
    return [FieldEdit(index, "upos", "PROPN", "R-MENT-01")]


@rule("R-MENT-02", "At-mentions", Severity.WARNING, "Standalone at-mentions under the root use vocative:mention")
def check_mention_relation(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.of_class(TokenClass.MENTION):
        if not ctx.attached_to_root(token):
            continue
        if token.deprel == "vocative":
            yield Finding(_ids(token.index), f"standalone at-mention {token.form!r} should use vocative:mention", fixable=True)
        elif token.base_deprel in ("dep", "discourse", "parataxis"):
            yield Finding(
                _ids(token.index),
                f"standalone at-mention {token.form!r} is {token.deprel}; vocative:mention expected",
            )


@fixer("R-MENT-02")
def fix_mention_relation(ctx: LintContext, index: int) -> list[FieldEdit]:
    return [FieldEdit(index, "deprel", "vocative:mention", "R-MENT-02")]


# --- URLs ---

@rule("R-URL-01", "URLs", Severity.ERROR, "URLs are tagged SYM")
def check_url_upos(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.of_class(TokenClass.URL):
        if token.upos != "SYM":
            yield Finding(_ids(token.index), f"URL has UPOS {token.upos}, expected SYM", fixable=True)


@fixer("R-URL-01")
def fix_url_upos(ctx: LintContext, index: int) -> list[FieldEdit]:
    return [FieldEdit(index, "upos", "SYM", "R-URL-01")]


@rule("R-URL-02", "URLs", Severity.ERROR, "Non-integrated URLs attach to the root with parataxis:url")
def check_url_relation(ctx: LintContext) -> Iterator[Finding]:
    alternatives = ("discourse:context", "dep") if ctx.config.url_alternatives else ()
    for token in ctx.of_class(TokenClass.URL):
        if token.base_deprel not in NON_INTEGRATED_RELATIONS:
            continue
        under_root = ctx.attached_to_root(token)
        if under_root and (token.deprel == "parataxis:url" or token.deprel in alternatives):
            continue
        if under_root and token.deprel == "parataxis":
            yield Finding(_ids(token.index), "URL attached to the root should use parataxis:url", fixable=True)
        else:
            yield Finding(_ids(token.index), f"non-integrated URL is {token.deprel} under token {token.head}; parataxis:url to the root expected")


@fixer("R-URL-02")
def fix_url_relation(ctx: LintContext, index: int) -> list[FieldEdit]:
    return [FieldEdit(index, "deprel", "parataxis:url", "R-URL-02")]


# --- Emoticons and pictograms ---

@rule("R-PICT-01", "Emoticons", Severity.ERROR, "Discourse emoticons are SYM attached to the root")
def check_discourse_emoticon(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.of_class(TokenClass.EMOTICON):
        if token.base_deprel != "discourse":
            continue
        problems = []
        if token.upos != "SYM":
            problems.append(f"UPOS {token.upos}, expected SYM")
        if not ctx.attached_to_root(token):
            problems.append(f"head {token.head}, expected the root {ctx.tree.root}")
        if problems:
            yield Finding(_ids(token.index), f"emoticon {token.form!r}: " + "; ".join(problems))


@rule("R-PICT-02", "Emoticons", Severity.ERROR,
      "Integrated pictograms carry the lemma and UPOS of the word they replace")
def check_integrated_pictogram(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.of_class(TokenClass.EMOTICON):
        if not ctx.is_integrated(token):
            continue
        if token.upos == "SYM" or token.lemma == "_":
            yield Finding(
                _ids(token.index),
                f"integrated pictogram {token.form!r} needs the substituted word's lemma and UPOS "
                f"(has {token.lemma!r}/{token.upos})",
            )


@rule("R-EMOT-01", "Emoticons", Severity.WARNING, "Strings of emoticons are split into one token each")
def check_emoticon_string(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.of_class(TokenClass.EMOTICON):
        parts = emoticon_recognizer(token.form) or []
        if len(parts) < 2:
            continue
        fixable = token.base_deprel == "discourse" and not ctx.in_multiword_token(token.index)
        yield Finding(
            _ids(token.index),
            f"{token.form!r} is {len(parts)} emoticons: {' '.join(parts)}",
            fixable=fixable,
        )


@fixer("R-EMOT-01")
def fix_emoticon_string(ctx: LintContext, index: int) -> list[FieldEdit]:
    parts = emoticon_recognizer(ctx.words[index].form)
    return [FieldEdit(index, "split", tuple(parts), "R-EMOT-01")] if parts else []


# --- RT ---

@rule("R-RT-01", "RTs", Severity.ERROR, "Non-integrated RT is SYM with parataxis")
def check_rt_parataxis(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.of_class(TokenClass.RT):
        if token.base_deprel == "parataxis" and token.upos != "SYM":
            yield Finding(_ids(token.index), f"RT under parataxis has UPOS {token.upos}, expected SYM", fixable=True)


@fixer("R-RT-01")
def fix_rt_parataxis(ctx: LintContext, index: int) -> list[FieldEdit]:
    return [FieldEdit(index, "upos", "SYM", "R-RT-01")]


@rule("R-RT-02", "RTs", Severity.ERROR, "Integrated RT is NOUN or VERB with Abbr=Yes")
def check_rt_integrated(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.of_class(TokenClass.RT):
        if not ctx.is_integrated(token):
            continue
        problems = []
        if token.upos not in RT_INTEGRATED_UPOS:
            problems.append(f"UPOS {token.upos}, expected NOUN or VERB")
        if get_feat(token, "Abbr") != "Yes":
            problems.append("Abbr=Yes missing")
        if problems:
            yield Finding(_ids(token.index), "integrated RT: " + "; ".join(problems))


# --- Markup ---

@rule("R-MARKUP-01", "Markup symbols", Severity.ERROR, "Markup symbols are SYM attached with punct")
def check_markup(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.of_class(TokenClass.MARKUP):
        problems = []
        if token.upos != "SYM":
            problems.append(f"UPOS {token.upos}, expected SYM")
        if token.deprel != "punct":
            problems.append(f"deprel {token.deprel}, expected punct")
        if problems:
            yield Finding(
                _ids(token.index),
                f"markup {token.form!r}: " + "; ".join(problems),
                fixable=token.deprel == "punct",
            )


@fixer("R-MARKUP-01")
def fix_markup(ctx: LintContext, index: int) -> list[FieldEdit]:
    return [FieldEdit(index, "upos", "SYM", "R-MARKUP-01")]


# --- Over-splitting ---

@rule("R-GOESWITH-01", "Oversplitting", Severity.ERROR,
      "goeswith spans: head first, contiguous, members X/_/no FEATS, head lemma set and NonCan=OS")
def check_goeswith(ctx: LintContext) -> Iterator[Finding]:
    for span in goeswith_spans(ctx.tree):
        head = ctx.words[span.head]
        problems: list[str] = []
        fixable = True
        if not span.head_first:
            problems.append("head does not precede its goeswith members")
            fixable = False
        if not span.contiguous:
            problems.append("span is not contiguous")
            fixable = False
        if head.lemma == "_":
            problems.append("head lemma is unspecified")
            fixable = False
        noncan = _noncan_values(head)
        if "OS" not in noncan:
            problems.append("head lacks MISC NonCan=OS")
            fixable = fixable and not noncan
        if problems:
            yield Finding(_ids(head.index), f"goeswith head {head.form!r}: " + "; ".join(problems), fixable=fixable)

        for index in span.members:
            member = ctx.words[index]
            wrong = []
            if member.upos != "X":
                wrong.append(f"UPOS {member.upos}")
            if member.lemma != "_":
                wrong.append(f"lemma {member.lemma!r}")
            if member.feats:
                wrong.append("FEATS set")
            if wrong:
                yield Finding(
                    _ids(index),
                    f"goeswith member {member.form!r} must be X with unspecified lemma and FEATS: " + ", ".join(wrong),
                    fixable=True,
                )


@fixer("R-GOESWITH-01")
def fix_goeswith(ctx: LintContext, index: int) -> list[FieldEdit]:
    token = ctx.words[index]
    if token.deprel == "goeswith":
        return [
            FieldEdit(index, "upos", "X", "R-GOESWITH-01"),
            FieldEdit(index, "lemma", "_", "R-GOESWITH-01"),
            FieldEdit(index, "feats", (), "R-GOESWITH-01"),
        ]
    if get_misc(token, "NonCan") is None:
        return [FieldEdit(index, "misc:NonCan", "OS", "R-GOESWITH-01")]
    return []


# --- Code-switching ---

@rule("R-CS-01", "Code-switching", Severity.ERROR, "Foreign=Yes comes with MISC LangID; CSType is INTER, INTRA or MIXED")
def check_code_switch_misc(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.iter_words():
        problems = []
        if get_feat(token, "Foreign") == "Yes" and get_misc(token, "LangID") is None:
            problems.append("Foreign=Yes without MISC LangID")
        cstype = get_misc(token, "CSType")
        if cstype is not None and cstype not in ctx.vocabulary.cstype_values:
            problems.append(f"unknown CSType {cstype!r}")
        if problems:
            yield Finding(_ids(token.index), "; ".join(problems))


@rule("R-CS-02", "Code-switching", Severity.ERROR, "Every word of a foreign string attaches to its first token")
def check_foreign_chain(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.iter_words():
        if token.deprel != "flat:foreign":
            continue
        head = ctx.words[token.head]
        if head.index > token.index:
            yield Finding(_ids(token.index), f"flat:foreign head {head.index} follows the dependent")
        elif head.deprel == "flat:foreign":
            yield Finding(_ids(token.index), f"flat:foreign attaches to {head.index}, not to the first foreign token")


# --- Non-canonical forms ---

@rule("R-NONCAN-01", "Non-canonical forms", Severity.ERROR, "MISC NonCan values come from the controlled list")
def check_noncan_value(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.iter_words():
        unknown = [v for v in _noncan_values(token) if v not in ctx.vocabulary.noncan_values]
        if unknown:
            yield Finding(_ids(token.index), f"unknown NonCan value(s) {', '.join(unknown)}")


def _lexicon_expansion(ctx: LintContext, form: str) -> Optional[str]:
    if ctx.config.lexicon is None:
        return None
    hit = lookup_abbreviation(form, ctx.config.lexicon)
    return hit.full_form if hit else None


@rule("R-NONCAN-02", "Non-canonical forms", Severity.WARNING,
      "Typo, Abbr, contraction and NonCan values come with their recommended MISC attributes")
def check_noncan_companions(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.iter_words():
        wanted: list[str] = []
        noncan = _noncan_values(token)
        if get_feat(token, "Typo") == "Yes":
            wanted.append("CorrectForm")
            if "Cont" in noncan:
                wanted.append("CorrectSpaceAfter")
        if get_feat(token, "Abbr") == "Yes":
            wanted.append("FullForm")
        for value in noncan:
            wanted.extend(NONCAN_COMPANIONS.get(value, ()))
        missing = sorted({key for key in wanted if get_misc(token, key) is None})
        if missing:
            message = f"{token.form!r} should carry MISC {', '.join(missing)}"
            hint = _lexicon_expansion(ctx, token.form)
            if hint:
                message += f" (lexicon: {hint})"
            yield Finding(_ids(token.index), message)


@rule("R-TRANSL-01", "Transliteration", Severity.WARNING, "A transliterated token's lemma is a prefix of its form")
def check_transliteration(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.iter_words():
        if "Transl" not in _noncan_values(token) or token.lemma == "_":
            continue
        if not token.form.casefold().startswith(token.lemma.casefold()):
            yield Finding(_ids(token.index), f"lemma {token.lemma!r} of transliterated {token.form!r} is not its prefix")


# --- Punctuation ---

@rule("R-PUNCT-01", "Punctuation reduplication", Severity.ERROR,
      "Reduplicated punctuation is one PUNCT token with a pattern lemma and NonCan=PuncVar")
def check_punctuation_token(ctx: LintContext) -> Iterator[Finding]:
    exempt = ctx.config.exempt_punctuation
    for token in ctx.of_class(TokenClass.PLAIN):
        if not is_reduplicated_punctuation(token.form, exempt):
            continue
        problems = []
        fixable = True
        if token.upos != "PUNCT":
            problems.append(f"UPOS {token.upos}, expected PUNCT")
            fixable = False
        lemma = punctuation_lemma(token.form)
        if token.lemma != lemma:
            problems.append(f"lemma {token.lemma!r}, expected {lemma!r}")
        noncan = _noncan_values(token)
        if "PuncVar" not in noncan:
            problems.append("MISC NonCan=PuncVar missing")
            fixable = fixable and not noncan
        if problems:
            yield Finding(_ids(token.index), f"reduplicated punctuation {token.form!r}: " + "; ".join(problems), fixable=fixable)


@fixer("R-PUNCT-01")
def fix_punctuation_token(ctx: LintContext, index: int) -> list[FieldEdit]:
    token = ctx.words[index]
    edits = []
    lemma = punctuation_lemma(token.form)
    if token.lemma != lemma:
        edits.append(FieldEdit(index, "lemma", lemma, "R-PUNCT-01"))
    if get_misc(token, "NonCan") is None:
        edits.append(FieldEdit(index, "misc:NonCan", "PuncVar", "R-PUNCT-01"))
    return edits


@rule("R-PUNCT-02", "Punctuation reduplication", Severity.WARNING,
      "Reduplicated punctuation is not split over several glued tokens")
def check_split_punctuation(ctx: LintContext) -> Iterator[Finding]:
    exempt = ctx.config.exempt_punctuation
    run: list[Token] = []

    def flush() -> Iterator[Finding]:
        if len(run) >= 2:
            joined = "".join(t.form for t in run)
            if is_reduplicated_punctuation(joined, exempt):
                yield Finding(
                    _ids(*(t.index for t in run)),
                    f"punctuation {joined!r} is split over {len(run)} tokens",
                )

    for token in ctx.iter_words():
        is_punct = bool(PUNCTUATION_RUN.match(token.form)) and ctx.token_class(token) is TokenClass.PLAIN
        if is_punct and run and not run[-1].space_after:
            run.append(token)
            continue
        yield from flush()
        run = [token] if is_punct else []
    yield from flush()


# --- Sentence units ---

@rule("R-SENT-01", "Sentence units", Severity.ERROR,
      "parataxis:sentence units are contiguous and hang from the root spine")
def check_sentence_units(ctx: LintContext) -> Iterator[Finding]:
    graph = ctx.tree
    for boundary in graph.unit_boundaries():
        problems = []
        if not graph.on_root_spine(boundary.head):
            problems.append(f"head {boundary.head} is not on the root spine")
        subtree = graph.subtree(boundary.dependent)
        if subtree[-1] - subtree[0] + 1 != len(subtree):
            problems.append("unit subtree is not contiguous")
        if problems:
            yield Finding(_ids(boundary.dependent), "parataxis:sentence unit: " + "; ".join(problems))


# --- Disfluencies ---

@rule("R-DISF-01", "Disfluencies", Severity.ERROR, "reparandum dependents precede their repair")
def check_reparandum(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.iter_words():
        if token.base_deprel == "reparandum" and token.index > token.head:
            yield Finding(_ids(token.index), f"reparandum {token.form!r} follows its repair {token.head}")


@rule("R-DISF-02", "Disfluencies", Severity.WARNING, "Hesitation markers are discourse dependents of the root")
def check_hesitation(ctx: LintContext) -> Iterator[Finding]:
    markers = {m.casefold() for m in ctx.config.hesitation_markers}
    for token in ctx.iter_words():
        if token.deprel == "root" or token.form.casefold() not in markers:
            continue
        if token.base_deprel != "discourse" or not ctx.attached_to_root(token):
            yield Finding(_ids(token.index), f"hesitation {token.form!r} should be discourse under the root")


# --- Ellipsis ---

@rule("R-ORPH-01", "Ellipsis", Severity.WARNING, "orphan hangs from a conj/parataxis/root clause without a predicate")
def check_orphan(ctx: LintContext) -> Iterator[Finding]:
    for token in ctx.iter_words():
        if token.base_deprel != "orphan":
            continue
        host = ctx.words[token.head]
        if host.base_deprel not in ORPHAN_HOSTS:
            yield Finding(_ids(token.index), f"orphan attaches to a {host.deprel} dependent")
        elif host.upos in PREDICATE_UPOS:
            yield Finding(_ids(token.index), f"orphan attaches to {host.upos} {host.form!r}; the predicate is not elided")
