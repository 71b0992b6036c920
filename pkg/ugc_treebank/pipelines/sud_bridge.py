"""UD <-> SUD conversion and contraction of fused words.

SUD makes function words (aux, cop, case, mark) heads of their content
word. Conversion is closed-world: every relation must be in the table or in
the passthrough set, anything else raises ``UnsupportedRelation``.
"""

import logging
from dataclasses import replace
from typing import Iterable, Optional, Sequence, Union

from ugc_treebank.models.conllu import Sentence, Token, TokenId, get_misc
from ugc_treebank.models.enums import ConvertDirection, Framework, FusionCase
from ugc_treebank.models.errors import (
    ConversionError,
    NonAdjacentSpan,
    NonTreeResult,
    UnresolvedPrimary,
    UnsupportedRelation,
)
from ugc_treebank.models.vocabulary import split_relation
from ugc_treebank.pipelines.tree_algebra import DepGraph, build_graph, check_structure, derive_text
from ugc_treebank.services.conversion_table import ConversionTable, get_default_table

logger = logging.getLogger(__name__)

# Relation bases carried over unchanged in both directions
PASSTHROUGH_BASES = frozenset({
    "root", "punct", "discourse", "parataxis", "goeswith", "vocative", "flat",
    "orphan", "reparandum", "conj", "cc", "expl",
})

# Order of function words from the content word outwards
FLIP_RANK = {"case": 0, "mark": 0, "cop": 1, "aux": 2}

# Dependents of the content word that move up to the topmost function word
SUBJECT_BASES = frozenset({"nsubj", "expl"})

PREDICATE_HEAD_UPOS = frozenset({"VERB", "ADJ", "AUX"})
NOMINAL_UPOS = frozenset({"NOUN", "PROPN", "PRON", "NUM", "X", "SYM", "DET"})

# Dependents of SUD function words that stay with them in UD
FUNCTION_WORD_OWN = frozenset({"unk@fixed", "goeswith"})

DROPPED_REL = "DroppedRel"

Primary = Union[str, int, None]


def _base(deprel: str) -> str:
    return split_relation(deprel)[0]


def _split_dropped(value: str) -> tuple[str, str]:
    """"comp:obl@x:to" -> ("comp:obl@x", "to")."""
    rel, _, form = value.rpartition(":")
    return rel, form


def _other_member(token: Token, form: str) -> str:
    """The CorrectForm member that is not ``form``."""
    members = (get_misc(token, "CorrectForm") or token.form).split(" ")
    others = [m for m in members if m != form]
    return others[0] if others else token.form


def _assert_tree(sentence: Sentence, operation: str) -> Sentence:
    errors = check_structure(sentence)
    if errors:
        raise NonTreeResult(f"{operation} produced a non-tree ({errors[0]})")
    return sentence


def _rebuild(sentence: Sentence, heads: dict[int, int], rels: dict[int, str], misc: dict[int, tuple]) -> Sentence:
    tokens = []
    for token in sentence.tokens:
        if token.is_word:
            i = token.index
            token = replace(token, head=heads[i], deprel=rels[i], misc=misc.get(i, token.misc))
        tokens.append(token)
    return sentence.with_tokens(tokens)


# --- UD -> SUD ---

class _UdToSud:
    """One forward conversion; every decision reads the original UD tree."""

    def __init__(self, sentence: Sentence, table: ConversionTable):
        self.sentence = sentence
        self.table = table
        self.graph: DepGraph = build_graph(sentence)
        self.words = sentence.word_map()
        self.rels = dict(self.graph.deprels)

    def fused_copula(self, i: int) -> bool:
        dropped = get_misc(self.words[i], DROPPED_REL)
        return dropped is not None and dropped.startswith("cop:") and self.graph.head(i) != 0

    def flip_kind(self, i: int) -> Optional[str]:
        if self.table.is_flip(self.rels[i]):
            return self.rels[i]
        if self.fused_copula(i):
            return "cop"
        return None

    def label(self, deprel: str) -> Optional[str]:
        renamed = self.table.to_sud(deprel)
        if renamed is not None:
            return renamed
        return deprel if _base(deprel) in PASSTHROUGH_BASES else None

    def top_label(self, content: int, kind: str) -> str:
        rel = self.rels[content]
        if kind == "case" and rel in ("obl", "nmod"):
            return "mod"
        if kind == "mark" and rel == "xcomp":
            return "comp:obl@x"
        label = self.label(rel)
        if label is None:
            raise UnsupportedRelation(rel, str(content))
        return label

    def governs_xcomp(self, i: int) -> bool:
        return self.rels[i] == "xcomp" or any(self.rels[k] == "xcomp" for k in self.graph.children(i))

    def dropped(self, i: int) -> tuple:
        """MISC with DroppedRel translated to SUD labels."""
        token = self.words[i]
        value = get_misc(token, DROPPED_REL)
        if value is None:
            return token.misc
        rel, form = _split_dropped(value)
        if self.fused_copula(i):
            return token.with_misc(DROPPED_REL, f"subj:{_other_member(token, form)}").misc
        sud_rel = "comp:obl@x" if rel == "mark" else (self.label(rel) or rel)
        return token.with_misc(DROPPED_REL, f"{sud_rel}:{form}").misc

    def convert(self) -> Sentence:
        heads = dict(self.graph.heads)
        rels: dict[int, str] = {}
        for i, rel in self.rels.items():
            if self.flip_kind(i) is None:
                label = self.label(rel)
                if label is None:
                    raise UnsupportedRelation(rel, str(i))
                rels[i] = label

        for content in sorted(self.words):
            chain = [f for f in self.graph.children(content) if self.flip_kind(f)]
            if not chain:
                continue
            chain.sort(key=lambda f: (FLIP_RANK[self.flip_kind(f)], abs(f - content)))
            xcomp = self.governs_xcomp(content)
            lower = content
            for f in chain:
                kind = self.flip_kind(f)
                heads[lower] = f
                rels[lower] = self.table.link_label(kind) + ("@x" if xcomp and kind in ("aux", "mark") else "")
                lower = f
            top = chain[-1]
            heads[top] = self.graph.head(content)
            rels[top] = self.top_label(content, self.flip_kind(top))

            lo, hi = sorted((top, content))
            for k in self.graph.children(content):
                if k in chain:
                    continue
                base = _base(self.rels[k])
                if base in SUBJECT_BASES or base == "punct" or (base == "advmod" and lo < k < hi):
                    heads[k] = top

        misc = {i: self.dropped(i) for i in self.words}
        return _assert_tree(_rebuild(self.sentence, heads, rels, misc), "ud_to_sud")


def ud_to_sud(sentence: Sentence, table: Optional[ConversionTable] = None) -> Sentence:
    """
    Convert a UD tree to SUD.

    Function words become heads innermost-first (case/mark, then cop, then
    aux); the topmost takes over the content word's attachment and subjects.

    Raises:
        UnsupportedRelation: a relation outside the table and the passthrough set
        NonTreeResult: the output is not a tree
    """
    return _UdToSud(sentence, table or get_default_table()).convert()


# --- SUD -> UD ---

class _SudToUd:
    """One inverse conversion."""

    def __init__(self, sentence: Sentence, table: ConversionTable):
        self.sentence = sentence
        self.table = table
        self.graph: DepGraph = build_graph(sentence)
        self.words = sentence.word_map()
        self.rels = dict(self.graph.deprels)
        self.kinds: dict[int, tuple[str, int]] = {}
        for i in sorted(self.words):
            found = self.function_word(i)
            if found is not None:
                self.kinds[i] = found

    def function_word(self, i: int) -> Optional[tuple[str, int]]:
        """(UD relation, complement) when word ``i`` heads a flipped content word."""
        children = self.graph.children(i)

        def nearest(labels: tuple[str, ...]) -> Optional[int]:
            found = [k for k in children if self.rels[k] in labels]
            return min(found, key=lambda k: (abs(k - i), k)) if found else None

        link = nearest(("comp:pred",))
        if link is not None:
            return "cop", link
        upos = self.words[i].upos
        if upos == "AUX":
            kind, link = "aux", nearest(("comp:obj", "comp:obj@x", "comp:aux"))
        elif upos == "ADP":
            kind, link = "case", nearest(("comp:obj",))
        elif upos in ("SCONJ", "PART"):
            kind, link = "mark", nearest(("comp:obj", "comp:obj@x"))
        else:
            return None
        return (kind, link) if link is not None else None

    def is_clause(self, i: int, chain: Sequence[int] = ()) -> bool:
        if self.words[i].upos == "VERB":
            return True
        if any(self.kinds[f][0] in ("aux", "cop") for f in chain):
            return True
        owners = (i, *chain)
        return any(self.rels[k] == "subj" for o in owners for k in self.graph.children(o))

    def label(self, i: int, rel: str, chain: Sequence[int] = ()) -> str:
        if rel == "subj":
            return "nsubj"
        if rel == "comp:obj":
            return "ccomp" if self.is_clause(i, chain) else "obj"
        if rel == "mod":
            upos = self.words[i].upos
            if upos == "ADJ":
                return "amod"
            if upos in NOMINAL_UPOS:
                return "nmod"
            raise UnsupportedRelation(rel, str(i))
        candidates = self.table.to_ud(rel)
        if len(candidates) == 1:
            return candidates[0]
        if not candidates and _base(rel) in PASSTHROUGH_BASES:
            return rel
        raise UnsupportedRelation(rel, str(i))

    def top_label(self, top: int, content: int, chain: Sequence[int]) -> str:
        kind = self.kinds[top][0]
        rel = self.rels[top]
        if kind == "case" and rel == "mod":
            head = self.graph.head(top)
            return "obl" if head and self.words[head].upos in PREDICATE_HEAD_UPOS else "nmod"
        if kind == "mark" and rel == "comp:obl@x":
            return "xcomp"
        return self.label(content, rel, chain)

    def dropped(self, i: int, as_function_word: bool) -> tuple:
        token = self.words[i]
        value = get_misc(token, DROPPED_REL)
        if value is None:
            return token.misc
        rel, form = _split_dropped(value)
        if as_function_word and rel == "subj":
            return token.with_misc(DROPPED_REL, f"cop:{_other_member(token, form)}").misc
        if rel == "comp:obl@x":
            ud_rel = "mark"
        elif rel == "subj":
            ud_rel = "nsubj"
        else:
            candidates = self.table.to_ud(rel)
            ud_rel = candidates[0] if len(candidates) == 1 else rel
        return token.with_misc(DROPPED_REL, f"{ud_rel}:{form}").misc

    def convert(self) -> Sentence:
        heads = dict(self.graph.heads)
        rels: dict[int, str] = {}
        misc: dict[int, tuple] = {}
        links = {link for _, link in self.kinds.values()}
        handled: set[int] = set()

        for top in sorted(f for f in self.kinds if f not in links):
            chain = [top]
            node = self.kinds[top][1]
            while node in self.kinds:
                chain.append(node)
                node = self.kinds[node][1]
            content = node
            heads[content] = self.graph.head(top)
            rels[content] = self.top_label(top, content, chain)
            handled.add(content)
            for f in chain:
                heads[f] = content
                fused_subject = (get_misc(self.words[f], DROPPED_REL) or "").startswith("subj:")
                rels[f] = "nsubj" if fused_subject and self.kinds[f][0] == "cop" else self.kinds[f][0]
                misc[f] = self.dropped(f, as_function_word=True)
                handled.add(f)
                for k in self.graph.children(f):
                    if k in chain or k == content or self.rels[k] in FUNCTION_WORD_OWN:
                        continue
                    heads[k] = content

        for i in self.words:
            if i not in handled:
                rels[i] = self.label(i, self.rels[i])
            misc.setdefault(i, self.dropped(i, as_function_word=False))
        return _assert_tree(_rebuild(self.sentence, heads, rels, misc), "sud_to_ud")


def sud_to_ud(sentence: Sentence, table: Optional[ConversionTable] = None) -> Sentence:
    """
    Convert a SUD tree back to UD.

    Raises:
        UnsupportedRelation: a label with no UD counterpart
        NonTreeResult: the output is not a tree
    """
    return _SudToUd(sentence, table or get_default_table()).convert()


def convert_sentences(
    sentences: Iterable[Sentence],
    direction: ConvertDirection,
    table: Optional[ConversionTable] = None,
) -> list[Sentence]:
    """Convert a document; errors name the sentence they come from."""
    convert = ud_to_sud if ConvertDirection(direction) is ConvertDirection.UD2SUD else sud_to_ud
    out = []
    for number, sentence in enumerate(sentences, start=1):
        try:
            out.append(convert(sentence, table))
        except UnsupportedRelation as e:
            raise UnsupportedRelation(e.deprel, e.token_id, sentence.sent_id or f"#{number}") from e
    return out


# --- Contraction ---

def classify_fusion(sentence: Sentence, span: Sequence[int], framework: Framework) -> FusionCase:
    """
    How two words to be fused relate in the uncontracted tree.

    Gov when one governs the other, SharedDependents when they share a head,
    HeadAndGrandchild when one governs a word that governs the other.
    """
    graph = build_graph(sentence)
    a, b = span
    if graph.head(a) == b or graph.head(b) == a:
        case = FusionCase.GOV
    elif graph.head(a) == graph.head(b):
        case = FusionCase.SHARED_DEPENDENTS
    elif any(graph.head(y) and graph.head(graph.head(y)) == x for x, y in ((a, b), (b, a))):
        case = FusionCase.HEAD_AND_GRANDCHILD
    else:
        case = FusionCase.UNRELATED
    logger.debug("classify_fusion framework=%s span=%s case=%s", Framework(framework).value, tuple(span), case.value)
    return case


def _resolve_primary(span: Sequence[int], primary: Primary) -> int:
    if primary is None:
        raise UnresolvedPrimary(span)
    if primary == "first":
        return span[0]
    if primary == "last":
        return span[-1]
    if isinstance(primary, int) and primary in span:
        return primary
    raise UnresolvedPrimary(span)


def contract_span(
    sentence: Sentence,
    span: Sequence[int],
    form: str,
    framework: Framework,
    primary: Primary = None,
) -> Sentence:
    """
    Fuse two adjacent words into one token.

    The surviving attachment follows the fusion case: the span head's for
    Gov and HeadAndGrandchild, the primary member's for SharedDependents.
    Dependents of either member attach to the fused token, which keeps the
    first member's lemma, UPOS and FEATS and records NonCan=Cont,
    CorrectForm and the DroppedRel of the other member.

    Args:
        span: word indices of the two members
        form: surface form of the fused token
        primary: "first", "last" or a member index; needed for SharedDependents

    Raises:
        NonAdjacentSpan: the members are not two neighbouring words
        UnresolvedPrimary: SharedDependents without a usable primary
    """
    members = sorted(span)
    words = sentence.word_map()
    if len(members) != 2 or members[1] != members[0] + 1 or any(m not in words for m in members):
        raise NonAdjacentSpan(span)
    first, second = members
    if any(r.id.major <= second and first <= r.id.end for r in sentence.ranges()):
        raise ConversionError(f"span {tuple(members)} overlaps a multiword token")

    case = classify_fusion(sentence, members, framework)
    if case is FusionCase.UNRELATED:
        raise ConversionError(f"span {tuple(members)} is Unrelated and cannot be contracted")
    if case is FusionCase.SHARED_DEPENDENTS:
        keeper = _resolve_primary(members, primary)
    elif case is FusionCase.GOV:
        keeper = second if words[first].head == second else first
    else:
        # the grandparent keeps its attachment, whichever side it is on
        middle = words[first].head
        keeper = second if middle in words and words[middle].head == second else first
    dropped = second if keeper == first else first

    def renumber(i: Optional[int]) -> Optional[int]:
        if i is None or i == 0:
            return i
        if i in members:
            return first
        return i - 1 if i > second else i

    lead, tail = words[first], words[second]
    fused = Token(
        id=TokenId.word(first),
        form=form,
        lemma=lead.lemma,
        upos=lead.upos,
        xpos=lead.xpos,
        feats=lead.feats,
        head=renumber(words[keeper].head),
        deprel=words[keeper].deprel,
        deps=lead.deps,
        misc=tuple(e for e in lead.misc if e[0] != "SpaceAfter"),
    )
    fused = fused.with_misc("NonCan", "Cont")
    fused = fused.with_misc("CorrectForm", f"{lead.form} {tail.form}")
    fused = fused.with_misc(DROPPED_REL, f"{words[dropped].deprel}:{words[dropped].form}")
    if not tail.space_after:
        fused = fused.with_misc("SpaceAfter", "No")

    tokens: list[Token] = []
    for token in sentence.tokens:
        major = token.id.major
        if token.is_range:
            tokens.append(replace(token, id=TokenId.range(renumber(major), renumber(token.id.end))))
        elif token.is_empty:
            tokens.append(replace(token, id=TokenId.empty(major - 1 if major >= second else major, token.id.minor)))
        elif major == first:
            tokens.append(fused)
        elif major != second:
            tokens.append(replace(token, id=TokenId.word(renumber(major)), head=renumber(token.head)))

    result = sentence.with_tokens(tokens)
    if sentence.text is not None:
        result = result.set_meta("text", derive_text(result))
    logger.debug("contract_span sent_id=%s span=%s case=%s", sentence.sent_id, tuple(members), case.value)
    return _assert_tree(result, "contract_span")
