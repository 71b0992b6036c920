"""Dependency tree views, sentence-unit splitting/merging and goeswith spans."""

import logging
import re
from dataclasses import dataclass, field, replace
from typing import Optional

from ugc_treebank.models.conllu import Sentence, Token, TokenId
from ugc_treebank.models.enums import StructureKind
from ugc_treebank.models.errors import NonContiguousUnit, StructureError

logger = logging.getLogger(__name__)

SENTENCE_UNIT_REL = "parataxis:sentence"
_SUFFIXED_ID = re.compile(r"^(.*)-(\d+)$")


@dataclass(frozen=True)
class UnitBoundary:
    """A parataxis:sentence edge where a post can be cut."""
    head: int
    dependent: int


@dataclass(frozen=True)
class GoeswithSpan:
    """A word written with spurious internal whitespace."""
    head: int
    members: tuple[int, ...]
    contiguous: bool
    head_first: bool

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(sorted((self.head, *self.members)))


@dataclass(frozen=True)
class DepGraph:
    """Tree view over the words of a sentence."""
    sentence: Sentence
    root: int
    heads: dict[int, int]
    deprels: dict[int, str]
    _children: dict[int, list[int]] = field(repr=False)

    def children(self, index: int) -> list[int]:
        return self._children.get(index, [])

    def head(self, index: int) -> int:
        return self.heads[index]

    def relation(self, index: int) -> str:
        return self.deprels[index]

    def subtree(self, index: int) -> list[int]:
        """Sorted indices of ``index`` and all its descendants."""
        out = []
        stack = [index]
        while stack:
            node = stack.pop()
            out.append(node)
            stack.extend(self._children.get(node, ()))
        return sorted(out)

    def ancestors(self, index: int) -> list[int]:
        """Heads from ``index`` up to the root, nearest first."""
        out = []
        node = self.heads[index]
        while node != 0:
            out.append(node)
            node = self.heads[node]
        return out

    def on_root_spine(self, index: int) -> bool:
        """True for the root and for heads reached from it through parataxis:sentence only."""
        node = index
        while node != self.root:
            if self.deprels[node] != SENTENCE_UNIT_REL:
                return False
            node = self.heads[node]
        return True

    def unit_boundaries(self) -> list[UnitBoundary]:
        return [
            UnitBoundary(self.heads[i], i)
            for i in sorted(self.deprels)
            if self.deprels[i] == SENTENCE_UNIT_REL
        ]

    def __len__(self) -> int:
        return len(self.heads)


# --- Structure ---

def check_structure(sentence: Sentence) -> list[StructureError]:
    """All tree well-formedness failures of a sentence (empty list for a tree)."""
    words = sentence.words()
    if not words:
        return []
    errors: list[StructureError] = []

    unattached = [str(t.id) for t in words if t.head is None]
    roots = [t for t in words if t.head == 0]
    if not roots and not unattached:
        errors.append(StructureError(StructureKind.NO_ROOT.value, [str(t.id) for t in words]))
    elif len(roots) > 1:
        errors.append(StructureError(StructureKind.MULTI_ROOT.value, [str(t.id) for t in roots]))

    mislabeled = [
        str(t.id) for t in words
        if t.head is not None and (t.head == 0) != (t.deprel == "root")
    ]
    if mislabeled:
        errors.append(StructureError(StructureKind.ROOT_LABEL.value, mislabeled))

    heads = {t.index: t.head for t in words}
    in_cycle: set[int] = set()
    state: dict[int, int] = {}  # 1 = on current path, 2 = done
    for start in heads:
        path = []
        node: Optional[int] = start
        while node and node in heads and state.get(node) is None:
            state[node] = 1
            path.append(node)
            node = heads[node]
        if node and state.get(node) == 1:
            in_cycle.update(path[path.index(node):])
        for visited in path:
            state[visited] = 2
    if in_cycle:
        errors.append(StructureError(StructureKind.CYCLE.value, [str(i) for i in sorted(in_cycle)]))

    if unattached:
        errors.append(StructureError(StructureKind.DISCONNECTED.value, unattached))
    return errors


def build_graph(sentence: Sentence) -> DepGraph:
    """
    Build the tree view of a sentence.

    Raises:
        StructureError: the first well-formedness failure found
    """
    errors = check_structure(sentence)
    if errors:
        raise errors[0]
    heads: dict[int, int] = {}
    deprels: dict[int, str] = {}
    children: dict[int, list[int]] = {}
    root = 0
    for token in sentence.iter_words():
        heads[token.index] = token.head
        deprels[token.index] = token.deprel
        if token.head == 0:
            root = token.index
        else:
            children.setdefault(token.head, []).append(token.index)
    if not heads:
        raise StructureError(StructureKind.NO_ROOT.value, [])
    return DepGraph(sentence=sentence, root=root, heads=heads, deprels=deprels, _children=children)


# --- Text ---

def derive_text(sentence: Sentence) -> str:
    """Surface text from FORM and SpaceAfter; multiword tokens print their range form."""
    parts: list[str] = []
    covered_until = 0
    for token in sentence.tokens:
        if token.is_empty:
            continue
        if token.is_range:
            covered_until = token.id.end
        elif token.index <= covered_until:
            continue
        parts.append(token.form)
        if token.space_after:
            parts.append(" ")
    return "".join(parts).rstrip(" ")


# --- Sentence units ---

def _assign_units(graph: DepGraph) -> dict[int, int]:
    """Word index -> root word of the sentential unit it belongs to."""
    unit_of: dict[int, int] = {}
    for index in graph.heads:
        node = index
        trail = []
        while node not in unit_of:
            trail.append(node)
            if node == graph.root or graph.deprels[node] == SENTENCE_UNIT_REL:
                unit_of[node] = node
                break
            node = graph.heads[node]
        owner = unit_of[node]
        for visited in trail:
            unit_of[visited] = owner
    return unit_of


def split_units(sentence: Sentence) -> list[Sentence]:
    """
    Cut a post into one sentence per parataxis:sentence unit.

    Returns:
        Unit sentences in surface order; the input itself when there is nothing to cut

    Raises:
        NonContiguousUnit: a unit's words interleave with another unit
    """
    graph = build_graph(sentence)
    boundaries = graph.unit_boundaries()
    if not boundaries:
        return [sentence]

    unit_of = _assign_units(graph)
    members: dict[int, list[int]] = {}
    for index in sorted(unit_of):
        members.setdefault(unit_of[index], []).append(index)

    incoming = {b.dependent: (b.head, b.dependent) for b in boundaries}
    spans = {root: (words[0], words[-1]) for root, words in members.items()}
    for unit_root, words in members.items():
        if words[-1] - words[0] + 1 != len(words):
            edge = incoming.get(unit_root)
            if edge is None:
                owned = set(words)
                gap = next(i for i in range(words[0], words[-1]) if i not in owned)
                edge = incoming[unit_of[gap]]
            raise NonContiguousUnit(edge)
    for token in sentence.ranges():
        owners = {unit_of[i] for i in range(token.id.major, token.id.end + 1)}
        if len(owners) > 1:
            crossing = next(r for r in sorted(owners) if r in incoming)
            raise NonContiguousUnit(incoming[crossing], f"multiword token {token.id} crosses units")

    ordered = sorted(members, key=lambda r: spans[r][0])
    sent_id = sentence.sent_id
    units = []
    for number, unit_root in enumerate(ordered, start=1):
        lo, hi = spans[unit_root]
        unit = _cut_unit(sentence, unit_root, lo, hi, first=number == 1)
        if sent_id is not None:
            unit = unit.set_meta("sent_id", f"{sent_id}-{number}")
        if sentence.text is not None:
            unit = unit.set_meta("text", derive_text(unit))
        units.append(unit)
    logger.debug("split_units sent_id=%s units=%d", sent_id, len(units))
    return units


def _cut_unit(sentence: Sentence, unit_root: int, lo: int, hi: int, first: bool) -> Sentence:
    shift = lo - 1
    tokens: list[Token] = []
    for token in sentence.tokens:
        major = token.id.major
        if token.is_empty:
            owned = lo <= major <= hi or (major == 0 and first)
            if owned:
                tokens.append(replace(token, id=TokenId.empty(max(major - shift, 0), token.id.minor)))
        elif token.is_range:
            if lo <= major <= hi:
                tokens.append(replace(token, id=TokenId.range(major - shift, token.id.end - shift)))
        elif lo <= major <= hi:
            if major == unit_root:
                tokens.append(replace(token, id=TokenId.word(major - shift), head=0, deprel="root"))
            else:
                tokens.append(replace(token, id=TokenId.word(major - shift), head=token.head - shift))
    return sentence.with_tokens(tokens)


def merge_units(sentences: list[Sentence]) -> Sentence:
    """Join sentences into one post; later roots attach to the first root (star shape)."""
    if not sentences:
        raise ValueError("merge_units needs at least one sentence")
    if len(sentences) == 1:
        return sentences[0]

    tokens: list[Token] = []
    offset = 0
    main_root = 0
    for number, sentence in enumerate(sentences):
        graph = build_graph(sentence)
        if number == 0:
            main_root = graph.root
        for token in sentence.tokens:
            major = token.id.major
            if token.is_empty:
                new_id = TokenId.empty(major + offset, token.id.minor)
                tokens.append(replace(token, id=new_id))
            elif token.is_range:
                tokens.append(replace(token, id=TokenId.range(major + offset, token.id.end + offset)))
            elif token.head == 0 and number > 0:
                tokens.append(replace(
                    token, id=TokenId.word(major + offset), head=main_root, deprel=SENTENCE_UNIT_REL
                ))
            else:
                head = token.head if token.head == 0 else token.head + offset
                tokens.append(replace(token, id=TokenId.word(major + offset), head=head))
        offset += len(graph)

    first = sentences[0]
    merged = first.with_tokens(tokens)
    base_id = _common_base_id([s.sent_id for s in sentences])
    if base_id is not None:
        merged = merged.set_meta("sent_id", base_id)
    if first.text is not None:
        merged = merged.set_meta("text", derive_text(merged))
    return merged


def _common_base_id(sent_ids: list[Optional[str]]) -> Optional[str]:
    bases = set()
    for sent_id in sent_ids:
        match = _SUFFIXED_ID.match(sent_id or "")
        if not match:
            return None
        bases.add(match.group(1))
    return bases.pop() if len(bases) == 1 else None


def post_id(sent_id: Optional[str]) -> Optional[str]:
    """Post identifier of a unit id ("post7-2" -> "post7"); the id itself otherwise."""
    if sent_id is None:
        return None
    match = _SUFFIXED_ID.match(sent_id)
    return match.group(1) if match else sent_id


# --- Over-splitting ---

def goeswith_spans(graph: DepGraph) -> list[GoeswithSpan]:
    """Maximal goeswith groups with their contiguity and ordering."""
    parent: dict[int, int] = {}

    def find(i: int) -> int:
        while parent.get(i, i) != i:
            i = parent[i]
        return i

    involved: set[int] = set()
    for index, deprel in graph.deprels.items():
        if deprel == "goeswith":
            involved.update((index, graph.heads[index]))
            a, b = find(index), find(graph.heads[index])
            if a != b:
                parent[a] = b

    groups: dict[int, list[int]] = {}
    for index in sorted(involved):
        groups.setdefault(find(index), []).append(index)

    spans = []
    for indices in groups.values():
        heads = [i for i in indices if graph.deprels[i] != "goeswith"]
        if not heads:
            continue
        head = heads[0]
        members = tuple(sorted(i for i in indices if i != head))
        if not members:
            continue
        everything = sorted(indices)
        spans.append(GoeswithSpan(
            head=head,
            members=members,
            contiguous=everything[-1] - everything[0] + 1 == len(everything),
            head_first=head < members[0],
        ))
    return sorted(spans, key=lambda s: s.head)
