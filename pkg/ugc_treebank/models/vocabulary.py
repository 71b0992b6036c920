"""Controlled vocabularies referenced by the UGC annotation guidelines."""
from functools import lru_cache
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

UPOS_TAGS = frozenset({
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
})

# Universal UD relation bases
UD_RELATIONS = frozenset({
    "acl", "advcl", "advmod", "amod", "appos", "aux", "case", "cc", "ccomp",
    "clf", "compound", "conj", "cop", "csubj", "dep", "det", "discourse",
    "dislocated", "expl", "fixed", "flat", "goeswith", "iobj", "list", "mark",
    "nmod", "nsubj", "nummod", "obj", "obl", "orphan", "parataxis", "punct",
    "reparandum", "root", "vocative", "xcomp",
})

# Surface-syntactic relation bases (deep extensions after "@" are stripped first)
SUD_RELATIONS = frozenset({
    "subj", "comp", "mod", "udep", "unk", "det", "dislocated", "appos", "conj",
    "cc", "flat", "compound", "parataxis", "discourse", "vocative", "punct",
    "orphan", "reparandum", "goeswith", "root", "clf", "dep",
})

DEFAULT_SUBTYPES = frozenset({
    # UGC proposals
    "parataxis:sentence", "parataxis:hashtag", "parataxis:url",
    "vocative:mention", "flat:foreign", "flat:name", "discourse:context",
    # stock UD subtypes seen in UGC treebanks
    "acl:relcl", "nsubj:pass", "csubj:pass", "aux:pass", "obl:agent",
    "obl:tmod", "obl:npmod", "nmod:poss", "nmod:tmod", "det:poss",
    "compound:prt", "expl:pv", "expl:impers", "expl:pass",
    # SUD
    "comp:obj", "comp:obl", "comp:pred", "comp:aux", "comp:cleft",
    "mod:relcl", "subj:pass",
})

NONCAN_VALUES = frozenset({
    "AutoC", "CharOm", "Cont", "Neo", "OS", "Phon", "PuncVar", "SpellVar",
    "Stretch", "Transl", "Trunc", "LexInno",
})

CSTYPE_VALUES = frozenset({"INTER", "INTRA", "MIXED"})

# FEATS keys the guidelines add for UGC; these three only take "Yes"
BOOLEAN_UGC_FEATS = frozenset({"Abbr", "Typo", "Foreign"})

STYLE_EXAMPLES = frozenset({"Coll", "Expr", "Vrnc", "Slng"})

MISC_KEYS = frozenset({
    "NonCan", "CorrectForm", "FullForm", "CorrectSpaceAfter", "CSType",
    "LangID", "FuncPOS", "SpaceAfter", "DroppedRel",
})

# Shipped defaults; RunConfig can replace each list
HESITATION_MARKERS = ("äh", "ähm", "eh", "ehm", "uh", "uhm", "um", "umm", "erm", "hmm")
MARKUP_SYMBOLS = ("+++", "==>", "=>", "->", ">>", "<<", "<", ">", "***", "---")
EXEMPT_PUNCTUATION = ("...", "…", "--", "''")

RelationStatus = Literal["ok", "unknown_base", "unregistered_subtype"]


def split_relation(deprel: str) -> tuple[str, str, str]:
    """"comp:obj@x" -> ("comp", "obj", "x")."""
    label, _, deep = deprel.partition("@")
    base, _, subtype = label.partition(":")
    return base, subtype, deep


class Vocabulary(BaseModel):
    """Tag and label inventories plus the validation mode."""
    model_config = ConfigDict(frozen=True)

    upos_tags: frozenset[str] = UPOS_TAGS
    relations: frozenset[str] = Field(default=UD_RELATIONS | SUD_RELATIONS)
    deprel_subtypes: frozenset[str] = DEFAULT_SUBTYPES
    noncan_values: frozenset[str] = NONCAN_VALUES
    cstype_values: frozenset[str] = CSTYPE_VALUES
    strict: bool = False

    def is_known_upos(self, upos: str) -> bool:
        return upos == "_" or upos in self.upos_tags

    def relation_status(self, deprel: str) -> RelationStatus:
        """Classify a DEPREL against the inventories."""
        if deprel == "_":
            return "ok"
        base, subtype, _ = split_relation(deprel)
        if base not in self.relations:
            return "unknown_base"
        if subtype and f"{base}:{subtype}" not in self.deprel_subtypes:
            return "unregistered_subtype"
        return "ok"

    def with_subtypes(self, *subtypes: str) -> "Vocabulary":
        return self.model_copy(update={"deprel_subtypes": self.deprel_subtypes | set(subtypes)})


@lru_cache
def default_vocabulary(strict: bool = False) -> Vocabulary:
    """Shared vocabulary instance for a validation mode."""
    return Vocabulary(strict=strict)
