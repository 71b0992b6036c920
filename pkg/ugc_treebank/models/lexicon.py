"""Normalization lexicon entries and candidates."""
from typing import Optional

from pydantic import BaseModel, ConfigDict, field_validator

from ugc_treebank.models.enums import Confidence
from ugc_treebank.models.vocabulary import NONCAN_VALUES, UPOS_TAGS


def _check_phenomenon(value: str) -> str:
    if value not in NONCAN_VALUES:
        raise ValueError(f"phenomenon must be a NonCan value, got {value!r}")
    return value


class LexiconEntry(BaseModel):
    """One row of a lexicon file."""
    model_config = ConfigDict(frozen=True)

    form: str
    expansion: str
    phenomenon: str
    upos_hint: Optional[str] = None

    @field_validator("phenomenon")
    @classmethod
    def validate_phenomenon(cls, v: str) -> str:
        return _check_phenomenon(v)

    @field_validator("upos_hint")
    @classmethod
    def validate_upos_hint(cls, v: Optional[str]) -> Optional[str]:
        if v is not None and v not in UPOS_TAGS:
            raise ValueError(f"unknown UPOS hint {v!r}")
        return v


class AbbreviationHit(BaseModel):
    """Result of a lexicon lookup."""
    model_config = ConfigDict(frozen=True)

    full_form: str
    phenomenon: str
    upos_hint: Optional[str] = None


class NormCandidate(BaseModel):
    """A proposed canonical form for a non-canonical token."""
    model_config = ConfigDict(frozen=True)

    original: str
    candidate: str
    phenomenon: str
    confidence: Confidence

    @field_validator("phenomenon")
    @classmethod
    def validate_phenomenon(cls, v: str) -> str:
        return _check_phenomenon(v)
