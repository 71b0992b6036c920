"""Lint rule metadata, diagnostics and fix reports."""
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from ugc_treebank.models.enums import Severity


def token_sort_key(token_id: str) -> tuple[int, int]:
    """File order of IDs: "3-4" < "3" < "3.1" < "4"."""
    try:
        if "-" in token_id:
            return int(token_id.split("-", 1)[0]), -1
        if "." in token_id:
            major, minor = token_id.split(".", 1)
            return int(major), int(minor)
        return int(token_id), 0
    except ValueError:
        return 0, 0


# --- Rule metadata ---

class RuleInfo(BaseModel):
    """Catalog entry describing a lint rule."""
    model_config = ConfigDict(frozen=True)

    id: str = Field(..., pattern=r"^R-[A-Z]+-\d{2}$")
    phenomenon: str
    default_severity: Severity
    fixable: bool = False
    description: str = ""


# --- Findings ---

class Diagnostic(BaseModel):
    """A located finding emitted by a rule."""
    model_config = ConfigDict(frozen=True)

    rule_id: str
    severity: Severity
    sent_id: Optional[str] = None
    token_ids: tuple[str, ...] = ()
    message: str
    fix_available: bool = False

    @property
    def first_token(self) -> str:
        return self.token_ids[0] if self.token_ids else "0"

    def sort_key(self) -> tuple:
        return (token_sort_key(self.first_token), self.rule_id, self.message)


class AppliedFix(BaseModel):
    """One field edit the fixer carried out."""
    model_config = ConfigDict(frozen=True)

    rule_id: str
    token_id: str
    field: str
    old: Optional[str] = None
    new: Optional[str] = None

    def describe(self) -> str:
        return f"{self.rule_id} token {self.token_id} {self.field}: {self.old!r} -> {self.new!r}"


class FixConflictRecord(BaseModel):
    """A conflict the fixer refused to resolve."""
    model_config = ConfigDict(frozen=True)

    token_id: str
    field: str
    rule_ids: tuple[str, ...]


class FixReport(BaseModel):
    """Outcome of fixing one sentence."""
    sent_id: Optional[str] = None
    applied: list[AppliedFix] = Field(default_factory=list)
    conflicts: list[FixConflictRecord] = Field(default_factory=list)

    @property
    def changed(self) -> bool:
        return bool(self.applied)
