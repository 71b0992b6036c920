"""Run configuration using Pydantic Settings."""
import logging
from functools import lru_cache
from pathlib import Path
from typing import Optional

from pydantic import Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from ugc_treebank.models.enums import OutputFormat, Severity
from ugc_treebank.models.errors import ConfigError
from ugc_treebank.models.vocabulary import (
    EXEMPT_PUNCTUATION,
    HESITATION_MARKERS,
    MARKUP_SYMBOLS,
)

logger = logging.getLogger(__name__)

OFF = "off"


class RunConfig(BaseSettings):
    """Settings for one run, loaded from UGCTB_* environment variables and .env."""

    model_config = SettingsConfigDict(
        env_prefix="UGCTB_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Rules
    rule_config: Optional[Path] = None
    severities: dict[str, str] = Field(default_factory=dict)
    strict: bool = False
    url_alternatives: bool = False  # accept discourse:context / dep for URLs
    rt_case_sensitive: bool = True

    # Resources
    lexicons: list[Path] = Field(default_factory=list)
    conversion_table: Optional[Path] = None
    hesitation_markers: list[str] = Field(default_factory=lambda: list(HESITATION_MARKERS))
    markup_symbols: list[str] = Field(default_factory=lambda: list(MARKUP_SYMBOLS))
    exempt_punctuation: list[str] = Field(default_factory=lambda: list(EXEMPT_PUNCTUATION))

    # Output
    output_format: OutputFormat = OutputFormat.TSV
    jobs: int = Field(default=1, ge=1)
    log_level: str = "WARNING"

    @field_validator("severities")
    @classmethod
    def validate_severities(cls, v: dict[str, str]) -> dict[str, str]:
        allowed = {s.value for s in Severity} | {OFF}
        for rule_id, level in v.items():
            if level not in allowed:
                raise ValueError(f"severity for {rule_id} must be one of {sorted(allowed)}, got {level!r}")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"unknown log level {v!r}")
        return level


@lru_cache
def get_settings() -> RunConfig:
    """Get cached settings instance."""
    try:
        return RunConfig()
    except ValidationError as e:
        raise ConfigError(f"invalid environment configuration: {e}") from e


# --- Rule severity file ---

def parse_rule_config(text: str, known_rules: set[str], source: str = "<rule config>") -> dict[str, str]:
    """
    Parse ``RULE-ID = error|warning|info|off`` lines.

    Args:
        text: file contents; ``#`` starts a comment
        known_rules: catalog ids; anything else is rejected
        source: name used in error messages

    Returns:
        rule id -> severity value or "off"
    """
    allowed = {s.value for s in Severity} | {OFF}
    severities: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'RULE-ID = severity', got {raw!r}")
        rule_id, level = (part.strip() for part in line.split("=", 1))
        if rule_id not in known_rules:
            raise ConfigError(f"{source}:{lineno}: unknown rule id {rule_id!r}")
        level = level.lower()
        if level not in allowed:
            raise ConfigError(f"{source}:{lineno}: invalid severity {level!r} for {rule_id}")
        severities[rule_id] = level
    return severities


def load_rule_config(path: Path, known_rules: set[str]) -> dict[str, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigError(f"cannot read rule config {path}: {e}") from e
    severities = parse_rule_config(text, known_rules, source=str(path))
    logger.info("rule_config_loaded path=%s overrides=%d", path, len(severities))
    return severities
