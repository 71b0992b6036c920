"""Corpus statistics report model."""
from collections import Counter
from typing import ClassVar

from pydantic import BaseModel, Field


class CorpusStats(BaseModel):
    """Counts of UGC phenomena over one or more files."""
    sentences: int = 0
    tokens: int = 0
    hashtags: int = 0
    mentions: int = 0
    urls: int = 0
    emoticons: int = 0
    rt_tokens: int = 0
    markup_tokens: int = 0
    foreign_tokens: int = 0
    goeswith_spans: int = 0
    sentence_units: int = 0
    stretched_tokens: int = 0
    noncan: dict[str, int] = Field(default_factory=dict)
    cstype: dict[str, int] = Field(default_factory=dict)
    upos: dict[str, int] = Field(default_factory=dict)

    # Scalar counters in report order
    COUNTERS: ClassVar[tuple[str, ...]] = (
        "sentences", "tokens", "hashtags", "mentions", "urls", "emoticons",
        "rt_tokens", "markup_tokens", "foreign_tokens", "goeswith_spans",
        "sentence_units", "stretched_tokens",
    )
    HISTOGRAMS: ClassVar[tuple[str, ...]] = ("noncan", "cstype", "upos")

    def merge(self, other: "CorpusStats") -> "CorpusStats":
        """Sum of two reports."""
        data = {name: getattr(self, name) + getattr(other, name) for name in self.COUNTERS}
        for name in self.HISTOGRAMS:
            total = Counter(getattr(self, name))
            total.update(getattr(other, name))
            data[name] = dict(sorted(total.items()))
        return CorpusStats(**data)

    def rows(self) -> list[tuple[str, str, int]]:
        """(section, key, count) rows in deterministic order."""
        out = [("count", name, getattr(self, name)) for name in self.COUNTERS]
        for name in self.HISTOGRAMS:
            out.extend((name, key, value) for key, value in sorted(getattr(self, name).items()))
        return out
