"""UD <-> SUD relation table files."""
import logging
from pathlib import Path
from typing import Iterable, Optional

from pydantic import ValidationError

from ugc_treebank.models.conversion import ConversionRow
from ugc_treebank.models.errors import ConfigError

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
DEFAULT_TABLE_PATH = DATA_DIR / "conversion_table.tsv"

# Function-word relations whose dependent becomes the head in SUD
FLIP_RELATIONS = frozenset({"aux", "cop", "case", "mark"})
_FLAGS = {"yes": True, "no": False}


class ConversionTable:
    """Closed relation inventory for UD/SUD conversion."""

    def __init__(self, rows: Iterable[ConversionRow], path: Optional[str] = None):
        self.path = path
        self.rows = list(rows)
        self._to_sud: dict[str, str] = {}
        self._to_ud: dict[str, list[str]] = {}
        self._links: dict[str, str] = {}
        for row in self.rows:
            if row.flip:
                self._links[row.ud_rel] = row.sud_rel
            else:
                self._to_sud[row.ud_rel] = row.sud_rel
                self._to_ud.setdefault(row.sud_rel, []).append(row.ud_rel)
        if set(self._links) != FLIP_RELATIONS:
            raise ConfigError(
                f"flip rows must cover exactly {sorted(FLIP_RELATIONS)}, got {sorted(self._links)}"
            )

    @classmethod
    def parse(cls, text: str, path: Optional[str] = None) -> "ConversionTable":
        label = path or "<conversion table>"
        rows = []
        seen: set[str] = set()
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 3 or cols[2].lower() not in _FLAGS:
                raise ConfigError(f"{label}:{lineno}: expected 'ud_rel<TAB>sud_rel<TAB>yes|no', got {raw!r}")
            if cols[0] in seen:
                raise ConfigError(f"{label}:{lineno}: duplicate UD relation {cols[0]!r}")
            seen.add(cols[0])
            try:
                rows.append(ConversionRow(ud_rel=cols[0], sud_rel=cols[1], flip=_FLAGS[cols[2].lower()]))
            except ValidationError as e:
                raise ConfigError(f"{label}:{lineno}: {e.errors()[0]['msg']}") from e
        return cls(rows, path=path)

    @classmethod
    def load(cls, path: Path) -> "ConversionTable":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise ConfigError(f"cannot read conversion table {path}: {e}") from e
        table = cls.parse(text, path=str(path))
        logger.info("conversion_table_loaded path=%s rows=%d", path, len(table.rows))
        return table

    def to_text(self) -> str:
        lines = ["# ud_rel\tsud_rel\tflip"]
        lines.extend(f"{r.ud_rel}\t{r.sud_rel}\t{'yes' if r.flip else 'no'}" for r in self.rows)
        return "\n".join(lines) + "\n"

    def save(self, path: Path) -> None:
        Path(path).write_text(self.to_text(), encoding="utf-8")

    def is_flip(self, ud_rel: str) -> bool:
        return ud_rel in self._links

    def link_label(self, ud_rel: str) -> str:
        """SUD label of the content word under a function word of this relation."""
        return self._links[ud_rel]

    def to_sud(self, ud_rel: str) -> Optional[str]:
        return self._to_sud.get(ud_rel)

    def to_ud(self, sud_rel: str) -> list[str]:
        """UD candidates for a SUD label, in table order."""
        return list(self._to_ud.get(sud_rel, ()))


def load_conversion_table(path: Optional[Path] = None) -> ConversionTable:
    """The table at ``path``, or the shipped one."""
    return ConversionTable.load(path) if path is not None else get_default_table()


# Singleton instance
_default_table: Optional[ConversionTable] = None


def get_default_table() -> ConversionTable:
    """Get or create the shipped conversion table."""
    global _default_table
    if _default_table is None:
        _default_table = ConversionTable.load(DEFAULT_TABLE_PATH)
    return _default_table
