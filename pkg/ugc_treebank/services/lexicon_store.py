"""Abbreviation / contraction lexicon files."""
import logging
from pathlib import Path
from typing import Iterable, Optional

from pydantic import ValidationError

from ugc_treebank.models.errors import LexiconError
from ugc_treebank.models.lexicon import LexiconEntry

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
DEFAULT_LEXICON_PATH = DATA_DIR / "default_lexicon.tsv"


class Lexicon:
    """form -> expansion table read from ``form<TAB>expansion<TAB>phenomenon[<TAB>upos]`` lines.

    The raw lines are kept so that ``save`` reproduces the file byte for byte.
    """

    def __init__(self, path: Optional[str] = None, case_fold: bool = True):
        self.path = path
        self.case_fold = case_fold
        self._entries: dict[str, LexiconEntry] = {}
        self._expansions: set[str] = set()
        self._lines: list[str] = [""]

    def _key(self, form: str) -> str:
        return form.casefold() if self.case_fold else form

    @classmethod
    def parse(cls, text: str, path: Optional[str] = None, case_fold: bool = True) -> "Lexicon":
        lexicon = cls(path=path, case_fold=case_fold)
        lexicon._lines = text.split("\n")
        label = path or "<lexicon>"
        for lineno, raw in enumerate(lexicon._lines, start=1):
            line = raw.rstrip("\r")
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) not in (3, 4):
                raise LexiconError(label, lineno, f"expected 3 or 4 tab-separated columns, found {len(cols)}")
            try:
                entry = LexiconEntry(
                    form=cols[0],
                    expansion=cols[1],
                    phenomenon=cols[2],
                    upos_hint=cols[3] if len(cols) == 4 and cols[3] != "_" else None,
                )
            except ValidationError as e:
                raise LexiconError(label, lineno, e.errors()[0]["msg"])
            key = lexicon._key(entry.form)
            if key in lexicon._entries:
                raise LexiconError(label, lineno, f"duplicate form {entry.form!r}")
            lexicon._entries[key] = entry
            lexicon._expansions.add(lexicon._key(entry.expansion))
        return lexicon

    @classmethod
    def load(cls, path: Path, case_fold: bool = True) -> "Lexicon":
        try:
            text = Path(path).read_bytes().decode("utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise LexiconError(str(path), 0, f"cannot read lexicon: {e}")
        lexicon = cls.parse(text, path=str(path), case_fold=case_fold)
        logger.info("lexicon_loaded path=%s entries=%d", path, len(lexicon))
        return lexicon

    def to_text(self) -> str:
        return "\n".join(self._lines)

    def save(self, path: Optional[Path] = None) -> None:
        target = Path(path or self.path)
        target.write_bytes(self.to_text().encode("utf-8"))

    def add(self, entry: LexiconEntry) -> None:
        """Add or override an entry; appended as a new line."""
        key = self._key(entry.form)
        self._entries[key] = entry
        self._expansions.add(self._key(entry.expansion))
        row = "\t".join([entry.form, entry.expansion, entry.phenomenon] + ([entry.upos_hint] if entry.upos_hint else []))
        if self._lines and self._lines[-1] == "":
            self._lines.insert(len(self._lines) - 1, row)
        else:
            self._lines.append(row)

    def get(self, form: str) -> Optional[LexiconEntry]:
        return self._entries.get(self._key(form))

    def knows(self, form: str) -> bool:
        """True when ``form`` is an entry or the expansion of one."""
        key = self._key(form)
        return key in self._entries or key in self._expansions

    def entries(self) -> list[LexiconEntry]:
        return list(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, form: str) -> bool:
        return self._key(form) in self._entries


def merge_lexicons(lexicons: Iterable[Lexicon], case_fold: bool = True) -> Lexicon:
    """Stack lexicons; a later one overrides earlier entries for the same form."""
    merged = Lexicon(path=None, case_fold=case_fold)
    for lexicon in lexicons:
        for entry in lexicon.entries():
            merged.add(entry)
    return merged


def load_lexicons(paths: Iterable[Path], case_fold: bool = True) -> Lexicon:
    """Default lexicon plus user lexicons, in order."""
    stack = [get_default_lexicon()]
    stack.extend(Lexicon.load(p, case_fold=case_fold) for p in paths)
    if len(stack) == 1:
        return stack[0]
    return merge_lexicons(stack, case_fold=case_fold)


# Singleton instance
_default_lexicon: Optional[Lexicon] = None


def get_default_lexicon() -> Lexicon:
    """Get or create the shipped lexicon."""
    global _default_lexicon
    if _default_lexicon is None:
        _default_lexicon = Lexicon.load(DEFAULT_LEXICON_PATH)
    return _default_lexicon
