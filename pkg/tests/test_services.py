"""Tests for lexicon files, conversion tables and the file runner."""
import pytest

from ugc_treebank.models.errors import ConfigError, LexiconError
from ugc_treebank.models.lexicon import LexiconEntry
from ugc_treebank.services.conversion_table import (
    DEFAULT_TABLE_PATH,
    ConversionTable,
    get_default_table,
    load_conversion_table,
)
from ugc_treebank.services.file_runner import InputFile, collect_files, run_files
from ugc_treebank.services.lexicon_store import (
    DEFAULT_LEXICON_PATH,
    Lexicon,
    get_default_lexicon,
    load_lexicons,
    merge_lexicons,
)
from tests.conftest import CORPUS_DIR, CORPUS_FILES


def _file_name(item: InputFile) -> str:
    # module level so worker processes can unpickle it
    return item.path.name


class TestLexicon:
    """Tests for lexicon parsing and persistence."""

    def test_default_lexicon(self):
        """Test the shipped lexicon loads and folds case."""
        lexicon = get_default_lexicon()
        assert "gonna" in lexicon
        assert "GONNA" in lexicon
        assert lexicon.get("gonna").expansion == "going to"
        assert lexicon.knows("going to")

    def test_save_is_byte_exact(self, tmp_path):
        """Test comments, blank lines and order survive a save."""
        target = tmp_path / "lexicon.tsv"
        get_default_lexicon().save(target)
        assert target.read_bytes() == DEFAULT_LEXICON_PATH.read_bytes()

    def test_add_appends_line(self):
        """Test added entries go before the final newline."""
        lexicon = Lexicon.parse("# header\nppl\tpeople\tCharOm\n")
        lexicon.add(LexiconEntry(form="bc", expansion="because", phenomenon="CharOm", upos_hint="SCONJ"))
        assert lexicon.to_text() == "# header\nppl\tpeople\tCharOm\nbc\tbecause\tCharOm\tSCONJ\n"
        assert lexicon.get("BC").upos_hint == "SCONJ"

    def test_case_sensitive(self):
        """Test case folding can be switched off."""
        lexicon = Lexicon.parse("RT\tretweet\tTrunc\n", case_fold=False)
        assert "RT" in lexicon
        assert "rt" not in lexicon

    @pytest.mark.parametrize("text, line, fragment", [
        ("ppl\tpeople\n", 1, "columns"),
        ("ppl\tpeople\tCharOm\tNOUN\textra\n", 1, "columns"),
        ("# c\nppl\tpeople\tShortening\n", 2, "NonCan"),
        ("ppl\tpeople\tCharOm\tNN\n", 1, "UPOS"),
        ("ppl\tpeople\tCharOm\nPPL\tpeople\tCharOm\n", 2, "duplicate"),
    ])
    def test_malformed(self, text, line, fragment):
        """Test bad rows name their line."""
        with pytest.raises(LexiconError) as exc_info:
            Lexicon.parse(text, path="user.tsv")
        assert exc_info.value.line == line
        assert exc_info.value.path == "user.tsv"
        assert fragment in exc_info.value.reason

    def test_missing_file(self, tmp_path):
        """Test an unreadable file is a lexicon error."""
        with pytest.raises(LexiconError):
            Lexicon.load(tmp_path / "missing.tsv")

    def test_user_lexicon_overrides_default(self, tmp_path):
        """Test later lexicons win for the same form."""
        user = tmp_path / "user.tsv"
        user.write_text("lol\tlots of love\tCont\tINTJ\nbrb\tbe right back\tCont\n", encoding="utf-8")
        lexicon = load_lexicons([user])
        assert lexicon.get("lol").expansion == "lots of love"
        assert lexicon.get("brb").expansion == "be right back"
        assert lexicon.get("ppl").expansion == "people"

    def test_no_user_lexicon(self):
        """Test the default lexicon is used as is."""
        assert load_lexicons([]) is get_default_lexicon()

    def test_merge_order(self):
        """Test merge keeps one entry per form."""
        a = Lexicon.parse("u\tyou\tPhon\n")
        b = Lexicon.parse("U\tyouuu\tPhon\n")
        merged = merge_lexicons([a, b])
        assert len(merged) == 1
        assert merged.get("u").expansion == "youuu"


class TestConversionTable:
    """Tests for relation tables."""

    def test_default_table(self):
        """Test the shipped table maps both ways."""
        table = get_default_table()
        assert table.to_sud("nsubj") == "subj"
        assert table.to_sud("case") is None
        assert table.is_flip("cop")
        assert table.link_label("cop") == "comp:pred"
        assert table.to_ud("comp:obj") == ["obj", "ccomp"]
        assert table.to_ud("flat@name") == ["flat:name"]

    def test_save_and_reload(self, tmp_path):
        """Test a saved table loads back to the same rows."""
        target = tmp_path / "table.tsv"
        get_default_table().save(target)
        assert load_conversion_table(target).rows == get_default_table().rows

    def test_default_when_no_path(self):
        """Test no path means the shipped table."""
        assert load_conversion_table(None) is get_default_table()
        assert get_default_table().path == str(DEFAULT_TABLE_PATH)

    @pytest.mark.parametrize("text, fragment", [
        ("nsubj\tsubj\n", "expected"),
        ("nsubj\tsubj\tmaybe\n", "expected"),
        ("nsubj\tsubj\tno\nnsubj\tsubj\tno\n", "duplicate"),
        ("nsubj\tsubj\tno\ncase\tcomp:obj\tyes\n", "flip rows"),
    ])
    def test_malformed(self, text, fragment):
        """Test bad tables are configuration errors."""
        with pytest.raises(ConfigError, match=fragment):
            ConversionTable.parse(text)

    def test_missing_file(self, tmp_path):
        """Test an unreadable table is a configuration error."""
        with pytest.raises(ConfigError):
            load_conversion_table(tmp_path / "missing.tsv")


class TestFileRunner:
    """Tests for input collection and the worker pool."""

    def test_collect_directory(self):
        """Test directories expand to their .conllu files in sorted order."""
        files = collect_files([CORPUS_DIR])
        assert [f.path for f in files] == CORPUS_FILES
        assert files[0].relative.name == CORPUS_FILES[0].name

    def test_collect_single_file(self):
        """Test a file argument is taken as is."""
        (item,) = collect_files([CORPUS_FILES[0]])
        assert item.path == CORPUS_FILES[0]

    def test_missing_input(self, tmp_path):
        """Test a missing path is reported."""
        with pytest.raises(FileNotFoundError):
            collect_files([tmp_path / "nope.conllu"])

    @pytest.mark.parametrize("jobs", [1, 4])
    def test_results_in_input_order(self, jobs):
        """Test pooled runs keep input order."""
        files = collect_files([CORPUS_DIR])
        assert run_files(files, _file_name, jobs=jobs) == [p.name for p in CORPUS_FILES]
