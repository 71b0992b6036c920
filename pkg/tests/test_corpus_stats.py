"""Tests for phenomenon counts."""
from ugc_treebank.models.stats import CorpusStats
from ugc_treebank.pipelines.conllu_io import parse_document
from ugc_treebank.pipelines.corpus_stats import corpus_stats
from ugc_treebank.pipelines.normalizer import TokenClassifier
from tests.conftest import CORPUS_DIR, MUTANTS_DIR, load


class TestCorpusStats:
    """Tests over the clean corpus."""

    def test_counters(self, corpus_sentences):
        """Test every scalar counter against a hand tally."""
        stats = corpus_stats(corpus_sentences)
        assert {name: getattr(stats, name) for name in CorpusStats.COUNTERS} == {
            "sentences": 21,
            "tokens": 130,
            "hashtags": 5,
            "mentions": 3,
            "urls": 1,
            "emoticons": 4,
            "rt_tokens": 2,
            "markup_tokens": 2,
            "foreign_tokens": 4,
            "goeswith_spans": 2,
            "sentence_units": 1,
            "stretched_tokens": 1,
        }

    def test_histograms(self, corpus_sentences):
        """Test NonCan and CSType values are counted per token."""
        stats = corpus_stats(corpus_sentences)
        assert stats.noncan == {"CharOm": 1, "Cont": 3, "OS": 2, "PuncVar": 2, "Stretch": 1}
        assert stats.cstype == {"INTER": 3, "INTRA": 1}
        assert stats.upos["X"] == 10
        assert stats.upos["PUNCT"] == 10
        assert sum(stats.upos.values()) == stats.tokens

    def test_merge_equals_whole(self):
        """Test per-file reports add up to the report over all files."""
        files = sorted(CORPUS_DIR.glob("*.conllu"))
        merged = CorpusStats()
        for path in files:
            merged = merged.merge(corpus_stats(load(path)))
        assert merged == corpus_stats([s for path in files for s in load(path)])

    def test_rows_order(self, corpus_sentences):
        """Test rows list counters first, then sorted histogram keys."""
        rows = corpus_stats(corpus_sentences).rows()
        assert rows[0] == ("count", "sentences", 21)
        assert [r[1] for r in rows[: len(CorpusStats.COUNTERS)]] == list(CorpusStats.COUNTERS)
        noncan = [key for section, key, _ in rows if section == "noncan"]
        assert noncan == sorted(noncan)

    def test_non_tree_still_counted(self):
        """Test a sentence that is not a tree still counts its tokens."""
        stats = corpus_stats(load(MUTANTS_DIR / "R-TREE-01.conllu"))
        assert (stats.sentences, stats.tokens, stats.goeswith_spans) == (1, 2, 0)

    def test_classifier_options(self):
        """Test a case-insensitive classifier counts lower-case rt."""
        sentences = parse_document(
            "1\trt\trt\tSYM\t_\t_\t2\tparataxis\t_\t_\n"
            "2\tciao\tciao\tINTJ\t_\t_\t0\troot\t_\t_\n\n"
        )
        assert corpus_stats(sentences).rt_tokens == 0
        assert corpus_stats(sentences, TokenClassifier(rt_case_sensitive=False)).rt_tokens == 1

    def test_empty(self):
        """Test no sentences give an all-zero report."""
        assert corpus_stats([]) == CorpusStats()
