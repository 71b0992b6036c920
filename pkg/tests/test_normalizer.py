"""Tests for surface-form recognizers and normalization candidates."""
import pytest

from ugc_treebank.models.enums import Confidence, TokenClass
from ugc_treebank.pipelines.normalizer import (
    TokenClassifier,
    classify_token,
    collapse_stretch,
    emoticon_recognizer,
    is_reduplicated_punctuation,
    lookup_abbreviation,
    normalization_candidates,
    punctuation_lemma,
    reduplication_lemma,
    shared_classifier,
)
from ugc_treebank.services.lexicon_store import Lexicon, get_default_lexicon


class TestClassifyToken:
    """Tests for the meta-token classifier."""

    @pytest.mark.parametrize("form, expected", [
        ("#besties", TokenClass.HASHTAG),
        ("#Müller", TokenClass.HASHTAG),
        ("@falcao", TokenClass.MENTION),
        ("https://fal.cn/36UTU", TokenClass.URL),
        ("www.example.org", TokenClass.URL),
        ("http://example.com:8080/a?b=c", TokenClass.URL),
        ("RT", TokenClass.RT),
        (":D", TokenClass.EMOTICON),
        (";)", TokenClass.EMOTICON),
        (":):)", TokenClass.EMOTICON),
        ("<3", TokenClass.EMOTICON),
        ("^_^", TokenClass.EMOTICON),
        ("X-D", TokenClass.EMOTICON),
        ("☕", TokenClass.EMOTICON),
        ("❤", TokenClass.EMOTICON),
        ("+++", TokenClass.MARKUP),
        ("==>", TokenClass.MARKUP),
        ("<<<", TokenClass.MARKUP),
        ("rt", TokenClass.PLAIN),
        ("!!", TokenClass.PLAIN),
        ("Soooo", TokenClass.PLAIN),
        ("©", TokenClass.PLAIN),
        ("#", TokenClass.PLAIN),
        ("@", TokenClass.PLAIN),
        ("x", TokenClass.PLAIN),
        ("#tag!", TokenClass.PLAIN),
    ])
    def test_classes(self, form, expected):
        """Test every form gets its one class."""
        assert classify_token(form) is expected

    def test_rt_case_insensitive(self):
        """Test lower-case rt counts when case sensitivity is off."""
        classifier = TokenClassifier(rt_case_sensitive=False)
        assert classifier.classify("rt") is TokenClass.RT
        assert classifier.classify("Rt") is TokenClass.RT

    def test_custom_markup_list(self):
        """Test the markup list is configurable."""
        classifier = TokenClassifier(markup_symbols=["§§"])
        assert classifier.classify("§§") is TokenClass.MARKUP
        assert classifier.classify(">") is TokenClass.PLAIN

    def test_shared_per_option_set(self):
        """Test one classifier is reused for each option set."""
        assert shared_classifier() is shared_classifier()
        lenient = shared_classifier(False)
        assert lenient is not shared_classifier()
        assert lenient.classify("rt") is TokenClass.RT
        assert shared_classifier().classify("rt") is TokenClass.PLAIN

    def test_repeat_lookups_agree(self):
        """Test a memoized form keeps its class."""
        classifier = TokenClassifier()
        assert [classifier.classify(f) for f in ("#tbt", ":)", "#tbt", ":)")] == [
            TokenClass.HASHTAG, TokenClass.EMOTICON, TokenClass.HASHTAG, TokenClass.EMOTICON,
        ]

    def test_precedence(self):
        """Test URLs win over every other class."""
        assert classify_token("www.x.org") is TokenClass.URL


class TestEmoticonRecognizer:
    """Tests for emoticon segmentation."""

    @pytest.mark.parametrize("form, parts", [
        (":):)", [":)", ":)"]),
        ("<3<3", ["<3", "<3"]),
        (":))", [":))"]),
        (":D☕", [":D", "☕"]),
        ("❤️", ["❤️"]),
        ("👍🏽👍", ["👍🏽", "👍"]),
        ("^^:P", ["^^", ":P"]),
    ])
    def test_segments(self, form, parts):
        """Test a whole-emoticon form is cut into units."""
        assert emoticon_recognizer(form) == parts

    @pytest.mark.parametrize("form", ["", "hello", ":)x", "x", "©©"])
    def test_rejects(self, form):
        """Test forms with non-emoticon material are refused."""
        assert emoticon_recognizer(form) is None

    @pytest.mark.parametrize("form", ["XP", "xo", "XD", "8D", "XDXD", "xoxo"])
    def test_alphanumeric_words(self, form):
        """Test letter and digit words shaped like faces stay words."""
        assert emoticon_recognizer(form) is None
        assert classify_token(form) is TokenClass.PLAIN

    @pytest.mark.parametrize("form", ["x-D", ":P", "8)", "=D", "X-P"])
    def test_faces_with_symbols(self, form):
        """Test faces carrying a symbol are still recognized."""
        assert emoticon_recognizer(form) == [form]


class TestStretch:
    """Tests for graphemic stretching candidates."""

    def test_single_run(self):
        """Test a run of four letters collapses to two and to one."""
        assert [c.candidate for c in collapse_stretch("Soooo")] == ["Soo", "So"]

    def test_two_runs(self):
        """Test runs are shortened independently."""
        got = [c.candidate for c in collapse_stretch("Sooo cooool")]
        assert got == ["Soo cool", "Soo col", "So cool", "So col"]

    def test_no_run(self):
        """Test doubled letters are not stretching."""
        assert collapse_stretch("cool") == []

    def test_heuristic_confidence(self):
        """Test pattern-only candidates are heuristic."""
        assert {c.confidence for c in collapse_stretch("Soooo")} == {Confidence.HEURISTIC}
        assert {c.phenomenon for c in collapse_stretch("Soooo")} == {"Stretch"}


class TestPunctuation:
    """Tests for reduplicated punctuation."""

    @pytest.mark.parametrize("form, lemma", [
        ("!!!", "!"),
        ("!!", "!"),
        ("?!?!?", "?!"),
        ("!?!?", "!?"),
        ("!!?", None),
        ("?!", None),
        ("!", None),
    ])
    def test_reduplication_lemma(self, form, lemma):
        """Test the repeated unit is found for (ab)+a? shapes only."""
        assert reduplication_lemma(form) == lemma

    def test_punctuation_lemma_falls_back_to_form(self):
        """Test irregular runs keep the whole form as lemma."""
        assert punctuation_lemma("!!?") == "!!?"
        assert punctuation_lemma("?!?!?") == "?!"

    @pytest.mark.parametrize("form, expected", [
        ("!!", True),
        ("!!!1", True),
        ("?!?!", True),
        ("...", False),
        ("…", False),
        ("--", False),
        ("?!", False),
        ("!", False),
        ("11", False),
        ("ab", False),
    ])
    def test_is_reduplicated(self, form, expected):
        """Test exempt and non-repeating runs are not reduplication."""
        assert is_reduplicated_punctuation(form) is expected

    def test_custom_exemptions(self):
        """Test the exempt list is configurable."""
        assert is_reduplicated_punctuation("!!", exempt=("!!",)) is False
        assert is_reduplicated_punctuation("...", exempt=()) is True


class TestLexiconLookups:
    """Tests for abbreviation lookup and candidate ranking."""

    def test_lookup_case_folded(self):
        """Test shipped entries match regardless of case."""
        hit = lookup_abbreviation("IDK", get_default_lexicon())
        assert hit.full_form == "I don't know"
        assert hit.phenomenon == "Cont"
        assert hit.upos_hint == "VERB"

    def test_lookup_miss(self):
        """Test unknown forms give no hit."""
        assert lookup_abbreviation("zzz", get_default_lexicon()) is None

    def test_lexicon_hit_first(self):
        """Test a lexicon hit leads the candidates and is certain."""
        (candidate,) = normalization_candidates("ppl", get_default_lexicon())
        assert candidate.candidate == "people"
        assert candidate.confidence is Confidence.CERTAIN
        assert candidate.phenomenon == "CharOm"

    def test_stretch_confirmed_by_lexicon(self):
        """Test a stretch candidate the lexicon knows becomes certain."""
        lexicon = Lexicon.parse("so\tso\tStretch\n")
        candidates = normalization_candidates("Soooo", lexicon)
        by_form = {c.candidate: c.confidence for c in candidates}
        assert by_form == {"Soo": Confidence.HEURISTIC, "So": Confidence.CERTAIN}

    def test_without_lexicon(self):
        """Test only pattern candidates come back without a lexicon."""
        assert [c.candidate for c in normalization_candidates("Soooo")] == ["Soo", "So"]
