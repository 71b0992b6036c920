"""Tests for UD/SUD conversion and contraction."""
import pytest

from ugc_treebank.models.conllu import get_misc
from ugc_treebank.models.enums import ConvertDirection, Framework, FusionCase
from ugc_treebank.models.errors import (
    ConversionError,
    NonAdjacentSpan,
    UnresolvedPrimary,
    UnsupportedRelation,
)
from ugc_treebank.pipelines.conllu_io import parse_document
from ugc_treebank.pipelines.sud_bridge import (
    classify_fusion,
    contract_span,
    convert_sentences,
    sud_to_ud,
    ud_to_sud,
)
from ugc_treebank.pipelines.tree_algebra import check_structure, derive_text
from ugc_treebank.services.conversion_table import ConversionTable
from tests.conftest import CONVERSION_PAIRS, EXTRA_DIR, load, load_one

PAIR_IDS = [ud.removesuffix("_ud.conllu") for ud, _ in CONVERSION_PAIRS]


class TestUdToSud:
    """Tests for the forward conversion."""

    @pytest.mark.parametrize("ud_name, sud_name", CONVERSION_PAIRS, ids=PAIR_IDS)
    def test_matches_reference(self, ud_name, sud_name, conversion):
        """Test every UD fixture converts to its SUD counterpart."""
        assert ud_to_sud(conversion(ud_name)) == conversion(sud_name)

    def test_function_word_chain(self, conversion):
        """Test aux and mark become heads of their content words."""
        sud = ud_to_sud(conversion("gonna_ud.conllu"))
        assert [(t.form, t.head, t.deprel) for t in sud.words()] == [
            ("Sam", 2, "subj"),
            ("is", 0, "root"),
            ("going", 2, "comp:obj@x"),
            ("to", 3, "comp:obl@x"),
            ("stay", 4, "comp:obj@x"),
        ]

    def test_dropped_relation_translated(self, conversion):
        """Test DroppedRel values follow the target framework."""
        sud = ud_to_sud(conversion("gonna_contracted_ud.conllu"))
        assert get_misc(sud.word(3), "DroppedRel") == "comp:obl@x:to"

    def test_fused_copula_becomes_head(self, conversion):
        """Test a subject carrying a fused copula heads the predicate."""
        sud = ud_to_sud(conversion("i_am_contracted_ud.conllu"))
        fused = sud.word(1)
        assert (fused.head, fused.deprel) == (0, "root")
        assert get_misc(fused, "DroppedRel") == "subj:I"
        assert (sud.word(2).head, sud.word(2).deprel) == (1, "comp:pred")

    def test_unsupported_relation(self):
        """Test relations outside the table are refused with their token."""
        with pytest.raises(UnsupportedRelation) as exc_info:
            ud_to_sud(load_one(EXTRA_DIR / "csubj.conllu"))
        assert exc_info.value.deprel == "csubj"
        assert exc_info.value.token_id == "3"

    def test_custom_table(self, conversion):
        """Test a table row changes the output label."""
        table = ConversionTable.parse(
            "nsubj\tsubj:custom\tno\nobj\tcomp:obj\tno\nccomp\tcomp:obj\tno\n"
            "xcomp\tcomp:obj@x\tno\nobl\tcomp:obl\tno\namod\tmod\tno\nnmod\tmod\tno\n"
            "advmod\tadvmod\tno\ndet\tdet\tno\nflat:name\tflat@name\tno\nfixed\tunk@fixed\tno\n"
            "case\tcomp:obj\tyes\nmark\tcomp:obj\tyes\ncop\tcomp:pred\tyes\naux\tcomp:obj\tyes\n"
        )
        sud = ud_to_sud(conversion("i_am_ud.conllu"), table)
        assert sud.word(1).deprel == "subj:custom"

    def test_text_and_forms_untouched(self, conversion):
        """Test conversion only changes heads, relations and MISC."""
        ud = conversion("idk_ud.conllu")
        sud = ud_to_sud(ud)
        assert sud.metadata == ud.metadata
        assert [t.form for t in sud.tokens] == [t.form for t in ud.tokens]
        assert derive_text(sud) == ud.text


class TestSudToUd:
    """Tests for the inverse conversion."""

    @pytest.mark.parametrize("ud_name, sud_name", CONVERSION_PAIRS, ids=PAIR_IDS)
    def test_matches_reference(self, ud_name, sud_name, conversion):
        """Test every SUD fixture converts back to its UD counterpart."""
        assert sud_to_ud(conversion(sud_name)) == conversion(ud_name)

    @pytest.mark.parametrize("ud_name, sud_name", CONVERSION_PAIRS, ids=PAIR_IDS)
    def test_round_trip(self, ud_name, sud_name, conversion):
        """Test UD -> SUD -> UD gives the input back."""
        ud = conversion(ud_name)
        assert sud_to_ud(ud_to_sud(ud)) == ud
        sud = conversion(sud_name)
        assert ud_to_sud(sud_to_ud(sud)) == sud

    def test_outputs_are_trees(self, conversion):
        """Test both directions produce trees."""
        for ud_name, sud_name in CONVERSION_PAIRS:
            assert check_structure(ud_to_sud(conversion(ud_name))) == []
            assert check_structure(sud_to_ud(conversion(sud_name))) == []

    def test_oblique_from_modifier(self, conversion):
        """Test a preposition under a verb maps back to obl."""
        ud = sud_to_ud(conversion("im_sud.conllu"))
        assert (ud.word(6).head, ud.word(6).deprel) == (2, "obl")
        assert (ud.word(3).head, ud.word(3).deprel) == (6, "case")


class TestConvertSentences:
    """Tests for document conversion."""

    def test_direction(self, conversion):
        """Test the direction picks the converter."""
        ud = [conversion(ud_name) for ud_name, _ in CONVERSION_PAIRS]
        sud = [conversion(sud_name) for _, sud_name in CONVERSION_PAIRS]
        assert convert_sentences(ud, ConvertDirection.UD2SUD) == sud
        assert convert_sentences(sud, "sud2ud") == ud

    def test_error_names_sentence(self):
        """Test failures carry the sentence id."""
        with pytest.raises(UnsupportedRelation) as exc_info:
            convert_sentences(load(EXTRA_DIR / "csubj.conllu"), ConvertDirection.UD2SUD)
        assert exc_info.value.sent_id == "what-he-said"
        assert exc_info.value.token_id == "3"
        assert "what-he-said" in str(exc_info.value)

    def test_unknown_direction(self, conversion):
        """Test an unknown direction is refused."""
        with pytest.raises(ValueError):
            convert_sentences([conversion("gonna_ud.conllu")], "ud2xyz")


class TestClassifyFusion:
    """Tests for fusion cases."""

    @pytest.mark.parametrize("name, span, framework, expected", [
        ("gonna_ud.conllu", (3, 4), Framework.UD, FusionCase.HEAD_AND_GRANDCHILD),
        ("gonna_sud.conllu", (3, 4), Framework.SUD, FusionCase.GOV),
        ("im_ud.conllu", (3, 4), Framework.UD, FusionCase.SHARED_DEPENDENTS),
        ("im_sud.conllu", (3, 4), Framework.SUD, FusionCase.HEAD_AND_GRANDCHILD),
        ("i_am_ud.conllu", (1, 2), Framework.UD, FusionCase.SHARED_DEPENDENTS),
        ("i_am_sud.conllu", (1, 2), Framework.SUD, FusionCase.GOV),
        ("copula_ellipsis_ud.conllu", (2, 3), Framework.UD, FusionCase.UNRELATED),
    ])
    def test_cases(self, name, span, framework, expected, conversion):
        """Test each relation between members is recognised."""
        assert classify_fusion(conversion(name), span, framework) is expected

    def test_framework_changes_case(self, conversion):
        """Test the same words can fuse differently in UD and SUD."""
        ud = classify_fusion(conversion("i_am_ud.conllu"), (1, 2), Framework.UD)
        sud = classify_fusion(conversion("i_am_sud.conllu"), (1, 2), Framework.SUD)
        assert ud is not sud


class TestContractSpan:
    """Tests for fusing two words into one token."""

    @pytest.mark.parametrize("source, span, form, framework, primary, expected", [
        ("gonna_ud.conllu", (3, 4), "gonna", Framework.UD, None, "gonna_contracted_ud.conllu"),
        ("gonna_sud.conllu", (3, 4), "gonna", Framework.SUD, None, "gonna_contracted_sud.conllu"),
        ("im_ud.conllu", (3, 4), "im", Framework.UD, "first", "im_contracted_ud.conllu"),
        ("im_sud.conllu", (3, 4), "im", Framework.SUD, None, "im_contracted_sud.conllu"),
        ("i_am_ud.conllu", (1, 2), "I'm", Framework.UD, "first", "i_am_contracted_ud.conllu"),
        ("i_am_sud.conllu", (1, 2), "I'm", Framework.SUD, None, "i_am_contracted_sud.conllu"),
    ], ids=["gonna-ud", "gonna-sud", "im-ud", "im-sud", "i-am-ud", "i-am-sud"])
    def test_matches_reference(self, source, span, form, framework, primary, expected, conversion):
        """Test contraction gives the hand-annotated fused tree."""
        assert contract_span(conversion(source), span, form, framework, primary) == conversion(expected)

    @pytest.mark.parametrize("rows, span, case, expected, dropped", [
        (
            "1\tx\tx\tNOUN\t_\t_\t3\tobj\t_\t_\n"
            "2\ta\ta\tDET\t_\t_\t1\tdet\t_\t_\n"
            "3\tb\tb\tVERB\t_\t_\t0\troot\t_\t_\n",
            (2, 3), FusionCase.HEAD_AND_GRANDCHILD,
            [("x", 2, "obj"), ("ab", 0, "root")], "det:a",
        ),
        (
            "1\ta\ta\tDET\t_\t_\t2\tdet\t_\t_\n"
            "2\tb\tb\tNOUN\t_\t_\t0\troot\t_\t_\n",
            (1, 2), FusionCase.GOV,
            [("ab", 0, "root")], "det:a",
        ),
    ], ids=["grandchild-first", "dependent-first"])
    def test_dependent_before_head(self, rows, span, case, expected, dropped):
        """Test the higher member's attachment survives when it comes second."""
        sentence = parse_document(rows + "\n")[0]
        assert classify_fusion(sentence, span, Framework.UD) is case
        fused = contract_span(sentence, span, "ab", Framework.UD)
        assert [(t.form, t.head, t.deprel) for t in fused.words()] == expected
        assert get_misc(fused.word(span[0]), "DroppedRel") == dropped
        assert check_structure(fused) == []

    def test_morphology_from_first_member(self, conversion):
        """Test the fused token keeps the first member's morphology when the second member's attachment survives."""
        source = conversion("i_am_sud.conllu")
        fused = contract_span(source, (1, 2), "I'm", Framework.SUD).word(1)
        assert (fused.head, fused.deprel) == (0, "root")
        assert (fused.lemma, fused.upos, fused.feats) == (source.word(1).lemma, "PRON", source.word(1).feats)

    def test_primary_by_index(self, conversion):
        """Test an explicit member index works like first/last."""
        sentence = conversion("im_ud.conllu")
        by_index = contract_span(sentence, (3, 4), "im", Framework.UD, 3)
        assert by_index == contract_span(sentence, (3, 4), "im", Framework.UD, "first")

    def test_last_primary_keeps_second_attachment(self, conversion):
        """Test the last member's attachment survives when it is primary."""
        fused = contract_span(conversion("im_ud.conllu"), (3, 4), "im", Framework.UD, "last")
        token = fused.word(3)
        assert (token.head, token.deprel) == (5, "det")
        assert get_misc(token, "DroppedRel") == "case:in"

    def test_contract_then_convert_commutes(self, conversion):
        """Test contracting in UD and converting equals converting then contracting."""
        via_ud = ud_to_sud(contract_span(conversion("gonna_ud.conllu"), (3, 4), "gonna", Framework.UD))
        via_sud = contract_span(conversion("gonna_sud.conllu"), (3, 4), "gonna", Framework.SUD)
        assert via_ud == via_sud

    def test_non_adjacent(self, conversion):
        """Test members must be neighbours."""
        with pytest.raises(NonAdjacentSpan) as exc_info:
            contract_span(conversion("gonna_ud.conllu"), (3, 5), "gonnastay", Framework.UD)
        assert exc_info.value.span == (3, 5)

    def test_unknown_word(self, conversion):
        """Test a span past the last word is refused."""
        with pytest.raises(NonAdjacentSpan):
            contract_span(conversion("i_am_ud.conllu"), (3, 4), "x", Framework.UD)

    @pytest.mark.parametrize("primary", [None, 7, "middle"])
    def test_unresolved_primary(self, primary, conversion):
        """Test co-dependents need a usable primary member."""
        with pytest.raises(UnresolvedPrimary):
            contract_span(conversion("im_ud.conllu"), (3, 4), "im", Framework.UD, primary)

    def test_unrelated(self, conversion):
        """Test unrelated words cannot be fused."""
        with pytest.raises(ConversionError, match="Unrelated"):
            contract_span(conversion("copula_ellipsis_ud.conllu"), (2, 3), "Rosbergdavanti", Framework.UD)
