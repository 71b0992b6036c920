"""Counts of UGC phenomena over parsed sentences."""

import logging
from collections import Counter
from typing import Iterable, Optional

from ugc_treebank.models.conllu import Sentence, get_feat, get_misc
from ugc_treebank.models.enums import TokenClass
from ugc_treebank.models.errors import StructureError
from ugc_treebank.models.stats import CorpusStats
from ugc_treebank.pipelines.normalizer import TokenClassifier, normalization_candidates, shared_classifier
from ugc_treebank.pipelines.tree_algebra import SENTENCE_UNIT_REL, build_graph, goeswith_spans

logger = logging.getLogger(__name__)

_CLASS_COUNTERS = {
    TokenClass.HASHTAG: "hashtags",
    TokenClass.MENTION: "mentions",
    TokenClass.URL: "urls",
    TokenClass.EMOTICON: "emoticons",
    TokenClass.RT: "rt_tokens",
    TokenClass.MARKUP: "markup_tokens",
}


def corpus_stats(sentences: Iterable[Sentence], classifier: Optional[TokenClassifier] = None) -> CorpusStats:
    """
    Tally one document.

    Tokens are syntactic words. ``sentence_units`` counts parataxis:sentence
    dependents; goeswith spans are only counted in sentences that form a tree.
    """
    classifier = classifier or shared_classifier()
    counts: Counter = Counter()
    noncan: Counter = Counter()
    cstype: Counter = Counter()
    upos: Counter = Counter()

    for sentence in sentences:
        counts["sentences"] += 1
        for token in sentence.iter_words():
            counts["tokens"] += 1
            upos[token.upos] += 1
            name = _CLASS_COUNTERS.get(classifier.classify(token.form))
            if name:
                counts[name] += 1
            if get_feat(token, "Foreign") == "Yes":
                counts["foreign_tokens"] += 1
            if token.deprel == SENTENCE_UNIT_REL:
                counts["sentence_units"] += 1
            if any(c.phenomenon == "Stretch" for c in normalization_candidates(token.form)):
                counts["stretched_tokens"] += 1
            value = get_misc(token, "NonCan")
            if value:
                noncan.update(value.split(","))
            value = get_misc(token, "CSType")
            if value:
                cstype[value] += 1
        try:
            counts["goeswith_spans"] += len(goeswith_spans(build_graph(sentence)))
        except StructureError as e:
            logger.debug("stats_skip_spans sent_id=%s reason=%s", sentence.sent_id, e)

    return CorpusStats(
        **{name: counts[name] for name in CorpusStats.COUNTERS},
        noncan=dict(sorted(noncan.items())),
        cstype=dict(sorted(cstype.items())),
        upos=dict(sorted(upos.items())),
    )
