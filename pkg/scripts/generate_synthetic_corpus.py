#!/usr/bin/env python
"""
Write a reproducible synthetic UGC corpus for throughput checks.

Every post is one to four sentence units joined with parataxis:sentence,
sprinkled with hashtags, at-mentions, URLs, emoticons and RT markers that
follow the annotation rules, so a clean run of `ugctb validate` is expected.

Usage:
    poetry run python scripts/generate_synthetic_corpus.py --out synthetic/ --posts 10000
    poetry run python scripts/generate_synthetic_corpus.py --out synthetic/ --posts 500 --files 4 --seed 7
"""

import argparse
import logging
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from ugc_treebank.models.conllu import Sentence, Token, TokenId
from ugc_treebank.pipelines.conllu_io import write_file
from ugc_treebank.pipelines.tree_algebra import derive_text, merge_units

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s | %(levelname)s | %(name)s | %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S"
)
logger = logging.getLogger(__name__)

SUBJECTS = [("we", "we"), ("they", "they"), ("she", "she"), ("Sam", "Sam")]
VERBS = [("love", "love"), ("watched", "watch"), ("missed", "miss"), ("need", "need")]
OBJECTS = [("pizza", "pizza"), ("game", "game"), ("concert", "concert"), ("coffee", "coffee")]
HASHTAGS = ["#blessed", "#tbt", "#nofilter", "#matchday"]
MENTIONS = ["@falcao", "@neidi", "@sam_b"]
URLS = ["https://fal.cn/36UTU", "www.example.org/post"]
EMOTICONS = [":)", ":D", ";)", "<3", "☕"]


def _word(i: int, form: str, lemma: str, upos: str, head: int, deprel: str) -> Token:
    return Token(id=TokenId.word(i), form=form, lemma=lemma, upos=upos, head=head, deprel=deprel)


def build_unit(rng: random.Random, sent_id: str) -> Sentence:
    """One clause: subject, verb, object plus optional UGC side elements."""
    subj, verb, obj = rng.choice(SUBJECTS), rng.choice(VERBS), rng.choice(OBJECTS)
    tokens = []
    if rng.random() < 0.2:
        tokens.append(("RT", "RT", "SYM", "parataxis"))
    if rng.random() < 0.3:
        tokens.append((rng.choice(MENTIONS),) * 2 + ("PROPN", "vocative:mention"))
    tokens.append((subj[0], subj[1], "PRON" if subj[0] != "Sam" else "PROPN", "nsubj"))
    root_at = len(tokens) + 1
    tokens.append((verb[0], verb[1], "VERB", "root"))
    tokens.append((obj[0], obj[1], "NOUN", "obj"))
    if rng.random() < 0.4:
        tag = rng.choice(HASHTAGS)
        tokens.append((tag, tag, "X", "parataxis:hashtag"))
    if rng.random() < 0.2:
        url = rng.choice(URLS)
        tokens.append((url, url, "SYM", "parataxis:url"))
    if rng.random() < 0.4:
        emo = rng.choice(EMOTICONS)
        tokens.append((emo, emo, "SYM", "discourse"))

    words = [
        _word(i, form, lemma, upos, 0 if deprel == "root" else root_at, deprel)
        for i, (form, lemma, upos, deprel) in enumerate(tokens, start=1)
    ]
    unit = Sentence(metadata=(f"# sent_id = {sent_id}",), tokens=tuple(words))
    return unit.set_meta("text", derive_text(unit))


def build_post(rng: random.Random, post_id: str) -> Sentence:
    """A post of one to four units merged into a single tree."""
    units = [build_unit(rng, f"{post_id}-{k}") for k in range(1, rng.randint(1, 4) + 1)]
    return merge_units(units)


def main():
    parser = argparse.ArgumentParser(description="Write a synthetic UGC corpus")
    parser.add_argument("--out", type=Path, required=True, help="Output directory")
    parser.add_argument("--posts", type=int, default=1000, help="Number of posts")
    parser.add_argument("--files", type=int, default=1, help="Spread posts over this many files")
    parser.add_argument("--seed", type=int, default=13, help="Random seed")
    args = parser.parse_args()

    if args.posts < 1 or args.files < 1:
        print("--posts and --files must be positive", file=sys.stderr)
        sys.exit(2)

    rng = random.Random(args.seed)
    posts = [build_post(rng, f"syn{n:06d}") for n in range(1, args.posts + 1)]
    per_file = -(-len(posts) // args.files)
    for k in range(args.files):
        chunk = posts[k * per_file:(k + 1) * per_file]
        if not chunk:
            break
        path = args.out / f"synthetic_{k + 1:03d}.conllu"
        write_file(path, chunk)
        logger.info("written file=%s posts=%d", path, len(chunk))

    logger.info("done posts=%d files=%d seed=%d", len(posts), min(args.files, len(posts)), args.seed)


if __name__ == "__main__":
    main()
