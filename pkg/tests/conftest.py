"""Pytest fixtures and configuration."""
from pathlib import Path

import pytest

from ugc_treebank.models.conllu import Sentence
from ugc_treebank.pipelines.conllu_io import parse_file
from ugc_treebank.pipelines.ugc_lint import LintConfig

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS_DIR = FIXTURES / "corpus"
CONVERSION_DIR = FIXTURES / "conversion"
EXTRA_DIR = FIXTURES / "extra"
MUTANTS_DIR = FIXTURES / "mutants"
BROKEN_DIR = FIXTURES / "broken"

CORPUS_FILES = sorted(CORPUS_DIR.glob("*.conllu"))
CONVERSION_FILES = sorted(CONVERSION_DIR.glob("*.conllu"))
MUTANT_FILES = sorted(MUTANTS_DIR.glob("*.conllu"))

# UD file -> SUD file with the same sentences
CONVERSION_PAIRS = [
    ("gonna_ud.conllu", "gonna_sud.conllu"),
    ("gonna_contracted_ud.conllu", "gonna_contracted_sud.conllu"),
    ("im_ud.conllu", "im_sud.conllu"),
    ("im_contracted_ud.conllu", "im_contracted_sud.conllu"),
    ("i_am_ud.conllu", "i_am_sud.conllu"),
    ("i_am_contracted_ud.conllu", "i_am_contracted_sud.conllu"),
    ("idk_ud.conllu", "idk_sud.conllu"),
    ("copula_ellipsis_ud.conllu", "copula_ellipsis_sud.conllu"),
]


def load(path: Path) -> list[Sentence]:
    """All sentences of a fixture file."""
    return parse_file(path)


def load_one(path: Path) -> Sentence:
    """The single sentence of a fixture file."""
    sentences = parse_file(path)
    assert len(sentences) == 1, f"{path.name} holds {len(sentences)} sentences"
    return sentences[0]


def ids(paths) -> list[str]:
    return [p.name for p in paths]


@pytest.fixture
def corpus_sentences() -> list[Sentence]:
    """Every sentence of the clean corpus, in file order."""
    return [s for path in CORPUS_FILES for s in load(path)]


@pytest.fixture
def lint_config() -> LintConfig:
    """Default rule settings."""
    return LintConfig()


@pytest.fixture
def conversion():
    """Loader for the UD/SUD fixture pairs."""
    return lambda name: load_one(CONVERSION_DIR / name)


@pytest.fixture
def mutant():
    """Loader for a single-rule mutant by rule id."""
    return lambda rule_id: load_one(MUTANTS_DIR / f"{rule_id}.conllu")


@pytest.fixture
def corpus_copy(tmp_path) -> Path:
    """Writable copy of the clean corpus."""
    target = tmp_path / "corpus"
    target.mkdir()
    for path in CORPUS_FILES:
        (target / path.name).write_bytes(path.read_bytes())
    return target
