import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lexiweave.lexdata import (
    BilingualLexicon,
    TranslationPair,
    load_bilingual,
    load_monolingual,
    load_taxonomy,
    merge_bilinguals,
)

FIXTURES = Path(__file__).parent / "fixtures"

# Translation pairs for the structural-criterion words. They pair with
# monosemous English words, so they belong in the extended lexicon used by
# the structural and coverage tests, not in the core pipeline fixture
# (where they would flood the mono cells).
STRUCTURAL_PAIRS = [
    ("chucho", "beast"),
    ("chucho", "dog"),
    ("sabueso", "hound"),
    ("sabueso", "bloodhound"),
    ("bicho", "cat"),
    ("bicho", "dog"),
    ("canino", "poodle"),
    ("canino", "beast"),
]


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def tax():
    return load_taxonomy(FIXTURES / "taxonomy.tsv")


@pytest.fixture(scope="session")
def core_hbil():
    ab = load_bilingual(FIXTURES / "es_en.tsv", "es_en")
    ba = load_bilingual(FIXTURES / "en_es.tsv", "en_es")
    return merge_bilinguals(ab, ba)


@pytest.fixture(scope="session")
def extended_hbil(core_hbil):
    extra = [TranslationPair(sw, ew, None, "es_en") for sw, ew in STRUCTURAL_PAIRS]
    return BilingualLexicon(list(core_hbil.pairs) + extra)


@pytest.fixture(scope="session")
def mono():
    return load_monolingual(FIXTURES / "monolingual.jsonl")
