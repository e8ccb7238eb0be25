from pathlib import Path

import pytest

from alignkit.embeddings import deterministic_test_provider, load_vector_file
from alignkit.model import make_alignment

FIXTURES = Path(__file__).parent / "fixtures"


def grid(rows, texts=None):
    """Build an alignment from rows of cell strings ('' = empty cell)."""
    cells = [[tuple(c.split()) for c in row] for row in rows]
    if texts is None:
        texts = [" ".join(t for c in row for t in c) for row in cells]
    return make_alignment(cells, texts)


DIABETICS_TEXTS = [
    "23 diabetics with flu",
    "six diabetic patients",
    "patients with flu",
]

# worked alignment states for the three diabetics texts
A1 = grid([["23", "diabetics", "with", "flu"],
           ["six", "diabetic", "patients", ""]],
          DIABETICS_TEXTS[:2])
A2 = grid([["23", "diabetics", "with", "flu"],
           ["six", "diabetic", "patients", ""],
           ["", "patients", "with", "flu"]], DIABETICS_TEXTS)
A3 = grid([["23", "diabetics", "with", "flu", ""],
           ["six", "diabetic", "patients", "", ""],
           ["", "", "patients", "with", "flu"]], DIABETICS_TEXTS)
A4 = grid([["23", "diabetics", "", "with", "flu"],
           ["six", "diabetic", "patients", "", ""],
           ["", "", "patients", "with", "flu"]], DIABETICS_TEXTS)
A5 = grid([["23", "diabetics", "", "with", "flu"],
           ["six", "diabetic", "patients", "", ""],
           ["", "patients", "", "with", "flu"]], DIABETICS_TEXTS)
A6 = grid([["23", "diabetics", "with", "flu"],
           ["six", "diabetic patients", "", ""],
           ["", "patients", "with", "flu"]], DIABETICS_TEXTS)
A7 = grid([["23", "diabetics", "", "with flu"],
           ["six", "diabetic patients", "", ""],
           ["", "patients", "with", "flu"]], DIABETICS_TEXTS)
A8 = grid([["23", "diabetics", "", "with", "flu"],
           ["six", "diabetic", "patients", "", ""],
           ["", "patients", "", "with", "flu"]], DIABETICS_TEXTS)
A9 = grid([["23", "", "diabetics", "with", "flu"],
           ["six", "diabetic", "patients", "", ""],
           ["", "", "patients", "with", "flu"]], DIABETICS_TEXTS)
A13 = grid([["23", "diabetics", "with", "", "flu"],
            ["six", "diabetic", "patients", "", ""],
            ["", "", "patients", "with", "flu"]], DIABETICS_TEXTS)

# the single-column trie-split source and its two split results
COL10 = grid([["2 young cancer patients"],
              ["15 adult cancer patients"],
              ["16 adult cancer patients"],
              ["2 young participants"]])
A11 = grid([["2 young", "cancer patients"],
            ["15 adult", "cancer patients"],
            ["16 adult", "cancer patients"],
            ["", "2 young participants"]])
A12 = grid([["2 young", "cancer patients"],
            ["15 adult cancer patients", ""],
            ["16 adult cancer patients", ""],
            ["2 young", "participants"]])

# heuristic worked examples: concise-not-coherent (14), coherent-not-concise (15),
# and the component arithmetic source (17)
A14 = grid([["20", "children", "with", "COVID"],
            ["five", "male", "adults", ""]])
A15 = grid([["20", "", "", "children", "", "with", "COVID"],
            ["", "five", "male", "", "adults", "", ""]])
A17 = grid([["23", "diabetics", "with", "", "flu infection"],
            ["six", "diabetic patients", "", "", ""],
            ["", "patients", "with", "", "flu"]],
           ["23 diabetics with flu infection",
            "six diabetic patients",
            "patients with flu"])

USAGE_TEXTS = [
    "Autism Spectrum Disorders in Toddlers .",
    "children with Asperger syndrome ( AS ) :",
    "high - functioning autism spectrum disorders ( ASD ) and clinically significant anxiety",
    "Fifty children with high - functioning ASD and anxiety",
    "92 outpatients affected by generalized anxiety disorders",
    "children and adolescents with both ASD and attention - deficit / hyperactivity disorder ( ADHD ) .",
    "patients diagnosed with autism and previously undetected anxiety",
]


@pytest.fixture(scope="session")
def fixture_provider():
    return load_vector_file(FIXTURES / "diabetics_vectors.txt")


@pytest.fixture(scope="session")
def test_provider():
    return deterministic_test_provider(7)


class NoVocabProvider:
    """Provider whose every lookup misses; forces the Levenshtein branch."""
    dimension = 2

    def __init__(self):
        self._phrase_cache = {}

    def lookup(self, token):
        return None


@pytest.fixture
def oov_provider():
    return NoVocabProvider()
