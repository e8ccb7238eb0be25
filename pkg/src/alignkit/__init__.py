"""alignkit: interactive multiple-text alignment with human-in-the-loop search."""

from .model import (Alignment, ConstraintSet, degenerate_alignment,
                    make_alignment, parse_tsv, render_table, tokenize)
from .align import gap_penalty, pairwise_align, progressive_align, substitution_score
from .embeddings import (deterministic_test_provider, levenshtein,
                         load_vector_file, phrase_vector)
from .heuristic import ScoreBreakdown, Weights, total_score
from .search import SearchConfig, SearchReport, hill_climb
from .session import Session, load_document, new_session

__version__ = "0.1.0"
