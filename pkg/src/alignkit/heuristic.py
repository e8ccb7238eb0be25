"""Alignment quality score: conciseness (column counts) and coherence
(relevance-weighted embedding variance), combined into one number.

Higher is better. The combined score is
    -w_col * s_col - w_fcol * s_fcol - w_embed * s_embed^2 + w_bias
"""

from __future__ import annotations

from dataclasses import dataclass, asdict

from .embeddings import EmbeddingProvider, phrase_vector
from .model import Alignment


@dataclass(frozen=True)
class Weights:
    w_col: float = 0.2
    w_fcol: float = 0.2
    w_embed: float = 1.0
    w_bias: float = 5.0

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, doc: dict) -> "Weights":
        return cls(**{k: float(doc[k]) for k in ("w_col", "w_fcol", "w_embed", "w_bias")})


@dataclass(frozen=True)
class ScoreBreakdown:
    s_col: float
    s_fcol: float
    s_embed: float
    total: float

    def to_json(self) -> dict:
        return asdict(self)


def min_columns(a: Alignment) -> int:
    """Columns the longest single row would occupy: max filled-cell count."""
    return max(sum(1 for cell in row if cell) for row in a.grid)


def score_columns(a: Alignment) -> float:
    return a.cols / min_columns(a)


def score_filled(a: Alignment) -> float:
    filled = sum(1 for c in range(a.cols) if any(row[c] for row in a.grid))
    return filled / min_columns(a)


def column_relevance(a: Alignment, col: int) -> float:
    """Fraction of rows with any tokens in this column."""
    return sum(1 for row in a.grid if row[col]) / a.rows


def column_variance(a: Alignment, col: int, p: EmbeddingProvider) -> float:
    """Trace of the population covariance of the column's cell phrase vectors.

    Cells with no in-vocabulary token contribute nothing; fewer than two
    embeddable cells means no variation is possible.
    """
    cells = tuple(sorted(row[col] for row in a.grid if row[col]))
    cache = getattr(p, "_colvar_cache", None)
    if cache is None:
        cache = p._colvar_cache = {}
    hit = cache.get(cells)
    if hit is not None:
        return hit
    vecs = [v for v in (phrase_vector(cell, p) for cell in cells) if v is not None]
    n = len(vecs)
    if n < 2:
        result = 0.0
    else:
        d = len(vecs[0])
        mean = [sum(v[k] for v in vecs) / n for k in range(d)]
        # trace of population covariance = mean squared distance from the mean
        result = sum(sum((v[k] - mean[k]) ** 2 for k in range(d)) for v in vecs) / n
    cache[cells] = result
    return result


def score_embed(a: Alignment, p: EmbeddingProvider) -> float:
    return sum(column_relevance(a, c) * column_variance(a, c, p)
               for c in range(a.cols))


def total_score(a: Alignment, p: EmbeddingProvider,
                w: Weights = Weights()) -> ScoreBreakdown:
    s_col = score_columns(a)
    s_fcol = score_filled(a)
    s_embed = score_embed(a, p)
    total = -w.w_col * s_col - w.w_fcol * s_fcol - w.w_embed * s_embed ** 2 + w.w_bias
    return ScoreBreakdown(s_col, s_fcol, s_embed, total)
