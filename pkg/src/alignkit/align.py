"""Initial multiple alignment: progressive pairwise dynamic programming.

Two alignments are merged column-by-column with an affine-gap DP. Matched
column pairs earn a substitution score (embedding-distance based when
possible, normalized Levenshtein otherwise); each maximal run of gap columns
is charged -1 to open and -0.1 per extra column.
"""

from __future__ import annotations

import math

from .embeddings import EmbeddingProvider, levenshtein, normalize, phrase_vector
from .model import Alignment, Cell, degenerate_alignment, make_alignment, render_cell

GAP_OPEN = -1.0
GAP_EXTEND = -0.1

NEG_INF = float("-inf")


def gap_penalty(length: int) -> float:
    """Penalty for one gap run: short gaps cost nearly as much as long ones."""
    return -1.0 * (1.0 * min(length, 1) + 0.1 * max(length - 1, 0))


def _mean_normalized_vector(texts, p: EmbeddingProvider):
    vecs = []
    for text in texts:
        v = phrase_vector(text.split(), p, normalize_result=True)
        if v is not None:
            vecs.append(v)
    if not vecs:
        return None
    n = len(vecs)
    return tuple(sum(col) / n for col in zip(*vecs))


def substitution_score(col_a, col_b, p: EmbeddingProvider) -> float:
    """Score for aligning two columns' non-empty cell texts together.

    Embedding branch requires an embeddable text on each side; otherwise an
    averaged, length-normalized Levenshtein similarity is used.
    """
    if not col_a or not col_b:
        return 0.0
    mean_a = _mean_normalized_vector(col_a, p)
    mean_b = _mean_normalized_vector(col_b, p)
    if mean_a is not None and mean_b is not None:
        diff = math.sqrt(sum((x - y) ** 2 for x, y in zip(mean_a, mean_b)))
        return 10.0 * (6.0 - diff)
    total = 0.0
    for ta in col_a:
        for tb in col_b:
            denom = max(len(ta), len(tb))
            total += levenshtein(ta, tb) / denom if denom else 0.0
    return 60.0 * (1.0 - total / (len(col_a) * len(col_b)))


def _column_texts(a: Alignment, col: int) -> list[str]:
    return [render_cell(c) for c in a.column(col) if c]


# DP states: M = columns matched, X = gap in b (an a-column against gaps),
# Y = gap in a. Traceback tie-break prefers M, then X, then Y.
_M, _X, _Y = 0, 1, 2


def pairwise_align(a: Alignment, b: Alignment, p: EmbeddingProvider) -> Alignment:
    """Merge two alignments end-to-end; rows of `a` stack above rows of `b`."""
    ca, cb = a.cols, b.cols
    texts_a = [_column_texts(a, i) for i in range(ca)]
    texts_b = [_column_texts(b, j) for j in range(cb)]
    sub = [[substitution_score(texts_a[i], texts_b[j], p) for j in range(cb)]
           for i in range(ca)]

    m = [[NEG_INF] * (cb + 1) for _ in range(ca + 1)]
    x = [[NEG_INF] * (cb + 1) for _ in range(ca + 1)]
    y = [[NEG_INF] * (cb + 1) for _ in range(ca + 1)]
    m[0][0] = 0.0
    for i in range(1, ca + 1):
        x[i][0] = gap_penalty(i)
    for j in range(1, cb + 1):
        y[0][j] = gap_penalty(j)

    for i in range(1, ca + 1):
        for j in range(1, cb + 1):
            m[i][j] = sub[i - 1][j - 1] + max(m[i - 1][j - 1],
                                              x[i - 1][j - 1],
                                              y[i - 1][j - 1])
            x[i][j] = max(m[i - 1][j] + GAP_OPEN,
                          x[i - 1][j] + GAP_EXTEND,
                          y[i - 1][j] + GAP_OPEN)
            y[i][j] = max(m[i][j - 1] + GAP_OPEN,
                          y[i][j - 1] + GAP_EXTEND,
                          x[i][j - 1] + GAP_OPEN)

    i, j = ca, cb
    scores = (m[i][j], x[i][j], y[i][j])
    state = scores.index(max(scores))

    steps: list[int] = []
    while i > 0 or j > 0:
        steps.append(state)
        if state == _M:
            prev = (m[i - 1][j - 1], x[i - 1][j - 1], y[i - 1][j - 1])
            target = m[i][j] - sub[i - 1][j - 1]
            state = _pick(prev, target)
            i, j = i - 1, j - 1
        elif state == _X:
            prev = (m[i - 1][j] + GAP_OPEN, x[i - 1][j] + GAP_EXTEND,
                    y[i - 1][j] + GAP_OPEN)
            state = _pick(prev, x[i][j])
            i -= 1
        else:
            prev = (m[i][j - 1] + GAP_OPEN, y[i][j - 1] + GAP_EXTEND,
                    x[i][j - 1] + GAP_OPEN)
            # prev tuple above is ordered (M, Y, X); remap to (M, X, Y)
            prev = (prev[0], prev[2], prev[1])
            state = _pick(prev, y[i][j])
            j -= 1
        if i == 0 and j == 0:
            break

    steps.reverse()
    empty_a: Cell = ()
    columns: list[tuple[Cell, ...]] = []
    ia = jb = 0
    for st in steps:
        if st == _M:
            columns.append(a.column(ia) + b.column(jb))
            ia += 1
            jb += 1
        elif st == _X:
            columns.append(a.column(ia) + (empty_a,) * b.rows)
            ia += 1
        else:
            columns.append((empty_a,) * a.rows + b.column(jb))
            jb += 1

    grid = [[columns[c][r] for c in range(len(columns))]
            for r in range(a.rows + b.rows)]
    return make_alignment(grid, a.source_texts + b.source_texts)


def _pick(values, target: float) -> int:
    """Index of the first value matching target, preferring M > X > Y."""
    best = None
    for idx, v in enumerate(values):
        if v == NEG_INF:
            continue
        if math.isclose(v, target, rel_tol=1e-12, abs_tol=1e-12):
            return idx
        if best is None or v > values[best]:
            best = idx
    # float drift fallback: closest value wins
    return best if best is not None else 0


def progressive_align(texts, p: EmbeddingProvider) -> Alignment:
    """Fold the input texts left-to-right through pairwise alignment."""
    texts = list(texts)
    if not texts:
        raise ValueError("no input texts")
    result = degenerate_alignment(texts[0])
    for text in texts[1:]:
        result = pairwise_align(result, degenerate_alignment(text), p)
    return result
