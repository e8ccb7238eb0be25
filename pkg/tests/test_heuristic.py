import random

import pytest

from alignkit.embeddings import load_vector_file
from alignkit.heuristic import (Weights, column_relevance, column_variance,
                                min_columns, score_columns, score_embed,
                                score_filled, total_score)
from conftest import A15, A17, FIXTURES, grid


def test_min_columns_alignment_17():
    assert min_columns(A17) == 4  # "flu infection" is one cell


def test_min_columns_trivial():
    assert min_columns(grid([["a", "b", "c"]])) == 3
    assert min_columns(grid([["a", ""], ["", "b"]])) == 1


def test_score_columns_alignment_17():
    assert score_columns(A17) == pytest.approx(1.25)


def test_score_columns_minimal_width():
    assert score_columns(grid([["a", "b", "c"]])) == 1.0


def test_score_columns_alignment_15():
    assert score_columns(A15) == pytest.approx(1.75)


def test_score_filled_alignment_17():
    assert score_filled(A17) == pytest.approx(1.0)


def test_score_filled_skips_empty_interior_column():
    a = grid([["a", "", "b"], ["c", "", ""]])
    assert score_filled(a) == pytest.approx(1.0)


def test_score_filled_alignment_15():
    assert score_filled(A15) == pytest.approx(1.75)


def test_relevance_alignment_17():
    assert [column_relevance(A17, c) for c in range(5)] == \
        pytest.approx([2 / 3, 1.0, 2 / 3, 0.0, 2 / 3])


def test_relevance_single_row():
    assert column_relevance(grid([["a"]]), 0) == 1.0


def test_variance_identical_cells(test_provider):
    a = grid([["flu"], ["flu"], ["flu"]])
    assert column_variance(a, 0, test_provider) == pytest.approx(0.0)


def test_variance_single_cell(test_provider):
    a = grid([["flu"], [""], [""]])
    assert column_variance(a, 0, test_provider) == 0.0


def test_variance_hand_oracle(tmp_path):
    path = tmp_path / "v.txt"
    path.write_text("cat 1 0\ndog 0 1\n")
    p = load_vector_file(path)
    a = grid([["cat"], ["dog"]])
    # population covariance of rows (1,0),(0,1): trace 0.25 + 0.25
    assert column_variance(a, 0, p) == pytest.approx(0.5)


def test_score_embed_single_text_columns(test_provider):
    assert score_embed(A15, test_provider) == 0.0


def test_score_embed_identical_columns(test_provider):
    a = grid([["a", "b"], ["a", "b"]])
    assert score_embed(a, test_provider) == pytest.approx(0.0)


def test_score_embed_weighted_by_relevance(tmp_path):
    path = tmp_path / "v.txt"
    path.write_text("cat 1 0\ndog 0 1\n")
    p = load_vector_file(path)
    a = grid([["cat"], ["dog"]])
    assert score_embed(a, p) == pytest.approx(0.5)


def test_total_score_trivial_grid(oov_provider):
    b = total_score(grid([["a"]]), oov_provider)
    assert (b.s_col, b.s_fcol, b.s_embed) == (1.0, 1.0, 0.0)
    assert b.total == pytest.approx(4.6)


def test_total_score_alignment_17_without_embeddings(oov_provider):
    b = total_score(A17, oov_provider)
    assert b.total == pytest.approx(4.55)


def test_total_score_bias_linearity(oov_provider):
    w = Weights()
    doubled = Weights(w_bias=10.0)
    a = A17
    assert (total_score(a, oov_provider, doubled).total
            == pytest.approx(total_score(a, oov_provider, w).total + 5.0))


def test_components_nonnegative_and_ordered(test_provider):
    rng = random.Random(5)
    words = ["w%d" % i for i in range(12)]
    for _ in range(50):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 6)
        g = [[" ".join(rng.choices(words, k=rng.randint(0, 2))) for _ in range(cols)]
             for _ in range(rows)]
        for row in g:  # every row needs at least one token
            if not any(c for c in row):
                row[rng.randrange(cols)] = rng.choice(words)
        a = grid(g)
        b = total_score(a, test_provider)
        assert b.s_col >= 1.0
        assert b.s_col >= b.s_fcol > 0.0
        assert b.s_embed >= 0.0


def test_row_permutation_invariance(test_provider):
    a = grid([["a", "b"], ["c", ""], ["", "d"]])
    b = grid([["", "d"], ["a", "b"], ["c", ""]])
    assert total_score(a, test_provider) == total_score(b, test_provider)


def test_deleting_empty_column_never_decreases_total(test_provider):
    from alignkit.ops import ColumnDelete, apply
    a = grid([["a", "", "b"], ["c", "", ""]])
    before = total_score(a, test_provider).total
    after = total_score(apply(a, ColumnDelete(1)), test_provider).total
    assert after >= before
