"""Core alignment grid model: tokens, cells, the rectangular alignment table.

A cell is a tuple of tokens (possibly empty); the grid is a tuple of rows,
each row a tuple of cells. Alignments are immutable: every edit produces a
new value, so snapshots and undo are just references.
"""

from __future__ import annotations

import html as _html
import json
from dataclasses import dataclass, field

Cell = tuple[str, ...]


class EmptyText(ValueError):
    """Raised when an input text tokenizes to nothing."""


def tokenize(text: str) -> list[str]:
    """Split on runs of whitespace; never yields empty tokens."""
    return text.split()


def render_cell(cell: Cell) -> str:
    return " ".join(cell)


@dataclass(frozen=True)
class Alignment:
    """Rectangular R x C grid of cells over the original input texts.

    Invariants (checked on construction):
      - every row has the same number of cells (>= 1)
      - concatenating row r's cells reproduces tokenize(source_texts[r])
    """

    grid: tuple[tuple[Cell, ...], ...]
    source_texts: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.grid:
            raise ValueError("alignment needs at least one row")
        if len(self.grid) != len(self.source_texts):
            raise ValueError("grid row count does not match source text count")
        width = len(self.grid[0])
        if width < 1:
            raise ValueError("alignment needs at least one column")
        for r, row in enumerate(self.grid):
            if len(row) != width:
                raise ValueError(f"row {r + 1} has {len(row)} cells, expected {width}")
            flat = [tok for cell in row for tok in cell]
            if flat != tokenize(self.source_texts[r]):
                raise ValueError(f"row {r + 1} does not preserve its source text")

    @property
    def rows(self) -> int:
        return len(self.grid)

    @property
    def cols(self) -> int:
        return len(self.grid[0])

    def column(self, col: int) -> tuple[Cell, ...]:
        return tuple(row[col] for row in self.grid)

    def replace_grid(self, grid) -> "Alignment":
        return Alignment(tuple(tuple(tuple(c) for c in row) for row in grid),
                         self.source_texts)


def degenerate_alignment(text: str) -> Alignment:
    """One-row alignment with one token per cell; the seed for pairwise alignment."""
    tokens = tokenize(text)
    if not tokens:
        raise EmptyText("input text has no tokens")
    grid = (tuple((tok,) for tok in tokens),)
    return Alignment(grid, (text,))


def make_alignment(grid, source_texts) -> Alignment:
    """Build an Alignment from nested lists, normalizing to tuples."""
    return Alignment(
        tuple(tuple(tuple(cell) for cell in row) for row in grid),
        tuple(source_texts),
    )


def alignment_from_grid(grid) -> Alignment:
    """Build an Alignment whose source texts are re-derived from the grid rows."""
    texts = [" ".join(tok for cell in row for tok in cell) for row in grid]
    return make_alignment(grid, texts)


def grid_to_lists(a: Alignment) -> list[list[list[str]]]:
    return [[list(cell) for cell in row] for row in a.grid]


def render_table(a: Alignment, format: str = "tsv") -> str:
    """Serialize the grid. TSV: one line per row, tab-separated cells."""
    if format == "tsv":
        return "\n".join("\t".join(render_cell(c) for c in row) for row in a.grid)
    if format == "json":
        return json.dumps(
            {
                "rows": a.rows,
                "cols": a.cols,
                "source_texts": list(a.source_texts),
                "grid": grid_to_lists(a),
            },
            sort_keys=True,
        )
    if format == "html":
        lines = ["<table>"]
        for row in a.grid:
            cells = "".join(f"<td>{_html.escape(render_cell(c))}</td>" for c in row)
            lines.append(f"<tr>{cells}</tr>")
        lines.append("</table>")
        return "\n".join(lines)
    raise ValueError(f"unknown format: {format!r}")


def parse_tsv(text: str) -> Alignment:
    """Inverse of render_table(tsv); source texts are rebuilt from the grid."""
    rows = text.split("\n")
    grid = [[tuple(field.split()) for field in line.split("\t")] for line in rows]
    return alignment_from_grid(grid)


@dataclass(frozen=True)
class ConstraintSet:
    """Locked column indices (0-based) that the search must not disturb."""

    locked_columns: frozenset[int] = field(default_factory=frozenset)

    def validate(self, a: Alignment) -> None:
        for col in self.locked_columns:
            if not 0 <= col < a.cols:
                raise ValueError(f"locked column {col + 1} out of range")

    def with_lock(self, col: int, locked: bool) -> "ConstraintSet":
        cols = set(self.locked_columns)
        if locked:
            cols.add(col)
        else:
            cols.discard(col)
        return ConstraintSet(frozenset(cols))


EMPTY_CONSTRAINTS = ConstraintSet()
