"""Alignment modification operators: shift, column insert/delete/merge,
cell merge, single-token split, and trie split, plus lock-constraint checks.

All indices here are 0-based; the JSON encoding (and every user-facing
surface) is 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import Alignment, Cell, ConstraintSet, EMPTY_CONSTRAINTS, make_alignment


class InvalidOp(ValueError):
    code = "InvalidOp"


class InvalidShift(InvalidOp):
    code = "InvalidShift"


class NonEmptyColumn(InvalidOp):
    code = "NonEmptyColumn"


class LastColumn(InvalidOp):
    code = "LastColumn"


class RightmostColumn(InvalidOp):
    code = "RightmostColumn"


class NoNeighbor(InvalidOp):
    code = "NoNeighbor"


class NoMultiTokenText(InvalidOp):
    code = "NoMultiTokenText"


class EmptyColumn(InvalidOp):
    code = "EmptyColumn"


class BadIndex(InvalidOp):
    code = "BadIndex"


# --- op variants -----------------------------------------------------------

@dataclass(frozen=True)
class Shift:
    col: int
    rows: frozenset[int]
    direction: str  # "left" | "right"
    distance: int = 1


@dataclass(frozen=True)
class ColumnInsert:
    position: int  # 0 = left edge, C = right edge


@dataclass(frozen=True)
class ColumnDelete:
    col: int


@dataclass(frozen=True)
class ColumnMerge:
    col: int


@dataclass(frozen=True)
class CellMerge:
    row: int
    col: int
    direction: str


@dataclass(frozen=True)
class SingleTokenSplit:
    col: int
    side: str  # "left" | "right"


@dataclass(frozen=True)
class TrieSplit:
    col: int
    side: str


@dataclass(frozen=True)
class NoOp:
    pass


EditOp = object  # union of the variants above


def shift_op(col: int, rows, direction: str, distance: int = 1) -> Shift:
    return Shift(col, frozenset(rows), direction, distance)


# --- shift -----------------------------------------------------------------

def _shift_row_right(row: list[Cell], col: int, dist: int):
    """Move the cell at `col` right by `dist`, cascading pushes.

    Returns movement records (from_idx, to_idx) in the row's index space,
    which only ever grows on the right here.
    """
    moves: list[tuple[int, int]] = []

    def step(c: int) -> None:
        if c + 1 >= len(row):
            row.append(())
        if row[c + 1]:
            step(c + 1)
        row[c + 1] = row[c]
        row[c] = ()
        moves.append((c, c + 1))

    cur = col
    for _ in range(dist):
        step(cur)
        cur += 1
    return moves


def _coalesce(moves):
    """Chain per-step movement records into net (start, end) per cell."""
    net: dict[int, int] = {}
    for f, t in moves:
        # find the cell currently sitting at f: either a prior move ended there
        # or it is freshly moved from its original position
        start = None
        for s, e in net.items():
            if e == f:
                start = s
                break
        if start is None:
            net[f] = t
        else:
            net[start] = t
    return [(s, e) for s, e in net.items() if s != e]


def shift(a: Alignment, col: int, rows, direction: str, distance: int) -> Alignment:
    new_a, _ = shift_with_moves(a, col, rows, direction, distance)
    return new_a


def shift_with_moves(a: Alignment, col: int, rows, direction: str, distance: int):
    """Apply a (possibly multi-cell) shift; also report every non-empty cell
    movement as (row, from_col, to_col) in the INPUT column coordinates
    (negative to_col means growth past the left edge)."""
    rows = sorted(set(rows))
    if not rows:
        raise InvalidShift("shift needs at least one row")
    if distance < 1:
        raise InvalidShift("shift distance must be >= 1")
    if direction not in ("left", "right"):
        raise InvalidShift(f"unknown direction {direction!r}")
    if not 0 <= col < a.cols:
        raise BadIndex(f"column {col + 1} out of range")
    for r in rows:
        if not 0 <= r < a.rows:
            raise BadIndex(f"row {r + 1} out of range")
        if not a.grid[r][col]:
            raise InvalidShift(f"cell at row {r + 1}, column {col + 1} is empty")

    width = a.cols
    new_rows: dict[int, list[Cell]] = {}
    grow_left: dict[int, int] = {}
    movements: list[tuple[int, int, int]] = []

    for r in rows:
        row = list(a.grid[r])
        if direction == "right":
            moves = _shift_row_right(row, col, distance)
            for f, t in _coalesce(moves):
                movements.append((r, f, t))
            new_rows[r] = row
            grow_left[r] = 0
        else:
            rev = row[::-1]
            moves = _shift_row_right(rev, width - 1 - col, distance)
            new_len = len(rev)
            for f, t in _coalesce(moves):
                movements.append((r, width - 1 - f, width - 1 - t))
            new_rows[r] = rev[::-1]
            grow_left[r] = new_len - width

    total_grow_left = max([0] + list(grow_left.values()))
    grid: list[list[Cell]] = []
    for r in range(a.rows):
        if r in new_rows:
            pad = total_grow_left - grow_left[r]
            grid.append([()] * pad + new_rows[r])
        else:
            grid.append([()] * total_grow_left + list(a.grid[r]))
    max_width = max(len(row) for row in grid)
    for row in grid:
        row.extend([()] * (max_width - len(row)))
    return make_alignment(grid, a.source_texts), movements


# --- column ops ------------------------------------------------------------

def column_insert(a: Alignment, position: int) -> Alignment:
    if not 0 <= position <= a.cols:
        raise BadIndex(f"insert position {position} out of range")
    grid = [list(row[:position]) + [()] + list(row[position:]) for row in a.grid]
    return make_alignment(grid, a.source_texts)


def column_delete(a: Alignment, col: int) -> Alignment:
    if not 0 <= col < a.cols:
        raise BadIndex(f"column {col + 1} out of range")
    if a.cols == 1:
        raise LastColumn("cannot delete the only column")
    if any(row[col] for row in a.grid):
        raise NonEmptyColumn(f"column {col + 1} contains text")
    grid = [list(row[:col]) + list(row[col + 1:]) for row in a.grid]
    return make_alignment(grid, a.source_texts)


def column_merge(a: Alignment, col: int) -> Alignment:
    if not 0 <= col < a.cols:
        raise BadIndex(f"column {col + 1} out of range")
    if col == a.cols - 1:
        raise RightmostColumn("rightmost column has no right neighbor")
    grid = [list(row[:col]) + [row[col] + row[col + 1]] + list(row[col + 2:])
            for row in a.grid]
    return make_alignment(grid, a.source_texts)


def cell_merge(a: Alignment, row: int, col: int, direction: str) -> Alignment:
    if not (0 <= row < a.rows and 0 <= col < a.cols):
        raise BadIndex("cell out of range")
    if not a.grid[row][col]:
        raise InvalidShift(f"cell at row {row + 1}, column {col + 1} is empty")
    target = col - 1 if direction == "left" else col + 1
    if not 0 <= target < a.cols:
        raise NoNeighbor(f"no {direction} neighbor for column {col + 1}")
    grid = [list(r) for r in a.grid]
    # token order always follows document order, so row text is preserved
    if direction == "left":
        grid[row][target] = grid[row][target] + grid[row][col]
    else:
        grid[row][target] = grid[row][col] + grid[row][target]
    grid[row][col] = ()
    return make_alignment(grid, a.source_texts)


# --- splits ----------------------------------------------------------------

def _check_splittable(a: Alignment, col: int) -> None:
    if not 0 <= col < a.cols:
        raise BadIndex(f"column {col + 1} out of range")
    if not any(len(row[col]) >= 2 for row in a.grid):
        raise NoMultiTokenText(f"column {col + 1} has no multi-token text")


def single_token_split(a: Alignment, col: int, side: str) -> Alignment:
    _check_splittable(a, col)
    grid = []
    for row in a.grid:
        cell = row[col]
        if not cell:
            left, right = (), ()
        elif len(cell) == 1:
            left, right = (cell, ()) if side == "left" else ((), cell)
        elif side == "left":
            left, right = cell[:1], cell[1:]
        else:
            left, right = cell[:-1], cell[-1:]
        grid.append(list(row[:col]) + [left, right] + list(row[col + 1:]))
    return make_alignment(grid, a.source_texts)


class PhraseTrie:
    """Word trie over a column's cell texts, read from the chosen side, with
    non-branching chains compressed into phrase edges."""

    def __init__(self, cells, side: str):
        # cells: iterable of (row, token tuple); empty cells are skipped
        self.side = side
        self.root: dict = {}
        self._terminals: dict[int, list[int]] = {}
        entries = [(r, toks) for r, toks in cells if toks]
        if not entries:
            raise EmptyColumn("cannot build a trie over an empty column")
        self._seqs = {}
        for r, toks in entries:
            seq = tuple(toks) if side == "left" else tuple(reversed(toks))
            self._seqs[r] = seq
            node = self.root
            for tok in seq:
                node = node.setdefault(tok, {})
            node.setdefault(None, []).append(r)  # None key marks a word end

    def first_level_len(self, row: int) -> int:
        """Number of tokens of this row's text on the first compressed edge."""
        seq = self._seqs[row]
        node = self.root
        k = 0
        for tok in seq:
            node = node[tok]
            k += 1
            children = [key for key in node if key is not None]
            if None in node or len(children) != 1:
                break
        return k

    def first_level_edges(self) -> set[str]:
        """Phrase labels of the root's compressed edges, in reading order."""
        edges = set()
        for r in self._seqs:
            k = self.first_level_len(r)
            seq = self._seqs[r][:k]
            tokens = seq if self.side == "left" else tuple(reversed(seq))
            edges.add(" ".join(tokens))
        return edges


def build_phrase_trie(cells, side: str) -> PhraseTrie:
    return PhraseTrie(cells, side)


def trie_split(a: Alignment, col: int, side: str) -> Alignment:
    _check_splittable(a, col)
    trie = PhraseTrie(((r, row[col]) for r, row in enumerate(a.grid)), side)
    grid = []
    for r, row in enumerate(a.grid):
        cell = row[col]
        if not cell:
            left, right = (), ()
        else:
            k = trie.first_level_len(r)
            if side == "left":
                left, right = cell[:k], cell[k:]
            else:
                left, right = cell[:len(cell) - k], cell[len(cell) - k:]
        grid.append(list(row[:col]) + [left, right] + list(row[col + 1:]))
    return make_alignment(grid, a.source_texts)


# --- dispatch and validity -------------------------------------------------

def apply(a: Alignment, op) -> Alignment:
    if isinstance(op, NoOp):
        return a
    if isinstance(op, Shift):
        return shift(a, op.col, op.rows, op.direction, op.distance)
    if isinstance(op, ColumnInsert):
        return column_insert(a, op.position)
    if isinstance(op, ColumnDelete):
        return column_delete(a, op.col)
    if isinstance(op, ColumnMerge):
        return column_merge(a, op.col)
    if isinstance(op, CellMerge):
        return cell_merge(a, op.row, op.col, op.direction)
    if isinstance(op, SingleTokenSplit):
        return single_token_split(a, op.col, op.side)
    if isinstance(op, TrieSplit):
        return trie_split(a, op.col, op.side)
    raise InvalidOp(f"unknown op {op!r}")


def is_valid(a: Alignment, op, constraints: ConstraintSet = EMPTY_CONSTRAINTS):
    """(valid, reason). Checks variant preconditions, then lock conflicts:
    an op is rejected when it would change a locked column's cells or move
    content across a locked column boundary."""
    locked = constraints.locked_columns
    if isinstance(op, NoOp):
        return True, ""
    try:
        if isinstance(op, Shift):
            _, movements = shift_with_moves(a, op.col, op.rows, op.direction,
                                            op.distance)
            if locked and any(t < 0 for _, _, t in movements):
                # growth past the left edge renumbers every column
                return False, "shift would renumber locked columns"
            for lock in locked:
                for _, f, t in movements:
                    if min(f, t) <= lock <= max(f, t):
                        return False, f"shift crosses locked column {lock + 1}"
            return True, ""
        if isinstance(op, ColumnInsert):
            if not 0 <= op.position <= a.cols:
                raise BadIndex(f"insert position {op.position} out of range")
            if any(lock >= op.position for lock in locked):
                return False, "insert would renumber a locked column"
            return True, ""
        # remaining variants: dry-run the op for precondition errors
        apply(a, op)
    except InvalidOp as exc:
        return False, str(exc)
    if isinstance(op, ColumnDelete):
        if any(lock >= op.col for lock in locked):
            return False, "delete would move or remove a locked column"
    elif isinstance(op, ColumnMerge):
        if any(lock >= op.col for lock in locked):
            return False, "merge would change or renumber a locked column"
    elif isinstance(op, CellMerge):
        target = op.col - 1 if op.direction == "left" else op.col + 1
        if op.col in locked or target in locked:
            return False, "cell merge touches a locked column"
    elif isinstance(op, (SingleTokenSplit, TrieSplit)):
        if any(lock >= op.col for lock in locked):
            return False, "split would change or renumber a locked column"
    return True, ""


# --- JSON encoding (1-based indices on the wire) ---------------------------

_SIDES = ("left", "right")


def op_to_json(op) -> dict:
    if isinstance(op, Shift):
        return {"type": "shift", "col": op.col + 1,
                "rows": sorted(r + 1 for r in op.rows),
                "direction": op.direction, "distance": op.distance}
    if isinstance(op, ColumnInsert):
        return {"type": "column_insert", "position": op.position + 1}
    if isinstance(op, ColumnDelete):
        return {"type": "column_delete", "col": op.col + 1}
    if isinstance(op, ColumnMerge):
        return {"type": "column_merge", "col": op.col + 1}
    if isinstance(op, CellMerge):
        return {"type": "cell_merge", "row": op.row + 1, "col": op.col + 1,
                "direction": op.direction}
    if isinstance(op, SingleTokenSplit):
        return {"type": "single_token_split", "col": op.col + 1, "side": op.side}
    if isinstance(op, TrieSplit):
        return {"type": "trie_split", "col": op.col + 1, "side": op.side}
    if isinstance(op, NoOp):
        return {"type": "noop"}
    raise InvalidOp(f"unknown op {op!r}")


def op_from_json(doc: dict):
    kind = doc.get("type")
    try:
        if kind == "shift":
            direction = doc["direction"]
            if direction not in _SIDES:
                raise InvalidOp(f"bad direction {direction!r}")
            return Shift(int(doc["col"]) - 1,
                         frozenset(int(r) - 1 for r in doc["rows"]),
                         direction, int(doc.get("distance", 1)))
        if kind == "column_insert":
            return ColumnInsert(int(doc["position"]) - 1)
        if kind == "column_delete":
            return ColumnDelete(int(doc["col"]) - 1)
        if kind == "column_merge":
            return ColumnMerge(int(doc["col"]) - 1)
        if kind == "cell_merge":
            direction = doc["direction"]
            if direction not in _SIDES:
                raise InvalidOp(f"bad direction {direction!r}")
            return CellMerge(int(doc["row"]) - 1, int(doc["col"]) - 1, direction)
        if kind == "single_token_split":
            return SingleTokenSplit(int(doc["col"]) - 1, _side(doc))
        if kind == "trie_split":
            return TrieSplit(int(doc["col"]) - 1, _side(doc))
        if kind == "noop":
            return NoOp()
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidOp(f"malformed op document: {exc}") from exc
    raise InvalidOp(f"unknown op type {kind!r}")


def _side(doc: dict) -> str:
    side = doc["side"]
    if side not in _SIDES:
        raise InvalidOp(f"bad side {side!r}")
    return side


def op_sort_key(op):
    """Canonical ordering: column asc, row set, left before right, distance
    asc; NoOp sorts last. Used for deterministic greedy tie-breaking."""
    if isinstance(op, NoOp):
        return (1, 0, (), 0, 0)
    if isinstance(op, Shift):
        return (0, op.col, tuple(sorted(op.rows)),
                0 if op.direction == "left" else 1, op.distance)
    return (0, getattr(op, "col", getattr(op, "position", 0)), (), 0, 0)
