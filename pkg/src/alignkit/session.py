"""Mutable editing session: current alignment, locks, weights, undo/redo
history, search status, and save/load documents.

One session has a single writer at a time: a running search marks the
session busy and every other mutation is rejected until it finishes.
"""

from __future__ import annotations

import json
import secrets
import threading
import time
from collections import deque
from dataclasses import replace

from .align import progressive_align
from .embeddings import EmbeddingProvider
from .heuristic import ScoreBreakdown, Weights, total_score
from .model import Alignment, ConstraintSet, make_alignment
from . import ops as op_mod
from .ops import (CellMerge, ColumnDelete, ColumnInsert, ColumnMerge, EditOp,
                  InvalidOp, NoOp, Shift, SingleTokenSplit, TrieSplit)
from .search import SearchConfig, SearchReport, hill_climb

SCHEMA_VERSION = 1
HISTORY_BOUND = 100


class SessionError(Exception):
    code = "SessionError"


class EmptyInput(SessionError):
    code = "EmptyInput"


class Busy(SessionError):
    code = "Busy"


class NothingToUndo(SessionError):
    code = "NothingToUndo"


class NothingToRedo(SessionError):
    code = "NothingToRedo"


class BadColumn(SessionError):
    code = "BadColumn"


class SchemaMismatch(SessionError):
    code = "SchemaMismatch"


class CorruptGrid(SessionError):
    code = "CorruptGrid"


def _remap_locks(constraints: ConstraintSet, op, old_cols: int,
                 new_cols: int) -> ConstraintSet:
    """Keep locked-column indices pointing at the same columns after a
    structural user edit."""
    locks = set(constraints.locked_columns)
    if isinstance(op, ColumnInsert):
        locks = {c + 1 if c >= op.position else c for c in locks}
    elif isinstance(op, ColumnDelete):
        locks = {c - 1 if c > op.col else c for c in locks if c != op.col}
    elif isinstance(op, ColumnMerge):
        locks = {c - 1 if c > op.col else c for c in locks}
    elif isinstance(op, (SingleTokenSplit, TrieSplit)):
        locks = {c + 1 if c > op.col else c for c in locks}
    elif isinstance(op, Shift) and op.direction == "left" and new_cols > old_cols:
        grow = new_cols - old_cols
        locks = {c + grow for c in locks}
    return ConstraintSet(frozenset(locks))


class Session:
    def __init__(self, alignment: Alignment, provider: EmbeddingProvider,
                 search_cfg: SearchConfig = SearchConfig(),
                 weights: Weights = Weights(),
                 session_id: str | None = None,
                 history_bound: int = HISTORY_BOUND):
        self.id = session_id or secrets.token_hex(8)
        self.alignment = alignment
        self.provider = provider
        self.constraints = ConstraintSet()
        self.weights = weights
        self.search_cfg = search_cfg
        self.undo_stack: deque = deque(maxlen=history_bound)
        self.redo_stack: deque = deque(maxlen=history_bound)
        self.status = "idle"
        self.progress = (0, 0)
        self.changed_cells: set[tuple[int, int]] = set()
        self._state_lock = threading.Lock()
        self._cancel = False

    # -- guards -------------------------------------------------------------

    def _require_idle(self) -> None:
        if self.status != "idle":
            raise Busy("a search is already running")

    # -- edits --------------------------------------------------------------

    def apply_user_op(self, op) -> None:
        """Apply a manual edit; locks never block the user's own edits."""
        with self._state_lock:
            self._require_idle()
            old = self.alignment
            new = op_mod.apply(old, op)  # raises InvalidOp, session untouched
            self.undo_stack.append((old, self.constraints))
            self.redo_stack.clear()
            self.alignment = new
            self.constraints = _remap_locks(self.constraints, op,
                                            old.cols, new.cols)

    def set_lock(self, col: int, locked: bool) -> None:
        with self._state_lock:
            self._require_idle()
            if not 0 <= col < self.alignment.cols:
                raise BadColumn(f"column {col + 1} out of range")
            self.constraints = self.constraints.with_lock(col, locked)

    def set_config(self, weights: Weights | None = None,
                   search_cfg: SearchConfig | None = None) -> None:
        with self._state_lock:
            self._require_idle()
            if weights is not None:
                self.weights = weights
            if search_cfg is not None:
                self.search_cfg = search_cfg

    def undo(self) -> None:
        with self._state_lock:
            self._require_idle()
            if not self.undo_stack:
                raise NothingToUndo("nothing to undo")
            self.redo_stack.append((self.alignment, self.constraints))
            self.alignment, self.constraints = self.undo_stack.pop()

    def redo(self) -> None:
        with self._state_lock:
            self._require_idle()
            if not self.redo_stack:
                raise NothingToRedo("nothing to redo")
            self.undo_stack.append((self.alignment, self.constraints))
            self.alignment, self.constraints = self.redo_stack.pop()

    # -- search -------------------------------------------------------------

    def realign(self, steps: int | None = None,
                step_delay: float = 0.0) -> SearchReport:
        """Refine the current alignment within the lock constraints.

        Runs synchronously; callers wanting async behavior use
        begin_realign() on the request thread (so Busy surfaces there) and
        run_realign() on a worker, polling status/progress.
        """
        started = self.begin_realign(steps)
        return self.run_realign(*started, step_delay=step_delay)

    def begin_realign(self, steps: int | None = None):
        """Take the writer role and flip to searching; raises Busy if taken."""
        with self._state_lock:
            self._require_idle()
            self.status = "searching"
            self._cancel = False
            cfg = self.search_cfg if steps is None else replace(
                self.search_cfg, max_steps=steps)
            self.progress = (0, cfg.max_steps)
            return cfg, self.alignment, self.constraints

    def run_realign(self, cfg: SearchConfig, before: Alignment,
                    constraints: ConstraintSet,
                    step_delay: float = 0.0) -> SearchReport:
        def on_progress(done: int, limit: int) -> None:
            self.progress = (done, limit)
            if step_delay > 0.0:
                time.sleep(step_delay)

        try:
            report = hill_climb(before, constraints, cfg, self.provider,
                                self.weights,
                                cancelled=lambda: self._cancel,
                                progress=on_progress)
        except BaseException:
            with self._state_lock:
                self.status = "idle"
            raise
        with self._state_lock:
            self.undo_stack.append((before, constraints))
            self.redo_stack.clear()
            self.alignment = report.final
            self.changed_cells = diff_cells(before, report.final)
            self.status = "idle"
        return report

    def cancel(self) -> bool:
        """Ask a running search to stop at the next step boundary."""
        if self.status != "searching":
            return False
        self._cancel = True
        return True

    # -- scoring ------------------------------------------------------------

    def score(self) -> ScoreBreakdown:
        return total_score(self.alignment, self.provider, self.weights)

    # -- persistence --------------------------------------------------------

    def save_document(self) -> dict:
        return {
            "version": SCHEMA_VERSION,
            "source_texts": list(self.alignment.source_texts),
            "grid": [[list(cell) for cell in row] for row in self.alignment.grid],
            "locked_columns": sorted(c + 1 for c in self.constraints.locked_columns),
            "weights": self.weights.to_json(),
            "search_cfg": self.search_cfg.to_json(),
        }

    def save_json(self) -> str:
        return json.dumps(self.save_document(), sort_keys=True)


def diff_cells(before: Alignment, after: Alignment) -> set[tuple[int, int]]:
    """Positional cell diff after right-padding the narrower grid; a moved
    cell shows up at both its old and new coordinates."""
    width = max(before.cols, after.cols)
    changed = set()
    for r in range(before.rows):
        for c in range(width):
            b = before.grid[r][c] if c < before.cols else ()
            a = after.grid[r][c] if c < after.cols else ()
            if a != b:
                changed.add((r, c))
    return changed


def new_session(texts, provider: EmbeddingProvider,
                search_cfg: SearchConfig = SearchConfig(),
                weights: Weights = Weights(),
                initial_search: bool = True,
                history_bound: int = HISTORY_BOUND) -> Session:
    """Build a session: progressive alignment, then the default capped search."""
    lines = [t for t in texts if t.strip()]
    if not lines:
        raise EmptyInput("no non-empty input lines")
    session = Session(_align(lines, provider), provider, search_cfg, weights,
                      history_bound=history_bound)
    if initial_search:
        session.status = "searching"
        report = hill_climb(session.alignment, session.constraints,
                            search_cfg, provider, weights)
        session.alignment = report.final
        session.status = "idle"
    return session


def _align(lines, provider) -> Alignment:
    # surfaces aligning status only through new_session's caller; kept simple
    return progressive_align(lines, provider)


def load_document(doc: dict, provider: EmbeddingProvider,
                  history_bound: int = HISTORY_BOUND) -> Session:
    if not isinstance(doc, dict) or doc.get("version") != SCHEMA_VERSION:
        raise SchemaMismatch(f"unsupported document version {doc.get('version')!r}"
                             if isinstance(doc, dict) else "not a save document")
    try:
        alignment = make_alignment(doc["grid"], doc["source_texts"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptGrid(f"invalid grid: {exc}") from exc
    try:
        weights = Weights.from_json(doc["weights"]) if "weights" in doc else Weights()
        search_cfg = (SearchConfig.from_json(doc["search_cfg"])
                      if "search_cfg" in doc else SearchConfig())
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaMismatch(f"invalid config: {exc}") from exc
    session = Session(alignment, provider, search_cfg, weights,
                      history_bound=history_bound)
    locks = set()
    for col in doc.get("locked_columns", []):
        if not isinstance(col, int) or not 1 <= col <= alignment.cols:
            raise CorruptGrid(f"locked column {col!r} out of range")
        locks.add(col - 1)
    session.constraints = ConstraintSet(frozenset(locks))
    return session
