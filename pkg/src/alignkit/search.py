"""Stochastic hill-climbing over alignments using shift operators only.

Each step enumerates candidate shifts (plus "do nothing"), filters them
against the lock constraints, scores the resulting alignments, and either
takes the best one (greedy) or a uniformly random one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from .heuristic import ScoreBreakdown, Weights, total_score
from .model import Alignment, ConstraintSet, EMPTY_CONSTRAINTS, make_alignment
from .ops import NoOp, Shift, is_valid, op_sort_key, shift

DEFAULT_STEPS = 50
DEEP_STEPS = 200


@dataclass(frozen=True)
class SearchConfig:
    greedy_prob: float = 0.5
    stall_window: int = 2
    max_steps: int = DEFAULT_STEPS
    max_shift_distance: int = 3
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.greedy_prob <= 1.0:
            raise ValueError("greedy_prob must be in [0, 1]")
        if self.stall_window < 1:
            raise ValueError("stall_window must be >= 1")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        if self.max_shift_distance < 1:
            raise ValueError("max_shift_distance must be >= 1")

    def to_json(self) -> dict:
        return {"greedy_prob": self.greedy_prob, "stall_window": self.stall_window,
                "max_steps": self.max_steps,
                "max_shift_distance": self.max_shift_distance, "seed": self.seed}

    @classmethod
    def from_json(cls, doc: dict) -> "SearchConfig":
        return cls(greedy_prob=float(doc.get("greedy_prob", 0.5)),
                   stall_window=int(doc.get("stall_window", 2)),
                   max_steps=int(doc.get("max_steps", DEFAULT_STEPS)),
                   max_shift_distance=int(doc.get("max_shift_distance", 3)),
                   seed=int(doc.get("seed", 0)))


@dataclass
class SearchReport:
    steps_taken: int
    ops: list
    trajectory: list[ScoreBreakdown]
    stop_reason: str  # stalled | step_limit | cancelled
    final: Alignment

    def to_json(self) -> dict:
        from .ops import op_to_json
        return {"steps_taken": self.steps_taken,
                "ops": [op_to_json(op) for op in self.ops],
                "trajectory": [s.to_json() for s in self.trajectory],
                "stop_reason": self.stop_reason}


def trim_edges(a: Alignment, constraints: ConstraintSet = EMPTY_CONSTRAINTS) -> Alignment:
    """Drop fully-empty leading/trailing columns from a search candidate.

    Leading columns are kept whenever locks exist (trimming would renumber
    them); trailing trimming stops at the last non-empty or locked column.
    """
    empty = [not any(row[c] for row in a.grid) for c in range(a.cols)]
    locked = constraints.locked_columns
    start = 0
    if not locked:
        while start < a.cols - 1 and empty[start]:
            start += 1
    end = a.cols
    max_keep = max([c + 1 for c in locked], default=0)
    while end - 1 > start and end > max_keep and empty[end - 1]:
        end -= 1
    if start == 0 and end == a.cols:
        return a
    grid = [row[start:end] for row in a.grid]
    return make_alignment(grid, a.source_texts)


def enumerate_shifts(a: Alignment, cfg: SearchConfig):
    """Shifts for every non-empty cell, for groups of cells with identical
    text in one column, and for each whole column, in both directions and
    distances 1..max_shift_distance."""
    ops = []
    for col in range(a.cols):
        filled = [r for r in range(a.rows) if a.grid[r][col]]
        groups = {frozenset((r,)) for r in filled}
        by_text: dict = {}
        for r in filled:
            by_text.setdefault(a.grid[r][col], []).append(r)
        for rows in by_text.values():
            if len(rows) >= 2:
                groups.add(frozenset(rows))
        if len(filled) >= 2:
            groups.add(frozenset(filled))
        for rows in sorted(groups, key=sorted):
            for direction in ("left", "right"):
                for dist in range(1, cfg.max_shift_distance + 1):
                    ops.append(Shift(col, rows, direction, dist))
    return ops


def candidate_ops(a: Alignment, constraints: ConstraintSet, cfg: SearchConfig):
    """Valid, effectful, deduplicated (op, resulting alignment) pairs in
    canonical order; always includes (NoOp, a)."""
    candidates = [(NoOp(), a)]
    seen = {a.grid}
    for op in sorted(enumerate_shifts(a, cfg), key=op_sort_key):
        ok, _ = is_valid(a, op, constraints)
        if not ok:
            continue
        result = trim_edges(shift(a, op.col, op.rows, op.direction, op.distance),
                            constraints)
        if result.grid in seen:
            continue
        seen.add(result.grid)
        candidates.append((op, result))
    return candidates


def step(a: Alignment, constraints: ConstraintSet, cfg: SearchConfig,
         rng: random.Random, current: ScoreBreakdown, provider, weights: Weights):
    """One search step: (op, alignment, score, improved)."""
    scored = []
    for op, cand in candidate_ops(a, constraints, cfg):
        breakdown = current if cand is a else total_score(cand, provider, weights)
        scored.append((op, cand, breakdown))
    best = scored[0]
    for entry in scored[1:]:
        if entry[2].total > best[2].total:
            best = entry
    improved = best[2].total > current.total
    if rng.random() < cfg.greedy_prob:
        chosen = best
    else:
        chosen = scored[rng.randrange(len(scored))]
    return chosen[0], chosen[1], chosen[2], improved


def hill_climb(a: Alignment, constraints: ConstraintSet, cfg: SearchConfig,
               provider, weights: Weights = Weights(),
               cancelled: Optional[Callable[[], bool]] = None,
               progress: Optional[Callable[[int, int], None]] = None) -> SearchReport:
    """Iterate steps until no candidate improves for `stall_window` steps in
    a row, the step limit is hit, or cancellation is requested."""
    constraints.validate(a)
    rng = random.Random(cfg.seed)
    current = a
    score = total_score(current, provider, weights)
    trajectory = [score]
    ops: list = []
    stall = 0
    steps_taken = 0
    stop_reason = "step_limit"
    while steps_taken < cfg.max_steps:
        if cancelled is not None and cancelled():
            stop_reason = "cancelled"
            break
        op, current, score, improved = step(current, constraints, cfg, rng,
                                            score, provider, weights)
        steps_taken += 1
        ops.append(op)
        trajectory.append(score)
        if progress is not None:
            progress(steps_taken, cfg.max_steps)
        stall = 0 if improved else stall + 1
        if stall >= cfg.stall_window:
            stop_reason = "stalled"
            break
    return SearchReport(steps_taken, ops, trajectory, stop_reason, current)
