/** Maps every UI control event to exactly one API request. */

import {
  api,
  ApiRequest,
  OpJson,
  SearchCfg,
  Snapshot,
  Weights,
} from "./api.js";

export type ColumnButton =
  | "insert"
  | "delete"
  | "merge"
  | "split-single-left"
  | "split-single-right"
  | "split-trie-left"
  | "split-trie-right";

export type CellButton =
  | "shift-left"
  | "shift-right"
  | "merge-left"
  | "merge-right";

export type ControlEvent =
  | { kind: "align"; texts: string[]; weights?: Weights; searchCfg?: SearchCfg }
  | { kind: "realign"; steps: number; stepDelayMs?: number }
  | { kind: "cancel" }
  | { kind: "undo" }
  | { kind: "redo" }
  | { kind: "save" }
  | { kind: "load"; document: unknown }
  | { kind: "lock"; col: number; locked: boolean }
  | { kind: "column"; button: ColumnButton; col: number }
  | { kind: "cell"; button: CellButton; row: number; col: number }
  | { kind: "config"; weights?: Weights; searchCfg?: SearchCfg };

function columnOp(button: ColumnButton, col: number): OpJson {
  switch (button) {
    case "insert": // new empty column to the right of this one
      return { type: "column_insert", position: col + 1 };
    case "delete":
      return { type: "column_delete", col };
    case "merge": // merge with the neighbor on the right
      return { type: "column_merge", col };
    case "split-single-left":
      return { type: "single_token_split", col, side: "left" };
    case "split-single-right":
      return { type: "single_token_split", col, side: "right" };
    case "split-trie-left":
      return { type: "trie_split", col, side: "left" };
    case "split-trie-right":
      return { type: "trie_split", col, side: "right" };
  }
}

function cellOp(
  snapshot: Snapshot,
  button: CellButton,
  row: number,
  col: number,
): OpJson {
  const direction = button.endsWith("left") ? "left" : "right";
  const shift = { type: "shift", col, rows: [row], direction, distance: 1 };
  if (button === "shift-left" || button === "shift-right") return shift;
  // merging an empty cell into a neighbor is the same as shifting into it
  const empty = snapshot.grid[row - 1][col - 1].length === 0;
  return empty ? shift : { type: "cell_merge", row, col, direction };
}

/**
 * Turn a control event into its API request, or null when the event needs a
 * session and none exists.
 */
export function dispatchControl(
  snapshot: Snapshot | null,
  event: ControlEvent,
): ApiRequest | null {
  if (event.kind === "align") {
    return api.createSession(event.texts, event.weights, event.searchCfg);
  }
  if (event.kind === "load") {
    return api.importDocument(event.document);
  }
  if (!snapshot) return null;
  const id = snapshot.id;
  switch (event.kind) {
    case "realign":
      return api.realign(id, event.steps, event.stepDelayMs);
    case "cancel":
      return api.cancel(id);
    case "undo":
      return api.undo(id);
    case "redo":
      return api.redo(id);
    case "save":
      return api.exportDocument(id);
    case "lock": {
      const locks = new Set(snapshot.locked_columns);
      if (event.locked) locks.add(event.col);
      else locks.delete(event.col);
      return api.setLocks(id, [...locks].sort((a, b) => a - b));
    }
    case "column":
      return api.applyOp(id, columnOp(event.button, event.col));
    case "cell":
      return api.applyOp(id, cellOp(snapshot, event.button, event.row, event.col));
    case "config":
      return api.setConfig(id, event.weights, event.searchCfg);
  }
}
