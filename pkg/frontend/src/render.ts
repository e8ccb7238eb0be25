/**
 * Pure view: UiState -> a lightweight element tree. The DOM layer turns this
 * into real nodes; tests walk it directly.
 *
 * Controls carry either a ready-made `event` (plain buttons/checkboxes) or a
 * `control` id the DOM layer resolves by reading input values (text areas,
 * the hyperparameter panel, file load).
 */

import { CellTokens, Snapshot } from "./api.js";
import { CellButton, ColumnButton, ControlEvent } from "./controls.js";
import { UiState } from "./app.js";

export interface VNode {
  tag: string;
  attrs: Record<string, string | boolean | number>;
  children: (VNode | string)[];
  event?: ControlEvent;
  control?: string;
}

export function h(
  tag: string,
  attrs: VNode["attrs"] = {},
  children: (VNode | string)[] = [],
  extra: Pick<VNode, "event" | "control"> = {},
): VNode {
  return { tag, attrs, children, ...extra };
}

function button(
  label: string,
  event: ControlEvent,
  disabled: boolean,
  control: string,
): VNode {
  return h("button", { "data-control": control, disabled }, [label], { event });
}

const COLUMN_BUTTONS: [string, ColumnButton][] = [
  ["+", "insert"],
  ["-", "delete"],
  ["M", "merge"],
  ["SSL", "split-single-left"],
  ["SSR", "split-single-right"],
  ["TSL", "split-trie-left"],
  ["TSR", "split-trie-right"],
];

const CELL_BUTTONS: [string, CellButton][] = [
  ["<", "shift-left"],
  [">", "shift-right"],
  ["<+", "merge-left"],
  ["+>", "merge-right"],
];

function columnHeader(snapshot: Snapshot, col: number, frozen: boolean): VNode {
  const locked = snapshot.locked_columns.includes(col);
  const lock = h(
    "input",
    {
      type: "checkbox",
      "data-control": `lock-${col}`,
      checked: locked,
      disabled: frozen,
    },
    [],
    { event: { kind: "lock", col, locked: !locked } },
  );
  const buttons = COLUMN_BUTTONS.map(([label, b]) =>
    button(label, { kind: "column", button: b, col }, frozen, `col-${b}-${col}`),
  );
  return h("th", { class: "column-header" }, [lock, ...buttons]);
}

function cellNode(
  snapshot: Snapshot,
  tokens: CellTokens,
  row: number,
  col: number,
  frozen: boolean,
): VNode {
  const changed = snapshot.changed_cells.some(
    ([r, c]) => r === row && c === col,
  );
  const buttons = CELL_BUTTONS.map(([label, b]) =>
    button(
      label,
      { kind: "cell", button: b, row, col },
      frozen,
      `cell-${b}-${row}-${col}`,
    ),
  );
  return h("td", { class: changed ? "cell changed" : "cell" }, [
    h("span", { class: "tokens" }, [tokens.join(" ")]),
    h("span", { class: "cell-buttons" }, buttons),
  ]);
}

function gridTable(snapshot: Snapshot, frozen: boolean): VNode {
  const cols = Array.from({ length: snapshot.cols }, (_, i) => i + 1);
  const header = h(
    "tr",
    {},
    cols.map((c) => columnHeader(snapshot, c, frozen)),
  );
  const rows = snapshot.grid.map((row, r) =>
    h(
      "tr",
      {},
      row.map((tokens, c) => cellNode(snapshot, tokens, r + 1, c + 1, frozen)),
    ),
  );
  return h("table", { class: "grid" }, [header, ...rows]);
}

function statusArea(state: UiState): VNode {
  const snapshot = state.snapshot;
  let text = "no session";
  if (snapshot) {
    text =
      snapshot.status === "searching"
        ? `searching ${snapshot.progress.done}/${snapshot.progress.limit}`
        : "idle";
  }
  const children: (VNode | string)[] = [
    h("span", { class: "status-text" }, [text]),
  ];
  if (state.notice) {
    children.push(h("span", { class: "notice" }, [state.notice]));
  }
  return h("div", { class: "status" }, children);
}

function scoreArea(snapshot: Snapshot): VNode {
  const s = snapshot.score;
  return h("div", { class: "score" }, [
    `total ${s.total.toFixed(3)} ` +
      `(columns ${s.s_col.toFixed(3)}, filled ${s.s_fcol.toFixed(3)}, ` +
      `variance ${s.s_embed.toFixed(3)})`,
  ]);
}

function configPanel(snapshot: Snapshot, frozen: boolean): VNode {
  const w = snapshot.weights;
  const cfg = snapshot.search_cfg;
  const field = (name: string, value: number): VNode =>
    h("label", { class: "config-field" }, [
      name,
      h("input", {
        type: "number",
        "data-control": `config-${name}`,
        value,
        disabled: frozen,
      }),
    ]);
  return h("fieldset", { class: "config" }, [
    field("w_col", w.w_col),
    field("w_fcol", w.w_fcol),
    field("w_embed", w.w_embed),
    field("w_bias", w.w_bias),
    field("greedy_prob", cfg.greedy_prob),
    field("stall_window", cfg.stall_window),
    field("max_shift_distance", cfg.max_shift_distance),
    field("seed", cfg.seed),
    h("button", { "data-control": "config-apply", disabled: frozen }, ["Apply"], {
      control: "config-apply",
    }),
  ]);
}

export function render(state: UiState): VNode {
  const snapshot = state.snapshot;
  const frozen = state.requestInFlight || snapshot?.status === "searching";
  const children: (VNode | string)[] = [
    h("div", { class: "input-area" }, [
      h("textarea", { "data-control": "texts", disabled: frozen }, []),
      h("button", { "data-control": "align", disabled: frozen }, ["Align"], {
        control: "align",
      }),
    ]),
    statusArea(state),
  ];
  if (snapshot) {
    const searching = snapshot.status === "searching";
    children.push(
      h("div", { class: "actions" }, [
        button("Re-align", { kind: "realign", steps: 50 }, frozen, "realign"),
        button(
          "Re-align (deep)",
          { kind: "realign", steps: 200 },
          frozen,
          "realign-deep",
        ),
        h(
          "button",
          { "data-control": "cancel", disabled: !searching },
          ["Cancel"],
          { event: { kind: "cancel" } },
        ),
        button("Undo", { kind: "undo" }, frozen || !snapshot.can_undo, "undo"),
        button("Redo", { kind: "redo" }, frozen || !snapshot.can_redo, "redo"),
        button("Save", { kind: "save" }, frozen, "save"),
        h("button", { "data-control": "load", disabled: frozen }, ["Load"], {
          control: "load",
        }),
      ]),
      scoreArea(snapshot),
      gridTable(snapshot, frozen),
      configPanel(snapshot, frozen),
    );
  }
  return h("main", { class: "alignkit" }, children);
}

/** Depth-first walk of the element tree. */
export function* walk(node: VNode): Generator<VNode> {
  yield node;
  for (const child of node.children) {
    if (typeof child !== "string") yield* walk(child);
  }
}

export function findControl(root: VNode, id: string): VNode | null {
  for (const node of walk(root)) {
    if (node.attrs["data-control"] === id) return node;
  }
  return null;
}
