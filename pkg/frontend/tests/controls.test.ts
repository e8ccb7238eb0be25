/**
 * Request-capture checks: every control maps to exactly one documented API
 * request, and the rendered tree exposes the full control set.
 */

import { describe, expect, it } from "vitest";

import { App, UiState } from "../src/app.js";
import { ControlEvent, dispatchControl } from "../src/controls.js";
import { findControl, render, walk } from "../src/render.js";
import { captureHttp, makeSnapshot } from "./helpers.js";

async function capture(event: ControlEvent, snapshot = makeSnapshot()) {
  const { http, requests } = captureHttp();
  const app = new App(http, async () => {});
  app.state = { ...app.state, snapshot };
  await app.handle(event);
  expect(requests.length).toBe(1);
  return requests[0];
}

describe("input section", () => {
  it("Align posts the text lines", async () => {
    const { http, requests } = captureHttp();
    const app = new App(http, async () => {});
    await app.handle({ kind: "align", texts: ["a b", "b a"] });
    expect(requests).toEqual([
      { method: "POST", path: "/sessions", body: { texts: ["a b", "b a"] } },
    ]);
  });
});

describe("action section", () => {
  it("the two re-align buttons request 50 and 200 steps", async () => {
    expect(await capture({ kind: "realign", steps: 50 })).toEqual({
      method: "POST",
      path: "/sessions/s1/realign",
      body: { steps: 50 },
    });
    expect(await capture({ kind: "realign", steps: 200 })).toEqual({
      method: "POST",
      path: "/sessions/s1/realign",
      body: { steps: 200 },
    });
  });

  it("undo, redo, cancel hit their endpoints", async () => {
    expect((await capture({ kind: "undo" })).path).toBe("/sessions/s1/undo");
    expect((await capture({ kind: "redo" })).path).toBe("/sessions/s1/redo");
    expect((await capture({ kind: "cancel" })).path).toBe(
      "/sessions/s1/cancel",
    );
  });

  it("save exports, load imports", async () => {
    expect(await capture({ kind: "save" })).toEqual({
      method: "GET",
      path: "/sessions/s1/export?format=json",
    });
    const doc = { version: 1, source_texts: ["a"], grid: [[["a"]]] };
    expect(await capture({ kind: "load", document: doc })).toEqual({
      method: "POST",
      path: "/sessions/import",
      body: doc,
    });
  });
});

describe("cell controls", () => {
  it("'>' on cell (3,2) shifts column 2 row 3 right by 1", async () => {
    const req = await capture({
      kind: "cell",
      button: "shift-right",
      row: 3,
      col: 2,
    });
    expect(req).toEqual({
      method: "POST",
      path: "/sessions/s1/ops",
      body: {
        op: {
          type: "shift",
          col: 2,
          rows: [3],
          direction: "right",
          distance: 1,
        },
      },
    });
  });

  it("'<' emits a leftward shift", async () => {
    const req = await capture({
      kind: "cell",
      button: "shift-left",
      row: 1,
      col: 3,
    });
    expect(req.body).toEqual({
      op: { type: "shift", col: 3, rows: [1], direction: "left", distance: 1 },
    });
  });

  it("'<+' and '+>' merge a non-empty cell into its neighbor", async () => {
    const left = await capture({
      kind: "cell",
      button: "merge-left",
      row: 1,
      col: 3,
    });
    expect(left.body).toEqual({
      op: { type: "cell_merge", row: 1, col: 3, direction: "left" },
    });
    const right = await capture({
      kind: "cell",
      button: "merge-right",
      row: 2,
      col: 2,
    });
    expect(right.body).toEqual({
      op: { type: "cell_merge", row: 2, col: 2, direction: "right" },
    });
  });

  it("'+>' on an empty cell is equivalent to '>'", async () => {
    // cell (3,1) of the starting grid is empty
    const req = await capture({
      kind: "cell",
      button: "merge-right",
      row: 3,
      col: 1,
    });
    expect(req.body).toEqual({
      op: { type: "shift", col: 1, rows: [3], direction: "right", distance: 1 },
    });
  });
});

describe("column controls", () => {
  const cases: [string, unknown][] = [
    ["insert", { type: "column_insert", position: 3 }],
    ["delete", { type: "column_delete", col: 2 }],
    ["merge", { type: "column_merge", col: 2 }],
    ["split-single-left", { type: "single_token_split", col: 2, side: "left" }],
    [
      "split-single-right",
      { type: "single_token_split", col: 2, side: "right" },
    ],
    ["split-trie-left", { type: "trie_split", col: 2, side: "left" }],
    ["split-trie-right", { type: "trie_split", col: 2, side: "right" }],
  ];
  for (const [button, op] of cases) {
    it(`'${button}' on column 2 sends its op`, async () => {
      const req = await capture({
        kind: "column",
        button: button as never,
        col: 2,
      });
      expect(req).toEqual({
        method: "POST",
        path: "/sessions/s1/ops",
        body: { op },
      });
    });
  }
});

describe("locks and hyperparameters", () => {
  it("locking column 5 sends the whole lock set", async () => {
    const snapshot = makeSnapshot({ cols: 5, locked_columns: [2] });
    const req = await capture({ kind: "lock", col: 5, locked: true }, snapshot);
    expect(req).toEqual({
      method: "PUT",
      path: "/sessions/s1/locks",
      body: { locked_columns: [2, 5] },
    });
  });

  it("unlocking removes only that column", async () => {
    const snapshot = makeSnapshot({ locked_columns: [2, 3] });
    const req = await capture(
      { kind: "lock", col: 2, locked: false },
      snapshot,
    );
    expect(req.body).toEqual({ locked_columns: [3] });
  });

  it("the panel updates weights through the config endpoint", async () => {
    const weights = { w_col: 0.2, w_fcol: 0.2, w_embed: 2, w_bias: 5 };
    const req = await capture({ kind: "config", weights });
    expect(req).toEqual({
      method: "PUT",
      path: "/sessions/s1/config",
      body: { weights },
    });
  });
});

describe("rendering", () => {
  const state = (snapshot = makeSnapshot()): UiState => ({
    snapshot,
    requestInFlight: false,
    notice: null,
    savedDocument: null,
  });

  it("a 3x4 snapshot renders the full control set", () => {
    const tree = render(state());
    expect(findControl(tree, "align")).toBeTruthy();
    expect(findControl(tree, "realign")).toBeTruthy();
    expect(findControl(tree, "realign-deep")).toBeTruthy();
    for (let c = 1; c <= 4; c++) {
      expect(findControl(tree, `lock-${c}`)).toBeTruthy();
      for (const b of [
        "insert",
        "delete",
        "merge",
        "split-single-left",
        "split-single-right",
        "split-trie-left",
        "split-trie-right",
      ]) {
        expect(findControl(tree, `col-${b}-${c}`)).toBeTruthy();
      }
      for (let r = 1; r <= 3; r++) {
        for (const b of [
          "shift-left",
          "shift-right",
          "merge-left",
          "merge-right",
        ]) {
          expect(findControl(tree, `cell-${b}-${r}-${c}`)).toBeTruthy();
        }
      }
    }
  });

  it("exactly the changed cells are highlighted", () => {
    const tree = render(state(makeSnapshot({ changed_cells: [[1, 3]] })));
    const changed = [...walk(tree)].filter(
      (n) => n.attrs.class === "cell changed",
    );
    expect(changed.length).toBe(1);
    const plain = [...walk(tree)].filter((n) => n.attrs.class === "cell");
    expect(plain.length).toBe(11);
  });

  it("every button control maps to exactly one request", () => {
    const snapshot = makeSnapshot();
    const tree = render(state(snapshot));
    let buttons = 0;
    for (const node of [...walk(tree)]) {
      if (!node.event) continue;
      buttons += 1;
      expect(dispatchControl(snapshot, node.event)).toBeTruthy();
    }
    // 4 columns * (1 lock + 7 buttons) + 12 cells * 4 + 6 action buttons
    expect(buttons).toBe(4 * 8 + 12 * 4 + 6);
  });
});
