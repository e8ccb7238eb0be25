/**
 * Scripted click sequence against the real HTTP service: load the worked
 * starting grid, click ">" on cell (3,2), and end with the shifted grid.
 */

import { afterAll, beforeAll, expect, it } from "vitest";

import { App } from "../src/app.js";
import {
  DIABETICS_TEXTS,
  FIXTURE_VECTORS,
  GRID_AFTER_SHIFT,
  GRID_START,
  RunningServer,
  fetchHttp,
  realDelay,
  startServer,
  stopServer,
} from "./helpers.js";

let server: RunningServer;

beforeAll(async () => {
  server = await startServer(8791, ["--embeddings", FIXTURE_VECTORS]);
}, 40000);

afterAll(() => stopServer(server));

it("load + '>' on cell (3,2) yields the shifted grid", async () => {
  const app = new App(fetchHttp(server.base), realDelay, () => {}, 50);

  await app.handle({
    kind: "load",
    document: {
      version: 1,
      source_texts: DIABETICS_TEXTS,
      grid: GRID_START,
    },
  });
  expect(app.state.snapshot?.grid).toEqual(GRID_START);

  await app.handle({ kind: "cell", button: "shift-right", row: 3, col: 2 });
  expect(app.state.notice).toBeNull();
  expect(app.state.snapshot?.grid).toEqual(GRID_AFTER_SHIFT);
}, 20000);

it("the same session replayed by direct API calls matches the click script", async () => {
  const http = fetchHttp(server.base);
  const created = await http({
    method: "POST",
    path: "/sessions/import",
    body: { version: 1, source_texts: DIABETICS_TEXTS, grid: GRID_START },
  });
  expect(created.status).toBe(201);
  const id = (created.body as { id: string }).id;
  const after = await http({
    method: "POST",
    path: `/sessions/${id}/ops`,
    body: {
      op: { type: "shift", col: 2, rows: [3], direction: "right", distance: 1 },
    },
  });
  expect((after.body as { grid: unknown }).grid).toEqual(GRID_AFTER_SHIFT);
}, 20000);
