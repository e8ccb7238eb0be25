import { spawn, ChildProcess } from "node:child_process";
import { fileURLToPath } from "node:url";

import { ApiRequest, CellTokens, Snapshot } from "../src/api.js";
import { Http } from "../src/app.js";

export const DIABETICS_TEXTS = [
  "23 diabetics with flu",
  "six diabetic patients",
  "patients with flu",
];

/** The three texts aligned into four columns (the worked starting state). */
export const GRID_START: CellTokens[][] = [
  [["23"], ["diabetics"], ["with"], ["flu"]],
  [["six"], ["diabetic"], ["patients"], []],
  [[], ["patients"], ["with"], ["flu"]],
];

/** GRID_START after shifting row 3 of column 2 right by one. */
export const GRID_AFTER_SHIFT: CellTokens[][] = [
  [["23"], ["diabetics"], ["with"], ["flu"], []],
  [["six"], ["diabetic"], ["patients"], [], []],
  [[], [], ["patients"], ["with"], ["flu"]],
];

export function makeSnapshot(partial: Partial<Snapshot> = {}): Snapshot {
  return {
    id: "s1",
    source_texts: DIABETICS_TEXTS,
    rows: 3,
    cols: 4,
    grid: GRID_START,
    locked_columns: [],
    score: { s_col: 1, s_fcol: 1, s_embed: 0, total: 4.6 },
    status: "idle",
    progress: { done: 0, limit: 0 },
    changed_cells: [],
    can_undo: false,
    can_redo: false,
    weights: { w_col: 0.2, w_fcol: 0.2, w_embed: 1, w_bias: 5 },
    search_cfg: {
      greedy_prob: 0.5,
      stall_window: 2,
      max_steps: 50,
      max_shift_distance: 3,
      seed: 0,
    },
    ...partial,
  };
}

/** An http stub that records every request and replays canned responses. */
export function captureHttp(
  responses: { status: number; body: unknown }[] = [],
): { http: Http; requests: ApiRequest[] } {
  const requests: ApiRequest[] = [];
  const http: Http = async (req) => {
    requests.push(req);
    return responses.shift() ?? { status: 200, body: makeSnapshot() };
  };
  return { http, requests };
}

export function fetchHttp(base: string): Http {
  return async (req) => {
    const res = await fetch(base + req.path, {
      method: req.method,
      headers:
        req.body !== undefined ? { "content-type": "application/json" } : {},
      body: req.body !== undefined ? JSON.stringify(req.body) : undefined,
    });
    let body: unknown = null;
    try {
      body = await res.json();
    } catch {
      body = null;
    }
    return { status: res.status, body };
  };
}

export const realDelay = (ms: number) =>
  new Promise<void>((resolve) => setTimeout(resolve, ms));

export const FIXTURE_VECTORS = fileURLToPath(
  new URL("../../tests/fixtures/diabetics_vectors.txt", import.meta.url),
);

export interface RunningServer {
  proc: ChildProcess;
  base: string;
}

/** Start the HTTP service and wait until it answers. */
export async function startServer(
  port: number,
  embeddingArgs: string[],
): Promise<RunningServer> {
  const proc = spawn(
    "python3",
    ["-m", "alignkit.cli", "serve", "--port", String(port), ...embeddingArgs],
    { stdio: "ignore" },
  );
  const base = `http://127.0.0.1:${port}`;
  const deadline = Date.now() + 30000;
  while (Date.now() < deadline) {
    try {
      const res = await fetch(`${base}/sessions/probe`);
      if (res.status === 404) return { proc, base };
    } catch {
      // not listening yet
    }
    await realDelay(100);
  }
  proc.kill();
  throw new Error("alignment service did not start");
}

export function stopServer(server: RunningServer): void {
  server.proc.kill();
}
