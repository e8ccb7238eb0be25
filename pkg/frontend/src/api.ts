/** HTTP/JSON contract of the alignment service. All indices are 1-based. */

export interface ApiRequest {
  method: "GET" | "POST" | "PUT";
  path: string;
  body?: unknown;
}

export interface Score {
  s_col: number;
  s_fcol: number;
  s_embed: number;
  total: number;
}

export interface Weights {
  w_col: number;
  w_fcol: number;
  w_embed: number;
  w_bias: number;
}

export interface SearchCfg {
  greedy_prob: number;
  stall_window: number;
  max_steps: number;
  max_shift_distance: number;
  seed: number;
}

/** One grid cell: the tokens it holds (empty array = gap). */
export type CellTokens = string[];

export interface Snapshot {
  id: string;
  source_texts: string[];
  rows: number;
  cols: number;
  grid: CellTokens[][];
  locked_columns: number[];
  score: Score;
  status: "idle" | "searching";
  progress: { done: number; limit: number };
  changed_cells: [number, number][];
  can_undo: boolean;
  can_redo: boolean;
  weights: Weights;
  search_cfg: SearchCfg;
}

export type OpJson = Record<string, unknown>;

export const api = {
  createSession(
    texts: string[],
    weights?: Weights,
    searchCfg?: SearchCfg,
  ): ApiRequest {
    const body: Record<string, unknown> = { texts };
    if (weights) body.weights = weights;
    if (searchCfg) body.search_cfg = searchCfg;
    return { method: "POST", path: "/sessions", body };
  },
  getSnapshot(id: string): ApiRequest {
    return { method: "GET", path: `/sessions/${id}` };
  },
  applyOp(id: string, op: OpJson): ApiRequest {
    return { method: "POST", path: `/sessions/${id}/ops`, body: { op } };
  },
  realign(id: string, steps: number, stepDelayMs?: number): ApiRequest {
    const body: Record<string, unknown> = { steps };
    if (stepDelayMs !== undefined) body.step_delay_ms = stepDelayMs;
    return { method: "POST", path: `/sessions/${id}/realign`, body };
  },
  cancel(id: string): ApiRequest {
    return { method: "POST", path: `/sessions/${id}/cancel` };
  },
  undo(id: string): ApiRequest {
    return { method: "POST", path: `/sessions/${id}/undo` };
  },
  redo(id: string): ApiRequest {
    return { method: "POST", path: `/sessions/${id}/redo` };
  },
  setLocks(id: string, lockedColumns: number[]): ApiRequest {
    return {
      method: "PUT",
      path: `/sessions/${id}/locks`,
      body: { locked_columns: lockedColumns },
    };
  },
  setConfig(id: string, weights?: Weights, searchCfg?: SearchCfg): ApiRequest {
    const body: Record<string, unknown> = {};
    if (weights) body.weights = weights;
    if (searchCfg) body.search_cfg = searchCfg;
    return { method: "PUT", path: `/sessions/${id}/config`, body };
  },
  exportDocument(id: string): ApiRequest {
    return { method: "GET", path: `/sessions/${id}/export?format=json` };
  },
  importDocument(document: unknown): ApiRequest {
    return { method: "POST", path: "/sessions/import", body: document };
  },
};
