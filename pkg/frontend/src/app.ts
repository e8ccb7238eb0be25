/**
 * UI state machine: applies control events through the API and polls while a
 * search runs. Pure apart from the injected http/delay functions, so tests
 * can drive it without a browser or timers.
 */

import { api, ApiRequest, Snapshot } from "./api.js";
import { ControlEvent, dispatchControl } from "./controls.js";

export type Http = (
  req: ApiRequest,
) => Promise<{ status: number; body: unknown }>;

export interface UiState {
  snapshot: Snapshot | null;
  /** One in-flight mutating request at a time; polling may overlap. */
  requestInFlight: boolean;
  notice: string | null;
  /** Last exported save document (the Save control's result). */
  savedDocument: unknown | null;
}

const POLL_MS = 500;

export class App {
  state: UiState = {
    snapshot: null,
    requestInFlight: false,
    notice: null,
    savedDocument: null,
  };

  constructor(
    private http: Http,
    private delay: (ms: number) => Promise<void>,
    public onChange: (state: UiState) => void = () => {},
    private pollMs: number = POLL_MS,
  ) {}

  private update(patch: Partial<UiState>): void {
    this.state = { ...this.state, ...patch };
    this.onChange(this.state);
  }

  /** Handle one control event end to end (including any search polling). */
  async handle(event: ControlEvent): Promise<void> {
    if (this.state.requestInFlight) return;
    const req = dispatchControl(this.state.snapshot, event);
    if (!req) return;
    this.update({ requestInFlight: true, notice: null });
    try {
      const res = await this.http(req);
      if (res.status >= 400) {
        const err = res.body as { message?: string; code?: string } | null;
        this.update({
          requestInFlight: false,
          notice: err?.message ?? err?.code ?? `request failed (${res.status})`,
        });
        await this.refetch();
        return;
      }
      if (event.kind === "save") {
        this.update({ requestInFlight: false, savedDocument: res.body });
        return;
      }
      this.update({
        requestInFlight: false,
        snapshot: res.body as Snapshot,
      });
    } catch (exc) {
      this.update({ requestInFlight: false, notice: String(exc) });
      return;
    }
    await this.pollWhileSearching();
  }

  private async refetch(): Promise<void> {
    const snapshot = this.state.snapshot;
    if (!snapshot) return;
    const res = await this.http(api.getSnapshot(snapshot.id));
    if (res.status < 400) this.update({ snapshot: res.body as Snapshot });
  }

  private async pollWhileSearching(): Promise<void> {
    while (this.state.snapshot?.status === "searching") {
      await this.delay(this.pollMs);
      const res = await this.http(api.getSnapshot(this.state.snapshot.id));
      if (res.status >= 400) {
        const err = res.body as { message?: string } | null;
        this.update({ notice: err?.message ?? "session lost during search" });
        return;
      }
      this.update({ snapshot: res.body as Snapshot });
    }
  }
}
