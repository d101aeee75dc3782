/** View state and actions.
 *
 * The state only ever changes to what the last successful API response said
 * (no optimistic updates), and at most one request per session is in flight:
 * actions are ignored while busy, and the UI disables its inputs.
 */

import { ApiError, ClassInfo, Client, HistoryEntry, Neighborhood, QuiverJson, SeedPayload } from "./api.js";

export interface ViewState {
  sessionId: string | null;
  seed: SeedPayload | null;
  word: string;
  history: HistoryEntry[];
  classinfo: ClassInfo | null;
  neighborhood: Neighborhood | null;
  consistency: boolean | null; // debug round-trip check result
  busy: boolean;
  error: string | null;
}

export function initialState(): ViewState {
  return {
    sessionId: null,
    seed: null,
    word: "e",
    history: [],
    classinfo: null,
    neighborhood: null,
    consistency: null,
    busy: false,
    error: null,
  };
}

type Listener = (s: ViewState) => void;

export class Store {
  state: ViewState = initialState();
  private listeners: Listener[] = [];

  constructor(private client: Client) {}

  subscribe(fn: Listener): void {
    this.listeners.push(fn);
    fn(this.state);
  }

  private set(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    for (const fn of this.listeners) fn(this.state);
  }

  /** Run one API call; the view changes only from its response. */
  private async act(call: () => Promise<Partial<ViewState>>): Promise<void> {
    if (this.state.busy) return;
    this.set({ busy: true, error: null });
    try {
      this.set({ ...(await call()), busy: false });
    } catch (err) {
      const msg = err instanceof ApiError ? err.message : String(err);
      this.set({ busy: false, error: msg });
    }
  }

  async createSession(body: { preset?: string; quiver?: QuiverJson }): Promise<void> {
    await this.act(async () => {
      const created = await this.client.createSession(body);
      return {
        sessionId: created.id,
        seed: created.seed,
        word: "e",
        history: [],
        classinfo: null,
        neighborhood: null,
        consistency: null,
      };
    });
  }

  /** Apply a session response; the neighborhood and any round-trip check
   * belonged to the old seed. */
  private fromSession(s: { seed: SeedPayload; word: string; history: HistoryEntry[] }): Partial<ViewState> {
    return { seed: s.seed, word: s.word, history: s.history, neighborhood: null, consistency: null };
  }

  async mutate(vertex: number): Promise<void> {
    const id = this.state.sessionId;
    if (!id) return;
    await this.act(async () => this.fromSession(await this.client.mutate(id, vertex)));
  }

  async permute(perm: number[]): Promise<void> {
    const id = this.state.sessionId;
    if (!id) return;
    await this.act(async () => this.fromSession(await this.client.permute(id, perm)));
  }

  async undo(): Promise<void> {
    const id = this.state.sessionId;
    if (!id) return;
    await this.act(async () => this.fromSession(await this.client.undo(id)));
  }

  async showNeighborhood(depth: number): Promise<void> {
    const id = this.state.sessionId;
    if (!id) return;
    await this.act(async () => ({ neighborhood: await this.client.neighborhood(id, depth) }));
  }

  async refreshClassinfo(): Promise<void> {
    const id = this.state.sessionId;
    if (!id) return;
    await this.act(async () => ({ classinfo: await this.client.classinfo(id) }));
  }

  /** Debug only: ask the server to replay the history and compare. */
  async checkConsistency(): Promise<void> {
    const id = this.state.sessionId;
    if (!id) return;
    await this.act(async () => ({
      consistency: (await this.client.consistency(id)).consistent,
    }));
  }
}
