/** Typed client for the seedgraph session API.
 *
 * All algebra happens server-side; this module only moves JSON. Vertices and
 * permutation images are 1-based on the wire, matching the rendered variable
 * names x1..xn.
 */

export interface QuiverJson {
  n: number;
  b: number[][];
  frozen: number[]; // 1-based vertex numbers
}

export interface SeedPayload {
  quiver: QuiverJson;
  cluster: string[]; // canonical Laurent strings, displayed verbatim
  digest: string;
}

export interface HistoryEntry {
  generator: string; // "m1" or "(1 2)"
  digest: string;
}

export interface SessionPayload {
  id: string;
  seed: SeedPayload;
  word: string;
  history: HistoryEntry[];
}

export interface ClassInfo {
  status: string; // "closed" | "unknown"
  seeds?: number;
  same_quiver_classes?: number;
  similarity_classes?: number;
  max_arrow_multiplicity?: number;
  seeds_found?: number;
  reason?: string;
}

export interface Neighborhood {
  depth: number;
  center: number;
  n_labels: number;
  vertices: string[];
  edges: [number, number, number][]; // [u, v, 1-based label]
  annotations?: string[];
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    detail: string,
  ) {
    super(detail);
  }
}

async function parseError(res: Response): Promise<never> {
  let detail = `${res.status} ${res.statusText}`;
  try {
    const body = await res.json();
    if (typeof body?.detail === "string") detail = body.detail;
  } catch {
    // keep the status line
  }
  throw new ApiError(res.status, detail);
}

export class Client {
  constructor(public readonly base: string) {}

  private async req<T>(method: string, path: string, body?: unknown): Promise<T> {
    const res = await fetch(this.base + path, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!res.ok) await parseError(res);
    return (await res.json()) as T;
  }

  createSession(body: { preset?: string; quiver?: QuiverJson }): Promise<{ id: string; seed: SeedPayload }> {
    return this.req("POST", "/session", body);
  }

  getSession(id: string): Promise<SessionPayload> {
    return this.req("GET", `/session/${id}`);
  }

  mutate(id: string, vertex: number): Promise<SessionPayload> {
    return this.req("POST", `/session/${id}/mutate`, { vertex });
  }

  permute(id: string, perm: number[]): Promise<SessionPayload> {
    return this.req("POST", `/session/${id}/permute`, { perm });
  }

  undo(id: string): Promise<SessionPayload> {
    return this.req("POST", `/session/${id}/undo`);
  }

  word(id: string): Promise<{ word: string }> {
    return this.req("GET", `/session/${id}/word`);
  }

  neighborhood(id: string, depth: number): Promise<Neighborhood> {
    return this.req("GET", `/session/${id}/neighborhood?depth=${depth}`);
  }

  classinfo(id: string): Promise<ClassInfo> {
    return this.req("GET", `/session/${id}/classinfo`);
  }

  /** Only available when the server runs with debug enabled. */
  consistency(id: string): Promise<{ consistent: boolean }> {
    return this.req("GET", `/session/${id}/debug/consistency`);
  }
}
