/** Entry point: wires the store to the renderer on a live page.
 *
 * The API base defaults to the local serve-mode address and can be overridden
 * with ?api=http://host:port in the page URL.
 */

import { Client } from "./api.js";
import { Handlers, renderApp } from "./render.js";
import { Store } from "./state.js";

// named quivers the session API accepts in the "preset" field
export const PRESET_NAMES = [
  "A1",
  "A2",
  "A3-linear",
  "A2tilde-noncyclic",
  "markov3",
  "kronecker2",
];

export function apiBase(search: string): string {
  const param = new URLSearchParams(search).get("api");
  return param ?? "http://127.0.0.1:8000";
}

export function debugMode(search: string): boolean {
  return new URLSearchParams(search).get("debug") === "1";
}

export function bootstrap(root: HTMLElement, client: Client, debug = false): Store {
  const store = new Store(client);
  const handlers: Handlers = {
    onMutate: (vertex) => void store.mutate(vertex),
    onPermute: (perm) => void store.permute(perm),
    onUndo: () => void store.undo(),
    onNeighborhood: (depth) => void store.showNeighborhood(depth),
    onClassinfo: () => void store.refreshClassinfo(),
    onNewSession: (preset) => void store.createSession({ preset }),
    onConsistency: () => void store.checkConsistency(),
  };
  store.subscribe((state) => renderApp(root, state, handlers, PRESET_NAMES, debug));
  return store;
}

declare global {
  interface Window {
    __VITEST__?: boolean;
  }
}

if (typeof window !== "undefined" && !window.__VITEST__) {
  const root = document.getElementById("app");
  if (root) {
    const search = window.location.search;
    bootstrap(root, new Client(apiBase(search)), debugMode(search));
  }
}
