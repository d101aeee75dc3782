/** DOM rendering: pure functions from view state to elements.
 *
 * Cluster variables and the group word are inserted as text nodes verbatim,
 * so what the page shows is byte-identical to what the API returned. The
 * quiver is drawn on a circle with arrow multiplicities as edge labels.
 */

import { Neighborhood, QuiverJson, SeedPayload } from "./api.js";
import { ViewState } from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface Point {
  x: number;
  y: number;
}

export function circleLayout(n: number, cx: number, cy: number, r: number): Point[] {
  const pts: Point[] = [];
  for (let i = 0; i < n; i++) {
    const angle = -Math.PI / 2 + (2 * Math.PI * i) / n;
    pts.push({ x: cx + r * Math.cos(angle), y: cy + r * Math.sin(angle) });
  }
  return pts;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  return el;
}

/** Arrows of a quiver as (from, to, multiplicity) with from/to 0-based. */
export function arrows(q: QuiverJson): [number, number, number][] {
  const out: [number, number, number][] = [];
  for (let i = 0; i < q.n; i++) {
    for (let j = i + 1; j < q.n; j++) {
      const m = q.b[i][j];
      if (m > 0) out.push([i, j, m]);
      else if (m < 0) out.push([j, i, -m]);
    }
  }
  return out;
}

export function renderQuiver(
  q: QuiverJson,
  onMutate: (vertex: number) => void,
  busy: boolean,
): SVGSVGElement {
  const size = 260;
  const svg = svgEl("svg", {
    viewBox: `0 0 ${size} ${size}`,
    width: String(size),
    height: String(size),
    class: "quiver",
  });
  const defs = svgEl("defs", {});
  const marker = svgEl("marker", {
    id: "arrowhead",
    markerWidth: "8",
    markerHeight: "8",
    refX: "7",
    refY: "4",
    orient: "auto",
  });
  marker.appendChild(svgEl("path", { d: "M0,0 L8,4 L0,8 z", fill: "#444" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  const pts = circleLayout(q.n, size / 2, size / 2, size / 2 - 36);
  const frozen = new Set(q.frozen.map((v) => v - 1));
  const vr = 16;

  for (const [from, to, mult] of arrows(q)) {
    const a = pts[from];
    const b = pts[to];
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const len = Math.hypot(dx, dy) || 1;
    // trim the segment so the arrowhead meets the vertex circle
    const x1 = a.x + (dx / len) * vr;
    const y1 = a.y + (dy / len) * vr;
    const x2 = b.x - (dx / len) * (vr + 2);
    const y2 = b.y - (dy / len) * (vr + 2);
    svg.appendChild(
      svgEl("line", {
        x1: String(x1),
        y1: String(y1),
        x2: String(x2),
        y2: String(y2),
        stroke: "#444",
        "stroke-width": "1.5",
        "marker-end": "url(#arrowhead)",
        class: "arrow",
      }),
    );
    if (mult > 1) {
      const label = svgEl("text", {
        x: String((x1 + x2) / 2 + (dy / len) * 10),
        y: String((y1 + y2) / 2 - (dx / len) * 10),
        "text-anchor": "middle",
        class: "arrow-mult",
      });
      label.textContent = String(mult);
      svg.appendChild(label);
    }
  }

  pts.forEach((p, i) => {
    const isFrozen = frozen.has(i);
    const g = svgEl("g", {
      class: isFrozen ? "vertex frozen" : "vertex mutable",
      "data-vertex": String(i + 1),
    });
    const circle = svgEl("circle", {
      cx: String(p.x),
      cy: String(p.y),
      r: String(vr),
      fill: isFrozen ? "#dfe3e8" : "#eef4ff",
      stroke: isFrozen ? "#8a94a0" : "#3b6fd4",
      "stroke-width": "1.5",
    });
    const label = svgEl("text", {
      x: String(p.x),
      y: String(p.y + 4),
      "text-anchor": "middle",
      class: "vertex-label",
    });
    label.textContent = String(i + 1);
    g.appendChild(circle);
    g.appendChild(label);
    if (!isFrozen && !busy) {
      g.addEventListener("click", () => onMutate(i + 1));
    }
    svg.appendChild(g);
  });
  return svg;
}

export function renderCluster(seed: SeedPayload): HTMLElement {
  const ol = document.createElement("ol");
  ol.className = "cluster";
  seed.cluster.forEach((entry) => {
    const li = document.createElement("li");
    li.className = "cluster-entry";
    li.textContent = entry; // verbatim: the API's canonical string
    ol.appendChild(li);
  });
  return ol;
}

export function renderWord(word: string): HTMLElement {
  const el = document.createElement("code");
  el.className = "word";
  el.textContent = word;
  return el;
}

export function renderHistory(history: { generator: string }[]): HTMLElement {
  const ul = document.createElement("ul");
  ul.className = "history";
  history.forEach((h, i) => {
    const li = document.createElement("li");
    li.textContent = `${i + 1}. ${h.generator}`;
    ul.appendChild(li);
  });
  return ul;
}

export function renderClassinfo(info: ViewState["classinfo"]): HTMLElement {
  const el = document.createElement("dl");
  el.className = "classinfo";
  const add = (k: string, v: string) => {
    const dt = document.createElement("dt");
    dt.textContent = k;
    const dd = document.createElement("dd");
    dd.textContent = v;
    el.appendChild(dt);
    el.appendChild(dd);
  };
  if (!info) {
    add("class", "not fetched");
  } else if (info.status === "closed") {
    add("status", "closed");
    add("seeds", String(info.seeds));
    add("quiver classes", String(info.same_quiver_classes));
    add("similarity classes", String(info.similarity_classes));
  } else {
    add("status", "unknown");
    if (info.seeds_found !== undefined) add("seeds found", `≥ ${info.seeds_found}`);
    if (info.reason) add("reason", info.reason);
  }
  return el;
}

export function renderNeighborhood(nb: Neighborhood): SVGSVGElement {
  const size = 240;
  const svg = svgEl("svg", {
    viewBox: `0 0 ${size} ${size}`,
    width: String(size),
    height: String(size),
    class: "neighborhood",
  });
  const pts = circleLayout(nb.vertices.length, size / 2, size / 2, size / 2 - 24);
  for (const [u, v, lab] of nb.edges) {
    const a = pts[u];
    const b = pts[v];
    if (u === v) continue; // mutation edges never loop
    svg.appendChild(
      svgEl("line", {
        x1: String(a.x),
        y1: String(a.y),
        x2: String(b.x),
        y2: String(b.y),
        stroke: "#888",
        "stroke-width": "1",
      }),
    );
    const label = svgEl("text", {
      x: String((a.x + b.x) / 2),
      y: String((a.y + b.y) / 2 - 3),
      "text-anchor": "middle",
      class: "edge-label",
    });
    label.textContent = String(lab);
    svg.appendChild(label);
  }
  pts.forEach((p, i) => {
    svg.appendChild(
      svgEl("circle", {
        cx: String(p.x),
        cy: String(p.y),
        r: i === nb.center ? "7" : "5",
        fill: i === nb.center ? "#3b6fd4" : "#bbc6d8",
      }),
    );
    const label = svgEl("text", {
      x: String(p.x),
      y: String(p.y - 10),
      "text-anchor": "middle",
      class: "digest-label",
    });
    label.textContent = nb.vertices[i].slice(0, 6);
    svg.appendChild(label);
  });
  return svg;
}

export interface Handlers {
  onMutate: (vertex: number) => void;
  onPermute: (perm: number[]) => void;
  onUndo: () => void;
  onNeighborhood: (depth: number) => void;
  onClassinfo: () => void;
  onNewSession: (preset: string) => void;
  onConsistency: () => void;
}

/** Adjacent transpositions as 1-based image arrays, e.g. n=3 -> [2,1,3], [1,3,2]. */
export function adjacentTranspositions(n: number): number[][] {
  const out: number[][] = [];
  for (let i = 0; i < n - 1; i++) {
    const perm = Array.from({ length: n }, (_, k) => k + 1);
    [perm[i], perm[i + 1]] = [perm[i + 1], perm[i]];
    out.push(perm);
  }
  return out;
}

export function renderApp(
  root: HTMLElement,
  state: ViewState,
  handlers: Handlers,
  presets: string[],
  debug = false,
): void {
  root.textContent = "";

  const bar = document.createElement("div");
  bar.className = "topbar";
  const select = document.createElement("select");
  select.className = "preset-select";
  presets.forEach((p) => {
    const opt = document.createElement("option");
    opt.value = p;
    opt.textContent = p;
    select.appendChild(opt);
  });
  const newBtn = document.createElement("button");
  newBtn.className = "new-session";
  newBtn.textContent = "new session";
  newBtn.disabled = state.busy;
  newBtn.addEventListener("click", () => handlers.onNewSession(select.value));
  bar.appendChild(select);
  bar.appendChild(newBtn);
  root.appendChild(bar);

  if (state.error) {
    const err = document.createElement("div");
    err.className = "error";
    err.textContent = state.error;
    root.appendChild(err);
  }

  if (!state.seed) {
    const hint = document.createElement("p");
    hint.className = "hint";
    hint.textContent = "pick a preset and start a session";
    root.appendChild(hint);
    return;
  }

  const main = document.createElement("div");
  main.className = "columns";

  const left = document.createElement("div");
  left.className = "panel quiver-panel";
  const quiverTitle = document.createElement("h2");
  quiverTitle.textContent = "quiver (click a vertex to mutate)";
  left.appendChild(quiverTitle);
  left.appendChild(renderQuiver(state.seed.quiver, handlers.onMutate, state.busy));

  const controls = document.createElement("div");
  controls.className = "controls";
  adjacentTranspositions(state.seed.quiver.n).forEach((perm, i) => {
    const btn = document.createElement("button");
    btn.className = "permute";
    btn.textContent = `(${i + 1} ${i + 2})`;
    btn.disabled = state.busy;
    btn.addEventListener("click", () => handlers.onPermute(perm));
    controls.appendChild(btn);
  });
  const undoBtn = document.createElement("button");
  undoBtn.className = "undo";
  undoBtn.textContent = "undo";
  undoBtn.disabled = state.busy || state.history.length === 0;
  undoBtn.addEventListener("click", handlers.onUndo);
  controls.appendChild(undoBtn);
  left.appendChild(controls);
  main.appendChild(left);

  const mid = document.createElement("div");
  mid.className = "panel seed-panel";
  const clusterTitle = document.createElement("h2");
  clusterTitle.textContent = "cluster";
  mid.appendChild(clusterTitle);
  mid.appendChild(renderCluster(state.seed));
  const wordTitle = document.createElement("h2");
  wordTitle.textContent = "word";
  mid.appendChild(wordTitle);
  mid.appendChild(renderWord(state.word));
  const histTitle = document.createElement("h2");
  histTitle.textContent = "history";
  mid.appendChild(histTitle);
  mid.appendChild(renderHistory(state.history));
  main.appendChild(mid);

  const right = document.createElement("div");
  right.className = "panel info-panel";
  const ciTitle = document.createElement("h2");
  ciTitle.textContent = "class";
  right.appendChild(ciTitle);
  right.appendChild(renderClassinfo(state.classinfo));
  const ciBtn = document.createElement("button");
  ciBtn.className = "classinfo-refresh";
  ciBtn.textContent = "fetch class info";
  ciBtn.disabled = state.busy;
  ciBtn.addEventListener("click", handlers.onClassinfo);
  right.appendChild(ciBtn);

  const nbTitle = document.createElement("h2");
  nbTitle.textContent = "neighborhood";
  right.appendChild(nbTitle);
  const depthInput = document.createElement("input");
  depthInput.type = "number";
  depthInput.min = "0";
  depthInput.max = "6";
  depthInput.value = "1";
  depthInput.className = "depth-input";
  const nbBtn = document.createElement("button");
  nbBtn.className = "neighborhood-show";
  nbBtn.textContent = "show";
  nbBtn.disabled = state.busy;
  nbBtn.addEventListener("click", () => handlers.onNeighborhood(Number(depthInput.value)));
  right.appendChild(depthInput);
  right.appendChild(nbBtn);
  if (state.neighborhood) {
    right.appendChild(renderNeighborhood(state.neighborhood));
  }

  if (debug) {
    const rtTitle = document.createElement("h2");
    rtTitle.textContent = "round-trip";
    right.appendChild(rtTitle);
    const rtBtn = document.createElement("button");
    rtBtn.className = "consistency-check";
    rtBtn.textContent = "replay history on server";
    rtBtn.disabled = state.busy;
    rtBtn.addEventListener("click", handlers.onConsistency);
    right.appendChild(rtBtn);
    if (state.consistency !== null) {
      const res = document.createElement("span");
      res.className = "consistency-result";
      res.textContent = state.consistency ? " consistent" : " MISMATCH";
      right.appendChild(res);
    }
  }
  main.appendChild(right);

  root.appendChild(main);
}
