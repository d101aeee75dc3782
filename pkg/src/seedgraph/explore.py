"""Breadth-first exploration of mutation classes.

Vertices are deduplicated by exact equality (canonical keys) and numbered
in discovery order; the generator order is mu_1 < ... < mu_n followed by
the adjacent transpositions (1 2) < (2 3) < ...  Edges of the resulting
labelled graph are the mutation edges only; transpositions contribute
extra vertices (the rest of the orbit) but no edges.
"""

from __future__ import annotations

import hashlib
import os
import random
from dataclasses import dataclass, field
from typing import Sequence, Union

from .quiver import Quiver
from .seeds import LabelledSeed

DEFAULT_BUDGET = 100_000
BUDGET_ENV = "SEEDGRAPH_BUDGET"

CLOSED = "closed"
EXHAUSTED = "budget-exhausted"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError as exc:
            raise ValueError(f"bad {BUDGET_ENV} value {raw!r}") from exc
    return DEFAULT_BUDGET


@dataclass
class LabelledGraph:
    """Undirected multigraph with edges labelled by mutation indices (0-based).

    In a closed exploration every vertex has exactly one incident edge-end
    per label (a loop counts once)."""

    n_labels: int
    vertices: list[str]
    edges: list[tuple[int, int, int]]
    annotations: list[str] | None = None

    def check_regular(self) -> None:
        ends: dict[tuple[int, int], int] = {}
        for u, v, lab in self.edges:
            for w in {u, v}:
                ends[(w, lab)] = ends.get((w, lab), 0) + 1
        for w in range(len(self.vertices)):
            for lab in range(self.n_labels):
                if ends.get((w, lab), 0) != 1:
                    raise ValueError(
                        f"vertex {w} has {ends.get((w, lab), 0)} edges with label {lab + 1}"
                    )

    def transition_map(self) -> list[dict[int, int]]:
        """Per-vertex map label -> neighbour; requires label-regularity."""
        self.check_regular()
        out: list[dict[int, int]] = [dict() for _ in self.vertices]
        for u, v, lab in self.edges:
            out[u][lab] = v
            out[v][lab] = u
        return out

    def canonical_form(self) -> tuple:
        """Canonical encoding up to relabelling of vertices (edge labels fixed).

        BFS renumbering from every start vertex; the minimum encoding wins."""
        trans = self.transition_map()
        nv = len(self.vertices)
        best: tuple | None = None
        for root in range(nv):
            order = {root: 0}
            queue = [root]
            enc: list[tuple[int, ...]] = []
            for v in queue:
                row = []
                for lab in range(self.n_labels):
                    t = trans[v][lab]
                    if t not in order:
                        order[t] = len(order)
                        queue.append(t)
                    row.append(order[t])
                enc.append(tuple(row))
            if len(order) == nv:  # connected from this root
                cand = tuple(enc)
                if best is None or cand < best:
                    best = cand
        if best is None:
            raise ValueError("graph is not connected")
        return best

    def isomorphic(self, other: "LabelledGraph") -> bool:
        if self.n_labels != other.n_labels or len(self.vertices) != len(other.vertices):
            return False
        return self.canonical_form() == other.canonical_form()

    def to_json(self) -> dict:
        data = {
            "n_labels": self.n_labels,
            "vertices": list(self.vertices),
            "edges": [[u, v, lab + 1] for u, v, lab in self.edges],
        }
        if self.annotations is not None:
            data["annotations"] = list(self.annotations)
        return data

    @classmethod
    def from_json(cls, data: dict) -> "LabelledGraph":
        return cls(
            n_labels=int(data["n_labels"]),
            vertices=list(data["vertices"]),
            edges=[(int(u), int(v), int(lab) - 1) for u, v, lab in data["edges"]],
            annotations=list(data["annotations"]) if "annotations" in data else None,
        )

    def to_dot(self, name: str = "mutationclass") -> str:
        lines = [f"graph {name} {{"]
        for i, _ in enumerate(self.vertices):
            if self.annotations is not None:
                text = self.annotations[i].replace("\\", "\\\\").replace('"', '\\"')
                lines.append(f'  v{i} [label="{i}: {text}"];')
            else:
                lines.append(f'  v{i} [label="{i}"];')
        for u, v, lab in self.edges:
            lines.append(f'  v{u} -- v{v} [label="{lab + 1}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


Payload = Union[Quiver, LabelledSeed, "SpecializedSeed"]


@dataclass
class ExplorationReport:
    level: str  # "seed" or "quiver"
    status: str  # CLOSED or EXHAUSTED
    graph: LabelledGraph
    payloads: list[Payload]
    frontier_depth: int
    max_arrow_multiplicity: int
    # complete generator tables, filled for expanded vertices only
    mu_neighbors: list[list[int | None]] = field(repr=False, default_factory=list)
    perm_neighbors: list[list[int | None]] = field(repr=False, default_factory=list)
    transpositions: list[tuple[int, ...]] = field(repr=False, default_factory=list)

    @property
    def closed(self) -> bool:
        return self.status == CLOSED

    @property
    def seed_count(self) -> int:
        return len(self.payloads)

    def quiver_of(self, idx: int) -> Quiver:
        p = self.payloads[idx]
        return p if isinstance(p, Quiver) else p.quiver

    def to_json(self, include_graph: bool = True) -> dict:
        data = {
            "level": self.level,
            "status": self.status,
            "seed_count": self.seed_count,
            "max_arrow_multiplicity": self.max_arrow_multiplicity,
            "frontier_depth": self.frontier_depth,
        }
        if include_graph:
            data["graph"] = self.graph.to_json()
        return data


def _annotation(payload: Payload) -> str:
    if isinstance(payload, LabelledSeed):
        rows = "; ".join(" ".join(str(x) for x in row) for row in payload.quiver.b)
        return f"[{rows}] | " + ", ".join(payload.render_cluster())
    if isinstance(payload, SpecializedSeed):
        rows = "; ".join(" ".join(str(x) for x in row) for row in payload.quiver.b)
        return f"[{rows}] | " + ", ".join(str(v) for v in payload.values)
    rows = "; ".join(" ".join(str(x) for x in row) for row in payload.b)
    return f"[{rows}]"


def _transpositions(q: Quiver) -> list[tuple[int, ...]]:
    """Adjacent transpositions preserving the frozen set."""
    out = []
    for i in range(q.n - 1):
        if (i in q.frozen) != (i + 1 in q.frozen):
            continue
        p = list(range(q.n))
        p[i], p[i + 1] = p[i + 1], p[i]
        out.append(tuple(p))
    return out


def _explore(start: Payload, quiver_of, budget: int, level: str, annotate: bool) -> ExplorationReport:
    q0 = quiver_of(start)
    n = q0.n
    mutable = q0.mutable
    transpositions = _transpositions(q0)
    index: dict[tuple, int] = {start.key(): 0}
    payloads: list[Payload] = [start]
    dist = [0]
    mu_nb: list[list[int | None]] = [[None] * n]
    perm_nb: list[list[int | None]] = [[None] * len(transpositions)]
    edges: list[tuple[int, int, int]] = []
    status = CLOSED
    max_mult = quiver_of(start).max_multiplicity()

    def register(nxt: Payload, parent: int) -> int | None:
        k = nxt.key()
        v = index.get(k)
        if v is None:
            if len(payloads) >= budget:
                return None
            v = len(payloads)
            index[k] = v
            payloads.append(nxt)
            dist.append(dist[parent] + 1)
            mu_nb.append([None] * n)
            perm_nb.append([None] * len(transpositions))
            mm = quiver_of(nxt).max_multiplicity()
            nonlocal max_mult
            if mm > max_mult:
                max_mult = mm
        return v

    u = 0
    while u < len(payloads):
        current = payloads[u]
        exhausted = False
        for lab in mutable:
            if mu_nb[u][lab] is not None:
                continue  # known from the other end (mutation is an involution)
            v = register(current.mutate(lab), u)
            if v is None:
                status = EXHAUSTED
                exhausted = True
                continue
            mu_nb[u][lab] = v
            if v != u:
                mu_nb[v][lab] = u
            edges.append((u, v, lab))
        for t_idx, t in enumerate(transpositions):
            if perm_nb[u][t_idx] is not None:
                continue
            v = register(current.permute(t), u)
            if v is None:
                status = EXHAUSTED
                exhausted = True
                continue
            perm_nb[u][t_idx] = v
            if v != u:
                perm_nb[v][t_idx] = u
        if exhausted:
            break
        u += 1
    graph = LabelledGraph(
        n_labels=n,
        vertices=[p.digest for p in payloads],
        edges=edges,
        annotations=[_annotation(p) for p in payloads] if annotate else None,
    )
    return ExplorationReport(
        level=level,
        status=status,
        graph=graph,
        payloads=payloads,
        frontier_depth=max(dist),
        max_arrow_multiplicity=max_mult,
        mu_neighbors=mu_nb,
        perm_neighbors=perm_nb,
        transpositions=transpositions,
    )


def explore_seeds(
    start: Quiver | LabelledSeed, budget: int | None = None, annotate: bool = False
) -> ExplorationReport:
    """Close the orbit of a labelled seed under mutations and transpositions."""
    seed = LabelledSeed.initial(start) if isinstance(start, Quiver) else start
    b = default_budget() if budget is None else budget
    if b < 1:
        raise ValueError("budget must be >= 1")
    return _explore(seed, lambda s: s.quiver, b, "seed", annotate)


def explore_quivers(
    start: Quiver, budget: int | None = None, annotate: bool = False
) -> ExplorationReport:
    """Same exploration at the quiver level (labels matter, clusters dropped)."""
    b = default_budget() if budget is None else budget
    if b < 1:
        raise ValueError("budget must be >= 1")
    return _explore(start, lambda q: q, b, "quiver", annotate)


DEFAULT_PRIME = (1 << 61) - 1


class SpecializationFailure(ArithmeticError):
    """A specialized cluster value hit zero, so the recurrence map breaks down."""


class SpecializedSeed:
    """Seed whose cluster is evaluated at a point of (F_p^*)^n.

    Exchange is replayed on the values directly, so building one of these for
    every vertex of a seed search costs modular arithmetic instead of Laurent
    arithmetic.  Evaluation commutes with exchange and with relabelling, hence
    distinct specialized seeds always come from distinct seeds; colliding ones
    prove nothing.  Vertex counts obtained this way are therefore certified
    lower bounds for the exact seed-level search (see certify_seed_count).
    """

    __slots__ = ("quiver", "values", "p")

    def __init__(self, quiver: Quiver, values: Sequence[int], p: int):
        if len(values) != quiver.n:
            raise ValueError("value count must match quiver size")
        vals = tuple(v % p for v in values)
        if any(v == 0 for v in vals):
            raise SpecializationFailure("zero cluster value")
        self.quiver = quiver
        self.values = vals
        self.p = p

    @classmethod
    def at_point(cls, quiver: Quiver, values: Sequence[int], p: int = DEFAULT_PRIME):
        return cls(quiver, values, p)

    @classmethod
    def from_seed(cls, seed, values: Sequence[int], p: int = DEFAULT_PRIME):
        """Evaluate an exact seed's cluster at a point of (F_p^*)^m."""
        return cls(seed.quiver, [c.evaluate(list(values), mod=p) for c in seed.cluster], p)

    def key(self):
        return (self.quiver.key(), self.values)

    @property
    def digest(self) -> str:
        blob = repr(self.key()).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def mutate(self, i: int) -> "SpecializedSeed":
        q, vals, p = self.quiver, self.values, self.p
        if i in q.frozen:
            raise ValueError(f"vertex {i + 1} is frozen")
        num_in = 1
        num_out = 1
        for k in range(q.n):
            bki = q.b[k][i]
            if bki > 0:
                num_in = num_in * pow(vals[k], bki, p) % p
            elif bki < 0:
                num_out = num_out * pow(vals[k], -bki, p) % p
        new = (num_in + num_out) * pow(vals[i], -1, p) % p
        out = list(vals)
        out[i] = new
        return SpecializedSeed(q.mutate(i), out, p)

    def permute(self, perm: Sequence[int]) -> "SpecializedSeed":
        vals = tuple(self.values[perm[i]] for i in range(self.quiver.n))
        return SpecializedSeed(self.quiver.permute(perm), vals, self.p)

    def apply(self, g) -> "SpecializedSeed":
        out = self
        for i in g.word:
            out = out.mutate(i)
        return out.permute(g.perm)


def certify_seed_count(
    start: Quiver,
    budget: int | None = None,
    p: int = DEFAULT_PRIME,
    attempts: int = 5,
    rng_seed: int = 0,
) -> ExplorationReport:
    """Seed-level exploration on a random specialization over F_p.

    The returned report counts pairwise distinct seeds, so ``seed_count`` is a
    certified lower bound for the exact search and ``budget-exhausted`` status
    is conclusive.  A ``closed`` status is only evidence: an unlucky value
    collision could close the specialized picture early.  Specializations that
    hit a zero value are discarded and redrawn.
    """
    b = default_budget() if budget is None else budget
    rng = random.Random(rng_seed)
    last: SpecializationFailure | None = None
    for _ in range(attempts):
        point = [rng.randrange(1, p) for _ in range(start.n)]
        try:
            seed = SpecializedSeed.at_point(start, point, p)
            return _explore(seed, lambda s: s.quiver, b, "seed-mod-p", False)
        except SpecializationFailure as exc:
            last = exc
    raise SpecializationFailure(f"no usable point after {attempts} draws: {last}")


@dataclass
class SmallnessResult:
    verdict: str  # "small" | "not-small" | "unknown"
    reason: str
    depth: int | None = None


def is_small(q0: Quiver, budget: int | None = None) -> SmallnessResult:
    """Decide whether the mutation class has finitely many quivers.

    Rank <= 2 classes are always small.  Otherwise a quiver-level search
    either closes (small), meets an arrow of multiplicity > 2 (not small),
    or runs out of budget (unknown).
    """
    b = default_budget() if budget is None else budget
    if q0.n <= 2:
        return SmallnessResult("small", "rank <= 2", 0)
    if q0.max_multiplicity() > 2:
        return SmallnessResult("not-small", "arrow multiplicity > 2", 0)
    index = {q0.key(): 0}
    queue = [q0]
    dist = [0]
    u = 0
    transpositions = _transpositions(q0)
    while u < len(queue):
        current = queue[u]
        for gen in list(current.mutable) + [None]:
            nbrs = (
                [current.mutate(gen)]
                if gen is not None
                else [current.permute(t) for t in transpositions]
            )
            for nxt in nbrs:
                if nxt.key() in index:
                    continue
                if len(queue) >= b:
                    return SmallnessResult("unknown", "budget exhausted", dist[u])
                if nxt.max_multiplicity() > 2:
                    return SmallnessResult(
                        "not-small", "arrow multiplicity > 2", dist[u] + 1
                    )
                index[nxt.key()] = len(queue)
                queue.append(nxt)
                dist.append(dist[u] + 1)
        u += 1
    return SmallnessResult("small", f"closed with {len(queue)} quivers", max(dist))
