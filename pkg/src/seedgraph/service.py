"""JSON service for interactive seed sessions.

Each session holds one labelled seed and the word of generators applied so
far.  Mutations and relabellings arrive over HTTP, are applied with the same
exact arithmetic as the library, and the full state (seed, history, normal
form of the word) is returned after every step.  Vertices are 1-based on the
wire, matching the rendered variable names x1..xn.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .explore import LabelledGraph, explore_seeds, is_small
from .quiver import Quiver, preset
from .quotient import Relation, SAME_QUIVER, SIMILAR_QUIVER
from .seeds import GroupElement, LabelledSeed, parse_perm, render_perm

DEFAULT_CLASSINFO_BUDGET = 300
NEIGHBORHOOD_DEPTH_MAX = 6


class CreateSessionRequest(BaseModel):
    preset: str | None = None
    quiver: dict | None = None


class MutateRequest(BaseModel):
    vertex: int


class PermuteRequest(BaseModel):
    perm: list[int]


@dataclass
class Session:
    id: str
    seeds: list[LabelledSeed]  # initial first, current last
    words: list[GroupElement]  # accumulated element after each step
    history: list[dict] = field(default_factory=list)  # {"generator", "digest"}
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def initial(self) -> LabelledSeed:
        return self.seeds[0]

    @property
    def current(self) -> LabelledSeed:
        return self.seeds[-1]

    @property
    def word(self) -> GroupElement:
        return self.words[-1]


def _seed_payload(s: LabelledSeed) -> dict:
    return {
        "quiver": s.quiver.to_json(),
        "cluster": s.render_cluster(),
        "digest": s.digest,
    }


def _session_payload(sess: Session) -> dict:
    return {
        "id": sess.id,
        "seed": _seed_payload(sess.current),
        "word": sess.word.render(),
        "history": list(sess.history),
    }


def _neighborhood(seed: LabelledSeed, depth: int) -> LabelledGraph:
    """Mutation-only ball around the seed, out to the given depth."""
    index = {seed.key(): 0}
    nodes = [seed]
    dist = [0]
    edges: list[tuple[int, int, int]] = []
    seen_edges: set[tuple[int, int, int]] = set()
    mutable = seed.quiver.mutable
    u = 0
    while u < len(nodes):
        if dist[u] < depth:
            for lab in mutable:
                nxt = nodes[u].mutate(lab)
                v = index.get(nxt.key())
                if v is None:
                    v = len(nodes)
                    index[nxt.key()] = v
                    nodes.append(nxt)
                    dist.append(dist[u] + 1)
                e = (min(u, v), max(u, v), lab)
                if e not in seen_edges:
                    seen_edges.add(e)
                    edges.append(e)
        u += 1
    return LabelledGraph(
        n_labels=seed.quiver.n,
        vertices=[s.digest for s in nodes],
        edges=edges,
        annotations=[", ".join(s.render_cluster()) for s in nodes],
    )


def create_app(
    classinfo_budget: int = DEFAULT_CLASSINFO_BUDGET, debug: bool = False
) -> FastAPI:
    app = FastAPI(title="seedgraph service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}
    classinfo_cache: dict[str, dict] = {}

    def _get(sid: str) -> Session:
        try:
            return sessions[sid]
        except KeyError:
            raise HTTPException(404, f"unknown session {sid!r}") from None

    @app.post("/session")
    def create_session(req: CreateSessionRequest) -> dict:
        if (req.preset is None) == (req.quiver is None):
            raise HTTPException(400, "provide exactly one of 'preset' or 'quiver'")
        try:
            q = preset(req.preset) if req.preset is not None else Quiver.from_json(req.quiver)
        except (ValueError, TypeError, KeyError) as exc:
            raise HTTPException(400, f"bad quiver: {exc}") from None
        seed = LabelledSeed.initial(q)
        sid = uuid.uuid4().hex[:12]
        sessions[sid] = Session(sid, [seed], [GroupElement.identity(q.n)])
        return {"id": sid, "seed": _seed_payload(seed)}

    @app.get("/session/{sid}")
    def get_session(sid: str) -> dict:
        sess = _get(sid)
        with sess.lock:
            return _session_payload(sess)

    @app.post("/session/{sid}/mutate")
    def mutate(sid: str, req: MutateRequest) -> dict:
        sess = _get(sid)
        with sess.lock:
            n = sess.current.quiver.n
            i = req.vertex - 1
            if not 0 <= i < n:
                raise HTTPException(400, f"vertex must be between 1 and {n}")
            if i in sess.current.quiver.frozen:
                raise HTTPException(409, f"vertex {req.vertex} is frozen")
            nxt = sess.current.mutate(i)
            sess.seeds.append(nxt)
            sess.words.append(sess.word.append_mu(i))
            sess.history.append({"generator": f"m{req.vertex}", "digest": nxt.digest})
            return _session_payload(sess)

    @app.post("/session/{sid}/permute")
    def permute(sid: str, req: PermuteRequest) -> dict:
        sess = _get(sid)
        with sess.lock:
            n = sess.current.quiver.n
            p = tuple(v - 1 for v in req.perm)
            try:
                nxt = sess.current.permute(p)
            except (ValueError, IndexError) as exc:
                raise HTTPException(400, f"bad permutation: {exc}") from None
            sess.seeds.append(nxt)
            sess.words.append(sess.word.append_perm(p))
            sess.history.append(
                {"generator": render_perm(p) or "e", "digest": nxt.digest}
            )
            return _session_payload(sess)

    @app.post("/session/{sid}/undo")
    def undo(sid: str) -> dict:
        sess = _get(sid)
        with sess.lock:
            if len(sess.seeds) == 1:
                raise HTTPException(400, "nothing to undo")
            sess.seeds.pop()
            sess.words.pop()
            sess.history.pop()
            return _session_payload(sess)

    @app.get("/session/{sid}/word")
    def word(sid: str) -> dict:
        sess = _get(sid)
        with sess.lock:
            return {"word": sess.word.render()}

    @app.get("/session/{sid}/neighborhood")
    def neighborhood(sid: str, depth: int = 1) -> dict:
        sess = _get(sid)
        if not 0 <= depth <= NEIGHBORHOOD_DEPTH_MAX:
            raise HTTPException(
                400, f"depth must be between 0 and {NEIGHBORHOOD_DEPTH_MAX}"
            )
        with sess.lock:
            graph = _neighborhood(sess.current, depth)
            return {"depth": depth, "center": 0, **graph.to_json()}

    @app.get("/session/{sid}/classinfo")
    def classinfo(sid: str) -> dict:
        sess = _get(sid)
        with sess.lock:
            qkey = sess.initial.quiver.digest
            cached = classinfo_cache.get(qkey)
            if cached is None:
                # growing arrow multiplicities mean an infinite class and
                # runaway cluster entries: answer without exact arithmetic
                small = is_small(sess.initial.quiver, budget=classinfo_budget)
                if small.verdict == "not-small":
                    classinfo_cache[qkey] = {"status": "unknown", "reason": small.reason}
                    return dict(classinfo_cache[qkey])
                report = explore_seeds(sess.initial, budget=classinfo_budget)
                if report.closed:
                    cached = {
                        "status": "closed",
                        "seeds": report.seed_count,
                        "same_quiver_classes": len(Relation(SAME_QUIVER).classes(report)),
                        "similarity_classes": len(Relation(SIMILAR_QUIVER).classes(report)),
                        "max_arrow_multiplicity": report.max_arrow_multiplicity,
                    }
                else:
                    cached = {"status": "unknown", "seeds_found": report.seed_count}
                classinfo_cache[qkey] = cached
            return dict(cached)

    if debug:

        @app.get("/session/{sid}/debug/consistency")
        def consistency(sid: str) -> dict:
            sess = _get(sid)
            with sess.lock:
                n = sess.initial.quiver.n
                replay = sess.initial
                for step in sess.history:
                    gen = step["generator"]
                    if gen.startswith("m"):
                        replay = replay.mutate(int(gen[1:]) - 1)
                    elif gen == "e":
                        replay = replay.permute(tuple(range(n)))
                    else:
                        replay = replay.permute(parse_perm(gen, n))
                word_ok = sess.initial.apply(sess.word) == sess.current
                replay_ok = replay == sess.current
                return {"consistent": word_ok and replay_ok}

    return app
