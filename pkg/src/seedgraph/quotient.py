"""Quotients of closed mutation classes and their symmetry groups.

A closed exploration is the action graph of the mutation group on a seed
class.  This module partitions its vertices by the relations of interest
(equal quivers, similar quivers, equal stabilizers), folds the graph onto
the classes, and realizes the class symmetries as explicit permutations of
the seed set, built by propagating a single value base -> y along the
action graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .explore import ExplorationReport, LabelledGraph
from .quiver import Quiver
from .seeds import GroupElement, alpha_tuple, quiver_apply

SAME_QUIVER = "same-quiver"
SIMILAR_QUIVER = "similar-quiver"
SAME_STABILIZER = "same-stabilizer"
_KINDS = (SAME_QUIVER, SIMILAR_QUIVER, SAME_STABILIZER)


class PropagationConflict(RuntimeError):
    """The relation is not compatible with the group action on this class."""


@dataclass(frozen=True)
class Relation:
    kind: str

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown relation {self.kind!r}; pick one of {_KINDS}")

    def classes(self, report: ExplorationReport) -> list[list[int]]:
        """Equivalence classes as sorted index lists, ordered by least member."""
        _require_closed(report)
        if self.kind == SAME_QUIVER:
            groups: dict = {}
            for i in range(report.seed_count):
                groups.setdefault(report.quiver_of(i).key(), []).append(i)
            return sorted(groups.values())
        if self.kind == SIMILAR_QUIVER:
            # bucket by quiver first, then merge buckets with similar quivers
            groups = {}
            for i in range(report.seed_count):
                groups.setdefault(report.quiver_of(i).key(), []).append(i)
            merged: list[list[int]] = []
            for members in sorted(groups.values()):
                q = report.quiver_of(members[0])
                for cls in merged:
                    if report.quiver_of(cls[0]).similar(q):
                        cls.extend(members)
                        break
                else:
                    merged.append(list(members))
            return sorted(sorted(c) for c in merged)
        classes: list[list[int]] = []
        for i in range(report.seed_count):
            for cls in classes:
                if same_stabilizer(report, cls[0], i):
                    cls.append(i)
                    break
            else:
                classes.append([i])
        return classes


def _as_relation(rel: Relation | str) -> Relation:
    return rel if isinstance(rel, Relation) else Relation(rel)


def _require_closed(report: ExplorationReport) -> None:
    if not report.closed:
        raise ValueError("exploration did not close; the whole class is needed")


def _generator_images(report: ExplorationReport, v: int):
    for lab in report.quiver_of(0).mutable:
        yield report.mu_neighbors[v][lab]
    for t in range(len(report.transpositions)):
        yield report.perm_neighbors[v][t]


def quotient_graph(
    report: ExplorationReport, rel: Relation | str, annotate: bool = False
) -> LabelledGraph:
    """Fold a closed class onto its equivalence classes.

    Vertices are the classes, numbered by least member; for each class and
    each mutation label there is one edge (a loop when the class is fixed).
    Every member must send the class to the same target class -- this
    homogeneity is checked, not assumed.
    """
    _require_closed(report)
    classes = _as_relation(rel).classes(report)
    cls_of = [0] * report.seed_count
    for ci, members in enumerate(classes):
        for m in members:
            cls_of[m] = ci
    mutable = report.quiver_of(0).mutable
    edges = []
    for ci, members in enumerate(classes):
        for lab in mutable:
            targets = {cls_of[report.mu_neighbors[m][lab]] for m in members}
            if len(targets) != 1:
                raise PropagationConflict(
                    f"mutation {lab + 1} sends class {ci} to {len(targets)} classes"
                )
            cj = targets.pop()
            if cj >= ci:
                edges.append((ci, cj, lab))
    annotations = None
    if annotate and report.graph.annotations is not None:
        annotations = [report.graph.annotations[c[0]] for c in classes]
    return LabelledGraph(
        n_labels=report.graph.n_labels,
        vertices=[report.graph.vertices[c[0]] for c in classes],
        edges=edges,
        annotations=annotations,
    )


def same_stabilizer(report: ExplorationReport, s1: int, s2: int) -> bool:
    """Decide whether two seeds have the same stabilizer in the mutation group.

    Walks the product of the action graph with itself from (s1, s2); the
    stabilizers differ exactly when some group element returns one seed home
    but not the other, i.e. some reachable pair has exactly one coordinate
    back at its start.  Sound and complete on closed classes.
    """
    _require_closed(report)
    if s1 == s2:
        return True
    start = (s1, s2)
    seen = {start}
    queue = [start]
    for a, b in queue:
        for na, nb in zip(_generator_images(report, a), _generator_images(report, b)):
            if (na == s1) != (nb == s2):
                return False
            pair = (na, nb)
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)
    return True


class SeedAutomorphism:
    """Bijection of the seed set commuting with every generator."""

    __slots__ = ("mapping",)

    def __init__(self, mapping):
        self.mapping = tuple(mapping)

    def __eq__(self, other):
        return isinstance(other, SeedAutomorphism) and self.mapping == other.mapping

    def __hash__(self):
        return hash(self.mapping)

    def __repr__(self):
        return f"SeedAutomorphism({self.mapping})"

    def __mul__(self, other: "SeedAutomorphism") -> "SeedAutomorphism":
        # (f * g)(s) = f(g(s))
        return SeedAutomorphism(tuple(self.mapping[x] for x in other.mapping))

    def inverse(self) -> "SeedAutomorphism":
        inv = [0] * len(self.mapping)
        for i, x in enumerate(self.mapping):
            inv[x] = i
        return SeedAutomorphism(inv)

    @property
    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.mapping))

    def order(self) -> int:
        k = 1
        cur = self
        while not cur.is_identity:
            cur = cur * self
            k += 1
        return k


def _propagate(report: ExplorationReport, base: int, target: int) -> tuple[int, ...]:
    """Extend base -> target to the whole class via phi(s.g) = phi(s).g."""
    img: list[int | None] = [None] * report.seed_count
    img[base] = target
    queue = [base]
    for s in queue:
        t = img[s]
        for ns, nt in zip(_generator_images(report, s), _generator_images(report, t)):
            if img[ns] is None:
                img[ns] = nt
                queue.append(ns)
            elif img[ns] != nt:
                raise PropagationConflict(
                    f"seed {ns} gets images {img[ns]} and {nt} from {base} -> {target}"
                )
    if None in img or len(set(img)) != report.seed_count:
        raise PropagationConflict(f"{base} -> {target} does not extend to a bijection")
    return tuple(img)  # type: ignore[arg-type]


@dataclass
class GroupReport:
    elements: list[SeedAutomorphism]

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def abelian(self) -> bool:
        es = self.elements
        return all(a * b == b * a for i, a in enumerate(es) for b in es[i + 1 :])

    @cached_property
    def element_orders(self) -> list[int]:
        return sorted(e.order() for e in self.elements)

    def composition_table(self) -> list[list[int]]:
        index = {e: i for i, e in enumerate(self.elements)}
        return [[index[a * b] for b in self.elements] for a in self.elements]

    @cached_property
    def generators(self) -> list[SeedAutomorphism]:
        """A small generating set (greedy closure, deterministic)."""
        chosen: list[SeedAutomorphism] = []
        closure = {e for e in self.elements if e.is_identity}
        for e in self.elements:
            if e in closure:
                continue
            chosen.append(e)
            frontier = [e]
            for g in frontier:
                if g in closure:
                    continue
                closure.add(g)
                frontier.extend([g * h for h in chosen] + [h * g for h in chosen])
            if len(closure) == self.order:
                break
        return chosen

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "abelian": self.abelian,
            "element_orders": self.element_orders,
            "generators": [list(g.mapping) for g in self.generators],
        }


def compute_group(
    report: ExplorationReport, rel: Relation | str, base: int = 0
) -> GroupReport:
    """Symmetries of a closed class: one automorphism per seed equivalent to base.

    Works with the quiver relations (equal or similar), whose classes the
    automorphisms permute freely and transitively, so the group order equals
    the class size of the base seed.
    """
    _require_closed(report)
    rel = _as_relation(rel)
    if rel.kind == SAME_STABILIZER:
        raise ValueError("group propagation works with the quiver relations")
    classes = rel.classes(report)
    members = next(c for c in classes if base in c)
    elements = [SeedAutomorphism(_propagate(report, base, y)) for y in members]
    return GroupReport(elements)


def point_group(report: ExplorationReport, q: Quiver) -> GroupReport:
    """Group at a single quiver: automorphisms fixing its seed fibre setwise."""
    _require_closed(report)
    for i in range(report.seed_count):
        if report.quiver_of(i) == q:
            return compute_group(report, SAME_QUIVER, base=i)
    raise ValueError("quiver does not occur in the class")


def cmg_morphism_equal(q: Quiver, g: GroupElement, h: GroupElement) -> bool:
    """Whether g and h induce the same morphism out of q.

    Requires both to send q to the same quiver; equality is then decided by
    the exchanged cluster tuples computed from the identity labelling.
    """
    if quiver_apply(q, g) != quiver_apply(q, h):
        raise ValueError("group elements send the quiver to different targets")
    return alpha_tuple(q, g) == alpha_tuple(q, h)
