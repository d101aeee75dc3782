"""Labelled seeds and the global mutation group acting on them.

A labelled seed is a quiver on vertices 1..n together with an n-tuple of
Laurent polynomials (the cluster).  The group is generated by one
involutive mutation per vertex and by vertex permutations, subject to
perm * mu_i = mu_{perm(i)} * perm; every element has a unique normal
form "reduced mutation word, then permutation", which is what
GroupElement stores.  Words act leftmost-first.
"""

from __future__ import annotations

import hashlib
import re
from typing import Iterable, Sequence

from .laurent import LaurentPoly
from .quiver import Quiver

Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose_perms(a: Perm, b: Perm) -> Perm:
    """Product a*b acting as a(b(i)): b first, then a."""
    return tuple(a[b[i]] for i in range(len(a)))


def invert_perm(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def perm_cycles(p: Perm) -> list[tuple[int, ...]]:
    """Nontrivial cycles, each starting at its least element, sorted."""
    seen = [False] * len(p)
    cycles = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = []
        v = start
        while not seen[v]:
            seen[v] = True
            cyc.append(v)
            v = p[v]
        cycles.append(tuple(cyc))
    return cycles


def render_perm(p: Perm) -> str:
    """1-based cycle notation, e.g. '(1 2)(3 4 5)'; '' for the identity."""
    return "".join(
        "(" + " ".join(str(v + 1) for v in cyc) + ")" for cyc in perm_cycles(p)
    )


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, n: int) -> Perm:
    """Parse cycle notation into a 0-based image tuple."""
    s = text.strip()
    if not s or s == "()":
        return identity_perm(n)
    consumed = _CYCLE_RE.sub("", s).strip()
    if consumed:
        raise ValueError(f"bad permutation text {text!r}")
    imgs = list(range(n))
    for match in _CYCLE_RE.finditer(s):
        entries = [int(t) - 1 for t in match.group(1).split()]
        if len(entries) < 2 or len(set(entries)) != len(entries):
            raise ValueError(f"bad cycle in {text!r}")
        for v in entries:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v + 1} out of range in {text!r}")
        for a, b in zip(entries, entries[1:] + entries[:1]):
            if imgs[a] != a:
                raise ValueError(f"overlapping cycles in {text!r}")
            imgs[a] = b
    return tuple(imgs)


class GroupElement:
    """Element of the global mutation group in normal form: word then perm."""

    __slots__ = ("n", "word", "perm")

    def __init__(self, n: int, word: Sequence[int] = (), perm: Perm | None = None):
        self.n = n
        w = tuple(word)
        for i in w:
            if not 0 <= i < n:
                raise ValueError(f"mutation index {i} out of range")
        for a, b in zip(w, w[1:]):
            if a == b:
                raise ValueError("word is not reduced")
        self.word = w
        p = identity_perm(n) if perm is None else tuple(perm)
        if sorted(p) != list(range(n)):
            raise ValueError(f"{perm!r} is not a permutation of 0..{n - 1}")
        self.perm = p

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls(n)

    @classmethod
    def mu(cls, n: int, i: int) -> "GroupElement":
        return cls(n, (i,))

    @classmethod
    def from_word(cls, n: int, word: Sequence[int]) -> "GroupElement":
        g = cls.identity(n)
        for i in word:
            g = g.append_mu(i)
        return g

    @classmethod
    def from_perm(cls, perm: Perm) -> "GroupElement":
        return cls(len(perm), (), perm)

    def is_identity(self) -> bool:
        return not self.word and self.perm == identity_perm(self.n)

    # -- group operations -----------------------------------------------------

    def append_mu(self, i: int) -> "GroupElement":
        """Right-multiply by mu_i: word * perm * mu_i = word * mu_{perm(i)} * perm."""
        if not 0 <= i < self.n:
            raise ValueError(f"mutation index {i} out of range")
        letter = self.perm[i]
        if self.word and self.word[-1] == letter:
            word = self.word[:-1]
        else:
            word = self.word + (letter,)
        g = GroupElement.__new__(GroupElement)
        g.n = self.n
        g.word = word
        g.perm = self.perm
        return g

    def append_perm(self, t: Perm) -> "GroupElement":
        g = GroupElement.__new__(GroupElement)
        g.n = self.n
        g.word = self.word
        g.perm = compose_perms(self.perm, t)
        return g

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if self.n != other.n:
            raise ValueError("mixed ranks")
        g = self
        for i in other.word:
            g = g.append_mu(i)
        return g.append_perm(other.perm)

    def inverse(self) -> "GroupElement":
        inv = invert_perm(self.perm)
        word = tuple(inv[i] for i in reversed(self.word))
        g = GroupElement.__new__(GroupElement)
        g.n = self.n
        g.word = word
        g.perm = inv
        return g

    def power(self, k: int) -> "GroupElement":
        if k < 0:
            return self.inverse().power(-k)
        g = GroupElement.identity(self.n)
        for _ in range(k):
            g = g * self
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.n == other.n and self.word == other.word and self.perm == other.perm

    def __hash__(self) -> int:
        return hash((self.n, self.word, self.perm))

    # -- text form ------------------------------------------------------------

    def render(self) -> str:
        mut = " ".join(f"m{i + 1}" for i in self.word)
        per = render_perm(self.perm)
        if mut and per:
            return f"{mut} | {per}"
        return mut or per or "e"

    __str__ = render

    def __repr__(self) -> str:
        return f"GroupElement({self.render()!r}, n={self.n})"

    @classmethod
    def parse(cls, text: str, n: int) -> "GroupElement":
        s = text.strip()
        if not s or s == "e":
            return cls.identity(n)
        if "|" in s:
            mut_part, _, perm_part = s.partition("|")
        elif s.lstrip().startswith("("):
            mut_part, perm_part = "", s
        else:
            mut_part, perm_part = s, ""
        word = []
        for tok in mut_part.split():
            if not re.fullmatch(r"m\d+", tok):
                raise ValueError(f"bad mutation token {tok!r} in {text!r}")
            idx = int(tok[1:]) - 1
            if not 0 <= idx < n:
                raise ValueError(f"mutation vertex {tok!r} out of range")
            word.append(idx)
        perm = parse_perm(perm_part, n) if perm_part.strip() else identity_perm(n)
        return cls.from_word(n, word).append_perm(perm)


class LabelledSeed:
    """A quiver plus a cluster of nonzero Laurent polynomials, one per vertex."""

    __slots__ = ("quiver", "cluster", "m", "_key", "_digest")

    def __init__(self, quiver: Quiver, cluster: Sequence[LaurentPoly]):
        cl = tuple(cluster)
        if len(cl) != quiver.n:
            raise ValueError(f"cluster size {len(cl)} != quiver size {quiver.n}")
        if cl:
            m = cl[0].m
            for p in cl:
                if p.m != m:
                    raise ValueError("cluster entries live in different rings")
                if p.is_zero():
                    raise ValueError("cluster entries must be nonzero")
        else:
            m = 0
        self.quiver = quiver
        self.cluster = cl
        self.m = m
        self._key: tuple | None = None
        self._digest: str | None = None

    @classmethod
    def initial(cls, quiver: Quiver) -> "LabelledSeed":
        """The seed with cluster (x1, ..., xn) over n ambient variables."""
        return cls(quiver, LaurentPoly.gens(quiver.n))

    # -- the exchange ----------------------------------------------------------

    def mutate(self, i: int) -> "LabelledSeed":
        """Replace entry i by (prod over arrows into i + prod over arrows out
        of i) / entry i, and mutate the quiver."""
        q = self.quiver
        if not 0 <= i < q.n:
            raise ValueError(f"vertex {i} out of range")
        if i in q.frozen:
            raise ValueError(f"cannot mutate frozen vertex {i}")
        cl = self.cluster
        m = self.m
        num_in = LaurentPoly.one(m)
        num_out = LaurentPoly.one(m)
        for k in range(q.n):
            e = q.b[k][i]
            if e > 0:
                num_in = num_in * (cl[k] ** e)
            elif e < 0:
                num_out = num_out * (cl[k] ** -e)
        new_entry = (num_in + num_out).exact_div(cl[i])
        seed = LabelledSeed.__new__(LabelledSeed)
        seed.quiver = q.mutate(i)
        seed.cluster = cl[:i] + (new_entry,) + cl[i + 1 :]
        seed.m = m
        seed._key = None
        seed._digest = None
        return seed

    def permute(self, perm: Perm) -> "LabelledSeed":
        """Relabel: new cluster[i] = cluster[perm[i]], quiver likewise."""
        q = self.quiver.permute(perm)
        seed = LabelledSeed.__new__(LabelledSeed)
        seed.quiver = q
        seed.cluster = tuple(self.cluster[perm[i]] for i in range(q.n))
        seed.m = self.m
        seed._key = None
        seed._digest = None
        return seed

    def apply(self, g: GroupElement) -> "LabelledSeed":
        """Act by a group element: mutation word leftmost-first, then perm."""
        if g.n != self.quiver.n:
            raise ValueError("rank mismatch")
        seed = self
        for i in g.word:
            seed = seed.mutate(i)
        if g.perm != identity_perm(g.n):
            seed = seed.permute(g.perm)
        return seed

    # -- identity & serialization ----------------------------------------------

    def key(self) -> tuple:
        if self._key is None:
            self._key = (
                self.quiver.key(),
                self.m,
                tuple(p.items() for p in self.cluster),
            )
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabelledSeed):
            return NotImplemented
        return self.quiver == other.quiver and self.cluster == other.cluster

    def __hash__(self) -> int:
        return hash(self.key())

    @property
    def digest(self) -> str:
        if self._digest is None:
            h = hashlib.sha256()
            h.update(self.quiver.digest.encode())
            for p in self.cluster:
                h.update(p.digest.encode())
            self._digest = h.hexdigest()
        return self._digest

    def render_cluster(self) -> list[str]:
        return [str(p) for p in self.cluster]

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver.to_json(),
            "m": self.m,
            "cluster": self.render_cluster(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "LabelledSeed":
        quiver = Quiver.from_json(data["quiver"])
        m = int(data.get("m", quiver.n))
        cluster = [LaurentPoly.parse(s, m) for s in data["cluster"]]
        return cls(quiver, cluster)

    def __repr__(self) -> str:
        return f"LabelledSeed({self.quiver!r}, {self.render_cluster()})"


def quiver_apply(q: Quiver, g: GroupElement) -> Quiver:
    """Action on the quiver alone (cheap; no cluster arithmetic)."""
    if g.n != q.n:
        raise ValueError("rank mismatch")
    for i in g.word:
        q = q.mutate(i)
    if g.perm != identity_perm(g.n):
        q = q.permute(g.perm)
    return q


def alpha_tuple(q: Quiver, g: GroupElement) -> tuple[LaurentPoly, ...]:
    """Cluster of the identity-cluster seed on q after acting by g.

    These tuples satisfy the cocycle rule: substituting alpha(q, g) into
    the entries of alpha(q * g, h) gives alpha(q, g * h).
    """
    return LabelledSeed.initial(q).apply(g).cluster
