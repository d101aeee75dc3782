"""Quivers as skew-symmetric integer matrices, with mutation and relabelling.

Vertices are 0-based internally; every external text/JSON surface is
1-based.  b[i][j] > 0 means b[i][j] arrows from i to j.  A quiver may
carry a set of frozen vertices: those are never mutated and arrows
between two frozen vertices are kept at zero (the usual convention for
coefficient rows).
"""

from __future__ import annotations

import hashlib
from typing import Iterable, Sequence


class Quiver:
    __slots__ = ("n", "b", "frozen", "_digest")

    def __init__(self, b: Sequence[Sequence[int]], frozen: Iterable[int] = ()):
        rows = tuple(tuple(int(x) for x in row) for row in b)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix is not square")
        for i in range(n):
            for j in range(i, n):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError(f"matrix not skew-symmetric at ({i},{j})")
        fr = frozenset(int(v) for v in frozen)
        for v in fr:
            if not 0 <= v < n:
                raise ValueError(f"frozen vertex {v} out of range")
        for i in fr:
            for j in fr:
                if rows[i][j]:
                    raise ValueError("nonzero arrow between frozen vertices")
        self.n = n
        self.b = rows
        self.frozen = fr
        self._digest: str | None = None

    # -- basic queries --------------------------------------------------------

    @property
    def mutable(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if i not in self.frozen)

    def arrows_in(self, i: int) -> list[tuple[int, int]]:
        """Pairs (k, multiplicity) with arrows k -> i."""
        return [(k, self.b[k][i]) for k in range(self.n) if self.b[k][i] > 0]

    def arrows_out(self, i: int) -> list[tuple[int, int]]:
        return [(k, self.b[i][k]) for k in range(self.n) if self.b[i][k] > 0]

    def max_multiplicity(self) -> int:
        return max((abs(x) for row in self.b for x in row), default=0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.b == other.b and self.frozen == other.frozen

    def __hash__(self) -> int:
        return hash((self.b, self.frozen))

    def key(self) -> tuple:
        return (self.b, tuple(sorted(self.frozen)))

    @property
    def digest(self) -> str:
        if self._digest is None:
            h = hashlib.sha256()
            h.update(b"Q%d;" % self.n)
            h.update(repr(self.b).encode())
            h.update(repr(tuple(sorted(self.frozen))).encode())
            self._digest = h.hexdigest()
        return self._digest

    def __repr__(self) -> str:
        fr = f", frozen={sorted(self.frozen)}" if self.frozen else ""
        return f"Quiver({[list(r) for r in self.b]}{fr})"

    # -- transformations ------------------------------------------------------

    def mutate(self, k: int) -> "Quiver":
        """Matrix mutation at vertex k (0-based, must be mutable)."""
        if not 0 <= k < self.n:
            raise ValueError(f"vertex {k} out of range")
        if k in self.frozen:
            raise ValueError(f"cannot mutate frozen vertex {k}")
        b = self.b
        n = self.n
        fr = self.frozen
        new = []
        for i in range(n):
            bik = b[i][k]
            row = []
            for j in range(n):
                if i == k or j == k:
                    row.append(-b[i][j])
                elif i in fr and j in fr:
                    row.append(0)
                else:
                    p = bik * b[k][j]
                    if p > 0:
                        row.append(b[i][j] + (p if bik > 0 else -p))
                    else:
                        row.append(b[i][j])
            new.append(tuple(row))
        q = Quiver.__new__(Quiver)
        q.n = n
        q.b = tuple(new)
        q.frozen = fr
        q._digest = None
        return q

    def permute(self, perm: Sequence[int]) -> "Quiver":
        """Relabel along perm (0-based images): new b[i][j] = b[perm[i]][perm[j]].

        The permutation must map the frozen set to itself.
        """
        p = tuple(perm)
        if sorted(p) != list(range(self.n)):
            raise ValueError(f"{perm!r} is not a permutation of 0..{self.n - 1}")
        if any((p[i] in self.frozen) != (i in self.frozen) for i in range(self.n)):
            raise ValueError("permutation does not preserve the frozen set")
        b = self.b
        q = Quiver.__new__(Quiver)
        q.n = self.n
        q.b = tuple(tuple(b[p[i]][p[j]] for j in range(self.n)) for i in range(self.n))
        q.frozen = self.frozen
        q._digest = None
        return q

    def opposite(self) -> "Quiver":
        """Reverse every arrow."""
        q = Quiver.__new__(Quiver)
        q.n = self.n
        q.b = tuple(tuple(-x for x in row) for row in self.b)
        q.frozen = self.frozen
        q._digest = None
        return q

    def principal_coefficients(self) -> "Quiver":
        """Add a frozen clone j' for each vertex j with a single arrow j' -> j."""
        if self.frozen:
            raise ValueError("quiver already has frozen vertices")
        n = self.n
        new = [[0] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            for j in range(n):
                new[i][j] = self.b[i][j]
        for j in range(n):
            new[n + j][j] = 1
            new[j][n + j] = -1
        return Quiver(new, frozen=range(n, 2 * n))

    def trivial_coefficients(self) -> "Quiver":
        """Full subquiver on the mutable vertices (in their current order)."""
        keep = self.mutable
        return Quiver(tuple(tuple(self.b[i][j] for j in keep) for i in keep))

    # -- similarity -----------------------------------------------------------

    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components of the underlying graph, each sorted, ordered
        by least vertex."""
        seen = [False] * self.n
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in range(self.n):
                    if not seen[w] and self.b[v][w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def similar(self, other: "Quiver") -> bool:
        """Equal up to reversing all arrows in some connected components."""
        if self.n != other.n or self.frozen != other.frozen:
            return False
        mine = self.components()
        if mine != other.components():
            return False
        for comp in mine:
            same = all(self.b[i][j] == other.b[i][j] for i in comp for j in comp)
            if same:
                continue
            flipped = all(self.b[i][j] == -other.b[i][j] for i in comp for j in comp)
            if not flipped:
                return False
        return True

    # -- JSON -----------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "b": [list(row) for row in self.b],
            "frozen": sorted(v + 1 for v in self.frozen),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Quiver":
        b = data["b"]
        if data.get("n") is not None and int(data["n"]) != len(b):
            raise ValueError("n does not match matrix size")
        frozen = [int(v) - 1 for v in data.get("frozen", [])]
        return cls(b, frozen)


PRESETS: dict[str, dict] = {
    "A1": {"b": [[0]]},
    "A2": {"b": [[0, 1], [-1, 0]]},
    "A3-linear": {"b": [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]},
    "A2tilde-noncyclic": {"b": [[0, 1, 1], [-1, 0, 1], [-1, -1, 0]]},
    "markov3": {"b": [[0, 3, -3], [-3, 0, 3], [3, -3, 0]]},
    "kronecker2": {"b": [[0, 2], [-2, 0]]},
}


def preset(name: str) -> Quiver:
    try:
        spec = PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        ) from None
    return Quiver(spec["b"], spec.get("frozen", ()))
