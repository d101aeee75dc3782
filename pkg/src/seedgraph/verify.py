"""Named verification suites over the seed engine.

Four packaged, repeatable suites:

- lemmas: the stabilizer check table for two- and three-vertex local
  configurations, run bit-exactly on principal- and trivial-coefficient
  seeds.  A fixed principal seed certifies the pattern for every ambient
  seed; a moved trivial seed rules it out for every ambient seed.
- markov: invariants of the triple-arrow 3-cycle class (Markov-type
  equation, growth, no repeats, permutation components).
- mainthm: stabilizer equality agrees with quiver similarity on every
  pair of seeds in the classes that close, plus bounded evidence for the
  double-arrow rank-2 class, which never closes.
- properties: randomized invariant families (involution, relabelling
  compatibility, Laurent phenomenon, normal forms, quotient regularity).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .explore import (
    DEFAULT_PRIME,
    SpecializedSeed,
    explore_quivers,
    explore_seeds,
)
from .laurent import InexactDivision
from .quiver import Quiver, preset
from .quotient import Relation, SAME_QUIVER, SIMILAR_QUIVER, quotient_graph, same_stabilizer
from .seeds import GroupElement, LabelledSeed, identity_perm, quiver_apply

DEFAULT_POWER_BOUND = 50
DEFAULT_MARKOV_DEPTH = 6


@dataclass
class CheckResult:
    name: str
    expected: str
    observed: str

    @property
    def passed(self) -> bool:
        return self.expected == self.observed

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "expected": self.expected,
            "observed": self.observed,
            "pass": self.passed,
        }


@dataclass
class VerifyReport:
    suite: str
    results: list[CheckResult]
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [r.to_json() for r in self.results],
            "notes": list(self.notes),
        }

    def render(self) -> str:
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for r in self.results:
            mark = "PASS" if r.passed else "FAIL"
            lines.append(f"  {mark} {r.name}: expected {r.expected}, observed {r.observed}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)


def check_fixed(seed: LabelledSeed, g: GroupElement) -> bool:
    """True iff the seed is returned to itself exactly, quiver and cluster."""
    if quiver_apply(seed.quiver, g) != seed.quiver:
        return False  # cheap integer check first; clusters only when needed
    return seed.apply(g) == seed


@dataclass(frozen=True)
class LemmaCheck:
    name: str
    seed: LabelledSeed
    word: GroupElement
    expect: str  # "fixed" | "not-fixed" | "never-fixed" (all powers up to bound)
    power_bound: int = 1


def run_check(check: LemmaCheck, rng_seed: int = 0) -> CheckResult:
    if check.expect in ("fixed", "not-fixed"):
        observed = "fixed" if check_fixed(check.seed, check.word) else "not-fixed"
        return CheckResult(check.name, check.expect, observed)
    if check.expect == "never-fixed":
        # walk a random specialization: differing values prove the seeds
        # differ; only a coinciding power is re-checked exactly
        rng = random.Random(rng_seed)
        p = DEFAULT_PRIME
        point = [rng.randrange(1, p) for _ in range(check.seed.m)]
        home = SpecializedSeed.from_seed(check.seed, point, p)
        cur = home
        for m in range(1, check.power_bound + 1):
            cur = cur.apply(check.word)
            if cur.key() == home.key() and check.seed.apply(check.word.power(m)) == check.seed:
                return CheckResult(check.name, "never-fixed", f"fixed at power {m}")
        return CheckResult(check.name, "never-fixed", "never-fixed")
    raise ValueError(f"unknown expectation {check.expect!r}")


def _seed(q: Quiver) -> LabelledSeed:
    return LabelledSeed.initial(q)


def _tri(arrows: dict[tuple[int, int], int]) -> Quiver:
    """Rank-3 quiver from a sparse arrow map {(u, v): multiplicity}."""
    b = [[0] * 3 for _ in range(3)]
    for (u, v), m in arrows.items():
        b[u][v] = m
        b[v][u] = -m
    return Quiver(b)


def lemma_checks(power_bound: int = DEFAULT_POWER_BOUND) -> list[LemmaCheck]:
    """The fixed check table: 2-vertex multiplicity rows, then 3-vertex
    orientation rows, quivers written with mutable vertices (i, j, k) = (1, 2, 3)."""
    checks: list[LemmaCheck] = []
    pair = GroupElement.from_word(4, [0, 1])  # mu_i mu_j on principal seeds
    pair_triv = GroupElement.from_word(2, [0, 1])

    no_arrow = Quiver([[0, 0], [0, 0]]).principal_coefficients()
    checks.append(
        LemmaCheck("multiplicity 0: (mu1 mu2)^2 fixes principal", _seed(no_arrow), pair.power(2), "fixed")
    )
    a2 = preset("A2")
    checks.append(
        LemmaCheck(
            "multiplicity 1: (mu1 mu2)^5 fixes principal", _seed(a2.principal_coefficients()), pair.power(5), "fixed"
        )
    )
    checks.append(
        LemmaCheck(
            "multiplicity 1 reversed: (mu1 mu2)^5 fixes principal",
            _seed(a2.opposite().principal_coefficients()),
            pair.power(5),
            "fixed",
        )
    )
    checks.append(
        LemmaCheck(
            "multiplicity 1: (mu1 mu2)^2 moves trivial", _seed(a2), pair_triv.power(2), "not-fixed"
        )
    )
    checks.append(
        LemmaCheck(
            f"multiplicity 2: no power of (mu1 mu2) up to {power_bound} fixes trivial",
            _seed(preset("kronecker2")),
            pair_triv,
            "never-fixed",
            power_bound,
        )
    )

    cycle6 = GroupElement.from_word(6, [0, 1, 2]).power(6)  # (mu_i mu_j mu_k)^6, principal
    cycle6_triv = GroupElement.from_word(3, [0, 1, 2]).power(6)
    path = _tri({(0, 1): 1, (1, 2): 1})  # i -> j -> k
    checks.append(
        LemmaCheck("path i->j->k: (mu_i mu_j mu_k)^6 fixes principal", _seed(path.principal_coefficients()), cycle6, "fixed")
    )
    checks.append(
        LemmaCheck(
            "path k->j->i: (mu_i mu_j mu_k)^6 fixes principal",
            _seed(path.opposite().principal_coefficients()),
            cycle6,
            "fixed",
        )
    )
    sink = _tri({(0, 1): 1, (2, 1): 1})  # i -> j <- k
    checks.append(
        LemmaCheck("sink i->j<-k: (mu_i mu_j mu_k)^6 moves trivial", _seed(sink), cycle6_triv, "not-fixed")
    )
    checks.append(
        LemmaCheck(
            "source i<-j->k: (mu_i mu_j mu_k)^6 moves trivial", _seed(sink.opposite()), cycle6_triv, "not-fixed"
        )
    )

    zig = GroupElement.from_word(6, [0, 2, 0, 2, 0, 1]).power(2)  # (mu_i mu_k mu_i mu_k mu_i mu_j)^2
    zig_triv = GroupElement.from_word(3, [0, 2, 0, 2, 0, 1]).power(2)
    # triangles without a directed path through j (j is a sink or a source)
    no_path = [
        ("j sink, k->i", {(0, 1): 1, (2, 1): 1, (2, 0): 1}),
        ("j sink, i->k", {(0, 1): 1, (2, 1): 1, (0, 2): 1}),
        ("j source, i->k", {(1, 2): 1, (1, 0): 1, (0, 2): 1}),
        ("j source, k->i", {(1, 2): 1, (1, 0): 1, (2, 0): 1}),
    ]
    for label, arrows in no_path:
        checks.append(
            LemmaCheck(
                f"triangle {label}: (mu_i mu_k mu_i mu_k mu_i mu_j)^2 fixes principal",
                _seed(_tri(arrows).principal_coefficients()),
                zig,
                "fixed",
            )
        )
    # triangles with a directed path through j
    with_path = [
        ("i->j->k, k->i", {(0, 1): 1, (1, 2): 1, (2, 0): 1}),
        ("i->j->k, i->k", {(0, 1): 1, (1, 2): 1, (0, 2): 1}),
        ("k->j->i, i->k", {(2, 1): 1, (1, 0): 1, (0, 2): 1}),
        ("k->j->i, k->i", {(2, 1): 1, (1, 0): 1, (2, 0): 1}),
    ]
    for label, arrows in with_path:
        checks.append(
            LemmaCheck(
                f"triangle {label}: (mu_i mu_k mu_i mu_k mu_i mu_j)^2 moves trivial",
                _seed(_tri(arrows)),
                zig_triv,
                "not-fixed",
            )
        )
    return checks


def run_lemma_suite(power_bound: int = DEFAULT_POWER_BOUND) -> VerifyReport:
    results = [run_check(c) for c in lemma_checks(power_bound)]
    notes = [
        "fixed principal seeds certify the pattern for all ambient seeds;"
        " moved trivial seeds rule it out for all ambient seeds",
        f"the multiplicity-2 row tests powers up to {power_bound}: a fixing power N"
        " would bound the class by 2N seeds, but the class is infinite",
    ]
    return VerifyReport("lemmas", results, notes)


def _markov_triple(q: Quiver) -> tuple[int, int, int]:
    return tuple(sorted((abs(q.b[0][1]), abs(q.b[1][2]), abs(q.b[0][2]))))


def _reduced_words(depth: int):
    """All reduced mutation words on 3 vertices up to the given length."""
    frontier: list[tuple[int, ...]] = [()]
    yield ()
    for _ in range(depth):
        nxt = []
        for w in frontier:
            for i in range(3):
                if w and w[-1] == i:
                    continue
                nw = w + (i,)
                yield nw
                nxt.append(nw)
        frontier = nxt


def check_markov(depth: int = DEFAULT_MARKOV_DEPTH, rng_seed: int = 0) -> VerifyReport:
    """Invariants of the triple-arrow 3-cycle class along all reduced words.

    Quiver-level facts ((a) equation, (b) growth) are exact integer checks.
    Seed distinctness ((c) no repeats, (d) permutation components) is decided
    on evaluations at a random point modulo a large prime: distinct values
    prove distinct seeds, and any coinciding pair is re-compared exactly, so
    the verdict stays exact while the bulk of the work is modular arithmetic.
    """
    if not 0 <= depth <= 12:
        raise ValueError("depth must be between 0 and 12 (entries double in size per step)")
    q0 = preset("markov3")
    results: list[CheckResult] = []

    bad_eq = 0
    bad_growth = 0

    def scan(q: Quiver, last: int | None, d: int) -> None:
        nonlocal bad_eq, bad_growth
        a, b, c = _markov_triple(q)
        if a * a + b * b + c * c != a * b * c:
            bad_eq += 1
        if d == depth:
            return
        for k in range(3):
            if k == last:
                continue
            nxt = q.mutate(k)
            if max(_markov_triple(nxt)) <= max(_markov_triple(q)):
                bad_growth += 1
            scan(nxt, k, d + 1)

    scan(q0, None, 0)
    results.append(
        CheckResult("(a) triples satisfy x^2+y^2+z^2 = xyz", "0 violations", f"{bad_eq} violations")
    )
    results.append(
        CheckResult("(b) max multiplicity strictly increases", "0 violations", f"{bad_growth} violations")
    )

    rng = random.Random(rng_seed)
    p = DEFAULT_PRIME
    point = [rng.randrange(1, p) for _ in range(3)]

    def tree(start: SpecializedSeed) -> dict:
        """Specialized seeds of s0.word for all reduced words, keyed by value."""
        out = {}
        stack = [(start, None, 0, ())]
        while stack:
            s, last, d, w = stack.pop()
            out.setdefault(s.key(), w)
            if d == depth:
                continue
            for k in range(3):
                if k == last:
                    continue
                stack.append((s.mutate(k), k, d + 1, w + (k,)))
        return out

    def exact_for(perm: tuple[int, ...], word: tuple[int, ...]) -> LabelledSeed:
        s = LabelledSeed.initial(q0).permute(perm)
        for k in word:
            s = s.mutate(k)
        return s

    base = SpecializedSeed.at_point(q0, point, p)
    main = tree(base)
    word_count = sum(1 for _ in _reduced_words(depth))

    repeats = 0
    if len(main) != word_count:
        # value collisions: settle each one exactly before calling it a repeat
        by_key: dict = {}
        for w in _reduced_words(depth):
            s = base
            for k in w:
                s = s.mutate(k)
            by_key.setdefault(s.key(), []).append(w)
        for words in by_key.values():
            if len(words) > 1:
                exact = [exact_for(identity_perm(3), w) for w in words]
                repeats += sum(1 for e in exact[1:] if e == exact[0])
    results.append(
        CheckResult("(c) no labelled seed repeats", "0 repeats", f"{repeats} repeats")
    )

    overlaps = 0
    for perm in ((0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        start = SpecializedSeed(base.quiver.permute(perm), [base.values[perm[i]] for i in range(3)], p)
        other = tree(start)
        for key, w in other.items():
            if key in main and exact_for(perm, w) == exact_for(identity_perm(3), main[key]):
                overlaps += 1
    results.append(
        CheckResult(
            "(d) permuted components never meet the mutation-only component",
            "0 overlaps",
            f"{overlaps} overlaps",
        )
    )

    after = q0.mutate(0)
    results.append(
        CheckResult("neighbor triple after mu1", "(3, 3, 6)", str(_markov_triple(after)))
    )
    notes = [
        f"all reduced words up to length {depth} ({word_count} seeds per component)",
        "seed distinctness certified at a random point modulo a 61-bit prime;"
        " coinciding values are settled by exact recomputation",
    ]
    return VerifyReport("markov", results, notes)


def _complete(report, v: int) -> bool:
    mutable = report.quiver_of(0).mutable
    return all(report.mu_neighbors[v][lab] is not None for lab in mutable) and all(
        report.perm_neighbors[v][t] is not None for t in range(len(report.transpositions))
    )


def _no_separation_within(report, s1: int, s2: int, limit: int) -> bool:
    """Bounded product walk on a truncated class: False iff some word returns
    exactly one of the two seeds home within the explored region."""
    start = (s1, s2)
    seen = {start}
    queue = [start]
    mutable = report.quiver_of(0).mutable
    for a, b in queue:
        if len(seen) > limit or not (_complete(report, a) and _complete(report, b)):
            continue
        steps = [(report.mu_neighbors[a][lab], report.mu_neighbors[b][lab]) for lab in mutable]
        steps += [
            (report.perm_neighbors[a][t], report.perm_neighbors[b][t])
            for t in range(len(report.transpositions))
        ]
        for na, nb in steps:
            if (na == s1) != (nb == s2):
                return False
            if (na, nb) not in seen:
                seen.add((na, nb))
                queue.append((na, nb))
    return True


def run_mainthm_suite() -> VerifyReport:
    """Stabilizer equality vs quiver similarity, pair by pair."""
    results: list[CheckResult] = []
    for name in ("A2", "A3-linear"):
        r = explore_seeds(preset(name))
        classes = Relation(SIMILAR_QUIVER).classes(r)
        cls_of = {}
        for ci, members in enumerate(classes):
            for m in members:
                cls_of[m] = ci
        mismatches = 0
        pairs = 0
        for s1 in range(r.seed_count):
            for s2 in range(s1, r.seed_count):
                pairs += 1
                if same_stabilizer(r, s1, s2) != (cls_of[s1] == cls_of[s2]):
                    mismatches += 1
        results.append(
            CheckResult(
                f"{name}: stabilizer equality matches similarity on {pairs} pairs",
                "0 mismatches",
                f"{mismatches} mismatches",
            )
        )
    # the double-arrow rank-2 class never closes; bounded evidence instead
    r = explore_seeds(preset("kronecker2"), budget=120)
    sample = [v for v in range(r.seed_count) if _complete(r, v)][:12]
    violations = 0
    pairs = 0
    for idx, s1 in enumerate(sample):
        for s2 in sample[idx:]:
            pairs += 1
            if not _no_separation_within(r, s1, s2, limit=2000):
                violations += 1
    results.append(
        CheckResult(
            f"kronecker2 (class never closes): no stabilizer separation on {pairs} sample pairs",
            "0 violations",
            f"{violations} violations",
        )
    )
    notes = [
        "rank-2 double-arrow quivers are all similar; the bounded product walk"
        " looks for separating words inside a 120-seed truncation"
    ]
    return VerifyReport("mainthm", results, notes)


def _random_quiver(rng: random.Random, n_max: int = 4, mult_max: int = 2) -> Quiver:
    n = rng.randint(2, n_max)
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            m = rng.randint(-mult_max, mult_max)
            b[i][j] = m
            b[j][i] = -m
    return Quiver(b)


def _walk_cap(quiver: Quiver) -> int:
    # entries grow doubly-exponentially once two double arrows meet, so bound
    # the total mutation count a test case may spend on a quiver by its
    # multi-arrow count: 0 -> 6, 1 -> 4, >=2 -> 3 (all measured safe)
    doubles = sum(
        1
        for i in range(quiver.n)
        for j in range(i + 1, quiver.n)
        if abs(quiver.b[i][j]) >= 2
    )
    if doubles == 0:
        return 6
    if doubles == 1:
        return 4
    return 3


def _random_seed(rng: random.Random, quiver: Quiver, steps: int = 3) -> LabelledSeed:
    s = LabelledSeed.initial(quiver)
    for _ in range(rng.randint(0, steps)):
        s = s.mutate(rng.choice(quiver.mutable))
    return s


def _random_tree_quiver(rng: random.Random, n_max: int = 4) -> Quiver:
    """Random orientation of a random labelled tree: a finite mutation class."""
    n = rng.randint(2, n_max)
    b = [[0] * n for _ in range(n)]
    order = list(range(n))
    rng.shuffle(order)
    for idx in range(1, n):
        u = order[idx]
        v = order[rng.randrange(idx)]
        sign = rng.choice((1, -1))
        b[u][v] = sign
        b[v][u] = -sign
    return Quiver(b)


def _random_element(rng: random.Random, n: int, letters: int = 6) -> GroupElement:
    g = GroupElement.identity(n)
    for _ in range(rng.randint(0, letters)):
        if n < 2 or rng.random() < 0.7:
            g = g.append_mu(rng.randrange(n))
        else:
            i = rng.randrange(n - 1)
            t = list(range(n))
            t[i], t[i + 1] = t[i + 1], t[i]
            g = g.append_perm(tuple(t))
    return g


def run_property_suite(cases: int = 1000, rng_seed: int = 20260825) -> VerifyReport:
    """Randomized invariant families, `cases` draws each."""
    results: list[CheckResult] = []

    rng = random.Random(rng_seed)
    fails = 0
    for _ in range(cases):
        q = _random_quiver(rng)
        s = _random_seed(rng, q, steps=_walk_cap(q) - 2)
        i = rng.choice(q.mutable)
        if s.mutate(i).mutate(i) != s:
            fails += 1
    results.append(CheckResult(f"involution on {cases} random seeds", "0 failures", f"{fails} failures"))

    rng = random.Random(rng_seed + 1)
    fails = 0
    for _ in range(cases):
        q = _random_quiver(rng)
        s = _random_seed(rng, q, steps=min(2, _walk_cap(q) - 1))
        perm = list(range(q.n))
        rng.shuffle(perm)
        perm = tuple(perm)
        i = rng.randrange(q.n)
        if s.permute(perm).mutate(i) != s.mutate(perm[i]).permute(perm):
            fails += 1
    results.append(
        CheckResult(f"relabelling compatibility on {cases} random seeds", "0 failures", f"{fails} failures")
    )

    rng = random.Random(rng_seed + 2)
    fails = 0
    for _ in range(cases):
        q = _random_quiver(rng)
        s = LabelledSeed.initial(q)
        try:
            for _ in range(rng.randint(1, _walk_cap(q))):
                s = s.mutate(rng.choice(q.mutable))
        except InexactDivision:
            fails += 1
    results.append(
        CheckResult(
            f"denominators always divide exactly on {cases} random walks", "0 failures", f"{fails} failures"
        )
    )

    rng = random.Random(rng_seed + 3)
    fails = 0
    for _ in range(cases):
        n = rng.randint(1, 5)
        g = _random_element(rng, n)
        h = _random_element(rng, n)
        k = _random_element(rng, n)
        if GroupElement.parse(g.render(), n) != g:
            fails += 1
        if not (g * g.inverse()).is_identity():
            fails += 1
        if (g * h) * k != g * (h * k):
            fails += 1
    results.append(
        CheckResult(f"normal forms on {cases} random group elements", "0 failures", f"{fails} failures")
    )

    rng = random.Random(rng_seed + 4)
    fails = 0
    for _ in range(cases):
        q = _random_tree_quiver(rng)
        r = explore_quivers(q, budget=5000)
        if not r.closed:
            fails += 1
            continue
        rel = rng.choice((SAME_QUIVER, SIMILAR_QUIVER))
        try:
            quotient_graph(r, rel).check_regular()
        except ValueError:
            fails += 1
    results.append(
        CheckResult(
            f"quotients stay one-edge-per-label on {cases} random tree classes",
            "0 failures",
            f"{fails} failures",
        )
    )
    return VerifyReport("properties", results)
