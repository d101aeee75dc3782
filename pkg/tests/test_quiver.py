import random

import pytest

from seedgraph.quiver import PRESETS, Quiver, preset


def rand_quiver(rng, n, max_mult=3):
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-max_mult, max_mult)
            b[i][j] = v
            b[j][i] = -v
    return Quiver(b)


def test_validation():
    with pytest.raises(ValueError):
        Quiver([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        Quiver([[0, 1], [-1, 0], [0, 0]])
    with pytest.raises(ValueError):
        Quiver([[0, 1], [-1, 0]], frozen=[2])
    with pytest.raises(ValueError):
        Quiver([[0, 1], [-1, 0]], frozen=[0, 1])  # frozen-frozen arrow


def test_mutation_path_to_cycle():
    q = preset("A3-linear")
    m = q.mutate(1)
    assert m.b == ((0, -1, 1), (1, 0, -1), (-1, 1, 0))  # 2->1, 3->2, 1->3


def test_mutation_involution():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 5)
        q = rand_quiver(rng, n)
        k = rng.randrange(n)
        assert q.mutate(k).mutate(k) == q


def test_mutation_markov_neighbor():
    q = preset("markov3")
    m = q.mutate(0)
    assert m.b == ((0, -3, 3), (3, 0, -6), (-3, 6, 0))
    assert m.max_multiplicity() == 6
    assert q.mutate(0).mutate(0) == q


def test_permute_cycle_symmetry():
    b = [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]  # 1->2->3->1
    q = Quiver(b)
    assert q.permute((1, 2, 0)) == q  # cyclic relabel fixes the cycle
    swapped = q.permute((1, 0, 2))
    assert swapped == q.opposite()


def test_permute_is_group_action():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(2, 5)
        q = rand_quiver(rng, n)
        s = list(range(n))
        t = list(range(n))
        rng.shuffle(s)
        rng.shuffle(t)
        st = tuple(s[t[i]] for i in range(n))  # apply t, then s
        assert q.permute(s).permute(t) == q.permute(st)


def test_permute_mutate_compatibility():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(2, 5)
        q = rand_quiver(rng, n)
        p = list(range(n))
        rng.shuffle(p)
        k = rng.randrange(n)
        assert q.permute(p).mutate(k) == q.mutate(p[k]).permute(p)


def test_frozen_rules():
    q = preset("A2").principal_coefficients()
    assert q.n == 4
    assert q.frozen == {2, 3}
    assert q.b[2][0] == 1 and q.b[3][1] == 1  # clone arrows 3'->1, 4'->2
    with pytest.raises(ValueError):
        q.mutate(2)
    with pytest.raises(ValueError):
        q.permute((2, 1, 0, 3))  # moves a frozen vertex into a mutable slot
    # frozen-frozen arrows stay zero under mutation
    m = q.mutate(0).mutate(1).mutate(0)
    assert all(m.b[i][j] == 0 for i in m.frozen for j in m.frozen)
    assert m.mutate(0).mutate(1) == q.mutate(0).mutate(1).mutate(0).mutate(0).mutate(1)


def test_trivial_coefficients():
    q = preset("A2").principal_coefficients()
    assert q.trivial_coefficients() == preset("A2")
    assert preset("A3-linear").trivial_coefficients() == preset("A3-linear")


def test_components_and_similar():
    # two components: an A2 arrow and an isolated vertex
    q1 = Quiver([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    assert q1.components() == ((0, 1), (2,))
    q2 = Quiver([[0, -1, 0], [1, 0, 0], [0, 0, 0]])
    assert q1.similar(q2)  # flip the first component
    assert q1.similar(q1)
    q3 = Quiver([[0, 1, 0], [-1, 0, 0], [0, 0, 0]], frozen=[2])
    assert not q1.similar(q3)
    # connected: similar means equal or opposite
    a3 = preset("A3-linear")
    assert a3.similar(a3.opposite())
    assert not a3.similar(a3.mutate(1))
    # mixed flip inside one component is not similarity
    tri = Quiver([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]])
    mixed = Quiver([[0, -1, 1], [1, 0, 1], [-1, -1, 0]])
    assert not tri.similar(mixed)
    assert tri.similar(tri.opposite())


def test_similar_respects_component_partition():
    q1 = Quiver([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    q4 = Quiver([[0, 0, 0], [0, 0, 1], [0, -1, 0]])
    assert not q1.similar(q4)


def test_json_roundtrip():
    for name in PRESETS:
        q = preset(name)
        assert Quiver.from_json(q.to_json()) == q
    q = preset("A2").principal_coefficients()
    j = q.to_json()
    assert j["frozen"] == [3, 4]
    assert Quiver.from_json(j) == q
    with pytest.raises(ValueError):
        Quiver.from_json({"n": 3, "b": [[0, 1], [-1, 0]]})


def test_presets():
    assert preset("markov3").max_multiplicity() == 3
    assert preset("kronecker2").b == ((0, 2), (-2, 0))
    with pytest.raises(ValueError):
        preset("E8")


def test_digest_and_eq():
    q1 = preset("A2")
    q2 = Quiver([[0, 1], [-1, 0]])
    assert q1 == q2 and q1.digest == q2.digest
    assert q1.digest != q1.opposite().digest
    assert q1 != Quiver([[0, 1], [-1, 0]], frozen=[1])


def test_mutation_preserves_skew_symmetry():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(2, 5)
        q = rand_quiver(rng, n)
        w = [rng.randrange(n) for _ in range(4)]
        for k in w:
            q = q.mutate(k)
        assert all(q.b[i][j] == -q.b[j][i] for i in range(n) for j in range(n))
