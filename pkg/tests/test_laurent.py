import random

import pytest

from seedgraph.laurent import InexactDivision, LaurentPoly


def rand_poly(rng, m, max_terms=5, zero_ok=True):
    while True:
        n_terms = rng.randint(0 if zero_ok else 1, max_terms)
        terms = {}
        for _ in range(n_terms):
            exps = tuple(rng.randint(-3, 3) for _ in range(m))
            c = rng.choice([c for c in range(-5, 6) if c])
            terms[exps] = terms.get(exps, 0) + c
        p = LaurentPoly(m, terms)
        if zero_ok or not p.is_zero():
            return p


def test_construction_normalizes():
    p = LaurentPoly(2, {(1, 0): 2, (0, 0): 0})
    assert len(p) == 1
    q = LaurentPoly(2, {(1, 0): 2})
    assert p == q
    assert LaurentPoly(2, {}).is_zero()


def test_basic_arithmetic():
    x, y = LaurentPoly.gens(2)
    one = LaurentPoly.one(2)
    assert (one + x) * (one - x) == one - x * x
    assert (x + y) * (x - y) == x * x - y * y
    assert x - x == LaurentPoly.zero(2)
    assert (x + y) ** 2 == x * x + LaurentPoly.constant(2, 2) * x * y + y * y


def test_pow_monomial_and_negative():
    x, y = LaurentPoly.gens(2)
    m = x * y ** 3
    assert m ** 4 == LaurentPoly.monomial(2, (4, 12))
    assert x ** -2 == LaurentPoly.monomial(2, (-2, 0))
    assert (x ** -1) * x == LaurentPoly.one(2)
    with pytest.raises(ValueError):
        (x + y) ** -1


def test_exact_div_simple():
    x, y = LaurentPoly.gens(2)
    one = LaurentPoly.one(2)
    # (1+y)/x is Laurent: x^-1 + x^-1*y
    q = (one + y).exact_div(x)
    assert q == LaurentPoly(2, {(-1, 0): 1, (-1, 1): 1})
    assert q * x == one + y
    # classic polynomial quotient
    assert (x * x - y * y).exact_div(x - y) == x + y
    assert (x * x - y * y).exact_div(x + y) == x - y


def test_exact_div_detects_failure():
    x, y = LaurentPoly.gens(2)
    one = LaurentPoly.one(2)
    with pytest.raises(InexactDivision):
        (x * x + y * y).exact_div(x - y)
    with pytest.raises(InexactDivision):
        (one + x).exact_div(one + y)
    with pytest.raises(InexactDivision):
        LaurentPoly.constant(2, 3).exact_div(LaurentPoly.constant(2, 2))
    with pytest.raises(ZeroDivisionError):
        one.exact_div(LaurentPoly.zero(2))


def test_exact_div_negative_exponents():
    x, y = LaurentPoly.gens(2)
    p = (x ** -2) * (y + x) * (y - x)
    assert p.exact_div((x ** -1) * (y + x)) == (x ** -1) * (y - x)


def test_exact_div_random_roundtrip():
    rng = random.Random(7)
    for _ in range(300):
        m = rng.randint(1, 3)
        p = rand_poly(rng, m)
        d = rand_poly(rng, m, zero_ok=False)
        assert (p * d).exact_div(d) == p


def test_ring_axioms_random():
    rng = random.Random(11)
    for _ in range(300):
        m = rng.randint(1, 3)
        a, b, c = (rand_poly(rng, m) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_substitute_identity_and_monomial():
    x, y = LaurentPoly.gens(2)
    one = LaurentPoly.one(2)
    p = (one + y).exact_div(x)
    assert p.substitute([x, y]) == p
    # x -> x*y needs the inverse monomial
    assert (x ** -1).substitute([x * y, y]) == LaurentPoly(2, {(-1, -1): 1})


def test_substitute_common_denominator():
    x, y = LaurentPoly.gens(2)
    one = LaurentPoly.one(2)
    # x^-1 + x^-1*y = (1+y)/x maps to 1 under x -> 1+y, even though the
    # individual terms are not Laurent in the image
    p = (one + y).exact_div(x)
    assert p.substitute([one + y, y]) == one


def test_substitute_rejects_non_laurent():
    x, y = LaurentPoly.gens(2)
    one = LaurentPoly.one(2)
    with pytest.raises(InexactDivision):
        (x ** -1).substitute([one + y, y])
    with pytest.raises(ValueError):
        x.substitute([LaurentPoly.zero(2), y])


def test_evaluate():
    x, y = LaurentPoly.gens(2)
    one = LaurentPoly.one(2)
    p = (one + y).exact_div(x)  # (1+y)/x
    assert p.evaluate([2, 5], mod=101) == (6 * pow(2, -1, 101)) % 101
    assert (x * y + one).evaluate([3, 4]) == 13


def test_render_and_parse():
    x, y = LaurentPoly.gens(2)
    one = LaurentPoly.one(2)
    p = (one + x).exact_div(y)
    assert str(p) == "x2^-1 + x1*x2^-1"
    assert str(LaurentPoly.zero(2)) == "0"
    assert str(LaurentPoly.constant(2, -3)) == "-3"
    assert str(x - y) == "-x2 + x1"
    assert str(LaurentPoly.constant(2, 2) * x ** -1) == "2*x1^-1"
    for text, m in [("x1^-1*x2 + 2", 2), ("-x1 - 2*x2^3", 2), ("5", 1), ("x1*x1", 1)]:
        q = LaurentPoly.parse(text, m)
        assert LaurentPoly.parse(str(q), m) == q
    assert LaurentPoly.parse("x1*x1", 1) == LaurentPoly.monomial(1, (2,))


def test_parse_render_random_roundtrip():
    rng = random.Random(13)
    for _ in range(300):
        m = rng.randint(1, 4)
        p = rand_poly(rng, m)
        assert LaurentPoly.parse(str(p), m) == p


def test_parse_rejects_garbage():
    for text in ["", "x0", "x3", "1 +", "++2", "x1^", "y1"]:
        with pytest.raises(ValueError):
            LaurentPoly.parse(text, 2)


def test_digest_stable_and_discriminating():
    rng = random.Random(17)
    seen = {}
    for _ in range(200):
        p = rand_poly(rng, 2)
        q = LaurentPoly(2, dict(p.items()))
        assert p.digest == q.digest
        if p.digest in seen:
            assert seen[p.digest] == p
        seen[p.digest] = p
    a = LaurentPoly.gen(2, 0)
    b = LaurentPoly.gen(2, 1)
    assert a.digest != b.digest


def test_items_lexicographic():
    p = LaurentPoly(2, {(0, 0): 2, (-1, 1): 1, (1, -1): 3})
    assert [e for e, _ in p.items()] == [(-1, 1), (0, 0), (1, -1)]
