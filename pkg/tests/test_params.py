"""Coefficient polynomials in the 47 matrix parameters."""

import random
from fractions import Fraction

from sp6kit.params import (
    PARAM_INDEX,
    PARAM_NAMES,
    ParamPoly,
    pmono_degree,
    pmono_mul,
    pmono_str,
)


def random_param_poly(rng, n_terms=4, n_factors=3, max_exp=2):
    terms = []
    for _ in range(rng.randrange(n_terms + 1)):
        pm = ()
        for _ in range(rng.randrange(n_factors + 1)):
            pm = pmono_mul(pm, ((rng.randrange(47), rng.randrange(1, max_exp + 1)),))
        coeff = Fraction(rng.randrange(-9, 10), rng.randrange(1, 7))
        terms.append((pm, coeff))
    return ParamPoly.from_terms(terms)


def random_values(rng):
    return [Fraction(rng.randrange(-5, 6), rng.randrange(1, 4)) for _ in range(47)]


def test_param_names_layout():
    assert len(PARAM_NAMES) == 47
    assert PARAM_NAMES[0] == "d11"
    assert PARAM_NAMES[PARAM_INDEX["e23"]] == "e23"
    assert PARAM_NAMES[45] == "d1" and PARAM_NAMES[46] == "d2"
    assert len(set(PARAM_NAMES)) == 47


def test_pmono_mul_merges_exponents():
    a = ((0, 1), (3, 2))
    b = ((3, 1), (5, 1))
    prod = pmono_mul(a, b)
    assert dict(prod) == {0: 1, 3: 3, 5: 1}
    assert pmono_degree(prod) == 5


def test_ring_ops_match_evaluation():
    rng = random.Random(201)
    for _ in range(120):
        p = random_param_poly(rng)
        q = random_param_poly(rng)
        v = random_values(rng)
        assert (p + q).evaluate(v) == p.evaluate(v) + q.evaluate(v)
        assert (p - q).evaluate(v) == p.evaluate(v) - q.evaluate(v)
        assert (p * q).evaluate(v) == p.evaluate(v) * q.evaluate(v)
        assert (-p).evaluate(v) == -p.evaluate(v)
        assert p.scale(Fraction(3, 2)).evaluate(v) == Fraction(3, 2) * p.evaluate(v)


def test_ring_axioms():
    rng = random.Random(202)
    for _ in range(60):
        p, q, r = (random_param_poly(rng) for _ in range(3))
        assert (p + q) + r == p + (q + r)
        assert p + q == q + p
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r
        assert p - p == ParamPoly.zero()
        assert p * ParamPoly.const(1) == p


def test_substitute_matches_evaluation():
    rng = random.Random(203)
    for _ in range(80):
        p = random_param_poly(rng)
        idx = rng.randrange(47)
        val = Fraction(rng.randrange(-3, 4))
        v = random_values(rng)
        v2 = list(v)
        v2[idx] = val
        assert p.substitute(idx, val).evaluate(v) == p.evaluate(v2)


def test_substitute_zero_drops_terms():
    d11 = ParamPoly.symbol("d11")
    e21 = ParamPoly.symbol("e21")
    p = d11 * e21 + e21 * 2
    assert p.substitute(PARAM_INDEX["d11"], 0) == e21 * 2
    assert p.substitute(PARAM_INDEX["e21"], 0) == ParamPoly.zero()


def test_constants_and_degree():
    assert ParamPoly.zero().degree() == -1
    c = ParamPoly.const(Fraction(5, 3))
    assert c.is_constant() and c.constant_value() == Fraction(5, 3)
    d = ParamPoly.symbol("d33")
    assert d.degree() == 1 and not d.is_constant()
    assert (d * d * d).degree() == 3


def test_str_formatting():
    d11 = ParamPoly.symbol("d11")
    d32 = ParamPoly.symbol("d32")
    d12 = ParamPoly.symbol("d12")
    d31 = ParamPoly.symbol("d31")
    p = d11 * d32 - d12 * d31
    assert str(p) == "d11*d32 - d12*d31"
    assert str(ParamPoly.zero()) == "0"
    assert pmono_str(()) == "1"
