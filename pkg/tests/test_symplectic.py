"""Defining quadrics of the symplectic groups and sample matrices."""

import random
from fractions import Fraction

import pytest

from sp6kit.matrices import det, identity, mat_mul, transpose
from sp6kit.symplectic import (
    GROUP_G,
    GROUP_NAMES,
    SUPPORTED_G,
    UnsupportedG,
    g_polynomial,
    is_symplectic,
    permutation_pair,
    random_symplectic,
    sp_generators,
    standard_form,
)

EXPECTED_COUNTS = {1: 1, 2: 6, 3: 15}


def embed(m):
    """Place a 2g x 2g matrix into the 36-slot coordinate vector."""
    from sp6kit.monomials import var_index

    x = [Fraction(0)] * 36
    n = len(m)
    for i in range(n):
        for j in range(n):
            x[var_index(i + 1, j + 1)] = Fraction(m[i][j])
    return x


def test_group_tables():
    assert SUPPORTED_G == (1, 2, 3)
    assert GROUP_NAMES == {1: "sp2", 2: "sp4", 3: "sp6"}
    assert GROUP_G == {"sp2": 1, "sp4": 2, "sp6": 3}


def test_generator_counts():
    for g in SUPPORTED_G:
        gens = sp_generators(g)
        assert len(gens) == EXPECTED_COUNTS[g]
        # entries of an antisymmetric 2g x 2g matrix above the diagonal
        assert len(gens) == g * (2 * g - 1)


def test_unsupported_g():
    with pytest.raises(UnsupportedG):
        sp_generators(4)
    with pytest.raises(UnsupportedG):
        standard_form(0)


def test_standard_form_antisymmetric():
    for g in SUPPORTED_G:
        j = standard_form(g)
        n = 2 * g
        assert len(j) == n
        jt = transpose(j)
        for i in range(n):
            for k in range(n):
                assert jt[i][k] == -j[i][k]
        assert det(j) == 1


def test_generators_are_quadrics():
    for g in SUPPORTED_G:
        for p in sp_generators(g):
            assert p.degree() == 2
            # quadratic part homogeneous, plus an optional constant
            nonconst = [c for v, c in p.coefficient_rules() if any(v)]
            assert all(
                sum(v) == 2 for v, c in p.coefficient_rules() if any(v)
            )
            assert nonconst


def test_generators_vanish_on_symplectic_samples():
    rng = random.Random(401)
    for g in SUPPORTED_G:
        gens = sp_generators(g)
        for _ in range(40):
            m = random_symplectic(g, seed=rng.randrange(10**9))
            assert is_symplectic(m, g)
            assert det(m) == 1
            x = embed(m)
            for p in gens:
                assert p.evaluate(x) == 0


def test_generators_nonzero_off_group():
    # the identity matrix scaled by 2 is not symplectic
    for g in SUPPORTED_G:
        n = 2 * g
        m = [[Fraction(2) if i == j else Fraction(0) for j in range(n)]
             for i in range(n)]
        assert not is_symplectic(m, g)
        x = embed(m)
        assert any(p.evaluate(x) != 0 for p in sp_generators(g))


def test_random_symplectic_deterministic():
    a = random_symplectic(3, seed=7)
    b = random_symplectic(3, seed=7)
    c = random_symplectic(3, seed=8)
    assert a == b
    assert a != c


def test_permutation_pair_structure():
    pp = permutation_pair()
    j, j1 = pp.J, pp.J1
    n = 6
    # both are permutation matrices and mutual inverses
    for m in (j, j1):
        for row in m:
            assert sum(row) == 1 and all(e in (0, 1) for e in row)
        for col in zip(*m):
            assert sum(col) == 1
    assert [list(r) for r in mat_mul(j1, j)] == [list(r) for r in identity(n)]
    assert [list(r) for r in j1] == [list(r) for r in transpose(j)]
    # row k of J picks out basis vector: rows are e1,e4,e2,e5,e3,e6
    picks = [row.index(1) + 1 for row in j]
    assert picks == [1, 4, 2, 5, 3, 6]
    picks1 = [row.index(1) + 1 for row in j1]
    assert picks1 == [1, 3, 5, 2, 4, 6]


def test_g_polynomial_is_pairing_entry_plus_one():
    from sp6kit.mpoly import MPoly

    g = g_polynomial()
    assert g - MPoly.const(1) == sp_generators(3)[2]
    assert g.degree() == 2


def test_g_minus_one_vanishes_on_samples():
    g = g_polynomial()
    for seed in range(30):
        m = random_symplectic(3, seed=seed)
        assert g.evaluate(embed(m)) == 1
