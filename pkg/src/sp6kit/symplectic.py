"""Defining ideal of the symplectic group and exact symplectic samples.

For g in {1, 2, 3} the group Sp(2g) is cut out, inside the space of
2g x 2g matrices, by the entries of X^T.J.X - J where J is the standard
form [[0, I_g], [-I_g, 0]].  That matrix of constraints is antisymmetric
with zero diagonal, so the strictly upper triangular entries (i < j,
row-major) are a complete generator list: 1 for g=1, 6 for g=2, 15 for
g=3.  Variables are the fixed 6x6 grid X11..X66; smaller g uses the
top-left 2g x 2g block.

This module also provides the two fixed 6x6 permutation matrices used
by the relation construction, copied digit-for-digit, and a seeded
generator of exact rational symplectic matrices used as evaluation
points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import matrices as mx
from . import monomials as mono
from .mpoly import MPoly

SUPPORTED_G = (1, 2, 3)

GROUP_NAMES = {1: "sp2", 2: "sp4", 3: "sp6"}
GROUP_G = {name: g for g, name in GROUP_NAMES.items()}


class UnsupportedG(ValueError):
    """Raised for a group size outside {1, 2, 3}."""


def _check_g(g: int) -> int:
    if g not in SUPPORTED_G:
        raise UnsupportedG(f"g must be one of {SUPPORTED_G}, got {g!r}")
    return g


@dataclass(frozen=True)
class SymplecticForm:
    g: int

    def __post_init__(self):
        _check_g(self.g)

    @property
    def matrix(self):
        return standard_form(self.g)


def standard_form(g: int):
    """The 2g x 2g standard form [[0, I_g], [-I_g, 0]] over Fraction."""
    _check_g(g)
    n = 2 * g
    j = mx.zeros(n, n)
    for k in range(g):
        j[k][g + k] = Fraction(1)
        j[g + k][k] = Fraction(-1)
    return j


def sp_generators(g: int) -> list[MPoly]:
    """Quadratic generators of the ideal of Sp(2g), upper triangle order.

    Entry (i, j), 1-based with i < j, of X^T.J.X - J expands to

        sum_k (X_ki * X_{g+k,j} - X_{g+k,i} * X_kj) - J_ij

    listed row-major: (1,2), (1,3), ..., (2g-1, 2g).
    """
    _check_g(g)
    n = 2 * g
    j_std = standard_form(g)
    gens = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            terms = []
            for k in range(1, g + 1):
                terms.append(
                    (mono.from_names(f"X{k}{i}", f"X{g + k}{j}"), Fraction(1))
                )
                terms.append(
                    (mono.from_names(f"X{g + k}{i}", f"X{k}{j}"), Fraction(-1))
                )
            cj = j_std[i - 1][j - 1]
            if cj:
                terms.append((mono.ONE, -cj))
            gens.append(MPoly.from_rational_terms(terms))
    return gens


def g_polynomial() -> MPoly:
    """g(X): the (1,4) pairing entry for g=3, with g(X) - 1 in the ideal."""
    return sp_generators(3)[2] + 1  # (1,4) is the third pair in row-major order


# The two fixed 6x6 permutation matrices of the relation construction.
_J_ROWS = (1, 4, 2, 5, 3, 6)
_J1_ROWS = (1, 3, 5, 2, 4, 6)


@dataclass(frozen=True)
class PermutationPair:
    J: tuple
    J1: tuple

    def as_lists(self):
        return ([list(r) for r in self.J], [list(r) for r in self.J1])


def _perm_matrix(rows):
    return tuple(
        tuple(Fraction(int(c == target)) for c in range(1, 7)) for target in rows
    )


def permutation_pair() -> PermutationPair:
    return PermutationPair(J=_perm_matrix(_J_ROWS), J1=_perm_matrix(_J1_ROWS))


class SingularBlock(RuntimeError):
    """Internal marker: a sampled block matrix was singular."""


def random_symplectic(g: int, seed: int, size_bound: int = 3):
    """Exact rational symplectic matrix, deterministic per seed.

    Builds a word of length 6 whose letters are drawn from the three
    generator families of Sp(2g):

        [[A, 0], [0, (A^T)^-1]]   A invertible,
        [[I, 0], [S, I]]          S symmetric,
        J_std.

    Integer entries are uniform in [-size_bound, size_bound]; singular
    A draws are retried.  The defining equation M^T.J.M = J holds
    exactly for the result.
    """
    _check_g(g)
    if size_bound < 1:
        raise ValueError("size_bound must be at least 1")
    rng = random.Random(seed)
    n = 2 * g
    word = mx.identity(n)
    for _ in range(6):
        kind = rng.randrange(3)
        if kind == 0:
            a = _random_invertible(rng, g, size_bound)
            block = mx.block2x2(
                a, mx.zeros(g), mx.zeros(g), mx.transpose(mx.inverse(a))
            )
        elif kind == 1:
            s = _random_symmetric(rng, g, size_bound)
            block = mx.block2x2(mx.identity(g), mx.zeros(g), s, mx.identity(g))
        else:
            block = standard_form(g)
        word = mx.mat_mul(word, block)
    return word


def _random_invertible(rng, g, bound):
    for _ in range(64):
        a = [
            [Fraction(rng.randint(-bound, bound)) for _ in range(g)]
            for _ in range(g)
        ]
        if mx.det(a):
            return a
    raise SingularBlock("could not draw an invertible block")


def _random_symmetric(rng, g, bound):
    s = mx.zeros(g)
    for i in range(g):
        for j in range(i, g):
            v = Fraction(rng.randint(-bound, bound))
            s[i][j] = v
            s[j][i] = v
    return s


def is_symplectic(m, g: int) -> bool:
    """Exact check of the defining equation for a 2g x 2g matrix."""
    j = standard_form(g)
    lhs = mx.mat_mul(mx.mat_mul(mx.transpose(m), j), m)
    return lhs == j
