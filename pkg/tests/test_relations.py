"""Relation polynomials from the block matrix product and their identities."""

import random
from fractions import Fraction

import pytest

from sp6kit import matrices as mx
from sp6kit import monomials as mono
from sp6kit.mpoly import MPoly
from sp6kit.params import PARAM_INDEX, PARAM_NAMES, ParamPoly
from sp6kit.relations import (
    EXPECTED_IDENTITIES,
    BlockSpec,
    IdentityMismatchError,
    adjugate2,
    build_p_matrix,
    build_relations,
    evaluate_relations_at,
    nonmembership_evidence,
    p_block,
    sample_parameters,
    verify_identities,
)
from sp6kit.symplectic import random_symplectic


def test_block_spec_validation():
    spec = BlockSpec.generic()
    spec.validate()
    # break lower triangularity of M
    bad_m = [list(r) for r in spec.M]
    bad_m[0][4] = MPoly.const(1)
    with pytest.raises(ValueError):
        BlockSpec(M=tuple(tuple(r) for r in bad_m), N=spec.N).validate()
    # break the identity block of N
    bad_n = [list(r) for r in spec.N]
    bad_n[0][0] = MPoly.const(2)
    with pytest.raises(ValueError):
        BlockSpec(M=spec.M, N=tuple(tuple(r) for r in bad_n)).validate()


def test_p_matrix_entries_linear_homogeneous():
    p = build_p_matrix()
    assert len(p) == 6 and all(len(r) == 6 for r in p)
    for row in p:
        for entry in row:
            assert entry.degree() == 1
            assert entry.is_homogeneous()
            assert not entry.is_rational()


def test_p_matrix_numeric_agreement():
    """The symbolic matrix evaluated entrywise equals the numeric product."""
    rng = random.Random(601)
    p = build_p_matrix()
    for _ in range(5):
        values = sample_parameters(rng)
        x = random_symplectic(3, seed=rng.randrange(2**32))
        flat = [x[i][j] for i in range(6) for j in range(6)]
        from sp6kit.relations import _numeric_blocks
        from sp6kit.symplectic import permutation_pair

        m, n = _numeric_blocks(values)
        pair = permutation_pair()
        numeric = mx.mat_mul(
            [list(r) for r in pair.J1],
            mx.mat_mul(mx.mat_mul(mx.mat_mul(m, [list(r) for r in x]), n),
                       [list(r) for r in pair.J]),
        )
        for i in range(6):
            for j in range(6):
                assert p[i][j].evaluate(flat, values) == numeric[i][j]


def test_adjugate_identity():
    rng = random.Random(602)
    for _ in range(20):
        f = [[Fraction(rng.randrange(-9, 10)) for _ in range(2)]
             for _ in range(2)]
        prod = mx.mat_mul(f, adjugate2(f))
        d = mx.det(f)
        assert prod[0][0] == d and prod[1][1] == d
        assert prod[0][1] == 0 and prod[1][0] == 0


def test_p_block_layout():
    p = build_p_matrix()
    f11 = p_block(p, 1, 1)
    assert f11[0][0] == p[0][0] and f11[1][1] == p[1][1]
    f32 = p_block(p, 3, 2)
    assert f32[0][0] == p[4][2] and f32[1][1] == p[5][3]


def test_relation_shapes(catalog):
    assert catalog.arch.is_homogeneous() and catalog.arch.degree() == 2
    assert catalog.ssing.is_homogeneous() and catalog.ssing.degree() == 2
    assert catalog.ord1.is_homogeneous() and catalog.ord1.degree() == 2
    assert catalog.s1.is_homogeneous() and catalog.s1.degree() == 1
    assert len(catalog.s1) == 12
    assert not catalog.arch_affine.is_homogeneous()
    assert catalog.relation("arch") == catalog.arch
    with pytest.raises(ValueError):
        catalog.relation("nope")


def test_arch_variants_same_normal_form(catalog, sp6_basis):
    """The homogeneous and affine forms differ by a multiple of a member,
    so their normal forms coincide."""
    r1 = sp6_basis.normal_form(catalog.arch).remainder
    r2 = sp6_basis.normal_form(catalog.arch_affine).remainder
    assert r1 == r2
    assert len(r1) == 61


def test_identity_suite_passes(catalog, sp6_basis):
    report = verify_identities(catalog, sp6_basis)
    assert report.all_pass
    assert report.strict_pass
    assert not report.failures()
    assert len(report.checks) == 22
    assert {len(report.remainders[k]) for k in ("arch", "ssing", "ord1")} == {
        61, 221, 217
    }
    # every scalar is a nonzero rational, recorded per identity
    for c in report.checks:
        assert c.scalar is not None and c.scalar != 0
    # archimedean scalars are all +1 for the canonical remainder
    assert all(c.scalar == 1 for c in report.checks if c.prop == "arch")
    assert all(c.scalar == 1 for c in report.checks if c.prop == "ord1")


def test_ordinary_products_tile_grid():
    """The nine ordinary coefficients cover d3i x e2j exactly once each."""
    ords = [s for s in EXPECTED_IDENTITIES if s.prop == "ord1"]
    assert len(ords) == 9
    seen = set()
    for spec in ords:
        (pm, coeff), = spec.expected.terms.items()
        assert coeff == 1
        names = tuple(sorted(PARAM_NAMES[i] for i, _ in pm))
        assert len(names) == 2
        seen.add(names)
    assert seen == {
        (d, e)
        for d in ("d31", "d32", "d33")
        for e in ("e21", "e22", "e23")
    }


def test_identity_mismatch_raises(catalog, sp6_basis):
    """A wrong expectation is detected and reported, not silently passed."""
    from sp6kit.relations import IdentitySpec, _prod

    bad = IdentitySpec("bad:X11X23", "arch", "X11*X23", _prod("d11", "e21"))
    report = verify_identities(catalog, sp6_basis)
    rem = report.remainders["arch"]
    actual = rem.coefficient(mono.from_names("X11", "X23"))
    # the actual coefficient is not proportional to the wrong product
    from sp6kit.relations import _proportionality

    assert _proportionality(actual, bad.expected) is None


def test_constraint_entries_marked_nonstrict():
    flagged = [s for s in EXPECTED_IDENTITIES if s.constraints]
    assert len(flagged) == 5
    assert all(not s.strict for s in flagged)
    assert all(s.prop == "ssing" for s in flagged)


def test_dual_route_evaluation(catalog):
    """Matrix-arithmetic evaluation must equal polynomial evaluation."""
    rng = random.Random(603)
    for _ in range(8):
        values = sample_parameters(rng)
        x = random_symplectic(3, seed=rng.randrange(2**32))
        flat = [x[i][j] for i in range(6) for j in range(6)]
        route_matrix = evaluate_relations_at(values, [list(r) for r in x])
        assert route_matrix["arch"] == catalog.arch.evaluate(flat, values)
        assert route_matrix["ssing"] == catalog.ssing.evaluate(flat, values)
        assert route_matrix["ord1"] == catalog.ord1.evaluate(flat, values)
        assert route_matrix["s1"] == catalog.s1.evaluate(flat, values)


def test_dual_route_on_generic_matrix(catalog):
    """Route agreement is not limited to symplectic points."""
    rng = random.Random(604)
    values = sample_parameters(rng)
    x = [[Fraction(rng.randrange(-5, 6)) for _ in range(6)] for _ in range(6)]
    flat = [x[i][j] for i in range(6) for j in range(6)]
    route_matrix = evaluate_relations_at(values, x)
    for name in ("arch", "ssing", "ord1", "s1"):
        assert route_matrix[name] == catalog.relation(
            "ord1" if name == "ord1" else name
        ).evaluate(flat, values)


def test_sample_parameters_genericity():
    rng = random.Random(605)
    for _ in range(10):
        values = sample_parameters(rng)
        assert len(values) == len(PARAM_NAMES)
        for base in ("d", "c", "e"):
            block = [
                [values[PARAM_INDEX[f"{base}{i}{j}"]] for j in range(1, 4)]
                for i in range(1, 4)
            ]
            assert mx.det(block) != 0
        assert values[PARAM_INDEX["d1"]] != 0
        assert values[PARAM_INDEX["d2"]] != 0


def test_evidence_report(catalog):
    report = nonmembership_evidence(catalog, trials=5, seed=11,
                                    control_samples=40)
    assert report.ok
    assert report.trials == 5
    assert set(report.nonzero_counts) == {"arch", "ssing", "ord1", "s1"}
    assert report.control_nonzero == 0
    # deterministic under the same seed
    again = nonmembership_evidence(catalog, trials=5, seed=11,
                                   control_samples=40)
    assert again.nonzero_counts == report.nonzero_counts


def test_evidence_rejects_bad_trials(catalog):
    with pytest.raises(ValueError):
        nonmembership_evidence(catalog, trials=0)
