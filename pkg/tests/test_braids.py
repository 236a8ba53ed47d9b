import cmath
import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from orbhall import oracles
from orbhall.braids import (
    BraidContext, MatrixRep, OperatorFamily, build_matrix_rep, braid_presentation, clock_matrix, conjugate_rep, enumerate_anyons_1d,
    enumerate_seifert_ndim, anyon_rep_1d, invert, relation_residuals, relation_residuals_dense, render,
    scan_seifert_residuals, seifert_constraint_value, shift_matrix, statistics_phase, verify_relations, w,
)
from orbhall.errors import ConstraintViolated, NotScalar, SizeGuard
from orbhall.orbifold import OrbifoldSignature, SeifertData

CONTEXTS = [
    BraidContext(0, (2, 3, 7), 2), BraidContext(0, (3, 3, 3), 3), BraidContext(1, (), 2), BraidContext(1, (2,), 3),
    BraidContext(2, (), 2), BraidContext(2, (2, 3), 3), BraidContext(1, (4, 4), 4), BraidContext(0, (5,), 4),
]


def expected_family_counts(n, g, m):
    return {
        "artin-commute": math.comb(n - 1, 2) - (n - 2),
        "artin-braid": n - 2,
        "handle-commute": 2 * g * (n - 2),
        "handle-self": 2 * g,
        "handle-mixed": g,
        "handle-pair": 4 * math.comb(g, 2),
        "cone-commute": m * (n - 2),
        "cone-handle": 2 * g * m,
        "cone-pair": math.comb(m, 2),
        "cone-self": m,
        "long": 1,
        "torsion": m,
    }


def random_unitary(dim, rng):
    Z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    Q, R = np.linalg.qr(Z)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def test_word_helpers():
    assert w("a1", "s1'") == (("a1", 1), ("s1", -1))
    assert invert(w("a1", "s1'")) == (("s1", 1), ("a1", -1))
    assert render(()) == "1" and render(w("a1", "b1'")) == "a1 b1^-1"


def test_relation_count_example():
    pres = braid_presentation(BraidContext(2, (2, 3), 3))
    assert len(pres.relations) == 31
    assert pres.generators == ("s1", "s2", "a1", "a2", "b1", "b2", "c1", "c2")


@pytest.mark.parametrize("n,g,m", list(itertools.product((2, 3, 4, 5), (0, 1, 2, 3), (0, 1, 2, 3))))
def test_family_counts(n, g, m):
    pres = braid_presentation(BraidContext(g, (3,) * m, n))
    counts = {k: v for k, v in expected_family_counts(n, g, m).items() if v}
    assert dict(pres.family_counts()) == counts


def test_long_relation_shape():
    pres = braid_presentation(BraidContext(1, (2, 3), 3))
    assert render(pres.long_relation.word) == "a1 b1^-1 a1^-1 b1 s1^-1 s2^-1 s2^-1 s1^-1 c1 c2"


@pytest.mark.parametrize("N", [1, 2, 3, 5, 8])
def test_clock_shift(N):
    U, V = clock_matrix(N), shift_matrix(N)
    eye = np.eye(N)
    assert np.allclose(np.linalg.matrix_power(U, N), eye, atol=1e-12)
    assert np.allclose(np.linalg.matrix_power(V, N), eye, atol=1e-12)
    comm = U @ V @ U.conj().T @ V.conj().T
    lam = comm[0, 0]
    assert np.allclose(comm, lam * eye, atol=1e-12)
    assert abs(lam**N - 1) < 1e-12
    if N > 1:
        assert abs(lam - 1) > 1e-3  # primitive


def test_seifert_enumeration_matches_fraction_constraint():
    for ctx in CONTEXTS:
        for N in (1, 2, 3, 4):
            got = {s.betas for s in enumerate_seifert_ndim(ctx, N)}
            ref = {b for b in itertools.product(*(range(v) for v in ctx.cone_orders))
                   if seifert_constraint_value(ctx, N, b).denominator == 1}
            assert got == ref


def test_accepted_reps_satisfy_all_relations():
    for ctx in CONTEXTS:
        pres = braid_presentation(ctx)
        for N in (1, 2, 3):
            if N**ctx.genus > 64:
                continue
            for s in enumerate_seifert_ndim(ctx, N):
                rep = build_matrix_rep(ctx, N, s)
                rep_report = verify_relations(rep, pres)
                assert rep_report["passed"], (ctx, N, s, rep_report["max_residual"])
                assert statistics_phase(rep) == pytest.approx(-1 / N if N > 1 else 1.0, abs=1e-14)


def test_statistics_phase_examples():
    ctx = BraidContext(1, (), 2)
    assert statistics_phase(build_matrix_rep(ctx, 2, SeifertData(()), False)) == pytest.approx(-0.5)
    assert statistics_phase(build_matrix_rep(ctx, 1, SeifertData(()), False)) == 1.0
    assert statistics_phase(build_matrix_rep(ctx, 4, SeifertData(()), False)) == pytest.approx(-0.25)


def test_statistics_phase_not_scalar():
    rep = MatrixRep(2, OperatorFamily(2, {"s1": np.diag([1.0, -1.0]).astype(complex)}), {})
    with pytest.raises(NotScalar):
        statistics_phase(rep)


def test_rejected_tuples_fail_long_relation():
    for ctx in CONTEXTS:
        pres = braid_presentation(ctx)
        for N in (2, 3, 4):
            if N**ctx.genus > 64:
                continue
            for b in itertools.product(*(range(v) for v in ctx.cone_orders)):
                x = seifert_constraint_value(ctx, N, b)
                if x.denominator == 1:
                    continue
                rep = build_matrix_rep(ctx, N, SeifertData(b), enforce_constraint=False)
                res = relation_residuals(rep, [pres.long_relation])[0]
                # the long word is the scalar exp(2 pi i x) (up to an integer) times the identity
                expected = math.sqrt(rep.dim) * abs(cmath.exp(2j * math.pi * float(x)) - 1)
                assert res == pytest.approx(expected, abs=1e-10)
                assert res >= abs(cmath.exp(2j * math.pi / x.denominator) - 1) - 1e-12


def test_constraint_and_size_guards():
    ctx = BraidContext(0, (2, 3, 7), 2)
    with pytest.raises(ConstraintViolated):
        build_matrix_rep(ctx, 2, SeifertData((0, 0, 0)))
    with pytest.raises(SizeGuard):
        build_matrix_rep(BraidContext(3, (), 2), 5, SeifertData(()))
    with pytest.raises(ValueError):
        BraidContext(0, (2,), 1)


def test_dense_and_fast_residuals_agree():
    rng = np.random.default_rng(0)
    for ctx in CONTEXTS:
        pres = braid_presentation(ctx)
        for N in (2, 3):
            if N**ctx.genus > 27:
                continue
            b = tuple(int(rng.integers(v)) for v in ctx.cone_orders)
            rep = build_matrix_rep(ctx, N, SeifertData(b), enforce_constraint=False)
            fast = relation_residuals(rep, pres.relations)
            dense = relation_residuals_dense(rep, pres.relations)
            assert np.allclose(fast, dense, atol=1e-10)


def test_conjugation_invariance():
    rng = np.random.default_rng(1)
    ctx = BraidContext(2, (2, 3), 3)
    pres = braid_presentation(ctx)
    for N in (2, 3):
        for s in enumerate_seifert_ndim(ctx, N)[:3]:
            rep = build_matrix_rep(ctx, N, s)
            conj = conjugate_rep(rep, random_unitary(rep.dim, rng))
            assert np.allclose(relation_residuals(conj, pres.relations), relation_residuals(rep, pres.relations),
                               atol=1e-10)
            assert verify_relations(conj, pres, tol=1e-10)["passed"]


def test_scan_matches_per_rep_residuals():
    ctx = BraidContext(1, (2, 4), 3)
    pres = braid_presentation(ctx)
    betas = np.array(list(itertools.product(range(2), range(4))))
    scan = scan_seifert_residuals(ctx, 3, pres.relations, betas)
    for row, b in zip(scan, betas):
        rep = build_matrix_rep(ctx, 3, SeifertData(tuple(int(x) for x in b)), enforce_constraint=False)
        assert np.allclose(row, relation_residuals(rep, pres.relations), atol=1e-12)


def test_vacuous_flags():
    ctx = BraidContext(1, (3,), 3)
    rep = build_matrix_rep(ctx, 1, SeifertData((0,)))
    rows = verify_relations(rep, braid_presentation(ctx))["relations"]
    by_family = {}
    for r in rows:
        by_family.setdefault(r["family"], set()).add(r["vacuous"])
    # with N = 1 everything is scalar; commutation relations hold identically
    assert by_family["cone-commute"] == {True} and by_family["handle-commute"] == {True}
    assert by_family["torsion"] == {False}


def test_anyons_1d_examples():
    assert len(enumerate_anyons_1d(BraidContext(0, (3, 3, 3), 2))) == 54
    ctx = BraidContext(1, (2, 2), 2)
    out = enumerate_anyons_1d(ctx)
    assert {(a.alpha, a.seifert.betas) for a in out} == {
        (Fraction(0), (0, 0)), (Fraction(1), (0, 0)), (Fraction(0), (1, 1)), (Fraction(1), (1, 1))}
    assert out[0].free_phases == ("theta_1", "phi_1")
    assert out[0].to_json() == {"alpha": "0", "betas": [0, 0], "free_phases": ["theta_1", "phi_1"]}
    assert {a.alpha for a in enumerate_anyons_1d(BraidContext(0, (), 2))} == {Fraction(0), Fraction(1)}
    assert {a.alpha for a in enumerate_anyons_1d(BraidContext(0, (), 3))} == {
        Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1)}


@pytest.mark.parametrize("ctx", CONTEXTS)
def test_anyons_1d_match_exhaustive_oracle(ctx):
    pres = braid_presentation(ctx)
    got = {(a.alpha, a.seifert.betas) for a in enumerate_anyons_1d(ctx)}
    ref = set(oracles.exhaustive_anyons_1d(ctx.genus, ctx.cone_orders, ctx.strands, pres.relations))
    assert got == ref


def test_anyon_reps_satisfy_relations():
    rng = np.random.default_rng(2)
    for ctx in CONTEXTS:
        pres = braid_presentation(ctx)
        for an in enumerate_anyons_1d(ctx)[:40]:
            free = {k: float(rng.uniform()) for k in an.free_phases}
            assert verify_relations(anyon_rep_1d(ctx, an, free), pres)["passed"]


def test_cached_family_is_read_only():
    fam = build_matrix_rep(BraidContext(1, (), 2), 2, SeifertData(()), False).family
    with pytest.raises(TypeError):
        fam.operators["s1"] = np.eye(2)
    with pytest.raises(ValueError):
        fam.operators["a1"][0, 0] = 2


def test_clock_shift_examples():
    assert np.array_equal(clock_matrix(1), np.eye(1)) and np.array_equal(shift_matrix(1), np.eye(1))
    U, V = clock_matrix(2), shift_matrix(2)
    assert np.allclose(U, np.diag([1, -1]), atol=1e-15) and np.array_equal(V, np.array([[0, 1], [1, 0]]))
    for N in range(1, 17):
        U, V = clock_matrix(N), shift_matrix(N)
        xi2 = cmath.exp(2j * math.pi / N)
        assert np.linalg.norm(V @ U - xi2 * U @ V) <= 1e-12


def test_presentation_examples():
    pres = braid_presentation(BraidContext(0, (), 3))
    assert set(pres.family_counts()) == {"artin-braid", "long"}
    assert render(pres.long_relation.word) == "s1^-1 s2^-1 s2^-1 s1^-1"
    pres = braid_presentation(BraidContext(1, (), 2))
    words = {render(r.lhs) + " = " + render(r.rhs) for r in pres.relations}
    assert "s1^-1 a1 s1^-1 a1 = a1 s1^-1 a1 s1^-1" in words


def test_seifert_ndim_examples():
    assert [s.betas for s in enumerate_seifert_ndim(BraidContext(1, (), 2), 2)] == [()]
    assert enumerate_seifert_ndim(BraidContext(1, (), 2), 3) == []


def test_anyons_1d_half_integer_example():
    out = enumerate_anyons_1d(BraidContext(0, (2, 2), 2))
    assert sorted(a.alpha for a in out if a.seifert.betas == (1, 0)) == [Fraction(-1, 2), Fraction(1, 2)]
    assert len(enumerate_anyons_1d(BraidContext(1, (), 2))) == 2
