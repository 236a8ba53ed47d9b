import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orbhall import oracles
from orbhall.errors import CoincidentPoints, NotAntisymmetric, OddDimension, OddParticleNumber, SizeGuard
from orbhall.laughlin import (
    ParticleConfig, jacobian_identity_check, laughlin_eval, pfaffian, pfaffian_state_eval, schur_combination,
    schur_eval, schur_poly, slater_eval, vandermonde_eval, vandermonde_power_expand, zero_order_slope,
)
from orbhall.sympoly import SparsePoly, elementary, poly_det, power_sum, vandermonde_poly


def random_config(rng, n, scale=1.0):
    return ParticleConfig(tuple(scale * (rng.normal(size=n) + 1j * rng.normal(size=n))))


def random_antisymmetric(rng, d):
    A = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return A - A.T


def test_vandermonde_matches_determinant():
    rng = np.random.default_rng(0)
    for n in range(1, 7):
        cfg = random_config(rng, n)
        assert vandermonde_eval(cfg) == pytest.approx(oracles.vandermonde_det(cfg.coordinates), rel=1e-10)


def test_wavefunction_examples():
    cfg = ParticleConfig((1, -1))
    assert vandermonde_eval(cfg) == 2
    g = math.exp(-0.5)
    assert slater_eval(cfg) == pytest.approx(2 * g)
    assert laughlin_eval(cfg, 3) == pytest.approx(8 * g)
    assert ParticleConfig((2j,), magnetic_length=2.0).gaussian() == pytest.approx(math.exp(-0.25))
    with pytest.raises(ValueError):
        laughlin_eval(cfg, 0)
    with pytest.raises(ValueError):
        ParticleConfig((1,), magnetic_length=0)


def test_laughlin_antisymmetry_parity():
    rng = np.random.default_rng(1)
    cfg = random_config(rng, 4)
    z = cfg.coordinates
    swapped = ParticleConfig((z[1], z[0]) + z[2:])
    for p in (1, 2, 3):
        assert laughlin_eval(swapped, p) == pytest.approx((-1) ** p * laughlin_eval(cfg, p), rel=1e-12)


def test_pfaffian_small():
    assert pfaffian(np.zeros((0, 0))) == 1
    assert pfaffian([[0, 3], [-3, 0]]) == 3
    a = {(0, 1): 2, (0, 2): 3, (0, 3): 5, (1, 2): 7, (1, 3): 11, (2, 3): 13}
    A = np.zeros((4, 4))
    for (i, j), v in a.items():
        A[i, j], A[j, i] = v, -v
    assert pfaffian(A) == 2 * 13 - 3 * 11 + 5 * 7


@pytest.mark.parametrize("d", [2, 4, 6, 8, 10, 12])
def test_pfaffian_squared_is_determinant(d):
    rng = np.random.default_rng(d)
    A = random_antisymmetric(rng, d)
    pf = pfaffian(A)
    assert pf**2 == pytest.approx(np.linalg.det(A), rel=1e-9)


def test_pfaffian_errors():
    with pytest.raises(NotAntisymmetric):
        pfaffian([[0, 1], [1, 0]])
    with pytest.raises(OddDimension):
        pfaffian(np.zeros((3, 3)))
    with pytest.raises(SizeGuard):
        pfaffian(np.zeros((14, 14)))


def test_pfaffian_state_errors_and_homogeneity():
    with pytest.raises(OddParticleNumber):
        pfaffian_state_eval(ParticleConfig((1, 2, 3)), 2)
    with pytest.raises(CoincidentPoints):
        pfaffian_state_eval(ParticleConfig((1, 1)), 2)
    rng = np.random.default_rng(2)
    lam = 1.7
    for n, p in [(2, 1), (2, 2), (4, 1), (4, 2), (6, 2)]:
        cfg = random_config(rng, n)
        scaled = ParticleConfig(tuple(lam * z for z in cfg.coordinates))
        ratio = (pfaffian_state_eval(scaled, p) / scaled.gaussian()) / (pfaffian_state_eval(cfg, p) / cfg.gaussian())
        deg = p * n * (n - 1) / 2 - n / 2
        assert ratio == pytest.approx(lam**deg, rel=1e-9)


def test_pfaffian_state_two_particles():
    cfg = ParticleConfig((1 + 1j, -0.5j))
    d = cfg.coordinates[0] - cfg.coordinates[1]
    assert pfaffian_state_eval(cfg, 2) == pytest.approx(d * cfg.gaussian())


def test_expansion_examples():
    assert vandermonde_power_expand(2, 2) == {(2,): 1, (1, 1): -3}
    assert vandermonde_power_expand(2, 3) == {(3,): 1, (2, 1): -3}
    assert vandermonde_power_expand(3, 1) == {(2, 1): 1}
    assert vandermonde_power_expand(4, 0) == {(): 1}
    with pytest.raises(SizeGuard):
        vandermonde_power_expand(6, 2)


@pytest.mark.parametrize("n,p", [(n, p) for n in range(1, 5) for p in (0, 2, 4)])
def test_even_expansion_matches_kostka_oracle(n, p):
    got = {lam: c for lam, c in vandermonde_power_expand(n, p).items() if c}
    ref = {tuple(x for x in lam if x): c for lam, c in oracles.schur_expansion_by_kostka(n, p).items() if c}
    assert got == ref


@pytest.mark.parametrize("n,p", [(2, 2), (3, 2), (3, 4), (4, 2)])
def test_even_expansion_resums(n, p):
    assert schur_combination(vandermonde_power_expand(n, p), n) == vandermonde_poly(n) ** p


def test_odd_expansion_resums():
    for n, p in [(2, 1), (2, 3), (3, 1), (3, 3)]:
        total = SparsePoly(n)
        for mu, c in vandermonde_power_expand(n, p).items():
            mu = tuple(mu) + (0,) * (n - len(mu))
            alt = poly_det([[SparsePoly.var(n, i) ** e for e in mu] for i in range(n)])
            total = total + alt * c
        assert total == vandermonde_poly(n) ** p


def test_schur_poly_against_alternant_ratio():
    pt = [Fraction(2), Fraction(-1, 3), Fraction(5, 2)]
    for lam in [(), (1,), (2, 1), (3, 1, 1), (2, 2)]:
        assert schur_poly(lam, 3)(pt) == schur_eval(lam, pt)
    assert schur_poly((1, 1), 2) == elementary(2, 2)
    assert schur_poly((2,), 2) == power_sum(2, 2) + elementary(2, 2)


@pytest.mark.parametrize("n,je", [(1, 1), (2, -2), (3, -6), (4, 24), (5, 120)])
def test_jacobian_identity(n, je):
    rep = jacobian_identity_check(n, sample_points=3)
    assert rep["passed"] and rep["quotient_equals_J_e"] and rep["newton_identities"]
    assert rep["J_e"] == {",".join(["0"] * n): str(je)}


def test_jacobian_guard():
    with pytest.raises(SizeGuard):
        jacobian_identity_check(6)


@pytest.mark.parametrize("p", [1, 3, 5])
def test_zero_order_slope(p):
    assert abs(zero_order_slope(p) - p) <= 0.02 * p


@settings(max_examples=30)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=3, max_size=3, unique=True))
def test_schur_eval_symmetric(pt):
    for perm in itertools.permutations(pt):
        assert schur_eval((2, 1), list(perm)) == schur_eval((2, 1), pt)


def test_pfaffian_state_swap_sign():
    rng = np.random.default_rng(5)
    cfg = random_config(rng, 4)
    z = cfg.coordinates
    swapped = ParticleConfig((z[1], z[0]) + z[2:])
    for p in (1, 2, 3):
        # Pf contributes one sign, V^p contributes (-1)^p
        assert pfaffian_state_eval(swapped, p) == pytest.approx((-1) ** (p + 1) * pfaffian_state_eval(cfg, p),
                                                                rel=1e-12)
