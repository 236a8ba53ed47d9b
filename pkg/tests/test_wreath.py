import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orbhall import oracles
from orbhall.errors import SizeGuard
from orbhall.groups import (
    FiniteAction, coset_action, cyclic, dihedral, direct_product, parse_group, symmetric, trivial, trivial_action,
)
from orbhall.selfcheck import random_action
from orbhall.series import PowerSeries, euler_product
from orbhall.wreath import (
    WreathElement, build_wreath_group, fock_graded_dimension, string_euler_centralizer, string_euler_direct,
    sym_euler_series, verify_sym_identity, wreath_act, wreath_elements, wreath_multiply, wreath_power_action,
)

import numpy as np

Z2 = cyclic(2)


def swap_action():
    return FiniteAction(Z2, ((0, 1), (1, 0)))


@pytest.mark.parametrize("G", [cyclic(1), cyclic(5), symmetric(3), dihedral(4), direct_product(Z2, cyclic(3))])
def test_group_axioms(G):
    assert G.check_axioms()
    assert sum(len(c) for c in G.conjugacy_classes) == G.order


def test_parse_group():
    assert parse_group("cyclic:4").order == 4
    assert parse_group("sym:3").order == 6
    assert parse_group("product:(cyclic:2,sym:3)").order == 12
    assert parse_group("trivial").order == 1
    assert parse_group('{"table": [[0,1],[1,0]]}').order == 2
    with pytest.raises(ValueError):
        parse_group("free:2")


def test_symmetric_conjugacy_classes():
    assert sorted(len(c) for c in symmetric(4).conjugacy_classes) == [1, 3, 6, 6, 8]


def test_wreath_multiply_identity_and_worked_product():
    e = WreathElement.identity(Z2, 2)
    v = WreathElement((0, 1), (1, 0))
    assert wreath_multiply(e, v, Z2) == v
    # ((1,0),swap)((0,1),swap): components (1 + h_{s(1)}, 0 + h_{s(2)}) = (1+1, 0+0)
    u = WreathElement((1, 0), (1, 0))
    assert wreath_multiply(u, v, Z2) == WreathElement((0, 0), (0, 1))


def test_wreath_associativity_random():
    G = symmetric(3)
    rng = random.Random(1)
    for _ in range(200):
        u, v, w = (WreathElement(tuple(rng.randrange(6) for _ in range(3)), tuple(rng.sample(range(3), 3)))
                   for _ in range(3))
        assert wreath_multiply(wreath_multiply(u, v, G), w, G) == wreath_multiply(u, wreath_multiply(v, w, G), G)


def test_wreath_act_examples_and_compatibility():
    triv = trivial_action(trivial(), 3)
    swap = WreathElement((0, 0), (1, 0))
    assert wreath_act(swap, (4 % 3, 2), triv) == (2, 1)
    assert wreath_act(WreathElement.identity(trivial(), 2), (1, 2), triv) == (1, 2)
    A = coset_action(symmetric(3), frozenset({0}))  # regular action, 6 points
    rng = random.Random(2)
    for _ in range(500):
        u, v = (WreathElement(tuple(rng.randrange(6) for _ in range(3)), tuple(rng.sample(range(3), 3)))
                for _ in range(2))
        x = tuple(rng.randrange(A.set_size) for _ in range(3))
        assert wreath_act(wreath_multiply(u, v, A.group), x, A) == wreath_act(u, wreath_act(v, x, A), A)


def test_size_errors():
    with pytest.raises(ValueError):
        wreath_multiply(WreathElement((0,), (0,)), WreathElement((0, 0), (0, 1)), Z2)
    with pytest.raises(SizeGuard):
        wreath_elements(cyclic(5), 5)


@pytest.mark.parametrize("G,n,order", [(trivial(), 3, 6), (Z2, 2, 8), (cyclic(3), 2, 18)])
def test_build_wreath_group(G, n, order):
    W = build_wreath_group(G, n)
    assert W.order == order and W.check_axioms()
    assert len(set(W.labels)) == order


def test_wreath_power_action_is_action():
    assert wreath_power_action(swap_action(), 2).check_axioms()


def test_string_euler_examples():
    for k in (1, 2, 4):
        A = trivial_action(trivial(), k)
        assert string_euler_direct(A) == string_euler_centralizer(A) == k
    assert string_euler_direct(swap_action()) == 1
    assert string_euler_centralizer(swap_action()) == 1
    assert string_euler_direct(trivial_action(Z2, 1)) == 2


def test_sector_sum_equivalence_random():
    rng = np.random.default_rng(11)
    for _ in range(20):
        A = random_action(rng)
        assert A.check_axioms()
        assert string_euler_direct(A) == string_euler_centralizer(A)


def test_sym_series_examples():
    assert sym_euler_series(0, 5).as_ints() == [1, 0, 0, 0, 0, 0]
    assert sym_euler_series(1, 6).as_ints() == [1, 1, 2, 3, 5, 7, 11]
    assert sym_euler_series(-1, 7).as_ints() == [1, -1, -1, 0, 0, 1, 0, 1]
    assert sym_euler_series(-1, 40).as_ints() == oracles.euler_function_coeffs(40)
    assert sym_euler_series(1, 30).as_ints() == [oracles.partition_count(k) for k in range(31)]


def test_fock_examples():
    assert fock_graded_dimension(0, 0, 6).as_ints() == [1, 0, 0, 0, 0, 0, 0]
    assert fock_graded_dimension(1, 0, 6).as_ints() == [1, 1, 2, 3, 5, 7, 11]
    assert fock_graded_dimension(0, 1, 6).as_ints() == [1, 1, 1, 2, 2, 3, 4]


@settings(max_examples=40, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4))
def test_series_exponent_law(a, b):
    assert sym_euler_series(a, 12) * sym_euler_series(b, 12) == sym_euler_series(a + b, 12)


def test_series_truncation_and_json():
    s = PowerSeries([1, 2, 3], 2) * PowerSeries([1, 1], 1)
    assert s.order == 1
    with pytest.raises(IndexError):
        s[2]
    assert PowerSeries([Fraction(1, 2), -1]).to_json() == '["1/2", "-1"]'
    x = euler_product(-3, 8)
    assert (x * x.inverse()).as_ints() == [1] + [0] * 8


def test_verify_sym_identity_examples():
    rep = verify_sym_identity(trivial_action(trivial(), 1), 4)
    assert [r["direct"] for r in rep["rows"]] == [1, 2, 3, 5] and rep["passed"]
    rep = verify_sym_identity(trivial_action(trivial(), 2), 2)
    assert rep["rows"][1]["direct"] == 5 and rep["passed"]
    rep = verify_sym_identity(trivial_action(Z2, 1), 2)
    assert rep["chi"] == 2 and rep["rows"][1]["series"] == 5 and rep["passed"]


def test_verify_sym_identity_nontrivial_action():
    rep = verify_sym_identity(FiniteAction(cyclic(3), ((0, 1, 2), (1, 2, 0), (2, 0, 1))), 3)
    assert rep["passed"]


def test_centralizer_form_matches_burnside_count():
    # #(X^g / C(g)) = (1/|C(g)|) sum_{h in C(g)} #{x in X^g : h x = x}
    rng = np.random.default_rng(21)
    for _ in range(20):
        A = random_action(rng)
        G = A.group
        total = Fraction(0)
        for cls in G.conjugacy_classes:
            g = cls[0]
            fixed = set(A.fixed_points(g))
            C = G.centralizer(g)
            total += Fraction(sum(sum(1 for x in fixed if A.act[h][x] == x) for h in C), len(C))
        assert string_euler_centralizer(A) == total
