"""Brute-force reference computations, written independently of the routines
they check (different algorithms, no shared helpers beyond the data types)."""
from __future__ import annotations

import itertools
import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np


# partitions ------------------------------------------------------------------

@lru_cache(maxsize=None)
def _parts_at_most(k: int, m: int) -> int:
    if k == 0:
        return 1
    if m == 0:
        return 0
    return sum(_parts_at_most(k - j, j) for j in range(1, min(k, m) + 1))


def partition_count(k: int) -> int:
    return _parts_at_most(k, k)


@lru_cache(maxsize=None)
def _distinct_below(k: int, m: int) -> int:
    # partitions of k into distinct parts each <= m
    if k == 0:
        return 1
    if m == 0:
        return 0
    return _distinct_below(k, m - 1) + (_distinct_below(k - m, m - 1) if m <= k else 0)


def distinct_partition_count(k: int) -> int:
    return _distinct_below(k, k)


def euler_function_coeffs(order: int) -> list[int]:
    """prod (1 - q^l) via the pentagonal number theorem."""
    c = [0] * (order + 1)
    j = 0
    while True:
        hit = False
        for k in ((j * (3 * j - 1)) // 2, (j * (3 * j + 1)) // 2):
            if k <= order:
                c[k] = (-1) ** j
                hit = True
        if not hit:
            break
        j += 1
    return c


# orbifold values -----------------------------------------------------------------

def satake_by_hand(genus: int, nus: Sequence[int]) -> Fraction:
    x = Fraction(2 - 2 * genus)
    for v in nus:
        x += Fraction(1, v) - 1
    return x


def conductance_double_loop(genus, nus, n, max_rank, max_multiple) -> list[Fraction]:
    chi = satake_by_hand(genus, nus)
    base = Fraction(1)
    for _ in range(n):
        base *= chi
    base /= math.factorial(n)
    vals = set()
    for k in range(1, max_multiple + 1):
        for r in range(1, max_rank + 1):
            vals.add(base * k * Fraction(r) ** n)
    return sorted(vals)


# symmetric functions ---------------------------------------------------------------

def vandermonde_det(z: Sequence[complex]) -> complex:
    """det[z_j^(n-i)] (descending powers down the rows)."""
    n = len(z)
    M = np.array([[zj ** (n - 1 - i) for zj in z] for i in range(n)], dtype=complex)
    return complex(np.linalg.det(M)) if n else 1 + 0j


def vandermonde_power_monomials(n: int, p: int) -> dict[tuple[int, ...], int]:
    """Monomial coefficients of prod_{i<j} (x_i - x_j)^p by repeated binomial convolution."""
    poly = {(0,) * n: 1}
    for i, j in itertools.combinations(range(n), 2):
        binom = {}
        for k in range(p + 1):
            e = [0] * n
            e[i], e[j] = p - k, k
            binom[tuple(e)] = math.comb(p, k) * (-1) ** k
        new: dict = {}
        for e1, c1 in poly.items():
            for e2, c2 in binom.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                new[e] = new.get(e, 0) + c1 * c2
        poly = {e: c for e, c in new.items() if c}
    return poly


def _partitions_of(k: int, max_len: int, max_part: int | None = None):
    max_part = k if max_part is None else max_part
    if k == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(k, max_part), 0, -1):
        for rest in _partitions_of(k - first, max_len - 1, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def kostka(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """Number of SSYT of shape lam and content mu (chains of horizontal strips)."""
    if sum(lam) != sum(mu):
        return 0
    if not mu:
        return 1 if not lam else 0
    *head, last = mu
    total = 0
    # remove a horizontal strip of size `last` from lam
    for nu in _shrink(lam, last):
        total += kostka(nu, tuple(head))
    return total


def _shrink(lam: tuple[int, ...], k: int):
    """Partitions nu with lam/nu a horizontal strip of size k."""
    lam = list(lam)
    L = len(lam)
    ranges = [range(max(lam[i + 1] if i + 1 < L else 0, 0), lam[i] + 1) for i in range(L)]
    for nu in itertools.product(*ranges):
        if sum(lam) - sum(nu) == k:
            yield tuple(x for x in nu if x)


def schur_expansion_by_kostka(n: int, p: int) -> dict[tuple[int, ...], Fraction]:
    """Coefficients c with V^p = sum c_lambda s_lambda (p even), by a triangular
    solve against the Kostka numbers, starting from the monomial expansion."""
    mono = vandermonde_power_monomials(n, p)
    deg = p * n * (n - 1) // 2
    parts = sorted(_partitions_of(deg, n), reverse=True)  # lex-descending refines dominance
    coeffs: dict[tuple[int, ...], Fraction] = {}
    for mu in parts:
        key = mu + (0,) * (n - len(mu))
        target = Fraction(mono.get(key, 0))
        for lam, c in coeffs.items():
            target -= c * kostka(lam, mu)
        if target:
            coeffs[mu] = target
    return coeffs


# anyons ---------------------------------------------------------------------------

def exhaustive_anyons_1d(genus: int, nus: Sequence[int], n: int, relations) -> list[tuple[Fraction, tuple[int, ...]]]:
    """Scan every beta tuple against a grid of alpha values containing every
    candidate, keeping the pairs for which each relation word evaluates to 1 for
    arbitrary handle phases.  One-dimensional images commute, so a word evaluates
    to exp(2 pi i sum(exponent * turn)); turns are integers over a common
    denominator M and the test is exact."""
    L = math.lcm(*nus) if nus else 1
    D = 2 * max(n - 1, 1) * L          # alpha grid k / D, k in (-D, D]
    M = 2 * D                          # alpha/2 = k/M, beta/nu = beta (M/nu) / M
    ks = np.arange(-D + 1, D + 1)
    betas = np.array(list(itertools.product(*(range(v) for v in nus))), dtype=np.int64).reshape(-1, len(nus)) if nus \
        else np.zeros((1, 0), dtype=np.int64)
    scaled = betas * np.array([M // v for v in nus], dtype=np.int64)
    ok = np.ones((len(betas), len(ks)), dtype=bool)
    for rel in relations:
        c = Counter()
        for g, e in rel.word:
            c[g] += e
        if any(c[g] for g in c if g[0] in "ab"):
            return []  # a handle phase would be constrained
        es = sum(v for g, v in c.items() if g[0] == "s")
        ec = np.array([c.get(f"c{j + 1}", 0) for j in range(len(nus))], dtype=np.int64)
        total = es * ks[None, :] + (scaled @ ec)[:, None]
        ok &= total % M == 0
    return [(Fraction(int(ks[j]), D), tuple(int(b) for b in betas[i])) for i, j in zip(*np.nonzero(ok))]
