"""Wreath products G^n x| S_n, string-theoretic Euler characteristics and the
generating-function identities they satisfy.

Permutations are tuples ``p`` with ``p[i]`` the image of ``i`` (0-based).
The product

    (g, s)(h, t) = ((g_1 h_{s(1)}, ..., g_n h_{s(n)}), st)

is associative only when permutations compose left to right, ``(st)(i) = t(s(i))``;
that is the convention used throughout.  With it, ``(w.x)_i = g_i . x_{s(i)}``
is a left action of the wreath product on X^n.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import SizeGuard
from .groups import FiniteAction, FiniteGroup, group_from_elements
from .series import PowerSeries, euler_product

WREATH_ORDER_GUARD = 5000
PAIR_GUARD = 10**7


@dataclass(frozen=True)
class WreathElement:
    components: tuple[int, ...]
    perm: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "perm", tuple(self.perm))
        if len(self.components) != len(self.perm):
            raise ValueError("components and permutation must have the same length")
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"{self.perm} is not a permutation of 0..{len(self.perm) - 1}")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, group: FiniteGroup, n: int) -> "WreathElement":
        return cls((group.identity,) * n, tuple(range(n)))


def compose_perms(s: tuple[int, ...], t: tuple[int, ...]) -> tuple[int, ...]:
    """st with s applied first."""
    return tuple(t[s[i]] for i in range(len(s)))


def wreath_multiply(u: WreathElement, v: WreathElement, group: FiniteGroup) -> WreathElement:
    if u.n != v.n:
        raise ValueError(f"size mismatch: {u.n} vs {v.n}")
    comps = tuple(group.table[u.components[i]][v.components[u.perm[i]]] for i in range(u.n))
    return WreathElement(comps, compose_perms(u.perm, v.perm))


def wreath_act(w: WreathElement, x: tuple[int, ...], action: FiniteAction) -> tuple[int, ...]:
    if len(x) != w.n:
        raise ValueError(f"point of X^{len(x)} acted on by an element of rank {w.n}")
    return tuple(action.act[w.components[i]][x[w.perm[i]]] for i in range(w.n))


def wreath_elements(group: FiniteGroup, n: int) -> list[WreathElement]:
    size = math.factorial(n) * group.order**n
    if size > WREATH_ORDER_GUARD:
        raise SizeGuard(f"wreath product of order {size} exceeds {WREATH_ORDER_GUARD}")
    return [
        WreathElement(c, p)
        for p in itertools.permutations(range(n))
        for c in itertools.product(range(group.order), repeat=n)
    ]


def build_wreath_group(group: FiniteGroup, n: int) -> FiniteGroup:
    """G^n x| S_n as a table; ``labels[k]`` is the WreathElement with index k."""
    elems = wreath_elements(group, n)
    return group_from_elements(elems, lambda u, v: wreath_multiply(u, v, group), f"wreath({group.name},{n})")


def wreath_power_action(action: FiniteAction, n: int) -> FiniteAction:
    """Action of build_wreath_group(action.group, n) on X^n (points in mixed radix)."""
    W = build_wreath_group(action.group, n)
    points = list(itertools.product(range(action.set_size), repeat=n))
    index = {x: k for k, x in enumerate(points)}
    act = tuple(tuple(index[wreath_act(w, x, action)] for x in points) for w in W.labels)
    return FiniteAction(W, act)


def _pair_guard(order: int):
    if order * order > PAIR_GUARD:
        raise SizeGuard(f"{order}^2 commuting-pair candidates exceed {PAIR_GUARD}")


def string_euler_direct(action: FiniteAction) -> Fraction:
    """(1/#G) sum over commuting pairs of the size of the common fixed set."""
    G = action.group
    _pair_guard(G.order)
    masks = action.fixed_masks
    total = 0
    for g in range(G.order):
        row = G.table[g]
        for h in range(G.order):
            if row[h] == G.table[h][g]:
                total += (masks[g] & masks[h]).bit_count()
    return Fraction(total, G.order)


def _orbit_count(points: list[int], movers: list[int], action: FiniteAction) -> int:
    remaining = set(points)
    orbits = 0
    while remaining:
        orbits += 1
        stack = [remaining.pop()]
        while stack:
            x = stack.pop()
            for h in movers:
                y = action.act[h][x]
                if y in remaining:
                    remaining.remove(y)
                    stack.append(y)
    return orbits


def string_euler_centralizer(action: FiniteAction) -> Fraction:
    """sum over conjugacy classes [g] of #(X^g / C(g)); orbits found by traversal."""
    G = action.group
    _pair_guard(G.order)
    total = 0
    for cls in G.conjugacy_classes:
        g = cls[0]
        total += _orbit_count(action.fixed_points(g), G.centralizer(g), action)
    return Fraction(total)


def satake_euler_finite(action: FiniteAction) -> Fraction:
    """chi(X)/#G with chi of a finite set its cardinality (the trivial sector)."""
    return Fraction(action.set_size, action.group.order)


def sym_euler_series(chi: int, order: int) -> PowerSeries:
    """prod_{l>=1} (1 - q^l)^(-chi) up to q^order."""
    if int(chi) != chi:
        raise ValueError("exponent must be an integer")
    return euler_product(-int(chi), order, sign=-1)


def fock_graded_dimension(k0: int, k1: int, order: int) -> PowerSeries:
    """prod (1 + q^l)^k1 / prod (1 - q^l)^k0 up to q^order."""
    if k0 < 0 or k1 < 0:
        raise ValueError("ranks must be non-negative")
    return euler_product(k1, order, sign=+1) * euler_product(-k0, order, sign=-1)


def verify_sym_identity(action: FiniteAction, n_max: int) -> dict:
    """Compare brute-force chi(X^n, G_n) with the coefficients of the Euler product."""
    chi = string_euler_direct(action)
    if chi.denominator != 1:
        raise ArithmeticError(f"string Euler characteristic {chi} is not an integer")
    series = sym_euler_series(int(chi), n_max)
    rows = []
    for n in range(1, n_max + 1):
        direct = string_euler_direct(wreath_power_action(action, n))
        rows.append({"n": n, "direct": direct, "series": series[n], "match": direct == series[n]})
    return {"chi": chi, "rows": rows, "passed": all(r["match"] for r in rows)}
