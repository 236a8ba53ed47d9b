"""Finite groups as multiplication tables, and finite G-sets."""
from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import SizeGuard


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Group on indices ``0..order-1`` given by a Cayley table.

    ``labels`` is optional bookkeeping mapping each index to a hashable element
    description (tuples, permutations, ...).
    """

    table: tuple[tuple[int, ...], ...]
    labels: tuple = ()
    name: str = "group"
    identity: int = field(init=False)
    inverse: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise ValueError("multiplication table must be a non-empty square")
        ident = next((e for e in range(n) if table[e] == tuple(range(n))), None)
        if ident is None:
            raise ValueError("no identity element in table")
        object.__setattr__(self, "identity", ident)
        inv = []
        for g in range(n):
            hs = [h for h in range(n) if table[g][h] == ident]
            if len(hs) != 1:
                raise ValueError(f"element {g} has no unique inverse")
            inv.append(hs[0])
        object.__setattr__(self, "inverse", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def check_axioms(self) -> bool:
        """Exhaustive associativity, identity and inverse laws."""
        t, e, n = self.table, self.identity, self.order
        for g in range(n):
            if t[e][g] != g or t[g][e] != g:
                return False
            if t[g][self.inverse[g]] != e or t[self.inverse[g]][g] != e:
                return False
        return all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n))

    def commutes(self, g: int, h: int) -> bool:
        return self.table[g][h] == self.table[h][g]

    def centralizer(self, g: int) -> list[int]:
        return [h for h in range(self.order) if self.commutes(g, h)]

    @cached_property
    def conjugacy_classes(self) -> list[list[int]]:
        t, inv = self.table, self.inverse
        seen: set[int] = set()
        classes = []
        for g in range(self.order):
            if g in seen:
                continue
            cls = sorted({t[t[h][g]][inv[h]] for h in range(self.order)})
            seen.update(cls)
            classes.append(cls)
        return classes

    def subgroup_generated(self, gens: Sequence[int]) -> frozenset[int]:
        elems = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)

    def to_json(self) -> str:
        return json.dumps({"name": self.name, "table": [list(r) for r in self.table]})


def group_from_elements(elements: Sequence, op, name: str = "group") -> FiniteGroup:
    index = {x: k for k, x in enumerate(elements)}
    table = [[index[op(x, y)] for y in elements] for x in elements]
    return FiniteGroup(tuple(map(tuple, table)), tuple(elements), name)


def cyclic(k: int) -> FiniteGroup:
    if k < 1:
        raise ValueError("cyclic group order must be >= 1")
    return group_from_elements(list(range(k)), lambda a, b: (a + b) % k, f"cyclic:{k}")


def trivial() -> FiniteGroup:
    return cyclic(1)


def symmetric(k: int) -> FiniteGroup:
    """S_k on tuples p with p[i] the image of i; product applies the left factor first."""
    if math.factorial(k) > 5000:
        raise SizeGuard(f"sym:{k} too large")
    perms = list(itertools.permutations(range(k)))
    return group_from_elements(perms, lambda p, q: tuple(q[p[i]] for i in range(k)), f"sym:{k}")


def dihedral(k: int) -> FiniteGroup:
    """Dihedral group of order 2k as pairs (rotation, flip)."""
    elems = [(r, s) for s in (0, 1) for r in range(k)]

    def op(x, y):
        r1, s1 = x
        r2, s2 = y
        return ((r1 + (-r2 if s1 else r2)) % k, s1 ^ s2)

    return group_from_elements(elems, op, f"dihedral:{k}")


def direct_product(*groups: FiniteGroup) -> FiniteGroup:
    elems = list(itertools.product(*(range(G.order) for G in groups)))
    if len(elems) > 5000:
        raise SizeGuard("direct product too large")

    def op(x, y):
        return tuple(G.table[a][b] for G, a, b in zip(groups, x, y))

    return group_from_elements(elems, op, "product:(" + ",".join(G.name for G in groups) + ")")


def parse_group(text: str) -> FiniteGroup:
    """Named constructors ``cyclic:k``, ``sym:k``, ``dihedral:k``, ``trivial``,
    ``product:(a,b,...)``, or a JSON object/array holding a multiplication table."""
    text = text.strip()
    if text.startswith("{") or text.startswith("["):
        data = json.loads(text)
        table = data["table"] if isinstance(data, dict) else data
        return FiniteGroup(tuple(map(tuple, table)), name=data.get("name", "table") if isinstance(data, dict) else "table")
    if text == "trivial":
        return trivial()
    m = re.fullmatch(r"(cyclic|sym|dihedral):(\d+)", text)
    if m:
        return {"cyclic": cyclic, "sym": symmetric, "dihedral": dihedral}[m[1]](int(m[2]))
    m = re.fullmatch(r"product:\((.*)\)", text)
    if m:
        return direct_product(*(parse_group(part) for part in _split_top(m[1])))
    raise ValueError(f"unknown group description {text!r}")


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        depth += (ch == "(") - (ch == ")")
        cur += ch
    parts.append(cur)
    return [p for p in parts if p.strip()]


@dataclass(frozen=True, eq=False)
class FiniteAction:
    """Left action of ``group`` on ``{0..set_size-1}``; ``act[g][x]`` is g.x."""

    group: FiniteGroup
    act: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        act = tuple(tuple(int(x) for x in row) for row in self.act)
        object.__setattr__(self, "act", act)
        if len(act) != self.group.order:
            raise ValueError("action table needs one row per group element")
        if any(len(row) != len(act[0]) for row in act):
            raise ValueError("ragged action table")

    @property
    def set_size(self) -> int:
        return len(self.act[0])

    def check_axioms(self) -> bool:
        G, a = self.group, self.act
        if a[G.identity] != tuple(range(self.set_size)):
            return False
        return all(
            a[G.table[g][h]][x] == a[g][a[h][x]]
            for g in range(G.order) for h in range(G.order) for x in range(self.set_size)
        )

    def fixed_points(self, g: int) -> list[int]:
        return [x for x, y in enumerate(self.act[g]) if x == y]

    @cached_property
    def fixed_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << x for x, y in enumerate(row) if x == y) for row in self.act)


def trivial_action(G: FiniteGroup, k: int) -> FiniteAction:
    return FiniteAction(G, tuple(tuple(range(k)) for _ in range(G.order)))


def coset_action(G: FiniteGroup, H: frozenset[int]) -> FiniteAction:
    """Left multiplication on the left cosets gH."""
    cosets: list[frozenset[int]] = []
    where = {}
    for g in range(G.order):
        if g in where:
            continue
        c = frozenset(G.table[g][h] for h in H)
        for x in c:
            where[x] = len(cosets)
        cosets.append(c)
    act = [[where[G.table[g][min(c)]] for c in cosets] for g in range(G.order)]
    return FiniteAction(G, tuple(map(tuple, act)))


def disjoint_union(*actions: FiniteAction) -> FiniteAction:
    G = actions[0].group
    rows = []
    for g in range(G.order):
        row, offset = [], 0
        for A in actions:
            if A.group is not G:
                raise ValueError("actions must share the same group object")
            row += [offset + y for y in A.act[g]]
            offset += A.set_size
        rows.append(tuple(row))
    return FiniteAction(G, tuple(rows))
