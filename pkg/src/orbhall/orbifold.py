"""Exact invariants of the hyperbolic orbifolds Sigma(g, nu) and of Sym^n(Sigma).

All rational values are :class:`fractions.Fraction`, which is reduced on
construction and keeps a positive denominator.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import IncompatibleOrder, NonIntegerGenus, SignatureError

Word = tuple[tuple[str, int], ...]


def render_rational(r: Fraction | int) -> str:
    """``p/q`` with ``q > 0``, or ``p`` when the value is an integer."""
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


@dataclass(frozen=True)
class OrbifoldSignature:
    genus: int
    cone_orders: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cone_orders", tuple(int(v) for v in self.cone_orders))
        if int(self.genus) != self.genus or self.genus < 0:
            raise SignatureError(f"genus must be a non-negative integer, got {self.genus!r}")
        bad = [v for v in self.cone_orders if v < 2]
        if bad:
            raise SignatureError(f"cone orders must be >= 2, got {bad}")

    @property
    def m(self) -> int:
        return len(self.cone_orders)

    @property
    def is_hyperbolic(self) -> bool:
        return satake_euler(self) < 0

    @classmethod
    def parse(cls, text: str) -> "OrbifoldSignature":
        """Parse ``g=<int>;nu=<comma-separated ints>`` (the ``nu`` part is optional)."""
        fields = {}
        for chunk in text.replace(" ", "").split(";"):
            if not chunk:
                continue
            key, sep, value = chunk.partition("=")
            if not sep or key not in ("g", "nu") or key in fields:
                raise SignatureError(f"cannot parse signature {text!r}")
            fields[key] = value
        if "g" not in fields or not re.fullmatch(r"\d+", fields["g"]):
            raise SignatureError(f"signature {text!r} needs g=<non-negative int>")
        nu_text = fields.get("nu", "")
        if nu_text and not re.fullmatch(r"\d+(,\d+)*", nu_text):
            raise SignatureError(f"bad cone order list {nu_text!r}")
        nu = tuple(int(v) for v in nu_text.split(",")) if nu_text else ()
        return cls(int(fields["g"]), nu)

    def __str__(self) -> str:
        return f"g={self.genus};nu={','.join(map(str, self.cone_orders))}"


@dataclass(frozen=True)
class FuchsianPresentation:
    generators: tuple[str, ...]
    relations: tuple[Word, ...]

    def render(self) -> list[str]:
        return [render_word(r) + " = 1" for r in self.relations]


@dataclass(frozen=True)
class CoverData:
    group_order: int
    cover_genus: int


@dataclass(frozen=True)
class SeifertData:
    betas: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "betas", tuple(int(b) for b in self.betas))

    def check(self, sig: OrbifoldSignature) -> None:
        if len(self.betas) != sig.m:
            raise ValueError(f"{len(self.betas)} Seifert invariants for {sig.m} cone points")
        for b, nu in zip(self.betas, sig.cone_orders):
            if not 0 <= b < nu:
                raise ValueError(f"Seifert invariant {b} outside [0, {nu - 1}]")


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d:
                raise ValueError(f"invariant factors {self.torsion} do not form a divisibility chain")
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion invariant factors must be >= 2")

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


def render_word(word: Word) -> str:
    if not word:
        return "1"
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in word)


def satake_euler(sig: OrbifoldSignature) -> Fraction:
    """2 - 2g + sum_j (1/nu_j - 1)."""
    return 2 - 2 * sig.genus + sum((Fraction(1, v) - 1 for v in sig.cone_orders), Fraction(0))


def presentation(sig: OrbifoldSignature) -> FuchsianPresentation:
    gens = []
    long_rel: list[tuple[str, int]] = []
    for i in range(1, sig.genus + 1):
        a, b = f"a{i}", f"b{i}"
        gens += [a, b]
        long_rel += [(a, 1), (b, 1), (a, -1), (b, -1)]
    cs = [f"c{j}" for j in range(1, sig.m + 1)]
    gens += cs
    long_rel += [(c, 1) for c in cs]
    torsion = [((c, nu),) for c, nu in zip(cs, sig.cone_orders)]
    return FuchsianPresentation(tuple(gens), (tuple(long_rel), *torsion))


def relation_matrix(pres: FuchsianPresentation) -> list[list[int]]:
    """Exponent-sum matrix: one row per relation, one column per generator."""
    col = {g: k for k, g in enumerate(pres.generators)}
    rows = []
    for rel in pres.relations:
        row = [0] * len(pres.generators)
        for g, e in rel:
            row[col[g]] += e
        rows.append(row)
    return rows


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(mat: Sequence[Sequence[int]]):
    """Smith normal form over the integers.

    Returns ``(D, U, V)`` with ``D == U @ mat @ V``, ``U`` and ``V`` unimodular,
    ``D`` diagonal with non-negative entries ``d_1 | d_2 | ...``.
    """
    A = [list(map(int, row)) for row in mat]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    U = _identity(rows)
    V = _identity(cols)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        for M in (A, U):
            M[dst] = [x + k * y for x, y in zip(M[dst], M[src])]

    def add_col(src, dst, k):
        for M in (A, V):
            for row in M:
                row[dst] += k * row[src]

    for t in range(min(rows, cols)):
        while True:
            nonzero = [(abs(A[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i][j]]
            if not nonzero:
                break
            _, i, j = min(nonzero)
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            done = True
            for i in range(t + 1, rows):
                q = A[i][t] // p
                if q:
                    add_row(t, i, -q)
                done &= A[i][t] == 0
            for j in range(t + 1, cols):
                q = A[t][j] // p
                if q:
                    add_col(t, j, -q)
                done &= A[t][j] == 0
            if not done:
                continue
            # pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if t < rows and t < cols and A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return A, U, V


def invariant_factors(mat: Sequence[Sequence[int]]) -> tuple[int, ...]:
    D, _, _ = smith_normal_form(mat)
    return tuple(D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)))


def abelianization(sig: OrbifoldSignature) -> AbelianInvariants:
    pres = presentation(sig)
    diag = invariant_factors(relation_matrix(pres))
    rank = sum(1 for d in diag if d)
    return AbelianInvariants(len(pres.generators) - rank, tuple(d for d in diag if d > 1))


def stated_abelianization(sig: OrbifoldSignature) -> AbelianInvariants:
    """Z^{2g} + sum_j Z/nu_j, brought to invariant-factor form."""
    m = sig.m
    diag = invariant_factors([[sig.cone_orders[i] if i == j else 0 for j in range(m)] for i in range(m)]) if m else ()
    return AbelianInvariants(2 * sig.genus, tuple(d for d in diag if d > 1))


def abelianization_matches_stated(sig: OrbifoldSignature) -> bool:
    return abelianization(sig) == stated_abelianization(sig)


def ktheory_ranks(sig: OrbifoldSignature) -> tuple[int, int]:
    k0 = 2 - sig.m + sum(sig.cone_orders)
    if k0 < 0:
        raise ValueError(f"negative K^0 rank {k0} for {sig}")
    return k0, 2 * sig.genus


def riemann_hurwitz_genus(sig: OrbifoldSignature, group_order: int) -> CoverData:
    if group_order < 1:
        raise ValueError("group order must be positive")
    bad = [v for v in sig.cone_orders if group_order % v]
    if bad:
        raise IncompatibleOrder(f"cone orders {bad} do not divide #G={group_order}")
    gp = 1 + Fraction(group_order, 2) * (2 * (sig.genus - 1) + sig.m - sum(Fraction(1, v) for v in sig.cone_orders))
    if gp.denominator != 1 or gp < 0:
        raise NonIntegerGenus(f"Riemann-Hurwitz gives g'={render_rational(gp)} for #G={group_order}")
    return CoverData(group_order, int(gp))


def satake_euler_symn(sig: OrbifoldSignature, n: int) -> Fraction:
    if n < 1:
        raise ValueError("n must be >= 1")
    return satake_euler(sig) ** n / math.factorial(n)


def conductance_spectrum(sig: OrbifoldSignature, n: int, max_rank: int, max_multiple: int) -> list[Fraction]:
    """Sorted distinct values k * chi(Sym^n) * r^n for 1 <= k, r within the bounds."""
    if min(n, max_rank, max_multiple) < 1:
        raise ValueError("n, max_rank and max_multiple must be >= 1")
    chi = satake_euler_symn(sig, n)
    return sorted({k * chi * r**n for k in range(1, max_multiple + 1) for r in range(1, max_rank + 1)})


def orbifold_line_euler(background_chi: int, sig: OrbifoldSignature, seifert: SeifertData) -> Fraction:
    seifert.check(sig)
    return background_chi - sum((Fraction(b, v) for b, v in zip(seifert.betas, sig.cone_orders)), Fraction(0))


def whitney_power_euler(line_chi_orb: Fraction, n: int, group_order: int = 1) -> Fraction:
    """Orbifold Euler number of the bundle induced on Sym^n by the n-fold external sum.

    Evaluated through the cover: chi(L') = #G * chi_orb(L) (single fibre wrap),
    then chi(L')^n / (n! #G^n), which is chi_orb(L)^n / n!.
    """
    if n < 1 or group_order < 1:
        raise ValueError("n and group_order must be >= 1")
    cover_chi = Fraction(line_chi_orb) * group_order
    return cover_chi**n / (math.factorial(n) * group_order**n)
