"""Orbifold braid groups, their scalar (anyon) and clock/shift representations.

Generator names: ``s1..s{n-1}`` for the braid generators sigma_i, ``a1..ag``,
``b1..bg`` for the handle generators and ``c1..cm`` for the cone generators.
A relation is stored as ``lhs = rhs`` and checked as the word ``lhs rhs^-1``.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from types import MappingProxyType
from typing import Sequence

import numpy as np

from .errors import ConstraintViolated, NotScalar, SizeGuard
from .orbifold import OrbifoldSignature, SeifertData

Word = tuple[tuple[str, int], ...]
SEIFERT_GUARD = 10**6
DIM_GUARD = 64
UNITARY_TOL = 1e-10


@dataclass(frozen=True)
class BraidContext:
    genus: int
    cone_orders: tuple[int, ...]
    strands: int

    def __post_init__(self):
        object.__setattr__(self, "cone_orders", tuple(self.cone_orders))
        OrbifoldSignature(self.genus, self.cone_orders)
        if self.strands < 2:
            raise ValueError("need at least two strands")

    @classmethod
    def from_signature(cls, sig: OrbifoldSignature, n: int) -> "BraidContext":
        return cls(sig.genus, sig.cone_orders, n)

    @property
    def m(self) -> int:
        return len(self.cone_orders)

    @property
    def generators(self) -> tuple[str, ...]:
        n, g, m = self.strands, self.genus, self.m
        return (
            tuple(f"s{i}" for i in range(1, n))
            + tuple(f"a{l}" for l in range(1, g + 1))
            + tuple(f"b{l}" for l in range(1, g + 1))
            + tuple(f"c{j}" for j in range(1, m + 1))
        )


@dataclass(frozen=True)
class Relation:
    family: str
    lhs: Word
    rhs: Word

    @cached_property
    def word(self) -> Word:
        return self.lhs + invert(self.rhs)

    @cached_property
    def net_exponents(self) -> tuple[tuple[str, int], ...]:
        return tuple((g, e) for g, e in _net_exponents(self.word).items() if e)

    def __str__(self) -> str:
        return f"{render(self.lhs)} = {render(self.rhs)}"


@dataclass(frozen=True)
class BraidPresentation:
    context: BraidContext
    generators: tuple[str, ...]
    relations: tuple[Relation, ...]

    def family_counts(self) -> Counter:
        return Counter(r.family for r in self.relations)

    @property
    def long_relation(self) -> Relation:
        return next(r for r in self.relations if r.family == "long")


def w(*tokens: str) -> Word:
    """``w("s1'", "a1")`` -> (("s1", -1), ("a1", 1)); a trailing ``'`` marks an inverse."""
    return tuple((t.rstrip("'"), -1 if t.endswith("'") else 1) for t in tokens)


def invert(word: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


def render(word: Word) -> str:
    if not word:
        return "1"
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in word)


def braid_presentation(ctx: BraidContext) -> BraidPresentation:
    n, g, m = ctx.strands, ctx.genus, ctx.m
    rels: list[Relation] = []

    def add(family, lhs, rhs=()):
        rels.append(Relation(family, tuple(lhs), tuple(rhs)))

    s = [f"s{i}" for i in range(1, n)]
    for i, j in itertools.combinations(range(n - 1), 2):
        if j - i >= 2:
            add("artin-commute", w(s[i], s[j]), w(s[j], s[i]))
    for i in range(n - 2):
        add("artin-braid", w(s[i], s[i + 1], s[i]), w(s[i + 1], s[i], s[i + 1]))

    for l in range(1, g + 1):
        for x in (f"a{l}", f"b{l}"):
            for si in s[1:]:
                add("handle-commute", w(x, si), w(si, x))
    for l in range(1, g + 1):
        a, b = f"a{l}", f"b{l}"
        add("handle-self", w("s1'", a, "s1'", a), w(a, "s1'", a, "s1'"))
        add("handle-self", w("s1'", b, "s1'", b), w(b, "s1'", b, "s1'"))
        add("handle-mixed", w("s1'", a, "s1'", b), w(b, "s1'", a, "s1"))
    for l, r in itertools.combinations(range(1, g + 1), 2):
        for x, y in ((f"a{l}", f"a{r}"), (f"b{l}", f"b{r}"), (f"a{l}", f"b{r}"), (f"b{l}", f"a{r}")):
            add("handle-pair", w("s1'", x, "s1", y), w(y, "s1'", x, "s1"))

    cs = [f"c{j}" for j in range(1, m + 1)]
    for c in cs:
        for si in s[1:]:
            add("cone-commute", w(c, si), w(si, c))
    for c in cs:
        for r in range(1, g + 1):
            for y in (f"a{r}", f"b{r}"):
                add("cone-handle", w("s1'", c, "s1", y), w(y, "s1'", c, "s1"))
    for j, k in itertools.combinations(range(m), 2):
        add("cone-pair", w("s1'", cs[j], "s1", cs[k]), w(cs[k], "s1'", cs[j], "s1"))
    for c in cs:
        add("cone-self", w("s1'", c, "s1'", c), w(c, "s1'", c, "s1'"))

    long_word: list[tuple[str, int]] = []
    for l in range(1, g + 1):
        long_word += w(f"a{l}", f"b{l}'", f"a{l}'", f"b{l}")
    long_word += [(x, -1) for x in s[:-1]] + [(s[-1], -1), (s[-1], -1)] + [(x, -1) for x in reversed(s[:-1])]
    long_word += [(c, 1) for c in cs]
    add("long", long_word)
    for c, nu in zip(cs, ctx.cone_orders):
        add("torsion", ((c, nu),))
    return BraidPresentation(ctx, ctx.generators, tuple(rels))


# representations -------------------------------------------------------------

def clock_matrix(N: int) -> np.ndarray:
    """diag(1, xi^2, ..., xi^{2(N-1)}) with xi = exp(i pi / N)."""
    return np.diag(np.exp(2j * np.pi * np.arange(N) / N))


def shift_matrix(N: int) -> np.ndarray:
    """Ones on the superdiagonal and in the bottom-left corner."""
    return np.roll(np.eye(N, dtype=complex), 1, axis=1)


def _embed(op: np.ndarray, slot: int, g: int) -> np.ndarray:
    N = op.shape[0]
    out = np.eye(1, dtype=complex)
    for k in range(g):
        out = np.kron(out, op if k == slot else np.eye(N))
    return out


class OperatorFamily:
    """Non-scalar unitary parts of a representation plus a cache of eigenvalues
    of products over operator words, shared by every rep built on the family."""

    def __init__(self, dim: int, operators: dict[str, np.ndarray]):
        self.dim = dim
        ops = {}
        for name, U in operators.items():
            U = np.array(U, dtype=complex)
            if U.shape != (dim, dim) or np.linalg.norm(U.conj().T @ U - np.eye(dim)) > UNITARY_TOL:
                raise ValueError(f"operator for {name} is not a {dim}x{dim} unitary")
            U.flags.writeable = False
            ops[name] = U
        # read-only: families are cached and shared, and eigenvalues are memoized
        self.operators = MappingProxyType(ops)
        self._eig: dict[Word, np.ndarray] = {}

    def product(self, word: Word) -> np.ndarray:
        M = np.eye(self.dim, dtype=complex)
        for g, e in word:
            U = self.operators[g]
            step = U if e > 0 else U.conj().T
            for _ in range(abs(e)):
                M = M @ step
        return M

    def eigenvalues(self, word: Word) -> np.ndarray:
        hit = self._eig.get(word)
        if hit is not None:
            return hit
        key = tuple((g, e) for g, e in word if g in self.operators)
        if key not in self._eig:
            self._eig[key] = np.linalg.eigvals(self.product(key)) if key else np.ones(self.dim, dtype=complex)
        self._eig[word] = self._eig[key]
        return self._eig[key]


@lru_cache(maxsize=None)
def clock_shift_family(genus: int, N: int) -> OperatorFamily:
    dim = N**genus
    ops = {}
    if N > 1:
        for l in range(genus):
            ops[f"a{l + 1}"] = _embed(clock_matrix(N), l, genus)
            ops[f"b{l + 1}"] = _embed(shift_matrix(N), l, genus)
    return OperatorFamily(dim, ops)


@dataclass(eq=False)
class MatrixRep:
    """Assignment generator -> exp(2 pi i turns[g]) * operator[g] (identity if absent)."""

    N: int
    family: OperatorFamily
    turns: dict[str, float]
    seifert: SeifertData | None = None

    @property
    def dim(self) -> int:
        return self.family.dim

    def matrix(self, gen: str) -> np.ndarray:
        base = self.family.operators.get(gen)
        if base is None:
            base = np.eye(self.dim, dtype=complex)
        return np.exp(2j * np.pi * self.turns.get(gen, 0.0)) * base

    def word_matrix(self, word: Word) -> np.ndarray:
        M = np.eye(self.dim, dtype=complex)
        for g, e in word:
            step = self.matrix(g)
            if e < 0:
                step = step.conj().T
            for _ in range(abs(e)):
                M = M @ step
        return M

    def is_scalar(self, gen: str) -> bool:
        return gen not in self.family.operators


def seifert_constraint_value(ctx: BraidContext, N: int, betas: Sequence[int]) -> Fraction:
    return Fraction(ctx.genus + ctx.strands - 1, N) + sum(
        (Fraction(b, v) for b, v in zip(betas, ctx.cone_orders)), Fraction(0)
    )


def _constraint_holds(ctx: BraidContext, N: int, betas: Sequence[int]) -> bool:
    # same test as seifert_constraint_value(...).denominator == 1, over a common denominator
    L = math.lcm(N, *ctx.cone_orders)
    total = (ctx.genus + ctx.strands - 1) * (L // N) + sum(b * (L // v) for b, v in zip(betas, ctx.cone_orders))
    return total % L == 0


def _beta_tuples(cone_orders: Sequence[int]):
    if math.prod(cone_orders) > SEIFERT_GUARD:
        raise SizeGuard(f"{math.prod(cone_orders)} Seifert tuples exceed {SEIFERT_GUARD}")
    return itertools.product(*(range(v) for v in cone_orders))


def enumerate_seifert_ndim(ctx: BraidContext, N: int) -> list[SeifertData]:
    """Seifert tuples with (g+n-1)/N + sum beta_j/nu_j integral, lexicographic."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return [
        SeifertData(b) for b in _beta_tuples(ctx.cone_orders) if _constraint_holds(ctx, N, b)
    ]


def build_matrix_rep(ctx: BraidContext, N: int, seifert: SeifertData, enforce_constraint: bool = True) -> MatrixRep:
    """N^g-dimensional rep: sigma_i -> xi^-1, a_l -> U_N in slot l, b_l -> V_N in slot l,
    c_j -> exp(2 pi i beta_j / nu_j)."""
    seifert.check(OrbifoldSignature(ctx.genus, ctx.cone_orders))
    if N**ctx.genus > DIM_GUARD:
        raise SizeGuard(f"dimension {N}^{ctx.genus} exceeds {DIM_GUARD}")
    if enforce_constraint and not _constraint_holds(ctx, N, seifert.betas):
        raise ConstraintViolated(f"Seifert data {seifert.betas} fail the integrality constraint for N={N}")
    turns = {f"s{i}": -1 / (2 * N) for i in range(1, ctx.strands)}
    for j, (b, v) in enumerate(zip(seifert.betas, ctx.cone_orders), start=1):
        turns[f"c{j}"] = b / v
    return MatrixRep(N, clock_shift_family(ctx.genus, N), turns, seifert)


def conjugate_rep(rep: MatrixRep, Q: np.ndarray) -> MatrixRep:
    """The rep g -> Q R(g) Q^dagger for a unitary Q (scalars are unchanged)."""
    Qh = Q.conj().T
    ops = {g: Q @ U @ Qh for g, U in rep.family.operators.items()}
    return MatrixRep(rep.N, OperatorFamily(rep.dim, ops), dict(rep.turns), rep.seifert)


def _net_exponents(word: Word) -> Counter:
    c: Counter = Counter()
    for g, e in word:
        c[g] += e
    return c


def _is_vacuous(rep: MatrixRep, word: Word) -> bool:
    """True if the relation holds for every choice of the scalar values: operator
    part freely reduces to the empty word and scalar exponents cancel."""
    stack: list[tuple[str, int]] = []
    for g, e in word:
        if rep.is_scalar(g):
            continue
        if stack and stack[-1][0] == g:
            e += stack.pop()[1]
        if e:
            stack.append((g, e))
    if stack:
        return False
    return all(v == 0 for g, v in _net_exponents(word).items() if rep.is_scalar(g))


def relation_residuals(rep: MatrixRep, relations: Sequence[Relation]) -> np.ndarray:
    """Frobenius residuals ||R(word) - I|| of each relation word.

    R(word) = phase * P with P the product of unitary operator parts, so it is
    normal and ||phase P - I||_F^2 = sum_k |phase lambda_k(P) - 1|^2.
    """
    out = np.empty(len(relations))
    for k, rel in enumerate(relations):
        turns = rep.turns
        t = sum(e * turns.get(g, 0.0) for g, e in rel.net_exponents)
        lam = rep.family.eigenvalues(rel.word)
        out[k] = math.sqrt(float(np.sum(np.abs(np.exp(2j * np.pi * t) * lam - 1) ** 2)))
    return out


def relation_residuals_dense(rep: MatrixRep, relations: Sequence[Relation]) -> np.ndarray:
    """Same residuals from full dense matrix products (slow reference path)."""
    eye = np.eye(rep.dim)
    return np.array([np.linalg.norm(rep.word_matrix(r.word) - eye) for r in relations])


def verify_relations(rep: MatrixRep, pres: BraidPresentation, tol: float = 1e-12) -> dict:
    if rep.dim > DIM_GUARD:
        raise SizeGuard(f"dimension {rep.dim} exceeds {DIM_GUARD}")
    res = relation_residuals(rep, pres.relations)
    rows = [
        {"relation": str(r), "family": r.family, "residual": float(x), "vacuous": _is_vacuous(rep, r.word)}
        for r, x in zip(pres.relations, res)
    ]
    return {"relations": rows, "max_residual": float(res.max(initial=0.0)), "passed": bool(np.all(res <= tol))}


def statistics_phase(rep: MatrixRep, tol: float = 1e-10) -> float:
    """alpha in (-1, 1] with R(s1) = exp(i pi alpha)."""
    M = rep.matrix("s1")
    lam = M[0, 0]
    if np.linalg.norm(M - lam * np.eye(rep.dim)) > tol:
        raise NotScalar("R(s1) is not scalar")
    alpha = np.angle(lam) / np.pi
    return 1.0 if alpha <= -1 + 1e-15 else float(alpha)


# one-dimensional anyons ----------------------------------------------------------

@dataclass(frozen=True)
class Anyon1D:
    """Scalar rep: sigma_i -> exp(i pi alpha), c_j -> exp(2 pi i beta_j/nu_j),
    a_l -> exp(2 pi i theta_l), b_l -> exp(2 pi i phi_l) with theta, phi free."""

    alpha: Fraction
    seifert: SeifertData
    free_phases: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        from .orbifold import render_rational

        return {"alpha": render_rational(self.alpha), "betas": list(self.seifert.betas), "free_phases": list(self.free_phases)}


def _alphas_in_window(x: Fraction, k: int) -> list[Fraction]:
    """All alpha in (-1, 1] with k * alpha - x integral (k >= 1)."""
    lo = math.floor(-k - x) + 1  # k*alpha = x + j, alpha > -1  <=>  j > -k - x
    out = []
    j = lo
    while (x + j) / k <= 1:
        out.append((x + j) / k)
        j += 1
    return out


def enumerate_anyons_1d(ctx: BraidContext) -> list[Anyon1D]:
    """All one-dimensional unitary reps up to the free handle phases.

    Genus > 0: sigma_i -> +-1 (alpha in {0, 1}) and sum beta_j/nu_j integral.
    Genus 0: the long relation forces (n-1) alpha - sum beta_j/nu_j integral;
    for n = 2 this is alpha - sum beta_j/nu_j integral.
    """
    free = tuple(x for l in range(1, ctx.genus + 1) for x in (f"theta_{l}", f"phi_{l}"))
    out = []
    for b in _beta_tuples(ctx.cone_orders):
        x = sum((Fraction(bj, v) for bj, v in zip(b, ctx.cone_orders)), Fraction(0))
        if ctx.genus > 0:
            alphas = [Fraction(0), Fraction(1)] if x.denominator == 1 else []
        else:
            alphas = _alphas_in_window(x, ctx.strands - 1)
        out += [Anyon1D(a, SeifertData(b), free) for a in alphas]
    return out


def anyon_rep_1d(ctx: BraidContext, anyon: Anyon1D, free_values: dict[str, float] | None = None) -> MatrixRep:
    free_values = free_values or {}
    turns = {f"s{i}": float(anyon.alpha) / 2 for i in range(1, ctx.strands)}
    for l in range(1, ctx.genus + 1):
        turns[f"a{l}"] = free_values.get(f"theta_{l}", 0.0)
        turns[f"b{l}"] = free_values.get(f"phi_{l}", 0.0)
    for j, (b, v) in enumerate(zip(anyon.seifert.betas, ctx.cone_orders), start=1):
        turns[f"c{j}"] = b / v
    return MatrixRep(1, OperatorFamily(1, {}), turns, anyon.seifert)


def scan_seifert_residuals(ctx: BraidContext, N: int, relations: Sequence[Relation], betas: np.ndarray) -> np.ndarray:
    """Residuals of ``relations`` for the clock/shift rep at every Seifert tuple
    in the rows of ``betas`` (constraint not enforced), shape (len(betas), len(relations)).

    Only the cone scalars depend on beta, so each relation contributes
    exp(2 pi i (t0 + sum_j e_j beta_j / nu_j)) times a fixed operator product.
    """
    betas = np.asarray(betas, dtype=float).reshape(len(betas), ctx.m)
    base = build_matrix_rep(ctx, N, SeifertData((0,) * ctx.m), enforce_constraint=False)
    inv_nu = 1.0 / np.array(ctx.cone_orders, dtype=float)
    out = np.empty((len(betas), len(relations)))
    for k, rel in enumerate(relations):
        t0 = sum(e * base.turns.get(g, 0.0) for g, e in rel.net_exponents if not g.startswith("c"))
        ec = np.zeros(ctx.m)
        for g, e in rel.net_exponents:
            if g.startswith("c"):
                ec[int(g[1:]) - 1] = e
        t = t0 + betas @ (ec * inv_nu)
        lam = base.family.eigenvalues(rel.word)
        out[:, k] = np.sqrt(np.sum(np.abs(np.exp(2j * np.pi * t)[:, None] * lam[None, :] - 1) ** 2, axis=1))
    return out
