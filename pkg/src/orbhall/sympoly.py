"""Sparse exact multivariate polynomials (integer or Fraction coefficients)."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Mapping, Sequence

Exponent = tuple[int, ...]


class SparsePoly:
    """Polynomial in ``nvars`` variables as {exponent tuple: coefficient}; zero
    coefficients are never stored, so equality of dicts is equality of polynomials."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int | Fraction] | None = None):
        self.nvars = nvars
        self.terms: dict[Exponent, int | Fraction] = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have {nvars} entries")
            if c:
                self.terms[tuple(e)] = c

    @classmethod
    def const(cls, nvars: int, c=1) -> "SparsePoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "SparsePoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __repr__(self):
        return f"SparsePoly({self.nvars}, {len(self.terms)} terms)"

    def _lift(self, other) -> "SparsePoly":
        return other if isinstance(other, SparsePoly) else SparsePoly.const(self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        r = SparsePoly(self.nvars)
        r.terms = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = SparsePoly(self.nvars)
        r.terms = {e: -c for e, c in self.terms.items()}
        return r

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            if not other:
                return SparsePoly(self.nvars)
            r = SparsePoly(self.nvars)
            r.terms = {e: c * other for e, c in self.terms.items()}
            return r
        out: dict[Exponent, int | Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SparsePoly":
        if k < 0:
            raise ValueError("negative powers of polynomials are not polynomials")
        result = SparsePoly.const(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def coeff(self, e: Sequence[int]):
        return self.terms.get(tuple(e), 0)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def diff(self, i: int) -> "SparsePoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return SparsePoly(self.nvars, out)

    def __call__(self, point: Sequence):
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x**k
            total += t
        return total

    def substitute(self, images: Sequence["SparsePoly"]) -> "SparsePoly":
        """Replace variable i by ``images[i]`` (all images share one ring)."""
        target = images[0].nvars
        powers: dict[tuple[int, int], SparsePoly] = {}

        def pw(i, k):
            if (i, k) not in powers:
                powers[(i, k)] = images[i] ** k
            return powers[(i, k)]

        out = SparsePoly(target)
        for e, c in self.terms.items():
            t = SparsePoly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    t = t * pw(i, k)
            out = out + t
        return out

    def leading(self) -> tuple[Exponent, int | Fraction]:
        e = max(self.terms)
        return e, self.terms[e]

    def divmod_exact(self, divisor: "SparsePoly") -> "SparsePoly":
        """Quotient of an exact division (lex order); raises ArithmeticError on a remainder."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        de, dc = divisor.leading()
        rem = SparsePoly(self.nvars, self.terms)
        quot: dict[Exponent, int | Fraction] = {}
        while not rem.is_zero():
            e, c = rem.leading()
            q = tuple(a - b for a, b in zip(e, de))
            if min(q) < 0:
                raise ArithmeticError("division leaves a remainder")
            qc = Fraction(c, dc) if isinstance(c, int) and isinstance(dc, int) else c / dc
            if isinstance(qc, Fraction) and qc.denominator == 1:
                qc = int(qc)
            quot[q] = qc
            rem = rem - divisor * SparsePoly(self.nvars, {q: qc})
        return SparsePoly(self.nvars, quot)


def power_sum(nvars: int, k: int) -> SparsePoly:
    return SparsePoly(nvars, {tuple(k if j == i else 0 for j in range(nvars)): 1 for i in range(nvars)})


def elementary(nvars: int, k: int) -> SparsePoly:
    terms = {}
    for S in itertools.combinations(range(nvars), k):
        terms[tuple(1 if i in S else 0 for i in range(nvars))] = 1
    return SparsePoly(nvars, terms)


def vandermonde_poly(nvars: int) -> SparsePoly:
    """prod_{i<j} (x_i - x_j)."""
    V = SparsePoly.const(nvars)
    for i, j in itertools.combinations(range(nvars), 2):
        V = V * (SparsePoly.var(nvars, i) - SparsePoly.var(nvars, j))
    return V


def poly_det(rows: Sequence[Sequence[SparsePoly]]) -> SparsePoly:
    """Determinant by Laplace expansion along the first row (small sizes)."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return rows[0][0]
    total = SparsePoly(rows[0][0].nvars)
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * poly_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total

