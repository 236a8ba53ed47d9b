"""Truncated formal power series in q with exact rational coefficients."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable

from .orbifold import render_rational


class PowerSeries:
    """Coefficients of q^0 .. q^order; everything above ``order`` is unknown.

    Arithmetic between series of different orders truncates to the smaller
    order, it never extends silently.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        c = [Fraction(x) for x in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be >= 0")
            c = (c + [Fraction(0)] * (order + 1))[: order + 1]
        if not c:
            raise ValueError("a power series needs at least the constant term")
        self.coeffs = tuple(c)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls([1], order)

    @classmethod
    def monomial(cls, power: int, order: int, coeff=1) -> "PowerSeries":
        c = [0] * (order + 1)
        if power <= order:
            c[power] = coeff
        return cls(c)

    def __getitem__(self, k: int) -> Fraction:
        if k > self.order:
            raise IndexError(f"coefficient q^{k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PowerSeries([{', '.join(render_rational(c) for c in self.coeffs)}])"

    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries([other], self.order)

    def __add__(self, other):
        other = self._coerce(other)
        k = min(self.order, other.order)
        return PowerSeries([a + b for a, b in zip(self.coeffs[: k + 1], other.coeffs[: k + 1])])

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries([a * other for a in self.coeffs])
        k = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for n in range(k + 1):
            s = Fraction(0)
            for i in range(n + 1):
                if a[i] and b[n - i]:
                    s += a[i] * b[n - i]
            out.append(s)
        return PowerSeries(out)

    __rmul__ = __mul__

    def inverse(self) -> "PowerSeries":
        """Multiplicative inverse by recursive division (geometric-series inversion)."""
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv = [1 / a[0]]
        for n in range(1, self.order + 1):
            s = sum((a[i] * inv[n - i] for i in range(1, n + 1)), Fraction(0))
            inv.append(-s / a[0])
        return PowerSeries(inv)

    def __pow__(self, e: int) -> "PowerSeries":
        if int(e) != e:
            raise ValueError("only integer exponents are supported")
        e = int(e)
        base = self if e >= 0 else self.inverse()
        result = PowerSeries.one(self.order)
        e = abs(e)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def to_json(self) -> str:
        return json.dumps([render_rational(c) for c in self.coeffs])

    def as_ints(self) -> list[int]:
        if any(c.denominator != 1 for c in self.coeffs):
            raise ValueError("series has non-integer coefficients")
        return [int(c) for c in self.coeffs]


def euler_product(exponent: int, order: int, sign: int = -1) -> PowerSeries:
    """prod_{l=1..order} (1 + sign q^l)^exponent, truncated at q^order."""
    result = PowerSeries.one(order)
    for ell in range(1, order + 1):
        factor = PowerSeries.one(order) + PowerSeries.monomial(ell, order, sign)
        result = result * factor**exponent
    return result
