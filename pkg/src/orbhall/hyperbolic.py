"""Upper half-plane isometries, the hyperbolic area cocycle, and the multipliers
generated by the magnetic potential ``eta = theta * dx / y``.

Matrices act by z -> (az+b)/(cz+d); a word ``g1 g2 g3`` evaluates to the matrix
product ``M1 @ M2 @ M3``, i.e. the map z -> g1(g2(g3(z))).
"""
from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import NotHyperbolic, NumericDomain

DET_TOL = 1e-12
GL_NODES = 5
_GL_X, _GL_W = np.polynomial.legendre.leggauss(GL_NODES)


@dataclass(frozen=True)
class MoebiusMap:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if not det > 0:
            raise NumericDomain(f"matrix with determinant {det} does not preserve the upper half-plane")
        if abs(det - 1) > DET_TOL:
            s = math.sqrt(det)
            for name in "abcd":
                object.__setattr__(self, name, getattr(self, name) / s)

    @classmethod
    def from_matrix(cls, m) -> "MoebiusMap":
        m = np.asarray(m, dtype=float)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1.0, 0.0, 0.0, 1.0)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return MoebiusMap.from_matrix(self.matrix @ other.matrix)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def __call__(self, z):
        return (self.a * z + self.b) / (self.c * z + self.d)

    def derivative(self, z):
        return 1.0 / (self.c * z + self.d) ** 2

    def distance_to_identity(self) -> float:
        """min over the sign ambiguity of PSL(2,R) of ||M -+ I||_F."""
        m = self.matrix
        return min(np.linalg.norm(m - np.eye(2)), np.linalg.norm(m + np.eye(2)))


def mobius_apply(M: MoebiusMap, z: complex) -> complex:
    if not z.imag > 0:
        raise NumericDomain(f"{z} is not in the upper half-plane")
    w = M(complex(z))
    if not w.imag > 0:
        raise NumericDomain(f"image {w} left the upper half-plane")
    return w


def _disc_to_half_plane(w: complex) -> complex:
    return 1j * (1 + w) / (1 - w)


def hyperbolic_triangle(p: int, q: int, r: int) -> tuple[complex, complex, complex]:
    """Vertices A, B, C (counter-clockwise) with angles pi/p, pi/q, pi/r."""
    if Fraction(1, p) + Fraction(1, q) + Fraction(1, r) >= 1:
        raise NotHyperbolic(f"angle sum of ({p},{q},{r}) is not below pi")
    al, be, ga = math.pi / p, math.pi / q, math.pi / r
    # side lengths from the second hyperbolic law of cosines
    c = math.acosh((math.cos(al) * math.cos(be) + math.cos(ga)) / (math.sin(al) * math.sin(be)))
    b = math.acosh((math.cos(al) * math.cos(ga) + math.cos(be)) / (math.sin(al) * math.sin(ga)))
    A = 0j
    B = complex(math.tanh(c / 2))
    C = math.tanh(b / 2) * cmath.exp(1j * al)
    return tuple(_disc_to_half_plane(w) for w in (A, B, C))


def reflection_matrix(z1: complex, z2: complex) -> np.ndarray:
    """Matrix R (det -1) of the reflection z -> (R00 conj(z) + R01) / (R10 conj(z) + R11)
    in the geodesic through z1 and z2."""
    x1, x2 = z1.real, z2.real
    if abs(x1 - x2) <= 1e-14 * max(1.0, abs(z1), abs(z2)):
        return np.array([[-1.0, 2 * x1], [0.0, 1.0]])
    x0 = (abs(z2) ** 2 - abs(z1) ** 2) / (2 * (x2 - x1))
    R = abs(z1 - x0)
    return np.array([[x0, R * R - x0 * x0], [1.0, -x0]]) / R


def triangle_group(p: int, q: int, r: int) -> tuple[MoebiusMap, MoebiusMap, MoebiusMap]:
    """Elliptic generators c1, c2, c3 of orders p, q, r with c1 c2 c3 = 1 in PSL(2,R).

    Each is the product of the reflections in the two sides meeting at a vertex.
    """
    A, B, C = hyperbolic_triangle(p, q, r)
    rAB, rBC, rCA = reflection_matrix(A, B), reflection_matrix(B, C), reflection_matrix(C, A)
    c1 = MoebiusMap.from_matrix(rCA @ rAB)
    c2 = MoebiusMap.from_matrix(rAB @ rBC)
    c3 = MoebiusMap.from_matrix(rBC @ rCA)
    return c1, c2, c3


def _tangent(z: complex, w: complex) -> complex:
    """Direction at z of the geodesic from z to w."""
    return 1j * (w - z) / (w - z.conjugate())


def triangle_area(z1: complex, z2: complex, z3: complex) -> float:
    """Signed area of the geodesic triangle; positive for counter-clockwise vertices."""
    if z1 == z2 or z2 == z3 or z1 == z3:
        return 0.0
    t1 = cmath.phase(_tangent(z1, z3) / _tangent(z1, z2))
    t2 = cmath.phase(_tangent(z2, z1) / _tangent(z2, z3))
    t3 = cmath.phase(_tangent(z3, z2) / _tangent(z3, z1))
    s = t1 + t2 + t3
    if s == 0:
        return 0.0
    area = math.pi - abs(t1) - abs(t2) - abs(t3)
    return math.copysign(max(area, 0.0), s)


def area_cocycle(g1: MoebiusMap, g2: MoebiusMap, z0: complex) -> float:
    """Signed area of the triangle (z0, g1^-1 z0, g2 z0)."""
    return triangle_area(z0, g1.inverse()(z0), g2(z0))


# words ---------------------------------------------------------------------

_TOKEN = re.compile(r"([A-Za-z]+\d*)('?)")


def parse_word(text: str) -> list[tuple[str, int]]:
    """``"c1 c2' c3"`` -> [("c1", 1), ("c2", -1), ("c3", 1)].

    Whitespace separates tokens; indexed names may also be run together ("c1c2'").
    """
    out = []
    for chunk in text.split():
        pos = 0
        while pos < len(chunk):
            m = _TOKEN.match(chunk, pos)
            if not m:
                raise ValueError(f"cannot parse word {text!r} near {chunk[pos:]!r}")
            out.append((m[1], -1 if m[2] else 1))
            pos = m.end()
    return out


def evaluate_word(word: Sequence[tuple[str, int]], gens: dict[str, MoebiusMap]) -> MoebiusMap:
    m = np.eye(2)
    for name, e in word:
        g = gens[name]
        step = g.matrix if e > 0 else g.inverse().matrix
        for _ in range(abs(e)):
            m = m @ step
    return MoebiusMap.from_matrix(m)


def random_word(names: Sequence[str], length: int, rng: np.random.Generator) -> list[tuple[str, int]]:
    return [(names[rng.integers(len(names))], int(rng.choice([-1, 1]))) for _ in range(length)]


# magnetic potential ----------------------------------------------------------

@dataclass(frozen=True)
class MagneticData:
    field_strength: float
    base_point: complex
    quadrature_steps: int = 64

    def __post_init__(self):
        if self.quadrature_steps < 16:
            raise ValueError("quadrature_steps must be >= 16")
        if not complex(self.base_point).imag > 0:
            raise NumericDomain("base point must lie in the upper half-plane")
        object.__setattr__(self, "base_point", complex(self.base_point))


def _segment_integral(M: MoebiusMap, z0: complex, z1: complex, theta: float, panels: int) -> float:
    v = z1 - z0
    edges = np.linspace(0.0, 1.0, panels + 1)
    half = np.diff(edges) / 2
    s = (edges[:-1, None] + half[:, None] * (_GL_X[None, :] + 1)).ravel()
    w = (half[:, None] * _GL_W[None, :]).ravel()
    z = z0 + s * v
    if np.any(z.imag <= 0):
        raise NumericDomain("integration path left the upper half-plane")
    pulled = (M.derivative(z) * v).real / M(z).imag
    integrand = pulled - v.real / z.imag
    return theta * float(np.dot(w, integrand))


def magnetic_phase(M: MoebiusMap, x: complex, data: MagneticData, via: Sequence[complex] = ()) -> float:
    """phi_M(x): line integral of M*eta - eta from the base point to x.

    The path is the Euclidean segment, or the polyline through ``via`` if given.
    """
    pts = [data.base_point, *map(complex, via), complex(x)]
    return sum(
        _segment_integral(M, p, q, data.field_strength, data.quadrature_steps) for p, q in zip(pts, pts[1:])
    )


def magnetic_phase_closed_form(M: MoebiusMap, x: complex, data: MagneticData) -> float:
    """2 theta (arg(cx + d) - arg(c x0 + d)), a primitive of M*eta - eta."""
    x0 = data.base_point
    return 2 * data.field_strength * (cmath.phase(M.c * x + M.d) - cmath.phase(M.c * x0 + M.d))


def multiplier_sigma(g: MoebiusMap, h: MoebiusMap, data: MagneticData) -> complex:
    """exp(-i phi_h(g x0)).

    As a function on pairs it satisfies the multiplier identity for the order in
    which magnetic translations compose: sigma(a,b) sigma(b@a, c) = sigma(a, c@b) sigma(b,c).
    """
    return cmath.exp(-1j * magnetic_phase(h, g(data.base_point), data))


@dataclass(frozen=True)
class WreathIsometry:
    """(gamma_1..gamma_n; s) acting on H^n by (g.x)_j = gamma_j(x_{s(j)})."""

    maps: tuple[MoebiusMap, ...]
    perm: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        object.__setattr__(self, "perm", tuple(self.perm))
        if len(self.maps) != len(self.perm) or sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("need n maps and a permutation of 0..n-1")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "WreathIsometry":
        return cls((MoebiusMap.identity(),) * n, tuple(range(n)))

    def __matmul__(self, other: "WreathIsometry") -> "WreathIsometry":
        """Wreath product; (self @ other).apply(x) == self.apply(other.apply(x))."""
        if self.n != other.n:
            raise ValueError("size mismatch")
        maps = tuple(self.maps[j] @ other.maps[self.perm[j]] for j in range(self.n))
        perm = tuple(other.perm[self.perm[j]] for j in range(self.n))
        return WreathIsometry(maps, perm)

    def apply(self, x: Sequence[complex]) -> tuple[complex, ...]:
        if len(x) != self.n:
            raise ValueError("size mismatch")
        return tuple(self.maps[j](x[self.perm[j]]) for j in range(self.n))


def wreath_phase(w: WreathIsometry, x: Sequence[complex], data: MagneticData) -> float:
    """psi_w(x) = sum_j phi_{gamma_j}(x_{s(j)})."""
    if len(x) != w.n:
        raise ValueError("size mismatch")
    return sum(magnetic_phase(w.maps[j], x[w.perm[j]], data) for j in range(w.n))


def multiplier_sigma_n(w: WreathIsometry, v: WreathIsometry, data: MagneticData) -> complex:
    """exp(-i psi_v(w x_(0))) with x_(0) the diagonal base point."""
    if w.n != v.n:
        raise ValueError("size mismatch")
    base = (data.base_point,) * w.n
    return cmath.exp(-1j * wreath_phase(v, w.apply(base), data))


def magnetic_translation(w: WreathIsometry, f: Callable, data: MagneticData) -> Callable:
    """(T_w f)(x) = exp(-i psi_w(x)) f(w x).

    These compose as T_w T_v = sigma_n(w, v) T_{v@w}.
    """

    def translated(x):
        return cmath.exp(-1j * wreath_phase(w, x, data)) * f(w.apply(x))

    return translated
