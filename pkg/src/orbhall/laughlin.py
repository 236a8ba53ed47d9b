"""Slater, Laughlin and Pfaffian wave functions; exact Vandermonde power
expansions in Schur functions; the Vandermonde-as-Jacobian identity."""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (
    CoincidentPoints, NotAntisymmetric, OddDimension, OddParticleNumber, SizeGuard,
)
from .sympoly import SparsePoly, elementary, poly_det, power_sum, vandermonde_poly

PFAFFIAN_MAX_DIM = 12
EXPAND_MAX_N, EXPAND_MAX_P = 5, 6
JACOBIAN_MAX_N = 5

Partition = tuple[int, ...]


@dataclass(frozen=True)
class ParticleConfig:
    coordinates: tuple[complex, ...]
    magnetic_length: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "coordinates", tuple(complex(z) for z in self.coordinates))
        if not self.magnetic_length > 0:
            raise ValueError("magnetic length must be positive")

    @property
    def n(self) -> int:
        return len(self.coordinates)

    def gaussian(self) -> float:
        return math.exp(-sum(abs(z) ** 2 for z in self.coordinates) / (4 * self.magnetic_length**2))


def vandermonde_eval(cfg: ParticleConfig) -> complex:
    z = cfg.coordinates
    out = 1 + 0j
    for i, j in itertools.combinations(range(len(z)), 2):
        out *= z[i] - z[j]
    return out


def slater_eval(cfg: ParticleConfig) -> complex:
    return vandermonde_eval(cfg) * cfg.gaussian()


def laughlin_eval(cfg: ParticleConfig, p: int) -> complex:
    if p < 1:
        raise ValueError("p must be a positive integer")
    return vandermonde_eval(cfg) ** p * cfg.gaussian()


def pfaffian(A) -> complex:
    """Pfaffian by expansion along the first row, memoized on the remaining index set."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("pfaffian needs a square matrix")
    d = A.shape[0]
    if np.abs(A + A.T).max(initial=0.0) > 1e-12 * max(1.0, np.abs(A).max(initial=0.0)):
        raise NotAntisymmetric("matrix is not antisymmetric")
    if d % 2:
        raise OddDimension(f"dimension {d} is odd")
    if d > PFAFFIAN_MAX_DIM:
        raise SizeGuard(f"dimension {d} exceeds {PFAFFIAN_MAX_DIM}")
    memo: dict[tuple[int, ...], complex] = {(): 1 + 0j}

    def pf(idx: tuple[int, ...]) -> complex:
        if idx in memo:
            return memo[idx]
        i, rest = idx[0], idx[1:]
        total = 0j
        for k, j in enumerate(rest):
            if A[i, j] != 0:
                sign = -1 if k % 2 else 1
                total += sign * A[i, j] * pf(rest[:k] + rest[k + 1:])
        memo[idx] = total
        return total

    return pf(tuple(range(d)))


def pfaffian_state_eval(cfg: ParticleConfig, p: int) -> complex:
    """Pf(1/(z_i - z_j)) V^p exp(-sum |z|^2 / 4 l^2).

    Homogeneous of degree p n(n-1)/2 - n/2 in z apart from the Gaussian.
    """
    z = cfg.coordinates
    n = len(z)
    if n % 2:
        raise OddParticleNumber(f"{n} particles")
    if len(set(z)) != n:
        raise CoincidentPoints("Pfaffian state needs distinct coordinates")
    M = np.zeros((n, n), dtype=complex)
    for i, j in itertools.combinations(range(n), 2):
        M[i, j] = 1 / (z[i] - z[j])
        M[j, i] = -M[i, j]
    return pfaffian(M) * vandermonde_eval(cfg) ** p * cfg.gaussian()


# exact expansions ----------------------------------------------------------------

def _staircase(n: int) -> tuple[int, ...]:
    return tuple(range(n - 1, -1, -1))


def _strip(lam: Sequence[int]) -> Partition:
    lam = list(lam)
    while lam and lam[-1] == 0:
        lam.pop()
    return tuple(lam)


def vandermonde_power_expand(n: int, p: int) -> dict[Partition, Fraction]:
    """Even p: {lambda: c} with V^p = sum c_lambda s_lambda, read off as the
    coefficient of x^(lambda+delta) in V^(p+1) (bialternant formula).
    Odd p: {mu: d} with V^p = sum d_mu a_mu over strictly decreasing mu."""
    if n < 1 or p < 0:
        raise ValueError("need n >= 1 and p >= 0")
    if n > EXPAND_MAX_N or p > EXPAND_MAX_P:
        raise SizeGuard(f"expansion of V^{p} in {n} variables exceeds the guard")
    delta = _staircase(n)
    if p % 2 == 0:
        W = vandermonde_poly(n) ** (p + 1)
        shift = delta
    else:
        W = vandermonde_poly(n) ** p
        shift = (0,) * n
    out = {}
    for e, c in W.terms.items():
        if all(e[i] > e[i + 1] for i in range(n - 1)):
            out[_strip(tuple(a - b for a, b in zip(e, shift)))] = Fraction(c)
    return dict(sorted(out.items(), reverse=True))


def schur_poly(lam: Sequence[int], n: int) -> SparsePoly:
    """s_lambda(x_1..x_n) as the exact quotient a_(lambda+delta) / a_delta."""
    lam = tuple(lam) + (0,) * (n - len(lam))
    if len(lam) > n:
        raise ValueError("partition longer than the number of variables")
    mu = tuple(a + b for a, b in zip(lam, _staircase(n)))
    alt = {}
    for perm in itertools.permutations(range(n)):
        e = [0] * n
        for i, k in enumerate(perm):
            e[k] = mu[i]
        alt[tuple(e)] = _perm_sign(perm)
    return SparsePoly(n, alt).divmod_exact(vandermonde_poly(n))


def _perm_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            sign *= -1 if length % 2 == 0 else 1
    return sign


def schur_combination(expansion: dict[Partition, Fraction], n: int) -> SparsePoly:
    total = SparsePoly(n)
    for lam, c in expansion.items():
        total = total + schur_poly(lam, n) * c
    return total


def jacobian_identity_check(n: int, sample_points: int = 0, seed: int = 0) -> dict:
    """J(p_1..p_n) = J_e(p_1..p_n) * V, all exact.

    J is det(d p_i / d x_j); J_e is the Jacobian with respect to e_1..e_n of the
    Newton-identity expressions of p_i, pulled back to the x variables.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > JACOBIAN_MAX_N:
        raise SizeGuard(f"n = {n} exceeds {JACOBIAN_MAX_N}")
    ps = [power_sum(n, k) for k in range(1, n + 1)]
    J = poly_det([[f.diff(j) for j in range(n)] for f in ps])
    V = vandermonde_poly(n)
    quotient = J.divmod_exact(V)

    # Newton: p_k = sum_{i=1}^{k-1} (-1)^(i-1) e_i p_{k-i} + (-1)^(k-1) k e_k, in a ring with E_1..E_n
    E = [SparsePoly.var(n, i) for i in range(n)]
    P: list[SparsePoly] = []
    for k in range(1, n + 1):
        pk = E[k - 1] * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            pk = pk + E[i - 1] * P[k - i - 1] * ((-1) ** (i - 1))
        P.append(pk)
    Je_E = poly_det([[f.diff(j) for j in range(n)] for f in P])
    Je = Je_E.substitute([elementary(n, k) for k in range(1, n + 1)])
    # Newton check: the E-expressions really are the power sums
    newton_ok = all(Pk.substitute([elementary(n, k) for k in range(1, n + 1)]) == pk for Pk, pk in zip(P, ps))

    rng = np.random.default_rng(seed)
    pts_ok = True
    for _ in range(sample_points):
        pt = [Fraction(int(a), int(b)) for a, b in zip(rng.integers(-20, 21, n), rng.integers(1, 9, n))]
        pts_ok &= J(pt) == Je(pt) * V(pt)
    passed = quotient == Je and newton_ok and pts_ok
    return {
        "n": n,
        "J_terms": len(J.terms),
        "J_e": {",".join(map(str, e)): str(c) for e, c in sorted(Je.terms.items())},
        "quotient_equals_J_e": quotient == Je,
        "newton_identities": newton_ok,
        "sample_points": sample_points,
        "passed": bool(passed),
    }


def zero_order_slope(p: int, n: int = 3, eps=(1e-2, 1e-3, 1e-4), seed: int = 0) -> float:
    """Least-squares slope of log|Psi(z, z+eps, ...)| against log eps."""
    rng = np.random.default_rng(seed)
    z = list(rng.normal(size=n) + 1j * rng.normal(size=n))
    logs = []
    for e in eps:
        w = list(z)
        w[1] = w[0] + e * cmath.exp(0.3j)
        logs.append(math.log(abs(laughlin_eval(ParticleConfig(w), p))))
    x = np.log(np.asarray(eps))
    return float(np.polyfit(x, np.asarray(logs), 1)[0])


def _det_exact(M: list[list[Fraction]]) -> Fraction:
    M = [row[:] for row in M]
    n, det = len(M), Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def schur_eval(lam: Sequence[int], point: Sequence[Fraction]) -> Fraction:
    """s_lambda at a point with distinct coordinates, as a ratio of alternants."""
    n = len(point)
    lam = tuple(lam) + (0,) * (n - len(lam))
    delta = _staircase(n)
    num = [[Fraction(x) ** (l + d) for l, d in zip(lam, delta)] for x in point]
    den = [[Fraction(x) ** d for d in delta] for x in point]
    return _det_exact(num) / _det_exact(den)
