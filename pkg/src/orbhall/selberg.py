"""Mehta/Selberg Gaussian integrals of |V|^(2 gamma) and Monte Carlo checks.

The Monte Carlo stream is counter based: chunk k of a run with seed s draws
from Philox keyed by SeedSequence([s, k]), so estimates do not depend on how
chunks are distributed among workers.
"""
from __future__ import annotations

import math
import re

import numpy as np
from scipy.special import gammaln

from .errors import NumericDomain, SizeGuard

CHUNK = 1 << 16
MIN_SAMPLES = 10**4


def _check(n: int, gamma: float):
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > 6:
        raise SizeGuard("closed form only exposed for n <= 6")
    if not gamma > 0:
        raise NumericDomain(f"gamma must be positive, got {gamma}")


def mehta_integral(n: int, gamma: float) -> float:
    """int_{R^n} |V(x)|^(2g) exp(-g p_2(x)/2) dx
    = (2 pi)^(n/2) g^(-n/2 - g n(n-1)/2) prod_{j=1}^n Gamma(1+jg)/Gamma(1+g)."""
    _check(n, gamma)
    log_z = (n / 2) * math.log(2 * math.pi) - (n / 2 + gamma * n * (n - 1) / 2) * math.log(gamma)
    log_z += sum(gammaln(1 + j * gamma) - gammaln(1 + gamma) for j in range(1, n + 1))
    return math.exp(log_z)


def _abs_vandermonde(x: np.ndarray) -> np.ndarray:
    n = x.shape[1]
    out = np.ones(x.shape[0])
    for i in range(n):
        for j in range(i + 1, n):
            out *= np.abs(x[:, i] - x[:, j])
    return out


def _chunks(n: int, gamma: float, samples: int, seed: int):
    """Yield proposal draws x ~ N(0, 1/gamma)^n, chunk by chunk."""
    done, k = 0, 0
    while done < samples:
        size = min(CHUNK, samples - done)
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, k])))
        yield rng.normal(scale=1 / math.sqrt(gamma), size=(size, n))
        done += size
        k += 1


def _sample(n, gamma, samples, seed):
    if samples < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples")
    _check(n, gamma)
    return np.concatenate(list(_chunks(n, gamma, samples, seed)))


def mc_selberg_estimate(n: int, gamma: float, samples: int = 10**6, seed: int = 0) -> tuple[float, float]:
    """Importance-sampled Z(n, gamma) with the Gaussian part of the weight as proposal:
    Z = (2 pi / gamma)^(n/2) E[|V|^(2 gamma)]."""
    x = _sample(n, gamma, samples, seed)
    w = _abs_vandermonde(x) ** (2 * gamma)
    norm = (2 * math.pi / gamma) ** (n / 2)
    return float(norm * w.mean()), float(norm * w.std(ddof=1) / math.sqrt(len(w)))


def _observable(name: str):
    if name in ("1", "one"):
        return lambda x: np.ones(x.shape[0])
    if name == "p2":
        return lambda x: np.sum(x**2, axis=1)
    if name == "p4":
        return lambda x: np.sum(x**4, axis=1)
    m = re.fullmatch(r"abs_V_power\(\s*([-+0-9.eE]+)\s*\)", name)
    if m:
        t = float(m[1])
        return lambda x: _abs_vandermonde(x) ** t
    raise ValueError(f"unknown observable {name!r}; expected p2, p4, abs_V_power(t) or 1")


def rm_expectation(observable: str, n: int, gamma: float, samples: int = 10**6, seed: int = 0) -> tuple[float, float]:
    """Self-normalized estimate of <f> under |V|^(2 gamma) exp(-gamma p_2 / 2),
    with a delta-method standard error."""
    f = _observable(observable)
    x = _sample(n, gamma, samples, seed)
    w = _abs_vandermonde(x) ** (2 * gamma)
    fx = f(x)
    est = float(np.sum(w * fx) / np.sum(w))
    err = float(math.sqrt(np.sum(w**2 * (fx - est) ** 2)) / np.sum(w))
    return est, err


def p2_expectation_exact(n: int, gamma: float) -> float:
    """<p_2> = n/gamma + n(n-1) from the scaling x -> s x of the weight."""
    return n / gamma + n * (n - 1)
