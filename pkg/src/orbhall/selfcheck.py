"""Cross-module verification suites (the acceptance checks), shared by the CLI
``selfcheck`` command and the test-suite.

Each suite returns a :class:`SuiteResult`; ``quick=True`` shrinks sweep sizes
and sample counts, ``quick=False`` runs the full configuration.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import oracles
from .braids import (
    BraidContext, braid_presentation, build_matrix_rep, enumerate_anyons_1d, enumerate_seifert_ndim,
    scan_seifert_residuals, statistics_phase, verify_relations,
)
from .groups import FiniteAction, coset_action, cyclic, dihedral, direct_product, disjoint_union, symmetric, trivial
from .hyperbolic import (
    MagneticData, MoebiusMap, WreathIsometry, area_cocycle, evaluate_word, hyperbolic_triangle, magnetic_phase,
    multiplier_sigma, multiplier_sigma_n, random_word, triangle_area, triangle_group, wreath_phase,
)
from .laughlin import (
    ParticleConfig, jacobian_identity_check, pfaffian, vandermonde_eval, vandermonde_power_expand,
    zero_order_slope,
)
from .orbifold import (
    OrbifoldSignature, SeifertData, conductance_spectrum, ktheory_ranks, riemann_hurwitz_genus, satake_euler,
    satake_euler_symn,
)
from .selberg import mc_selberg_estimate, mehta_integral, p2_expectation_exact, rm_expectation
from .wreath import fock_graded_dimension, string_euler_centralizer, string_euler_direct, verify_sym_identity


@dataclass
class SuiteResult:
    number: int
    name: str
    passed: bool
    elapsed: float
    budget: float
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name} ({self.elapsed:.2f}s, budget {self.budget:g}s)"

    def to_json(self) -> dict:
        return {"number": self.number, "name": self.name, "passed": self.passed,
                "elapsed": round(self.elapsed, 3), "budget": self.budget, "details": self.details}


def _timed(number: int, name: str, budget: float):
    def wrap(fn):
        def run(quick: bool = False) -> SuiteResult:
            t0 = time.perf_counter()
            passed, details = fn(quick)
            return SuiteResult(number, name, bool(passed), time.perf_counter() - t0, budget, details)

        run.number, run.title = number, name
        return run

    return wrap


@_timed(1, "exact invariants", 1)
def suite_exact_invariants(quick):
    sig = OrbifoldSignature(0, (2, 3, 7))
    got = {
        "satake": satake_euler(sig),
        "symn2": satake_euler_symn(sig, 2),
        "ktheory": ktheory_ranks(sig),
        "cover_genus": riemann_hurwitz_genus(sig, 168).cover_genus,
    }
    want = {"satake": Fraction(-1, 42), "symn2": Fraction(1, 3528), "ktheory": (11, 0), "cover_genus": 3}
    return got == want, {k: str(v) for k, v in got.items()}


@_timed(2, "conductance value set", 1)
def suite_conductance(quick):
    rng = np.random.default_rng(2)
    bad = []
    for _ in range(20):
        g = int(rng.integers(0, 3))
        nus = tuple(int(v) for v in rng.integers(2, 8, size=int(rng.integers(0, 4))))
        n, r, k = int(rng.integers(1, 4)), int(rng.integers(1, 4)), int(rng.integers(1, 6))
        got = conductance_spectrum(OrbifoldSignature(g, nus), n, r, k)
        if got != oracles.conductance_double_loop(g, nus, n, r, k):
            bad.append((g, nus, n, r, k))
    return not bad, {"cases": 20, "mismatches": bad}


def _cyclic_actions(k: int, size: int):
    """All actions of Z/k on {0..size-1}: images of the generator with pi^k = id."""
    G = cyclic(k)
    for pi in itertools.permutations(range(size)):
        powers = [tuple(range(size))]
        for _ in range(k - 1):
            powers.append(tuple(pi[x] for x in powers[-1]))
        if tuple(pi[x] for x in powers[-1]) == tuple(range(size)):
            yield FiniteAction(G, tuple(powers))


@_timed(3, "generating-function identity", 30)
def suite_sym_identity(quick):
    rows = []
    for k in (1, 2, 3):
        for size in (1, 2, 3):
            for action in _cyclic_actions(k, size):
                n_max = 2 if quick and k * size > 4 else 3
                rep = verify_sym_identity(action, n_max)
                rows.append({"group": f"Z/{k}", "X": size, "act": [list(r) for r in action.act[:2]],
                             "chi": str(rep["chi"]), "passed": rep["passed"]})
    rep = verify_sym_identity(_trivial_point(), 4)
    rows.append({"group": "trivial", "X": 1, "n_max": 4, "passed": rep["passed"],
                 "values": [str(r["direct"]) for r in rep["rows"]]})
    return all(r["passed"] for r in rows), {"configurations": len(rows), "rows": rows}


def _trivial_point():
    return FiniteAction(trivial(), ((0,),))


def random_action(rng: np.random.Generator) -> FiniteAction:
    """A disjoint union of coset actions of a random small group."""
    makers = [lambda: cyclic(int(rng.integers(1, 7))), lambda: symmetric(3), lambda: dihedral(int(rng.integers(3, 5))),
              lambda: direct_product(cyclic(2), cyclic(2)), lambda: direct_product(cyclic(2), cyclic(3))]
    G = makers[int(rng.integers(len(makers)))]()
    parts = []
    for _ in range(int(rng.integers(1, 4))):
        gens = [int(x) for x in rng.integers(0, G.order, size=int(rng.integers(0, 3)))]
        parts.append(coset_action(G, G.subgroup_generated(gens)))
    return disjoint_union(*parts)


@_timed(4, "sector-sum equivalence", 10)
def suite_sector_sum(quick):
    rng = np.random.default_rng(4)
    rows = []
    for _ in range(20):
        A = random_action(rng)
        d, c = string_euler_direct(A), string_euler_centralizer(A)
        rows.append({"group": A.group.name, "X": A.set_size, "direct": str(d), "centralizer": str(c), "equal": d == c})
    return all(r["equal"] for r in rows), {"rows": rows}


@_timed(5, "Fock graded dimension", 1)
def suite_fock(quick):
    order = 30
    bos = fock_graded_dimension(1, 0, order).as_ints()
    fer = fock_graded_dimension(0, 1, order).as_ints()
    ok_b = bos == [oracles.partition_count(k) for k in range(order + 1)]
    ok_f = fer == [oracles.distinct_partition_count(k) for k in range(order + 1)]
    return ok_b and ok_f, {"order": order, "partitions": ok_b, "distinct_partitions": ok_f}


@_timed(6, "cocycle suite", 30)
def suite_cocycles(quick):
    rng = np.random.default_rng(6)
    c1, c2, c3 = triangle_group(2, 3, 7)
    gens = {"c1": c1, "c2": c2, "c3": c3}
    d = {}
    d["triangle_relations"] = max(
        (c1 @ c2 @ c3).distance_to_identity(),
        evaluate_word([("c1", 2)], gens).distance_to_identity(),
        evaluate_word([("c2", 3)], gens).distance_to_identity(),
        evaluate_word([("c3", 7)], gens).distance_to_identity(),
    )

    def rmap():
        return evaluate_word(random_word(list(gens), int(rng.integers(1, 7)), rng), gens)

    z0 = 0.2 + 1.3j
    worst = 0.0
    for _ in range(100):
        a, b, c = rmap(), rmap(), rmap()
        res = area_cocycle(b, c, z0) - area_cocycle(a @ b, c, z0) + area_cocycle(a, b @ c, z0) - area_cocycle(a, b, z0)
        worst = max(worst, abs(res))
    d["area_cocycle"] = worst

    data = MagneticData(0.7, 0.3 + 1.1j)
    one = MoebiusMap.identity()
    worst = 0.0
    for _ in range(100):
        a, b, c = rmap(), rmap(), rmap()
        s = lambda u, v: multiplier_sigma(u, v, data)  # noqa: E731
        worst = max(worst, abs(s(a, b) * s(b @ a, c) - s(a, c @ b) * s(b, c)),
                    abs(s(a, one) - 1), abs(s(one, a) - 1))
    d["sigma_axioms"] = worst

    worst = 0.0
    for n in (1, 2, 3):
        def rw():
            return WreathIsometry([rmap() for _ in range(n)], tuple(int(i) for i in rng.permutation(n)))

        ident = WreathIsometry.identity(n)
        for _ in range(10 if quick else 30):
            a, b, c = rw(), rw(), rw()
            s = lambda u, v: multiplier_sigma_n(u, v, data)  # noqa: E731
            worst = max(worst, abs(s(a, b) * s(b @ a, c) - s(a, c @ b) * s(b, c)),
                        abs(s(a, ident) - 1), abs(s(ident, a) - 1))
    d["sigma_n_axioms"] = worst

    pts = [complex(rng.normal(), abs(rng.normal()) + 0.3) for _ in range(10)]
    worst = 0.0
    for _ in range(10):
        a, b = rmap(), rmap()
        vals = [magnetic_phase(a, x, data) + magnetic_phase(b, a(x), data) - magnetic_phase(b @ a, x, data) for x in pts]
        worst = max(worst, max(vals) - min(vals))
        w, v = (WreathIsometry([rmap(), rmap()], (1, 0)), WreathIsometry([rmap(), rmap()], (0, 1)))
        xs = [(pts[i], pts[(i + 3) % 10]) for i in range(10)]
        vals = [wreath_phase(w, x, data) + wreath_phase(v, w.apply(x), data) - wreath_phase(v @ w, x, data) for x in xs]
        worst = max(worst, max(vals) - min(vals))
    d["phase_constancy"] = worst

    A, B, C = hyperbolic_triangle(2, 3, 7)
    d["area_pi_over_42"] = abs(abs(triangle_area(A, B, C)) - math.pi / 42)
    limits = {"triangle_relations": 1e-9, "area_cocycle": 1e-9, "sigma_axioms": 1e-8, "sigma_n_axioms": 1e-8,
              "phase_constancy": 1e-8, "area_pi_over_42": 1e-9}
    return all(d[k] <= v for k, v in limits.items()), {k: float(v) for k, v in d.items()}


G0_MAX_N = 12


def anyon_sweep(max_genus=2, max_m=3, max_nu=7, strands=(2, 3, 4), g0_max_n=G0_MAX_N, tol=1e-12):
    """Soundness and completeness of the Seifert constraint over a grid.

    Cone orders run over multisets (the constraint is symmetric in the cone
    points).  For g = 0 every N gives a one-dimensional rep; N <= g0_max_n."""
    stats = {"accepted": 0, "rejected": 0, "max_accepted_residual": 0.0, "min_rejected_long_residual": math.inf,
             "failures": []}
    for g in range(max_genus + 1):
        Ns = range(1, g0_max_n + 1) if g == 0 else [N for N in range(1, 65) if N**g <= 64]
        for m in range(max_m + 1):
            for nus in itertools.combinations_with_replacement(range(2, max_nu + 1), m):
                for n in strands:
                    ctx = BraidContext(g, nus, n)
                    pres = braid_presentation(ctx)
                    long = [pres.long_relation]
                    tuples = list(itertools.product(*(range(v) for v in nus)))
                    all_betas = np.array(tuples, dtype=int).reshape(len(tuples), m)
                    for N in Ns:
                        accepted = {s.betas for s in enumerate_seifert_ndim(ctx, N)}
                        mask = np.array([tuple(b) in accepted for b in all_betas.tolist()], dtype=bool)
                        for betas in sorted(accepted):
                            rep = build_matrix_rep(ctx, N, SeifertData(betas))
                            r = verify_relations(rep, pres, tol)["max_residual"]
                            stats["accepted"] += 1
                            stats["max_accepted_residual"] = max(stats["max_accepted_residual"], r)
                            if r > tol or (N > 1 and abs(abs(statistics_phase(rep)) - 1 / N) > 1e-12):
                                stats["failures"].append((g, nus, n, N, betas, r))
                        rejected = all_betas[~mask]
                        if len(rejected):
                            r = scan_seifert_residuals(ctx, N, long, rejected)[:, 0]
                            stats["rejected"] += len(rejected)
                            stats["min_rejected_long_residual"] = min(stats["min_rejected_long_residual"], float(r.min()))
                            for b in rejected[r <= tol]:
                                stats["failures"].append((g, nus, n, N, tuple(int(x) for x in b), 0.0))
    return stats


def anyon_1d_check(max_genus=2, max_m=3, max_nu=7, strands=(2, 3, 4)):
    mismatches, entries, sign_ok = [], 0, True
    for g in range(max_genus + 1):
        for m in range(max_m + 1):
            for nus in itertools.combinations_with_replacement(range(2, max_nu + 1), m):
                for n in strands:
                    ctx = BraidContext(g, nus, n)
                    got = sorted((a.alpha, a.seifert.betas) for a in enumerate_anyons_1d(ctx))
                    want = sorted(oracles.exhaustive_anyons_1d(g, nus, n, braid_presentation(ctx).relations))
                    entries += len(got)
                    if got != want:
                        mismatches.append((g, nus, n))
                    if g > 0:
                        sign_ok &= all(a in (0, 1) for a, _ in got)
    return {"entries": entries, "mismatches": mismatches, "genus_positive_pm1": sign_ok}


@_timed(7, "anyon suite", 60)
def suite_anyons(quick):
    kw = dict(max_m=2, max_nu=5) if quick else {}
    sweep = anyon_sweep(**kw)
    one = anyon_1d_check(**kw)
    passed = not sweep["failures"] and not one["mismatches"] and one["genus_positive_pm1"]
    sweep["failures"] = sweep["failures"][:10]
    return passed, {"sweep": sweep, "one_dimensional": one}


@_timed(8, "symmetric-function suite", 60)
def suite_symmetric(quick):
    rng = np.random.default_rng(8)
    d = {}
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 7))
        z = rng.normal(size=n) + 1j * rng.normal(size=n)
        v, det = vandermonde_eval(ParticleConfig(z)), oracles.vandermonde_det(z)
        worst = max(worst, abs(v - det) / max(abs(det), 1e-300))
    d["vandermonde_vs_det"] = worst
    d["n2_p2"] = vandermonde_power_expand(2, 2) == {(2,): 1, (1, 1): -3}
    mism = [(n, p) for n in range(1, 5) for p in (0, 2, 4)
            if vandermonde_power_expand(n, p) != oracles.schur_expansion_by_kostka(n, p)]
    # odd p: alternant coefficients are the strictly decreasing monomials of V^p
    for n in range(1, 5):
        for p in (1, 3):
            mono = oracles.vandermonde_power_monomials(n, p)
            want = {tuple(x for x in e if x) if e[-1] == 0 else e: Fraction(c) for e, c in mono.items()
                    if all(e[i] > e[i + 1] for i in range(n - 1))}
            if vandermonde_power_expand(n, p) != want:
                mism.append((n, p))
    d["expansion_mismatches"] = mism
    d["jacobian"] = all(jacobian_identity_check(n, sample_points=3)["passed"] for n in range(1, 6))
    worst_pf = 0.0
    for _ in range(50):
        k = 2 * int(rng.integers(1, 6))
        A = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
        A = A - A.T
        det = np.linalg.det(A)
        worst_pf = max(worst_pf, abs(pfaffian(A) ** 2 - det) / abs(det))
    d["pfaffian_sq_vs_det"] = worst_pf
    passed = worst <= 1e-10 and d["n2_p2"] and not mism and d["jacobian"] and worst_pf <= 1e-10
    return passed, d


@_timed(9, "Laughlin zero order", 5)
def suite_zero_order(quick):
    slopes = {p: zero_order_slope(p, n=3) for p in (1, 3, 5)}
    return all(abs(s - p) <= 0.02 * p for p, s in slopes.items()), {str(p): s for p, s in slopes.items()}


@_timed(10, "Monte Carlo Selberg", 120)
def suite_selberg(quick, seed: int = 0):
    samples = 10**5 if quick else 10**6
    rows = []
    for n in (1, 2, 3):
        for gamma in (0.5, 1.0, 2.0):
            Z = mehta_integral(n, gamma)
            est, err = mc_selberg_estimate(n, gamma, samples, seed)
            p2, p2err = rm_expectation("p2", n, gamma, samples, seed)
            exact_p2 = p2_expectation_exact(n, gamma)
            # a zero standard error (n = 1: constant weight) leaves only rounding
            ok_z = abs(est - Z) <= 3 * err + 1e-12 * Z
            ok_p2 = abs(p2 - exact_p2) <= 3 * p2err + 1e-12 * exact_p2
            rows.append({"n": n, "gamma": gamma, "mehta": Z, "mc": est, "mc_err": err, "z_ok": ok_z,
                         "p2": p2, "p2_err": p2err, "p2_exact": exact_p2, "p2_ok": ok_p2})
    return all(r["z_ok"] and r["p2_ok"] for r in rows), {"samples": samples, "seed": seed, "rows": rows}


SUITES = [suite_exact_invariants, suite_conductance, suite_sym_identity, suite_sector_sum, suite_fock,
          suite_cocycles, suite_anyons, suite_symmetric, suite_zero_order, suite_selberg]


def run_all(quick: bool = False, only: list[int] | None = None) -> list[SuiteResult]:
    return [s(quick) for s in SUITES if only is None or s.number in only]
