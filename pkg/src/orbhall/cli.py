"""Command-line front end: ``orbhall <module> <action> [flags]``.

Exit codes: 0 success, 1 a verification reported failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .errors import OrbhallError
from .orbifold import OrbifoldSignature, SeifertData, render_rational


def _jsonable(x):
    if isinstance(x, Fraction):
        return render_rational(x)
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, k)): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):  # numpy scalars
        return x.item()
    return x


class UsageError(Exception):
    pass


def _sig(args) -> OrbifoldSignature:
    if not args.sig:
        raise UsageError("--sig is required, e.g. --sig 'g=0;nu=2,3,7'")
    return OrbifoldSignature.parse(args.sig)


def _need(args, name):
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{name} is required for this command")
    return v


def _betas(args, sig) -> SeifertData:
    if args.betas is None:
        return SeifertData((0,) * sig.m)
    vals = tuple(int(x) for x in args.betas.split(",") if x.strip())
    return SeifertData(vals)


# handlers -----------------------------------------------------------------------
# each returns (payload, passed) with passed None for non-verification commands

def cmd_orbifold(args):
    from . import orbifold as o

    sig = _sig(args)
    a = args.action
    if a == "euler":
        return {"signature": str(sig), "satake": o.satake_euler(sig), "hyperbolic": sig.is_hyperbolic}, None
    if a == "symn":
        return {"n": _need(args, "n"), "satake_symn": o.satake_euler_symn(sig, args.n)}, None
    if a == "presentation":
        return {"relations": o.presentation(sig).render()}, None
    if a == "abelianization":
        inv = o.abelianization(sig)
        return {"free_rank": inv.free_rank, "torsion": list(inv.torsion), "text": str(inv),
                "stated_form": str(o.stated_abelianization(sig)),
                "matches_stated_form": o.abelianization_matches_stated(sig)}, None
    if a == "ktheory":
        k0, k1 = o.ktheory_ranks(sig)
        return {"k0": k0, "k1": k1}, None
    if a == "cover":
        cd = o.riemann_hurwitz_genus(sig, _need(args, "order"))
        return {"group_order": cd.group_order, "cover_genus": cd.cover_genus}, None
    if a == "conductance":
        vals = o.conductance_spectrum(sig, args.n or 1, args.max_rank, args.max_multiple)
        return {"values": vals}, None
    if a == "line-euler":
        return {"chi_orb": o.orbifold_line_euler(args.background_chi, sig, _betas(args, sig))}, None
    if a == "whitney":
        chi = o.orbifold_line_euler(args.background_chi, sig, _betas(args, sig))
        return {"chi_orb_line": chi, "chi_orb_whitney": o.whitney_power_euler(chi, _need(args, "n"), args.order or 1)}, None
    raise UsageError(f"unknown orbifold action {a!r}")


def cmd_wreath(args):
    from .groups import FiniteAction, parse_group, trivial_action
    from . import wreath as wr

    a = args.action
    if a == "series":
        return {"coefficients": wr.sym_euler_series(_need(args, "chi"), args.order).coeffs}, None
    if a == "fock":
        return {"coefficients": wr.fock_graded_dimension(args.k0, args.k1, args.order).coeffs}, None
    G = parse_group(args.group)
    if args.action_table:
        action = FiniteAction(G, tuple(map(tuple, json.loads(args.action_table))))
    else:
        action = trivial_action(G, args.points)
    if not action.check_axioms():
        raise UsageError("the action table does not define a group action")
    if a == "euler":
        d, c = wr.string_euler_direct(action), wr.string_euler_centralizer(action)
        return {"direct": d, "centralizer": c, "satake": wr.satake_euler_finite(action)}, d == c
    if a == "verify":
        rep = wr.verify_sym_identity(action, args.n or 3)
        return rep, rep["passed"]
    if a == "group":
        W = wr.build_wreath_group(G, _need(args, "n"))
        return {"order": W.order, "axioms": W.check_axioms(), "classes": len(W.conjugacy_classes)}, None
    raise UsageError(f"unknown wreath action {a!r}")


def cmd_hyperbolic(args):
    from . import hyperbolic as hy

    p, q, r = (int(x) for x in args.triangle.split(","))
    gens = dict(zip(("c1", "c2", "c3"), hy.triangle_group(p, q, r)))
    a = args.action
    tol = args.tol if args.tol is not None else 1e-9
    if a == "triangle":
        A, B, C = hy.hyperbolic_triangle(p, q, r)
        c1, c2, c3 = gens.values()
        res = {
            "product": (c1 @ c2 @ c3).distance_to_identity(),
            **{f"c{k + 1}^{o}": hy.evaluate_word([(f"c{k + 1}", o)], gens).distance_to_identity()
               for k, o in enumerate((p, q, r))},
        }
        return {"vertices": [A, B, C], "area": hy.triangle_area(A, B, C),
                "expected_area": math.pi * (1 - 1 / p - 1 / q - 1 / r),
                "generators": {k: list(v.matrix.ravel()) for k, v in gens.items()}, "residuals": res}, \
            max(res.values()) <= tol
    data = hy.MagneticData(args.theta, complex(args.base_point), args.steps)
    w1 = hy.evaluate_word(hy.parse_word(_need(args, "word")), gens)
    if a == "phase":
        x = complex(args.x)
        return {"phi": hy.magnetic_phase(w1, x, data), "closed_form": hy.magnetic_phase_closed_form(w1, x, data)}, None
    w2 = hy.evaluate_word(hy.parse_word(_need(args, "word2")), gens)
    if a == "cocycle":
        return {"area_cocycle": hy.area_cocycle(w1, w2, data.base_point)}, None
    if a == "sigma":
        return {"sigma": hy.multiplier_sigma(w1, w2, data)}, None
    raise UsageError(f"unknown hyperbolic action {a!r}")


def cmd_anyons(args):
    from . import braids as br

    sig = _sig(args)
    ctx = br.BraidContext(sig.genus, sig.cone_orders, args.n or 2)
    a = args.action
    if a == "presentation":
        pres = br.braid_presentation(ctx)
        return {"generators": list(pres.generators),
                "relations": [{"family": r.family, "relation": str(r)} for r in pres.relations]}, None
    if a == "oned":
        return {"anyons": [x.to_json() for x in br.enumerate_anyons_1d(ctx)]}, None
    N = _need(args, "N")
    if a == "ndim":
        return {"N": N, "dimension": N**ctx.genus,
                "seifert": [{"betas": list(s.betas)} for s in br.enumerate_seifert_ndim(ctx, N)]}, None
    if a == "verify":
        rep = br.build_matrix_rep(ctx, N, _betas(args, sig))
        report = br.verify_relations(rep, br.braid_presentation(ctx), args.tol if args.tol is not None else 1e-12)
        report["alpha"] = br.statistics_phase(rep)
        return report, report["passed"]
    raise UsageError(f"unknown anyons action {a!r}")


def cmd_laughlin(args):
    from . import laughlin as la

    a = args.action
    if a == "expand":
        exp = la.vandermonde_power_expand(_need(args, "n"), _need(args, "p"))
        return {"kind": "schur" if args.p % 2 == 0 else "alternant",
                "coefficients": {",".join(map(str, k)) or "0": render_rational(v) for k, v in exp.items()}}, None
    if a == "jacobian":
        rep = la.jacobian_identity_check(_need(args, "n"), sample_points=5)
        return rep, rep["passed"]
    if a == "eval":
        if args.points:
            with open(args.points) as fh:
                raw = json.load(fh)
            coords = [complex(*z) if isinstance(z, list) else complex(z) for z in raw]
        else:
            raise UsageError("--points FILE (JSON list of [re, im] pairs) is required")
        cfg = la.ParticleConfig(coords, args.ell)
        p = _need(args, "p")
        out = {"vandermonde": la.vandermonde_eval(cfg), "slater": la.slater_eval(cfg), "laughlin": la.laughlin_eval(cfg, p)}
        if cfg.n % 2 == 0:
            out["pfaffian_state"] = la.pfaffian_state_eval(cfg, p)
        return out, None
    raise UsageError(f"unknown laughlin action {a!r}")


def cmd_selberg(args):
    from . import selberg as se

    n, gamma = _need(args, "n"), _need(args, "gamma")
    samples, seed = args.samples or 10**6, args.seed
    Z = se.mehta_integral(n, gamma)
    est, err = se.mc_selberg_estimate(n, gamma, samples, seed)
    p2, p2err = se.rm_expectation("p2", n, gamma, samples, seed)
    k = args.tol if args.tol is not None else 3.0
    ok = abs(est - Z) <= k * err + 1e-12 * Z and abs(p2 - se.p2_expectation_exact(n, gamma)) <= k * p2err + 1e-12
    return {"n": n, "gamma": gamma, "samples": samples, "seed": seed, "mehta": Z, "mc_estimate": est,
            "mc_std_error": err, "p2": p2, "p2_std_error": p2err, "p2_exact": se.p2_expectation_exact(n, gamma),
            "sigma_tolerance": k}, ok


def cmd_selfcheck(args):
    from .selfcheck import run_all

    results = run_all(quick=args.level == "quick")
    for r in results:
        print(r.line(), file=sys.stderr)
    return {"level": args.level, "suites": [r.to_json() for r in results]}, all(r.passed for r in results)


HANDLERS = {"orbifold": cmd_orbifold, "wreath": cmd_wreath, "hyperbolic": cmd_hyperbolic, "anyons": cmd_anyons,
            "laughlin": cmd_laughlin, "selberg": cmd_selberg, "selfcheck": cmd_selfcheck}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sig", help="signature 'g=<int>;nu=<ints>'")
    common.add_argument("--n", type=int, help="number of particles / symmetric power")
    common.add_argument("--N", type=int, help="clock size of the anyon representation")
    common.add_argument("--p", type=int, help="Laughlin exponent")
    common.add_argument("--gamma", type=float, help="random-matrix exponent")
    common.add_argument("--samples", type=int, help="Monte Carlo samples (>= 10^4)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, help="tolerance override")
    common.add_argument("--json", action="store_true", help="print the JSON envelope")
    common.add_argument("--out", help="also write the JSON envelope to FILE")

    p = argparse.ArgumentParser(prog="orbhall", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    o = sub.add_parser("orbifold", parents=[common], help="orbifold invariants")
    o.add_argument("action", choices=["euler", "symn", "presentation", "abelianization", "ktheory", "cover",
                                      "conductance", "line-euler", "whitney"])
    o.add_argument("--order", type=int, help="group order #G")
    o.add_argument("--max-rank", type=int, default=1)
    o.add_argument("--max-multiple", type=int, default=3)
    o.add_argument("--background-chi", type=int, default=0)
    o.add_argument("--betas", help="comma-separated Seifert invariants")

    w = sub.add_parser("wreath", parents=[common], help="finite actions, wreath products, series")
    w.add_argument("action", choices=["euler", "verify", "group", "series", "fock"])
    w.add_argument("--group", default="trivial", help="cyclic:k, sym:k, dihedral:k, product:(...), or a JSON table")
    w.add_argument("--points", type=int, default=1, help="size of X for the trivial action")
    w.add_argument("--action-table", help="JSON rows act[g][x]")
    w.add_argument("--chi", type=int)
    w.add_argument("--k0", type=int, default=1)
    w.add_argument("--k1", type=int, default=0)
    w.add_argument("--order", type=int, default=10, help="series truncation order")

    h = sub.add_parser("hyperbolic", parents=[common], help="triangle groups, area cocycle, magnetic phases")
    h.add_argument("action", choices=["triangle", "phase", "cocycle", "sigma"])
    h.add_argument("--triangle", default="2,3,7")
    h.add_argument("--word", help="word in c1,c2,c3 with ' for inverses")
    h.add_argument("--word2")
    h.add_argument("--x", default="0.5+1.5j")
    h.add_argument("--theta", type=float, default=1.0)
    h.add_argument("--base-point", default="1j")
    h.add_argument("--steps", type=int, default=64)

    a = sub.add_parser("anyons", parents=[common], help="orbifold braid groups and anyon representations")
    a.add_argument("action", choices=["presentation", "oned", "ndim", "verify"])
    a.add_argument("--betas")

    la = sub.add_parser("laughlin", parents=[common], help="Vandermonde, Laughlin and Pfaffian functions")
    la.add_argument("action", choices=["eval", "expand", "jacobian"])
    la.add_argument("--ell", type=float, default=1.0)
    la.add_argument("--points", help="JSON file with particle coordinates")

    sub.add_parser("selberg", parents=[common], help="Mehta integral vs Monte Carlo")

    s = sub.add_parser("selfcheck", parents=[common], help="run the verification suites")
    s.add_argument("--level", choices=["quick", "full"], default="quick")
    return p


def _print_human(payload, indent=0):
    pad = "  " * indent
    if isinstance(payload, dict):
        for k, v in payload.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (str, int, float)) for x in v):
                print(f"{pad}{k}:")
                _print_human(v, indent + 1)
            else:
                print(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(payload, list):
        for v in payload:
            if isinstance(v, (dict, list)):
                _print_human(v, indent + 1)
                print(f"{pad}--")
            else:
                print(f"{pad}- {v}")
    else:
        print(f"{pad}{payload}")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        payload, passed = HANDLERS[args.command](args)
    except (UsageError, OrbhallError, ValueError) as e:
        print(f"orbhall: error: {e}", file=sys.stderr)
        return 2
    payload = _jsonable(payload)
    passed = None if passed is None else bool(passed)
    envelope = {
        "command": ["orbhall", *argv],
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "version": __version__,
        "tolerance_override": args.tol,
        "results": payload,
        "passed": passed,
    }
    text = json.dumps(envelope, indent=2, sort_keys=False)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.json:
        print(text)
    else:
        _print_human(payload)
        if passed is not None:
            print("PASS" if passed else "FAIL")
    return 0 if passed in (None, True) else 1


if __name__ == "__main__":
    sys.exit(main())
