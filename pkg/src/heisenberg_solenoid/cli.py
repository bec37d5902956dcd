"""Command-line front end.

Every invocation prints one JSON report on stdout and a one-line summary on
stderr. Exit status: 0 success, 1 a checked property failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__, finite, group, profinite, rings, solenoid, subriemannian, verify
from .errors import HeisenbergError
from .group import HeisenbergPoint


class UsageError(Exception):
    pass


class PropertyFailure(Exception):
    def __init__(self, results):
        super().__init__("property failed")
        self.results = results


def _split(text: str) -> list[str]:
    return [s for s in text.replace(";", ",").split(",") if s.strip()]


def parse_point(text: str, n: int | None, ring: tuple) -> HeisenbergPoint:
    """``"x1,..,xn,y1,..,yn,t"`` (semicolons also accepted as separators)."""
    vals = [v.strip() for v in _split(text)]
    if n is None:
        if len(vals) % 2 != 1:
            raise UsageError(f"point needs 2n+1 coordinates, got {len(vals)}")
        n = (len(vals) - 1) // 2
    if len(vals) != 2 * n + 1:
        raise UsageError(f"point needs {2 * n + 1} coordinates for n={n}, got {len(vals)}")
    parse = group.scalar_parser(ring)
    try:
        c = [parse(v) for v in vals]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad coordinate in {text!r}: {exc}") from None
    return HeisenbergPoint(tuple(c[:n]), tuple(c[n:2 * n]), c[-1])


def parse_ring(text: str) -> tuple:
    """``integer``, ``rational``, ``residue:K`` or ``radic:R:L``."""
    parts = text.split(":")
    try:
        if parts[0] in ("integer", "rational") and len(parts) == 1:
            return (parts[0],)
        if parts[0] == "residue" and len(parts) == 2:
            return ("residue", int(parts[1]))
        if parts[0] == "radic" and len(parts) == 3:
            return ("radic", int(parts[1]), int(parts[2]))
    except ValueError:
        pass
    raise UsageError(f"unknown ring {text!r}; use integer, rational, residue:K or radic:R:L")


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"{args.command} {getattr(args, 'action', '') or ''} requires {', '.join(missing)}")


def _fmt(q) -> str:
    return rings.format_fraction(q)


def _expect(results: dict, checks: dict) -> dict:
    results["checks"] = {k: bool(v) for k, v in checks.items()}
    if not all(checks.values()):
        raise PropertyFailure(results)
    return results


# --- handlers ---------------------------------------------------------------

def cmd_group(args) -> dict:
    _need(args, "n")
    n = args.n
    if args.action == "order":
        _need(args, "k")
        G = finite.enumerate_group(n, args.k)
        return _expect({"order": G.order}, {"order == k^(2n+1)": G.order == args.k ** (2 * n + 1)})
    if args.action in ("center", "commutator"):
        _need(args, "k")
        G = finite.enumerate_group(n, args.k)
        Z, C = finite.center_of(G), finite.commutator_subgroup(G)
        res = {"order": G.order, "center_order": Z.order, "commutator_order": C.order}
        if args.action == "center":
            res["center"] = Z.coords().tolist()
            return _expect(res, {"center is the t-axis": Z.order == args.k and bool((Z.coords()[:, :-1] == 0).all())})
        return _expect(res, {"commutator subgroup == center": Z == C})
    if args.action == "quotient":
        _need(args, "k")
        depth = args.depth or 3
        q = finite.quotient_center_by_commutator(n, args.k, depth)
        return _expect({"quotient_order": q, "depth": depth}, {"quotient == k": q == args.k})
    # index / normal / closure work inside H_n(Z/r^depth Z)
    _need(args, "r")
    r, depth = args.r, args.depth or 3
    G = finite.enumerate_group(n, args.k or r ** depth)
    D, S = finite.dilated_lattice_image(G, r), finite.scaled_lattice_image(G, r)
    if args.action == "index":
        iD, iS = finite.subgroup_index(G, D), finite.subgroup_index(G, S)
        res = {"group": {"n": n, "k": G.k}, "indices": {"delta_r(H_n(Z))": iD, "H_n(rZ)": iS}}
        return _expect(res, {"delta index == r^(2n+2)": iD == r ** (2 * n + 2),
                             "H_n(rZ) index == r^(2n+1)": iS == r ** (2 * n + 1)})
    if args.action == "normal":
        res = {"H_n(rZ) normal in G": finite.is_normal(G, S),
               "delta_r image normal in G": finite.is_normal(G, D),
               "delta_r image normal in H_n(rZ)": finite.is_normal(S, D)}
        return _expect(res, {"normality matrix": list(res.values()) == [True, False, True]})
    if args.action == "closure":
        N = finite.normal_closure(G, D)
        res = {"subgroup_order": D.order, "closure_order": N.order}
        return _expect(res, {"closure is normal": finite.is_normal(G, N), "closure contains subgroup": D.issubset(N)})
    raise UsageError(f"unknown group action {args.action!r}")


def cmd_heis(args) -> dict:
    ring = parse_ring(args.ring)
    _need(args, "g")
    g = parse_point(args.g, args.n, ring)
    if args.action == "inverse":
        h_inv = group.inverse(g)
        return _expect({"result": h_inv.to_json()}, {"g g^-1 = e": group.compose(g, h_inv).is_identity()})
    if args.action == "dilate":
        _need(args, "factor")
        s = group.scalar_parser(ring)(args.factor) if ring[0] != "rational" else Fraction(args.factor)
        return {"result": group.dilate(g, s).to_json()}
    _need(args, "h")
    h = parse_point(args.h, g.n, ring)
    if args.action == "compose":
        return {"result": group.compose(g, h).to_json()}
    if args.action == "conjugate":
        c = group.conjugate(g, h)
        return _expect({"result": c.to_json()},
                       {"closed form == h g h^-1": c == group.compose(group.compose(h, g), group.inverse(h))})
    if args.action == "commutator":
        c = group.commutator(g, h)
        return _expect({"result": c.to_json()},
                       {"commutator is central": all(v == c.zero_scalar() for v in (*c.x, *c.y))})
    raise UsageError(f"unknown heis action {args.action!r}")


def cmd_radic(args) -> dict:
    _need(args, "r")
    r = args.r
    if args.action == "abs":
        _need(args, "a")
        return {"value": _fmt(rings.radic_abs(int(args.a), r))}
    if args.action == "dist":
        _need(args, "a", "b")
        return {"value": _fmt(rings.radic_dist(int(args.a), int(args.b), r))}
    if args.action in ("add", "mul"):
        _need(args, "a", "b", "L")
        a, b = rings.RAdicInt(int(args.a), r, args.L), rings.RAdicInt(int(args.b), r, args.L)
        c = a + b if args.action == "add" else a * b
        return {"digit": str(c.digit), "precision": c.precision, "digits": c.digits()}
    if args.action == "embed":
        _need(args, "a", "L")
        x = rings.embed_q(int(args.a), r, args.L)
        return {"element": x.to_json(), "coherent": rings.coherence_check(x)}
    if args.action == "coherent":
        _need(args, "residues")
        x = rings.ProductElement(r, [int(v) for v in _split(args.residues)])
        return {"element": x.to_json(), "coherent": rings.coherence_check(x)}
    raise UsageError(f"unknown radic action {args.action!r}")


def _load_json(text: str):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return json.load(fh)
    return json.loads(text)


def cmd_profinite(args) -> dict:
    if args.action == "embed":
        _need(args, "g", "r", "L")
        g = parse_point(args.g, args.n, ("integer",))
        w = profinite.phi_embed(g, args.r, args.L)
        return {"element": w.to_json(), "coherent": profinite.group_coherence_check(w)}
    _need(args, "element")
    data = _load_json(args.element)
    if "results" in data:
        # A saved ``profinite embed`` report.
        data = data["results"]["element"]
    w = profinite.GroupProductElement.from_json(data)
    if args.action == "check":
        return {"coherent": profinite.group_coherence_check(w)}
    if args.action == "convert":
        p = profinite.to_profinite(w)
        return _expect({"point": p.to_json(), "witness": profinite.v_density_witness(w).to_json()},
                       {"round trip": profinite.from_profinite(p) == w})
    raise UsageError(f"unknown profinite action {args.action!r}")


def cmd_solenoid(args) -> dict:
    _need(args, "r")
    r, L = args.r, args.L if args.L is not None else 1
    if args.action == "preimages":
        n = args.n or 1
        g = parse_point(args.g, n, ("rational",)) if args.g else HeisenbergPoint.identity(n, Fraction(0))
        p = solenoid.canonical_reduce(g, r, L if args.L is not None else 0)
        pre = solenoid.shift_preimages(p)
        return _expect({"target": p.to_json(), "count": len(pre), "preimages": [q.rep.to_json() for q in pre]},
                       {"count == r^(2n+2)": len(pre) == r ** (2 * n + 2),
                        "all map to target": all(solenoid.shift_map(q) == p for q in pre)})
    _need(args, "g")
    g = parse_point(args.g, args.n, ("rational",))
    p = solenoid.canonical_reduce(g, r, L)
    if args.action == "reduce":
        return _expect({"point": p.to_json()}, {"same coset": solenoid.same_coset(g, p.rep, r, L)})
    if args.action == "project":
        _need(args, "level")
        return {"point": solenoid.project_level(p, args.level).to_json(),
                "base": [[_fmt(v) for v in part] for part in solenoid.base_projection(p, args.level)]}
    if args.action == "act":
        _need(args, "h")
        h = parse_point(args.h, g.n, ("rational",))
        return {"point": solenoid.left_action(h, p).to_json()}
    if args.action == "shift":
        return {"point": solenoid.shift_map(p).to_json()}
    if args.action == "identify":
        u = solenoid.embed_psi_tilde(g, r, L)
        back = solenoid.dilated_to_standard(u)
        return _expect({"dilated": u.to_json(), "standard": back.to_json()},
                       {"phi~ == psi~ under identification": back == p,
                        "round trip": solenoid.standard_to_dilated(solenoid.canonical_reduce(g, r, 2 * L)) == u})
    raise UsageError(f"unknown solenoid action {args.action!r}")


def cmd_ccdist(args) -> dict:
    _need(args, "point")
    p = [float(Fraction(v)) for v in _split(args.point)]
    est = subriemannian.cc_distance_search(p, args.m, args.restarts, args.seed, args.tolerance)
    return {"estimate": est.length, "endpoint_error": est.endpoint_error,
            "quasinorm": subriemannian.box_quasinorm(p),
            "lower_bound": subriemannian.planar_lower_bound(p),
            "tolerance": {"endpoint": args.tolerance}, "m": args.m, "restarts": args.restarts}


def cmd_volume(args) -> dict:
    n = args.n or 1
    e = subriemannian.ball_volume_scaling(args.rho, args.samples, args.seed, n)
    tol = args.tolerance if args.tolerance is not None else 0.1
    return _expect({"exponent": e, "expected": 2 * n + 2, "tolerance": tol},
                   {"exponent within tolerance": abs(e - (2 * n + 2)) <= tol})


def cmd_verify(args) -> dict:
    scope = args.scope
    if scope != "all" and scope not in verify.SCOPES:
        raise UsageError(f"unknown scope {scope!r}; choose all or one of {', '.join(verify.SCOPES)}")
    res = verify.run_verify_suite(scope, args.seed)
    out = {"properties": [r.to_json() for r in res], "passed": sum(r.passed for r in res), "total": len(res)}
    if not all(r.passed for r in res):
        raise PropertyFailure(out)
    return out


HANDLERS = {"group": cmd_group, "heis": cmd_heis, "radic": cmd_radic, "profinite": cmd_profinite,
            "solenoid": cmd_solenoid, "ccdist": cmd_ccdist, "volume": cmd_volume, "verify": cmd_verify}

ACTIONS = {
    "group": ["order", "center", "commutator", "index", "normal", "closure", "quotient"],
    "heis": ["compose", "inverse", "conjugate", "commutator", "dilate"],
    "radic": ["abs", "dist", "add", "mul", "embed", "coherent"],
    "profinite": ["embed", "check", "convert"],
    "solenoid": ["reduce", "project", "act", "shift", "preimages", "identify"],
}


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--L", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", metavar="PATH", help="also write the report to PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heisenberg-solenoid", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, actions in ACTIONS.items():
        p = sub.add_parser(name)
        p.add_argument("action", choices=actions)
        _common(p)
        if name == "heis":
            p.add_argument("--g")
            p.add_argument("--h")
            p.add_argument("--ring", default="integer")
            p.add_argument("--factor")
        elif name == "radic":
            p.add_argument("--a")
            p.add_argument("--b")
            p.add_argument("--residues")
        elif name == "profinite":
            p.add_argument("--g")
            p.add_argument("--element", help="JSON text, or @file")
        elif name == "solenoid":
            p.add_argument("--g")
            p.add_argument("--h")
            p.add_argument("--level", type=int)
    p = sub.add_parser("ccdist")
    _common(p)
    p.add_argument("--point")
    p.add_argument("--m", type=int, default=64)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--tolerance", type=float, default=subriemannian.DEFAULT_ENDPOINT_TOL)
    p = sub.add_parser("volume")
    _common(p)
    p.add_argument("--rho", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=10 ** 6)
    p.add_argument("--tolerance", type=float)
    p = sub.add_parser("verify")
    _common(p)
    p.add_argument("--scope", default="all")
    return parser


def run_command(argv: list[str]) -> tuple[int, dict]:
    """Parse ``argv``, dispatch, and return (exit code, report)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), {"error": "usage", "argv": argv}
    start = time.perf_counter()
    inputs = {k: v for k, v in vars(args).items() if v is not None and k != "json"}
    report = {"subcommand": " ".join(filter(None, [args.command, getattr(args, "action", None)])),
              "inputs": inputs, "results": None,
              "provenance": {"seed": args.seed, "version": __version__, "argv": argv}}
    try:
        report["results"] = HANDLERS[args.command](args)
        code = 0
    except PropertyFailure as exc:
        report["results"], code = exc.results, 1
    except (UsageError, HeisenbergError, ValueError, KeyError, json.JSONDecodeError) as exc:
        report["error"] = f"{type(exc).__name__}: {exc}"
        code = 2
    report["provenance"]["runtime_s"] = round(time.perf_counter() - start, 6)
    if getattr(args, "json", None):
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=2)
    return code, report


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, report = run_command(argv)
    if "subcommand" in report:
        print(json.dumps(report, indent=2))
        status = {0: "ok", 1: "PROPERTY FAILED", 2: "usage error"}[code]
        print(f"{report['subcommand']}: {status} ({report['provenance']['runtime_s']}s)"
              + (f" - {report['error']}" if "error" in report else ""), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
