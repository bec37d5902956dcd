"""Seeded property checks grouped by module, for ``heisenberg-solenoid verify``.

Each check returns a :class:`CheckResult`; failures carry a counterexample
instead of raising.
"""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable

from . import finite, group, profinite, rings, solenoid, subriemannian
from .group import HeisenbergPoint

SCOPES = ("ring_core", "heisenberg_core", "finite_groups", "profinite", "solenoid", "subriemannian")


@dataclass
class CheckResult:
    property: str
    anchor: str
    passed: bool
    trials: int
    counterexample: str | None = None

    def to_json(self) -> dict:
        return asdict(self)


def _forall(name: str, anchor: str, trials: int, gen: Callable, pred: Callable) -> CheckResult:
    for _ in range(trials):
        case = gen()
        if not pred(*case):
            return CheckResult(name, anchor, False, trials, repr(case))
    return CheckResult(name, anchor, True, trials)


def _rand_point(rng: random.Random, n: int, ring: tuple, bound: int = 50) -> HeisenbergPoint:
    if ring == ("rational",):
        f = lambda: Fraction(rng.randint(-bound, bound), rng.randint(1, 12))
        return HeisenbergPoint(tuple(f() for _ in range(n)), tuple(f() for _ in range(n)), f())
    vals = [rng.randint(-bound, bound) for _ in range(2 * n + 1)]
    return HeisenbergPoint.from_ints(vals[:n], vals[n:2 * n], vals[-1], ring=ring)


def check_ring_core(seed: int, trials: int = 2000) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    for r in (2, 3, 4, 6, 10):
        pair = lambda: (rng.randint(-10 ** 6, 10 ** 6), rng.randint(-10 ** 6, 10 ** 6))
        out.append(_forall(f"ultrametric inequality r={r}", "|a+b|_r <= max(|a|_r, |b|_r)", trials, pair,
                           lambda a, b: rings.radic_abs(a + b, r) <= max(rings.radic_abs(a, r),
                                                                         rings.radic_abs(b, r))))
        out.append(_forall(f"submultiplicativity r={r}", "|ab|_r <= |a|_r |b|_r", trials, pair,
                           lambda a, b: rings.radic_abs(a * b, r) <= rings.radic_abs(a, r) * rings.radic_abs(b, r)))
        L = 6
        m = r ** L
        out.append(_forall(f"isometry r={r}", "rho(q(a), q(b)) = |a-b|_r", trials,
                           lambda: (rng.randint(-10 ** 6, 10 ** 6), rng.randint(-m + 1, m - 1)),
                           lambda a, d: rings.ultrametric_rho(rings.embed_q(a, r, L), rings.embed_q(a + d, r, L))
                           == rings.radic_dist(a, a + d, r)))
        out.append(_forall(f"embedding is coherent r={r}", "q(a) is a coherent sequence", trials,
                           lambda: (rng.randint(-10 ** 9, 10 ** 9),),
                           lambda a: rings.coherence_check(rings.embed_q(a, r, L))))
    return out


def check_heisenberg_core(seed: int, trials: int = 2000) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    for ring in (("integer",), ("rational",), ("residue", 6), ("radic", 3, 4)):
        for n in (1, 2):
            P = lambda: _rand_point(rng, n, ring)
            tag = f"{ring[0]} n={n}"
            out.append(_forall(f"associativity [{tag}]", "group law is associative", trials,
                               lambda: (P(), P(), P()),
                               lambda g, h, k: group.compose(group.compose(g, h), k)
                               == group.compose(g, group.compose(h, k))))
            out.append(_forall(f"inverse [{tag}]", "g g^-1 = g^-1 g = identity", trials, lambda: (P(),),
                               lambda g: group.compose(g, group.inverse(g)).is_identity()
                               and group.compose(group.inverse(g), g).is_identity()))
            out.append(_forall(f"conjugation closed form [{tag}]", "h g h^-1 = (x, y, t + x'.y - x.y')",
                               trials, lambda: (P(), P()),
                               lambda g, h: group.conjugate(g, h)
                               == group.compose(group.compose(h, g), group.inverse(h))))
            out.append(_forall(f"commutators are central [{tag}]", "commutators lie in the center",
                               trials, lambda: (P(), P()),
                               lambda g, h: all(c == g.zero_scalar()
                                                for part in group.project_pi(group.commutator(g, h))
                                                for c in part)))
    Pz = lambda: _rand_point(rng, 2, ("integer",))
    for r in (2, 3, 5):
        out.append(_forall(f"dilation homomorphism r={r}", "delta_r(gh) = delta_r(g) delta_r(h)", trials,
                           lambda: (Pz(), Pz()),
                           lambda g, h: group.dilate(group.compose(g, h), r)
                           == group.compose(group.dilate(g, r), group.dilate(h, r))))
        out.append(_forall(f"interlacing r={r}", "H(r^2 Z) <= delta_r(H(Z)) <= H(rZ)", trials,
                           lambda: (Pz(),),
                           lambda g: group.in_scaled_lattice(group.dilate(g, r), r)
                           and group.in_dilated_lattice(group.dilate(g, r), r)
                           and group.in_dilated_lattice(g.map(lambda c: r * r * c), r)))
    return out


def check_finite_groups(seed: int) -> list[CheckResult]:
    out = []
    for n in (1, 2):
        for k in range(2, 9):
            if k ** (2 * n + 1) > finite.DEFAULT_CAP:
                continue
            G = finite.enumerate_group(n, k)
            Z, C = finite.center_of(G), finite.commutator_subgroup(G)
            ok = G.order == k ** (2 * n + 1) and Z.order == k and Z == C
            out.append(CheckResult(f"H_{n}(Z/{k}Z) order/center/commutator", "|H_n(Z/kZ)| = k^(2n+1)",
                                   ok, 1, None if ok else f"order={G.order} center={Z.order} comm={C.order}"))
    for n, r in ((1, 2), (1, 3), (2, 2)):
        G = finite.enumerate_group(n, r ** 3)
        D, S = finite.dilated_lattice_image(G, r), finite.scaled_lattice_image(G, r)
        iD, iS = finite.subgroup_index(G, D), finite.subgroup_index(G, S)
        ok = iD == r ** (2 * n + 2) and iS == r ** (2 * n + 1)
        out.append(CheckResult(f"indices n={n} r={r}", "index of delta_r(H_n(Z)) is r^(2n+2)", ok, 1,
                               None if ok else f"delta index {iD}, H(rZ) index {iS}"))
        norm = (finite.is_normal(G, S), finite.is_normal(G, D), finite.is_normal(S, D))
        ok = norm == (True, False, True)
        out.append(CheckResult(f"normality n={n} r={r}", "H_n(rZ) normal, delta_r image normal only in H_n(rZ)",
                               ok, 1, None if ok else repr(norm)))
    for n, k in ((1, 2), (1, 3), (1, 4), (2, 2)):
        q = finite.quotient_center_by_commutator(n, k, 3)
        out.append(CheckResult(f"center/commutator n={n} k={k}", "center mod commutator of H_n(kZ) is Z/kZ",
                               q == k, 1, None if q == k else f"got {q}"))
    return out


def check_profinite(seed: int, trials: int = 500) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    for n in (1, 2):
        for r in (2, 3):
            for L in (1, 2, 3, 4):
                P = lambda: _rand_point(rng, n, ("integer",), bound=10 ** 4)

                def agree(g, h):
                    w = profinite.phi_embed(g, r, L) * profinite.phi_embed(h, r, L)
                    v = group.compose(profinite.to_profinite(profinite.phi_embed(g, r, L)),
                                      profinite.to_profinite(profinite.phi_embed(h, r, L)))
                    return profinite.from_profinite(v) == w and profinite.group_coherence_check(w)
                out.append(_forall(f"levelwise = r-adic arithmetic n={n} r={r} L={L}",
                                   "coherent sequences form H_n(Z_r)", trials, lambda: (P(), P()), agree))
    for L in (1, 2, 3):
        c = profinite.count_coherent(1, 2, L)
        out.append(CheckResult(f"coherent count n=1 r=2 L={L}", "level L determines the sequence",
                               c == 2 ** (3 * L), 1, None if c == 2 ** (3 * L) else f"got {c}"))
    return out


def check_solenoid(seed: int, trials: int = 300) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    for n, r, L in ((1, 2, 2), (2, 3, 1)):
        P = lambda: _rand_point(rng, n, ("rational",), bound=40)
        lat = lambda: HeisenbergPoint.from_ints([r ** L * rng.randint(-5, 5) for _ in range(n)],
                                                [r ** L * rng.randint(-5, 5) for _ in range(n)],
                                                r ** L * rng.randint(-5, 5), ring=("rational",))
        out.append(_forall(f"coset well-definedness n={n} r={r} L={L}", "g H = g lam H", trials,
                           lambda: (P(), lat()),
                           lambda g, lam: solenoid.canonical_reduce(g, r, L)
                           == solenoid.canonical_reduce(group.compose(g, lam), r, L)))
        out.append(_forall(f"action commutes with projection n={n} r={r} L={L}",
                           "coherent sequences are invariant under the left action", trials,
                           lambda: (P(), P(), rng.randint(0, L)),
                           lambda h, g, l: solenoid.project_level(
                               solenoid.left_action(h, solenoid.embed_phi_tilde(g, r, L)), l)
                           == solenoid.left_action(h, solenoid.project_level(
                               solenoid.embed_phi_tilde(g, r, L), l))))
        out.append(_forall(f"tilde-phi = tilde-psi n={n} r={r} L={L}",
                           "the two embeddings agree under the identification", trials, lambda: (P(),),
                           lambda g: solenoid.dilated_to_standard(solenoid.embed_psi_tilde(g, r, L))
                           == solenoid.embed_phi_tilde(g, r, L)))
    for n, r in ((1, 2), (1, 3)):
        z = solenoid.canonical_reduce(HeisenbergPoint.identity(n, Fraction(0)), r, 0)
        cnt = len(solenoid.shift_preimages(z))
        ok = cnt == r ** (2 * n + 2)
        out.append(CheckResult(f"shift-map degree n={n} r={r}", "index of delta_r(H_n(Z)) is r^(2n+2)", ok, 1,
                               None if ok else f"got {cnt}"))
    return out


def check_subriemannian(seed: int) -> list[CheckResult]:
    out = []
    d = subriemannian.cc_distance_estimate([1.0, 0.0, 0.0], 64, 4, seed)
    out.append(CheckResult("d(0, (1,0,0)) = 1", "segments are geodesics", abs(d - 1) <= 0.01, 1,
                           None if abs(d - 1) <= 0.01 else f"estimate {d}"))
    target = 2 * 3.141592653589793 ** 0.5
    d = subriemannian.cc_distance_estimate([0.0, 0.0, 1.0], 64, 4, seed)
    ok = abs(d / target - 1) <= 0.02
    out.append(CheckResult("d(0, (0,0,1)) = 2 sqrt(pi)", "isoperimetric inequality", ok, 1,
                           None if ok else f"estimate {d}"))
    a, b = subriemannian.dilation_scaling_check([0.4, -0.3, 0.5], 2.0, 64, 4, seed)
    ok = abs(a - b) <= 0.03 * b
    out.append(CheckResult("dilation scaling s=2", "d(delta_s p, delta_s q) = |s| d(p, q)", ok, 1,
                           None if ok else f"{a} vs {b}"))
    for n in (1, 2):
        e = subriemannian.ball_volume_scaling(1.0, 10 ** 5, seed, n)
        ok = abs(e - (2 * n + 2)) <= 0.2
        out.append(CheckResult(f"ball volume exponent n={n}", "vol(B_r) ~ r^(2n+2)", ok, 1,
                               None if ok else f"exponent {e}"))
    for side in ("left", "right"):
        j = subriemannian.translation_jacobian_check([0.7, -1.2, 2.5], side, 5, seed)
        out.append(CheckResult(f"{side} translation jacobian", "Lebesgue measure is bi-invariant", j < 1e-6, 1,
                               None if j < 1e-6 else f"|det-1| = {j}"))
    return out


_RUNNERS = {
    "ring_core": check_ring_core,
    "heisenberg_core": check_heisenberg_core,
    "finite_groups": check_finite_groups,
    "profinite": check_profinite,
    "solenoid": check_solenoid,
    "subriemannian": check_subriemannian,
}


def run_verify_suite(scope: str = "all", seed: int = 0) -> list[CheckResult]:
    if scope == "all":
        scopes = SCOPES
    elif scope in _RUNNERS:
        scopes = (scope,)
    else:
        raise KeyError(scope)
    results = []
    for s in scopes:
        results.extend(_RUNNERS[s](seed))
    return results
