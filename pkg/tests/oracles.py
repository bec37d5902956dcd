"""Independent reference computations used by the tests.

Nothing here imports the package. Each function is a slow, obvious
re-derivation of a quantity the library computes another way.
"""
from fractions import Fraction
from itertools import product
import math


def trial_division_valuation(a, r):
    """Largest l with r**l | a, by repeated trial division; None for 0."""
    if a == 0:
        return None
    l = 0
    while True:
        if a % (r ** (l + 1)) != 0:
            return l
        l += 1


def radic_abs(a, r):
    l = trial_division_valuation(a, r)
    return Fraction(0) if l is None else Fraction(1, r ** l)


def heis_mul(g, h, mod=None):
    """Product of plain (x, y, t) tuples of lists, optionally reduced mod ``mod``."""
    (x, y, t), (u, v, s) = g, h
    dot = sum(a * b for a, b in zip(x, v))
    out = ([a + b for a, b in zip(x, u)], [a + b for a, b in zip(y, v)], t + s + dot)
    if mod is not None:
        out = ([a % mod for a in out[0]], [a % mod for a in out[1]], out[2] % mod)
    return out


def heis_inv(g, mod=None):
    x, y, t = g
    out = ([-a for a in x], [-a for a in y], -t + sum(a * b for a, b in zip(x, y)))
    if mod is not None:
        out = ([a % mod for a in out[0]], [a % mod for a in out[1]], out[2] % mod)
    return out


def as_key(g):
    x, y, t = g
    return (tuple(x), tuple(y), t)


def all_elements(n, k):
    for c in product(range(k), repeat=2 * n + 1):
        yield (list(c[:n]), list(c[n:2 * n]), c[-1])


def closure(gens, n, k):
    """Subgroup generated by ``gens`` in H_n(Z/kZ), by breadth-first products."""
    ident = as_key(([0] * n, [0] * n, 0))
    seen = {ident}
    frontier = [ident]
    gens = [as_key(g) for g in gens]
    while frontier:
        nxt = []
        for a in frontier:
            for b in gens:
                c = as_key(heis_mul((list(a[0]), list(a[1]), a[2]),
                                    (list(b[0]), list(b[1]), b[2]), k))
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return seen


def brute_center(members, n, k):
    """Elements of ``members`` commuting with every member, pairwise."""
    els = [(list(a[0]), list(a[1]), a[2]) for a in members]
    out = set()
    for g in els:
        if all(as_key(heis_mul(g, h, k)) == as_key(heis_mul(h, g, k)) for h in els):
            out.add(as_key(g))
    return out


def brute_commutators(members, n, k):
    """Closure of all g h g^-1 h^-1 over pairs of members."""
    els = [(list(a[0]), list(a[1]), a[2]) for a in members]
    comms = set()
    for g in els:
        for h in els:
            c = heis_mul(heis_mul(heis_mul(g, h, k), heis_inv(g, k), k), heis_inv(h, k), k)
            comms.add(as_key(c))
    return closure([(list(a[0]), list(a[1]), a[2]) for a in comms], n, k)


def brute_is_normal(ambient, sub, k):
    sub = set(sub)
    for g in ambient:
        g = (list(g[0]), list(g[1]), g[2])
        for h in sub:
            c = heis_mul(heis_mul(g, (list(h[0]), list(h[1]), h[2]), k), heis_inv(g, k), k)
            if as_key(c) not in sub:
                return False
    return True


def brute_coset_count(ambient, sub, k):
    labels = set()
    sub = [(list(h[0]), list(h[1]), h[2]) for h in sub]
    for g in ambient:
        g = (list(g[0]), list(g[1]), g[2])
        labels.add(frozenset(as_key(heis_mul(g, h, k)) for h in sub))
    return len(labels)


def exact_endpoint(start, u, v, h):
    """Endpoint of a piecewise-constant horizontal path, integrated exactly.

    On a step with constant (xdot, ydot) = (u, v) the t-equation
    tdot = xdot . y integrates to h u.y0 + h^2/2 u.v.
    """
    x, y, t = [Fraction(a) for a in start[0]], [Fraction(a) for a in start[1]], Fraction(start[2])
    h = Fraction(h)
    for uj, vj in zip(u, v):
        uj = [Fraction(a) for a in uj]
        vj = [Fraction(a) for a in vj]
        t += h * sum(a * b for a, b in zip(uj, y)) + h * h / 2 * sum(a * b for a, b in zip(uj, vj))
        x = [a + h * b for a, b in zip(x, uj)]
        y = [a + h * b for a, b in zip(y, vj)]
    return x, y, t


def circle_area_by_quadrature(m):
    """Signed integral of y dx around the unit circle, sampled at m chords."""
    pts = [(math.cos(2 * math.pi * j / m), math.sin(2 * math.pi * j / m)) for j in range(m + 1)]
    return sum((x1 - x0) * (y0 + y1) / 2 for (x0, y0), (x1, y1) in zip(pts, pts[1:]))


def shift_preimages_by_grid(r, n=1):
    """Points g of [0,1)^2n x [0,1) on a 1/r^2 grid with delta_r(g) integral.

    Integral here means x, y in Z and t in Z, i.e. delta_r(g) in H_n(Z);
    these are the canonical preimages of the identity coset at depth 0.
    """
    grid = [Fraction(a, r * r) for a in range(r * r)]
    found = []
    for c in product(grid, repeat=2 * n + 1):
        xs, ys, t = c[:n], c[n:2 * n], c[-1]
        if all((r * a).denominator == 1 for a in (*xs, *ys)) and (r * r * t).denominator == 1:
            found.append(c)
    return found


def divisible(q, m):
    return (Fraction(q) / m).denominator == 1
