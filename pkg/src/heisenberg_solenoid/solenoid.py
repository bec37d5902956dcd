"""Truncated circle and Heisenberg solenoids over exact rationals.

A coherent sequence in prod_{l=0}^{L} H_n(R)/H_n(r^l Z) is determined by its
level-L component, so a :class:`SolenoidPoint` stores one canonical
representative of a left coset g H_n(r^L Z); every shallower level is
recovered by :func:`project_level`. Rationals stand in for the reals.

Canonical representatives live in a half-open box. The lattice is
nonabelian, so the reduction order is fixed: right-multiply by
(M a, M b, 0) to bring x and y into [0, M), which shifts t by M x.b, then
by (0, 0, M_t c) to bring t into [0, M_t). For H_n(r^L Z) both moduli are
r^L; for the dilated lattice delta_{r^L}(H_n(Z)) the t modulus is r^(2L).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import IncompatibleOperandsError, LevelError
from .group import HeisenbergPoint, compose, dilate, inverse
from .rings import format_fraction


def as_rational(g: HeisenbergPoint) -> HeisenbergPoint:
    if g.ring == ("rational",):
        return g
    if g.ring == ("integer",):
        return g.map(Fraction)
    raise TypeError(f"expected an integer or rational point, got ring {g.ring}")


def _mod(a: Fraction, m: int) -> Fraction:
    return a - m * math.floor(a / m)


def _reduce(g: HeisenbergPoint, m_xy: int, m_t: int) -> HeisenbergPoint:
    g = as_rational(g)
    b = [-math.floor(v / m_xy) for v in g.y]
    x = tuple(_mod(v, m_xy) for v in g.x)
    y = tuple(v + m_xy * bi for v, bi in zip(g.y, b))
    t = g.t + m_xy * sum((xi * bi for xi, bi in zip(g.x, b)), Fraction(0))
    return HeisenbergPoint(x, y, _mod(t, m_t))


def _in_lattice(g: HeisenbergPoint, m_xy: int, m_t: int) -> bool:
    def divisible(v: Fraction, m: int) -> bool:
        q = Fraction(v) / m
        return q.denominator == 1
    return all(divisible(v, m_xy) for v in (*g.x, *g.y)) and divisible(g.t, m_t)


def _check_depth(L: int) -> None:
    if not isinstance(L, int) or L < 0:
        raise LevelError(f"depth must be a nonnegative integer, got {L!r}")


@dataclass(frozen=True)
class SolenoidPoint:
    """Coset g H_n(r^L Z), stored by its canonical representative."""

    radix: int
    depth: int
    rep: HeisenbergPoint

    @property
    def n(self) -> int:
        return self.rep.n

    @property
    def modulus(self) -> int:
        return self.radix ** self.depth

    def level(self, l: int) -> SolenoidPoint:
        return project_level(self, l)

    def components(self) -> list[SolenoidPoint]:
        return [project_level(self, l) for l in range(self.depth + 1)]

    def to_json(self) -> dict:
        return {"r": str(self.radix), "L": str(self.depth), "n": self.n, "rep": self.rep.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> SolenoidPoint:
        return canonical_reduce(HeisenbergPoint.from_json(data["rep"]), int(data["r"]), int(data["L"]))


def canonical_reduce(g: HeisenbergPoint, r: int, L: int) -> SolenoidPoint:
    _check_depth(L)
    m = r ** L
    return SolenoidPoint(r, L, _reduce(g, m, m))


def same_coset(g: HeisenbergPoint, h: HeisenbergPoint, r: int, L: int,
               method: str = "lattice") -> bool:
    """Whether g H_n(r^L Z) = h H_n(r^L Z).

    ``method="lattice"`` tests g^{-1} h for membership in the lattice;
    ``method="canonical"`` compares canonical representatives.
    """
    g, h = as_rational(g), as_rational(h)
    if method == "lattice":
        m = r ** L
        return _in_lattice(compose(inverse(g), h), m, m)
    if method == "canonical":
        return canonical_reduce(g, r, L) == canonical_reduce(h, r, L)
    raise ValueError(f"unknown method {method!r}")


def project_level(p: SolenoidPoint, l: int) -> SolenoidPoint:
    if not 0 <= l <= p.depth:
        raise LevelError(f"level {l} outside 0..{p.depth}")
    return canonical_reduce(p.rep, p.radix, l)


def embed_phi_tilde(g: HeisenbergPoint, r: int, L: int) -> SolenoidPoint:
    return canonical_reduce(g, r, L)


def left_action(h: HeisenbergPoint, p: SolenoidPoint) -> SolenoidPoint:
    h = as_rational(h)
    if h.n != p.n:
        raise IncompatibleOperandsError(f"dimension mismatch: n={h.n} vs n={p.n}")
    return canonical_reduce(compose(h, p.rep), p.radix, p.depth)


def base_projection(p: SolenoidPoint, l: int) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """(x mod r^l, y mod r^l): the point of the torus base under the fiber."""
    if not 0 <= l <= p.depth:
        raise LevelError(f"level {l} outside 0..{p.depth}")
    m = p.radix ** l
    return tuple(_mod(v, m) for v in p.rep.x), tuple(_mod(v, m) for v in p.rep.y)


def shift_map(p: SolenoidPoint) -> SolenoidPoint:
    """Apply delta_r to a representative and re-reduce.

    Well defined because delta_r maps H_n(r^L Z) into itself.
    """
    return canonical_reduce(dilate(p.rep, p.radix), p.radix, p.depth)


def shift_preimages(p: SolenoidPoint) -> list[SolenoidPoint]:
    """Every coset q with shift_map(q) = p, in canonical order.

    Preimages are delta_{1/r}(rep * lam) with lam running over coset
    representatives of delta_r(H_n(r^L Z)) in H_n(r^L Z), i.e.
    lam = (M a, M b, M c) with a_i, b_i in [0, r) and c in [0, r^2).
    """
    r, n, m = p.radix, p.n, p.modulus
    inv_r = Fraction(1, r)
    found = set()
    for digits in product(range(r), repeat=2 * n):
        for c in range(r * r):
            lam = HeisenbergPoint(tuple(m * d for d in digits[:n]),
                                  tuple(m * d for d in digits[n:]), Fraction(m * c))
            found.add(canonical_reduce(dilate(compose(p.rep, lam), inv_r), r, p.depth))
    return sorted(found, key=lambda q: q.rep.coords())


# --- dilated lattice tower -------------------------------------------------

@dataclass(frozen=True)
class DilatedSolenoidPoint:
    """Coset g delta_{r^L}(H_n(Z)); rep has x, y in [0, r^L) and t in [0, r^(2L))."""

    radix: int
    depth: int
    rep: HeisenbergPoint

    @property
    def n(self) -> int:
        return self.rep.n

    def level(self, l: int) -> DilatedSolenoidPoint:
        return dilated_project_level(self, l)

    def to_json(self) -> dict:
        return {"r": str(self.radix), "L": str(self.depth), "n": self.n,
                "lattice": "dilated", "rep": self.rep.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> DilatedSolenoidPoint:
        return dilated_reduce(HeisenbergPoint.from_json(data["rep"]), int(data["r"]), int(data["L"]))


def dilated_reduce(g: HeisenbergPoint, r: int, L: int) -> DilatedSolenoidPoint:
    _check_depth(L)
    m = r ** L
    return DilatedSolenoidPoint(r, L, _reduce(g, m, m * m))


def dilated_same_coset(g: HeisenbergPoint, h: HeisenbergPoint, r: int, L: int) -> bool:
    m = r ** L
    return _in_lattice(compose(inverse(as_rational(g)), as_rational(h)), m, m * m)


def embed_psi_tilde(g: HeisenbergPoint, r: int, L: int) -> DilatedSolenoidPoint:
    return dilated_reduce(g, r, L)


def dilated_project_level(u: DilatedSolenoidPoint, l: int) -> DilatedSolenoidPoint:
    if not 0 <= l <= u.depth:
        raise LevelError(f"level {l} outside 0..{u.depth}")
    return dilated_reduce(u.rep, u.radix, l)


def dilated_left_action(h: HeisenbergPoint, u: DilatedSolenoidPoint) -> DilatedSolenoidPoint:
    return dilated_reduce(compose(as_rational(h), u.rep), u.radix, u.depth)


def dilated_to_standard(u: DilatedSolenoidPoint) -> SolenoidPoint:
    """Depth-L dilated tower -> depth-L standard tower.

    delta_{r^l}(H_n(Z)) is contained in H_n(r^l Z), so each dilated level
    determines the standard level with the same index.
    """
    return canonical_reduce(u.rep, u.radix, u.depth)


def standard_to_dilated(p: SolenoidPoint, L: int | None = None) -> DilatedSolenoidPoint:
    """Depth-2L standard tower -> depth-L dilated tower.

    H_n(r^(2l) Z) is contained in delta_{r^l}(H_n(Z)), so standard level 2l
    determines dilated level l.
    """
    if L is None:
        L = p.depth // 2
    if L < 0 or 2 * L > p.depth:
        raise LevelError(f"a depth-{p.depth} standard point determines dilated levels "
                         f"up to {p.depth // 2}, not {L}")
    return dilated_reduce(p.rep, p.radix, L)


def dilated_components_as_base(u: DilatedSolenoidPoint) -> list[SolenoidPoint]:
    """Each dilated level l, moved to H_n(R)/H_n(Z) by delta_{r^-l}.

    Under this identification the tower maps all become :func:`shift_map`:
    component l equals shift_map(component l+1).
    """
    out = []
    for l in range(u.depth + 1):
        g = dilated_project_level(u, l).rep
        out.append(canonical_reduce(dilate(g, Fraction(1, u.radix ** l)), u.radix, 0))
    return out


# --- circle solenoid ------------------------------------------------------

@dataclass(frozen=True)
class CircleSolenoidPoint:
    """Class of a rational in R / r^L Z; level l is rep mod r^l, for l = 0..L."""

    radix: int
    depth: int
    rep: Fraction

    def levels(self) -> tuple[Fraction, ...]:
        return tuple(_mod(self.rep, self.radix ** l) for l in range(self.depth + 1))

    def __add__(self, other: CircleSolenoidPoint) -> CircleSolenoidPoint:
        if (self.radix, self.depth) != (other.radix, other.depth):
            raise IncompatibleOperandsError("circle points at different (r, L)")
        return tilde_q_embed(self.rep + other.rep, self.radix, self.depth)

    def __neg__(self) -> CircleSolenoidPoint:
        return tilde_q_embed(-self.rep, self.radix, self.depth)

    def to_json(self) -> dict:
        return {"r": str(self.radix), "L": str(self.depth), "rep": format_fraction(self.rep)}


def tilde_q_embed(a, r: int, L: int) -> CircleSolenoidPoint:
    _check_depth(L)
    return CircleSolenoidPoint(r, L, _mod(Fraction(a), r ** L))


def pi0(p: CircleSolenoidPoint) -> Fraction:
    return _mod(p.rep, 1)


def circle_coherence_check(levels, r: int) -> bool:
    """For an explicit sequence (x_0, ..., x_L) with x_l in R / r^l Z."""
    levels = [Fraction(v) for v in levels]
    return all(_mod(levels[l + 1], r ** l) == _mod(levels[l], r ** l) for l in range(len(levels) - 1))
