"""Truncated sequences in prod_l H_n(Z/r^l Z) and their identification with H_n(Z_r).

A :class:`GroupProductElement` holds one point per level l = 1..L, level l
over ``Residue`` mod r^l. Coherence (level l+1 reduces to level l) is a
property to check, not a construction guarantee. Coherent elements of depth
L correspond one-to-one with points whose coordinates are ``RAdicInt`` at
precision L: both are determined by the level-L component.
"""
from __future__ import annotations

from itertools import product
from typing import Sequence

import numpy as np

from .errors import IncompatibleOperandsError, NotCoherentError
from .finite import FiniteHeisenberg
from .group import HeisenbergPoint, compose, inverse
from .rings import RAdicInt, Residue


def _reduce_point(g: HeisenbergPoint, modulus: int) -> HeisenbergPoint:
    return g.map(lambda c: Residue(int(c), modulus))


class GroupProductElement:
    __slots__ = ("radix", "levels")

    def __init__(self, radix: int, levels: Sequence[HeisenbergPoint]):
        if not levels:
            raise ValueError("need at least one level")
        out = []
        for l, g in enumerate(levels, start=1):
            m = radix ** l
            if g.ring != ("residue", m):
                g = _reduce_point(g, m)
            out.append(g)
        if len({g.n for g in out}) != 1:
            raise ValueError("all levels must share the same n")
        self.radix = radix
        self.levels = tuple(out)

    @classmethod
    def from_triples(cls, radix: int, triples) -> GroupProductElement:
        """Levels given as plain ``(x, y, t)`` integer triples."""
        return cls(radix, [HeisenbergPoint(tuple(x), tuple(y), int(t)) for x, y, t in triples])

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def n(self) -> int:
        return self.levels[0].n

    def level(self, l: int) -> HeisenbergPoint:
        return self.levels[l - 1]

    def _check(self, other: GroupProductElement) -> None:
        if (self.radix, self.depth, self.n) != (other.radix, other.depth, other.n):
            raise IncompatibleOperandsError(
                f"(r, L, n) = {(self.radix, self.depth, self.n)} vs "
                f"{(other.radix, other.depth, other.n)}")

    def __mul__(self, other: GroupProductElement) -> GroupProductElement:
        self._check(other)
        return GroupProductElement(self.radix, [compose(a, b) for a, b in zip(self.levels, other.levels)])

    def inverse(self) -> GroupProductElement:
        return GroupProductElement(self.radix, [inverse(a) for a in self.levels])

    def __eq__(self, other):
        if not isinstance(other, GroupProductElement):
            return NotImplemented
        return self.radix == other.radix and self.levels == other.levels

    def __hash__(self):
        return hash((self.radix, self.levels))

    def __repr__(self):
        lv = "; ".join(str(tuple(int(c) for c in g.coords())) for g in self.levels)
        return f"GroupProductElement(r={self.radix}, [{lv}])"

    def to_json(self) -> dict:
        return {"r": str(self.radix), "L": str(self.depth),
                "levels": [g.to_json() for g in self.levels]}

    @classmethod
    def from_json(cls, data: dict) -> GroupProductElement:
        w = cls(int(data["r"]), [HeisenbergPoint.from_json(d) for d in data["levels"]])
        if "L" in data and int(data["L"]) != w.depth:
            raise ValueError(f"declared L={data['L']} but got {w.depth} levels")
        return w


def phi_embed(g: HeisenbergPoint, r: int, L: int) -> GroupProductElement:
    """Reduce an integer point mod r, r^2, ..., r^L."""
    if L < 1:
        raise ValueError(f"depth must be >= 1, got {L}")
    if g.ring != ("integer",):
        raise TypeError("phi_embed takes a point of H_n(Z)")
    return GroupProductElement(r, [_reduce_point(g, r ** l) for l in range(1, L + 1)])


def group_coherence_check(w: GroupProductElement) -> bool:
    for l in range(1, w.depth):
        m = w.radix ** l
        lower = tuple(c.value for c in w.levels[l - 1].coords())
        upper = tuple(c.value % m for c in w.levels[l].coords())
        if lower != upper:
            return False
    return True


def _require_coherent(w: GroupProductElement) -> None:
    if not group_coherence_check(w):
        raise NotCoherentError("element is not a coherent sequence")


def to_profinite(w: GroupProductElement) -> HeisenbergPoint:
    """Coherent sequence -> point of H_n(Z_r) with coordinates at precision L."""
    _require_coherent(w)
    r, L = w.radix, w.depth
    return w.levels[-1].map(lambda c: RAdicInt(c.value, r, L))


def from_profinite(p: HeisenbergPoint) -> GroupProductElement:
    kind, r, L = p.ring
    if kind != "radic":
        raise TypeError("from_profinite takes a point with RAdicInt coordinates")
    return GroupProductElement(r, [p.map(lambda c, l=l: c.residue(l)) for l in range(1, L + 1)])


def v_density_witness(w: GroupProductElement) -> HeisenbergPoint:
    """An integer point whose embedding agrees with w at every stored level."""
    _require_coherent(w)
    return w.levels[-1].map(lambda c: c.value)


def count_coherent(n: int, r: int, L: int, cap: int = 10 ** 7) -> int:
    """Number of coherent depth-L elements, by scanning all of prod_l H_n(Z/r^l Z)."""
    groups = [FiniteHeisenberg(n, r ** l) for l in range(1, L + 1)]
    total = int(np.prod([G.order for G in groups], dtype=object))
    if total > cap:
        raise ValueError(f"product has {total} elements, above the cap {cap}")
    grids = np.meshgrid(*[np.arange(G.order) for G in groups], indexing="ij")
    coords = [G.decode(idx.reshape(-1)) for G, idx in zip(groups, grids)]
    ok = np.ones(total, dtype=bool)
    for l in range(1, L):
        ok &= np.all(coords[l] % r ** l == coords[l - 1], axis=1)
    return int(ok.sum())


def enumerate_coherent(n: int, r: int, L: int):
    """Yield every coherent depth-L element (one per point of H_n(Z/r^L Z))."""
    m = r ** L
    for coords in product(range(m), repeat=2 * n + 1):
        g = HeisenbergPoint(coords[:n], coords[n:2 * n], coords[-1])
        yield phi_embed(g, r, L)
