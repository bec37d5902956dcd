"""The Heisenberg group law over an arbitrary commutative coefficient ring.

A point is a triple ``(x, y, t)`` with ``x, y`` of length n and the product

    (x, y, t) * (x', y', t') = (x + x', y + y', t + t' + x . y')

One implementation serves every ring whose scalars support ``+``, ``*``,
unary ``-`` and ``==``: Python ints, :class:`fractions.Fraction`,
:class:`~heisenberg_solenoid.rings.Residue` and
:class:`~heisenberg_solenoid.rings.RAdicInt`.

Conjugation convention: ``conjugate(g, h) = h * g * h^{-1}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .errors import IncompatibleOperandsError, NonInvertibleDilationError
from .rings import RAdicInt, Residue, format_fraction


def ring_of(a: Any) -> tuple:
    """Hashable description of the ring a scalar lives in."""
    if isinstance(a, bool):
        raise TypeError("booleans are not ring scalars")
    if isinstance(a, int):
        return ("integer",)
    if isinstance(a, Fraction):
        return ("rational",)
    if isinstance(a, Residue):
        return ("residue", a.modulus)
    if isinstance(a, RAdicInt):
        return ("radic", a.radix, a.precision)
    raise TypeError(f"unsupported scalar type {type(a).__name__}")


def _dot(u: Sequence, v: Sequence):
    acc = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        acc = acc + a * b
    return acc


@dataclass(frozen=True)
class HeisenbergPoint:
    x: tuple
    y: tuple
    t: Any

    def __post_init__(self):
        x, y = tuple(self.x), tuple(self.y)
        if len(x) != len(y) or not x:
            raise ValueError(f"x and y must have the same length n >= 1, got {len(x)}, {len(y)}")
        rings = {ring_of(c) for c in (*x, *y, self.t)}
        t = self.t
        if rings == {("integer",), ("rational",)}:
            x = tuple(Fraction(c) for c in x)
            y = tuple(Fraction(c) for c in y)
            t = Fraction(t)
            rings = {("rational",)}
        if len(rings) != 1:
            raise IncompatibleOperandsError(f"coordinates mix rings {sorted(rings)}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "t", t)

    @classmethod
    def _raw(cls, x: tuple, y: tuple, t) -> HeisenbergPoint:
        # Skips validation; only for results built from already-checked operands.
        p = object.__new__(cls)
        object.__setattr__(p, "x", x)
        object.__setattr__(p, "y", y)
        object.__setattr__(p, "t", t)
        return p

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def ring(self) -> tuple:
        return ring_of(self.t)

    @classmethod
    def identity(cls, n: int, zero: Any = 0) -> HeisenbergPoint:
        z = zero - zero
        return cls((z,) * n, (z,) * n, z)

    @classmethod
    def from_ints(cls, x: Iterable[int], y: Iterable[int], t: int, ring: tuple = ("integer",)):
        """Build a point by mapping integer coordinates into ``ring``."""
        lift = scalar_factory(ring)
        return cls(tuple(map(lift, x)), tuple(map(lift, y)), lift(t))

    def zero_scalar(self):
        return self.t - self.t

    def is_identity(self) -> bool:
        z = self.zero_scalar()
        return all(c == z for c in (*self.x, *self.y, self.t))

    def map(self, f) -> HeisenbergPoint:
        """Apply ``f`` to every coordinate (e.g. a ring homomorphism)."""
        return HeisenbergPoint(tuple(map(f, self.x)), tuple(map(f, self.y)), f(self.t))

    def coords(self) -> tuple:
        return (*self.x, *self.y, self.t)

    def __mul__(self, other: HeisenbergPoint) -> HeisenbergPoint:
        if not isinstance(other, HeisenbergPoint):
            return NotImplemented
        return compose(self, other)

    def inverse(self) -> HeisenbergPoint:
        return inverse(self)

    def to_json(self) -> dict:
        return {"n": self.n, "ring": ring_to_json(self.ring),
                "x": [scalar_to_json(c) for c in self.x],
                "y": [scalar_to_json(c) for c in self.y],
                "t": scalar_to_json(self.t)}

    @classmethod
    def from_json(cls, data: dict) -> HeisenbergPoint:
        ring = ring_from_json(data["ring"])
        parse = scalar_parser(ring)
        p = cls(tuple(map(parse, data["x"])), tuple(map(parse, data["y"])), parse(data["t"]))
        if "n" in data and int(data["n"]) != p.n:
            raise ValueError(f"declared n={data['n']} but got {p.n} coordinates")
        return p


def _check_pair(g: HeisenbergPoint, h: HeisenbergPoint) -> None:
    if len(g.x) != len(h.x):
        raise IncompatibleOperandsError(f"dimension mismatch: n={g.n} vs n={h.n}")
    if type(g.t) is not type(h.t) or g.ring != h.ring:
        raise IncompatibleOperandsError(f"ring mismatch: {g.ring} vs {h.ring}")


def compose(g: HeisenbergPoint, h: HeisenbergPoint) -> HeisenbergPoint:
    _check_pair(g, h)
    return HeisenbergPoint._raw(
        tuple(a + b for a, b in zip(g.x, h.x)),
        tuple(a + b for a, b in zip(g.y, h.y)),
        g.t + h.t + _dot(g.x, h.y),
    )


def inverse(g: HeisenbergPoint) -> HeisenbergPoint:
    return HeisenbergPoint._raw(tuple(-a for a in g.x), tuple(-a for a in g.y),
                                -g.t + _dot(g.x, g.y))


def conjugate(g: HeisenbergPoint, h: HeisenbergPoint) -> HeisenbergPoint:
    """h * g * h^{-1}, evaluated in closed form as (x, y, t + x'.y - x.y')."""
    _check_pair(g, h)
    return HeisenbergPoint._raw(g.x, g.y, g.t + _dot(h.x, g.y) - _dot(g.x, h.y))


def commutator(g: HeisenbergPoint, h: HeisenbergPoint) -> HeisenbergPoint:
    """g * h * g^{-1} * h^{-1}, computed by four compositions."""
    return compose(compose(compose(g, h), inverse(g)), inverse(h))


def project_pi(g: HeisenbergPoint) -> tuple[tuple, tuple]:
    return g.x, g.y


def is_central(g: HeisenbergPoint, probes: Sequence[HeisenbergPoint]) -> bool:
    if not probes:
        raise ValueError("need at least one probe")
    return all(compose(g, p) == compose(p, g) for p in probes)


@dataclass(frozen=True)
class Dilation:
    """delta_s: (x, y, t) -> (s x, s y, s^2 t)."""

    factor: Any

    def __call__(self, g: HeisenbergPoint) -> HeisenbergPoint:
        return dilate(g, self)

    def then(self, other: Dilation) -> Dilation:
        return Dilation(self.factor * other.factor)

    @property
    def invertible(self) -> bool:
        return self.factor != 0

    def inverse(self) -> Dilation:
        if not self.invertible:
            raise NonInvertibleDilationError("dilation by 0 has no inverse")
        return Dilation(Fraction(1) / Fraction(self.factor))


def dilate(g: HeisenbergPoint, d: Dilation | Any) -> HeisenbergPoint:
    s = d.factor if isinstance(d, Dilation) else d
    s2 = s * s
    return HeisenbergPoint(tuple(s * a for a in g.x), tuple(s * a for a in g.y), s2 * g.t)


def in_scaled_lattice(g: HeisenbergPoint, k: int) -> bool:
    """Membership in H_n(kZ) for an integer point."""
    return all(c % k == 0 for c in g.coords())


def in_dilated_lattice(g: HeisenbergPoint, r: int) -> bool:
    """Membership in delta_r(H_n(Z)) for an integer point."""
    return all(c % r == 0 for c in (*g.x, *g.y)) and g.t % (r * r) == 0


# --- serialization helpers -------------------------------------------------

def scalar_factory(ring: tuple):
    kind = ring[0]
    if kind == "integer":
        return int
    if kind == "rational":
        return Fraction
    if kind == "residue":
        return lambda a: Residue(int(a), ring[1])
    if kind == "radic":
        return lambda a: RAdicInt(int(a), ring[1], ring[2])
    raise ValueError(f"unknown ring {ring!r}")


def scalar_parser(ring: tuple):
    make = scalar_factory(ring)
    if ring[0] == "rational":
        return lambda s: Fraction(s)
    return lambda s: make(int(s))


def scalar_to_json(a) -> str:
    if isinstance(a, Residue):
        return str(a.value)
    if isinstance(a, RAdicInt):
        return str(a.digit)
    return format_fraction(a)


def ring_to_json(ring: tuple) -> dict:
    kind = ring[0]
    if kind == "residue":
        return {"kind": kind, "modulus": str(ring[1])}
    if kind == "radic":
        return {"kind": kind, "r": str(ring[1]), "L": str(ring[2])}
    return {"kind": kind}


def ring_from_json(d: dict) -> tuple:
    kind = d["kind"]
    if kind == "residue":
        return ("residue", int(d["modulus"]))
    if kind == "radic":
        return ("radic", int(d["r"]), int(d["L"]))
    if kind in ("integer", "rational"):
        return (kind,)
    raise ValueError(f"unknown ring kind {kind!r}")
