"""Residues mod k, truncated r-adic integers, and the r-adic metric.

Everything here is exact: integers are Python ints and every absolute value
or distance is a :class:`fractions.Fraction` in lowest terms.
"""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence

from .errors import (IncompatibleOperandsError, InvalidRadixError, NotCauchyError,
                     NotCoherentError)


def _check_radix(r: int) -> None:
    if not isinstance(r, int) or r < 2:
        raise InvalidRadixError(f"radix must be an integer >= 2, got {r!r}")


def valuation(a: int, r: int) -> int | None:
    """Largest l >= 0 with r**l dividing a, or None when a == 0."""
    _check_radix(r)
    if a == 0:
        return None
    l = 0
    while a % r == 0:
        a //= r
        l += 1
    return l


@total_ordering
class Residue:
    """An element of Z/mZ, stored canonically in [0, m)."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        if not isinstance(modulus, int) or modulus < 2:
            raise InvalidRadixError(f"modulus must be an integer >= 2, got {modulus!r}")
        self.value = value % modulus
        self.modulus = modulus

    def _coerce(self, other) -> Residue:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise IncompatibleOperandsError(
                    f"moduli differ: {self.modulus} vs {other.modulus}")
            return other
        if isinstance(other, int):
            return Residue(other, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Residue(self.value + other.value, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Residue(self.value - other.value, self.modulus)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Residue(self.value * other.value, self.modulus)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __lt__(self, other):
        # Only used for deterministic sorting.
        if not isinstance(other, Residue):
            return NotImplemented
        return (self.modulus, self.value) < (other.modulus, other.value)

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value}, {self.modulus})"

    def __str__(self):
        return f"{self.value} mod {self.modulus}"


class RAdicInt:
    """An r-adic integer known modulo r**precision.

    Only the deepest digit is stored; the residue at every shallower level is
    ``digit % r**l``, so the underlying sequence is coherent by construction.
    Arithmetic between two values truncates to the smaller precision.
    """

    __slots__ = ("digit", "radix", "precision")

    def __init__(self, digit: int, radix: int, precision: int):
        _check_radix(radix)
        if not isinstance(precision, int) or precision < 1:
            raise ValueError(f"precision must be >= 1, got {precision!r}")
        self.radix = radix
        self.precision = precision
        self.digit = digit % radix ** precision

    @property
    def modulus(self) -> int:
        return self.radix ** self.precision

    def residue(self, level: int) -> Residue:
        if not 1 <= level <= self.precision:
            raise ValueError(f"level {level} outside 1..{self.precision}")
        return Residue(self.digit, self.radix ** level)

    def truncate(self, precision: int) -> RAdicInt:
        return RAdicInt(self.digit, self.radix, min(precision, self.precision))

    def to_product(self) -> ProductElement:
        return embed_q(self.digit, self.radix, self.precision)

    def _coerce(self, other) -> tuple[int, int]:
        """Return (other digit, result precision)."""
        if isinstance(other, RAdicInt):
            if other.radix != self.radix:
                raise IncompatibleOperandsError(
                    f"radices differ: {self.radix} vs {other.radix}")
            return other.digit, min(self.precision, other.precision)
        if isinstance(other, int):
            return other, self.precision
        raise TypeError(f"cannot combine RAdicInt with {type(other).__name__}")

    def __add__(self, other):
        try:
            d, L = self._coerce(other)
        except TypeError:
            return NotImplemented
        return RAdicInt(self.digit + d, self.radix, L)

    __radd__ = __add__

    def __neg__(self):
        return RAdicInt(-self.digit, self.radix, self.precision)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            d, L = self._coerce(other)
        except TypeError:
            return NotImplemented
        return RAdicInt(self.digit * d, self.radix, L)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, RAdicInt):
            return (self.radix, self.precision, self.digit) == (
                other.radix, other.precision, other.digit)
        if isinstance(other, int):
            return self.digit == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.digit, self.radix, self.precision))

    def __repr__(self):
        return f"RAdicInt({self.digit}, r={self.radix}, L={self.precision})"

    def digits(self) -> list[int]:
        """Base-r digits, least significant first, padded to the precision."""
        out, d = [], self.digit
        for _ in range(self.precision):
            d, q = divmod(d, self.radix)
            out.append(q)
        return out


def radic_add(a: RAdicInt, b: RAdicInt) -> RAdicInt:
    return a + b


def radic_mul(a: RAdicInt, b: RAdicInt) -> RAdicInt:
    return a * b


def radic_neg(a: RAdicInt) -> RAdicInt:
    return -a


def radic_abs(a: int, r: int) -> Fraction:
    """|a|_r = r**(-l) with l the exponent of the largest power of r dividing a."""
    l = valuation(a, r)
    if l is None:
        return Fraction(0)
    return Fraction(1, r ** l)


def radic_dist(a: int, b: int, r: int) -> Fraction:
    return radic_abs(a - b, r)


class ProductElement:
    """A truncated element of prod_{l>=1} Z/r^l Z.

    Entry ``l - 1`` of :attr:`residues` is the level-l residue, with modulus
    exactly r**l. Nothing forces the entries to agree with each other; use
    :func:`coherence_check` for that.
    """

    __slots__ = ("radix", "residues")

    def __init__(self, radix: int, residues: Iterable[Residue | int]):
        _check_radix(radix)
        res = []
        for l, v in enumerate(residues, start=1):
            m = radix ** l
            if isinstance(v, Residue):
                if v.modulus != m:
                    raise ValueError(f"level {l} needs modulus {m}, got {v.modulus}")
            else:
                v = Residue(v, m)
            res.append(v)
        if not res:
            raise ValueError("a product element needs depth >= 1")
        self.radix = radix
        self.residues = tuple(res)

    @property
    def depth(self) -> int:
        return len(self.residues)

    def level(self, l: int) -> Residue:
        return self.residues[l - 1]

    def _check(self, other: ProductElement) -> None:
        if self.radix != other.radix or self.depth != other.depth:
            raise IncompatibleOperandsError(
                f"(r={self.radix}, L={self.depth}) vs (r={other.radix}, L={other.depth})")

    def __add__(self, other: ProductElement) -> ProductElement:
        self._check(other)
        return ProductElement(self.radix, [a + b for a, b in zip(self.residues, other.residues)])

    def __mul__(self, other: ProductElement) -> ProductElement:
        self._check(other)
        return ProductElement(self.radix, [a * b for a, b in zip(self.residues, other.residues)])

    def __neg__(self) -> ProductElement:
        return ProductElement(self.radix, [-a for a in self.residues])

    def __eq__(self, other):
        if not isinstance(other, ProductElement):
            return NotImplemented
        return self.radix == other.radix and self.residues == other.residues

    def __hash__(self):
        return hash((self.radix, self.residues))

    def __repr__(self):
        vals = ", ".join(str(v.value) for v in self.residues)
        return f"ProductElement(r={self.radix}, [{vals}])"

    def to_json(self) -> list[dict]:
        return [{"value": str(v.value), "modulus": str(v.modulus)} for v in self.residues]

    @classmethod
    def from_json(cls, data: Sequence[dict]) -> ProductElement:
        mods = [int(d["modulus"]) for d in data]
        if not mods:
            raise ValueError("empty product element")
        radix = mods[0]
        return cls(radix, [Residue(int(d["value"]), m) for d, m in zip(data, mods)])


def embed_q(a: int, r: int, L: int) -> ProductElement:
    """The integer a as the coherent sequence (a mod r, a mod r^2, ..., a mod r^L)."""
    _check_radix(r)
    if L < 1:
        raise ValueError(f"depth must be >= 1, got {L}")
    return ProductElement(r, [Residue(a, r ** l) for l in range(1, L + 1)])


def coherence_check(x: ProductElement) -> bool:
    r = x.radix
    return all(x.residues[l].value % r ** l == x.residues[l - 1].value
               for l in range(1, x.depth))


def first_disagreement(x: ProductElement, y: ProductElement) -> int | None:
    """Smallest level at which x and y differ, or None if they agree throughout."""
    x._check(y)
    for l, (a, b) in enumerate(zip(x.residues, y.residues), start=1):
        if a != b:
            return l
    return None


def ultrametric_rho(x: ProductElement, y: ProductElement) -> Fraction:
    """rho(x, y) = r**(1 - l*) where l* is the first level of disagreement."""
    l = first_disagreement(x, y)
    if l is None:
        return Fraction(0)
    return Fraction(1, x.radix ** (l - 1))


def to_radic(x: ProductElement) -> RAdicInt:
    """Read a coherent product element as an r-adic integer (its deepest entry)."""
    if not coherence_check(x):
        raise NotCoherentError("product element is not a coherent sequence")
    return RAdicInt(x.residues[-1].value, x.radix, x.depth)


def radic_from_cauchy(seq: Sequence[int], r: int, L: int, window: int = 2) -> RAdicInt:
    """Limit of an r-adically Cauchy integer sequence, known modulo r**L.

    The last ``window`` terms must already agree modulo r**L; otherwise the
    supplied prefix does not pin down the limit at this precision.
    """
    _check_radix(r)
    m = r ** L
    if len(seq) < window:
        raise NotCauchyError(f"need at least {window} terms to certify the tail, got {len(seq)}")
    tail = {a % m for a in seq[-window:]}
    if len(tail) != 1:
        raise NotCauchyError(f"last {window} terms do not agree modulo {r}^{L}")
    return RAdicInt(tail.pop(), r, L)


def format_fraction(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(s: str | int) -> Fraction:
    return Fraction(s)
