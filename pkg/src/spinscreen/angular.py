"""
Half-integer spins, 6j labels and the allowed (j12, j23) screen.

Every spin is stored as twice its value so that integer and half-odd
labels share one exact integer representation.  Continuous tetrahedron
edges are ``J = j + 1/2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import EmptyDomain

_HALF_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


@dataclass(frozen=True, order=True)
class HalfInt:
    """Exact half-integer, ``value = twice / 2``."""

    twice: int

    @classmethod
    def of(cls, value: "HalfLike") -> "HalfInt":
        """Coerce int, Fraction, float, ``"n"`` or ``"n/2"`` strings to HalfInt."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a spin")
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, str):
            m = _HALF_RE.match(value)
            if m is None:
                raise ValueError(f"cannot parse {value!r} as an integer or half-integer")
            num, den = int(m.group(1)), int(m.group(2) or 1)
            value = Fraction(num, den)
        if isinstance(value, float):
            if not (2 * value).is_integer():
                raise ValueError(f"{value!r} is not a multiple of 1/2")
            return cls(int(2 * value))
        value = Fraction(value)
        if (2 * value).denominator != 1:
            raise ValueError(f"{value} is not a multiple of 1/2")
        return cls(int(2 * value))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    @property
    def edge(self) -> Fraction:
        """Continuous tetrahedron edge ``j + 1/2``."""
        return Fraction(self.twice + 1, 2)

    def __add__(self, other):
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __rsub__(self, other):
        return HalfInt(HalfInt.of(other).twice - self.twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __abs__(self):
        return HalfInt(abs(self.twice))

    def __float__(self):
        return self.twice / 2

    def __int__(self):
        if self.twice % 2:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def __str__(self):
        return str(self.twice // 2) if self.twice % 2 == 0 else f"{self.twice}/2"

    def __repr__(self):
        return f"HalfInt({self})"


HalfLike = Union[HalfInt, int, str, Fraction, float]


def triangle_ok(a: HalfLike, b: HalfLike, c: HalfLike) -> bool:
    """True iff ``|a-b| <= c <= a+b`` and ``a+b+c`` is an integer."""
    ta, tb, tc = (HalfInt.of(v).twice for v in (a, b, c))
    if (ta + tb + tc) % 2:
        return False
    return abs(ta - tb) <= tc <= ta + tb


@dataclass(frozen=True)
class SixJLabels:
    """Entries of the symbol ``{j1 j2 j12; j3 j j23}``."""

    j1: HalfInt
    j2: HalfInt
    j12: HalfInt
    j3: HalfInt
    j: HalfInt
    j23: HalfInt

    def __post_init__(self):
        for name in ("j1", "j2", "j12", "j3", "j", "j23"):
            object.__setattr__(self, name, HalfInt.of(getattr(self, name)))

    @classmethod
    def from_twice(cls, *twice: int) -> "SixJLabels":
        return cls(*(HalfInt(t) for t in twice))

    def as_tuple(self) -> tuple:
        """Symbol order: (j1, j2, j12, j3, j, j23)."""
        return (self.j1, self.j2, self.j12, self.j3, self.j, self.j23)

    def twice(self) -> tuple:
        return tuple(h.twice for h in self.as_tuple())

    def outer(self) -> tuple:
        """The four screen parameters (j1, j2, j3, j)."""
        return (self.j1, self.j2, self.j3, self.j)

    def triads(self):
        return (
            (self.j1, self.j2, self.j12),
            (self.j3, self.j, self.j12),
            (self.j1, self.j, self.j23),
            (self.j3, self.j2, self.j23),
        )

    def is_valid(self) -> bool:
        if any(h.twice < 0 for h in self.as_tuple()):
            return False
        return all(triangle_ok(*t) for t in self.triads())

    def edges(self) -> tuple:
        """Continuous edges (J1, J2, J3, J, J12, J23) as exact Fractions."""
        return tuple(h.edge for h in (self.j1, self.j2, self.j3, self.j, self.j12, self.j23))

    def __str__(self):
        a = self.as_tuple()
        return "{%s %s %s; %s %s %s}" % tuple(str(h) for h in a)


@dataclass(frozen=True)
class ScreenDomain:
    """Allowed ranges of j12 and j23 for fixed (j1, j2, j3, j)."""

    j12_min: HalfInt
    j12_max: HalfInt
    j23_min: HalfInt
    j23_max: HalfInt
    size: int

    def j12_values(self) -> list:
        return [HalfInt(self.j12_min.twice + 2 * k) for k in range(self.size)]

    def j23_values(self) -> list:
        return [HalfInt(self.j23_min.twice + 2 * k) for k in range(self.size)]

    @property
    def x_bounds(self) -> tuple:
        """Continuous J12 interval, where the bounding face areas vanish."""
        return (self.j12_min.value, self.j12_max.value + 1)

    @property
    def y_bounds(self) -> tuple:
        return (self.j23_min.value, self.j23_max.value + 1)

    def contains(self, j12: HalfLike, j23: HalfLike) -> bool:
        t12, t23 = HalfInt.of(j12).twice, HalfInt.of(j23).twice
        return (
            self.j12_min.twice <= t12 <= self.j12_max.twice
            and self.j23_min.twice <= t23 <= self.j23_max.twice
            and (t12 - self.j12_min.twice) % 2 == 0
            and (t23 - self.j23_min.twice) % 2 == 0
        )


def screen_domain(j1: HalfLike, j2: HalfLike, j3: HalfLike, j: HalfLike) -> ScreenDomain:
    """Bounds of the square screen for the outer spins ``(j1, j2, j3, j)``.

    Raises
    ------
    EmptyDomain
        If no j12 (or no j23) closes both of its triangles.
    """
    t1, t2, t3, t = (HalfInt.of(v).twice for v in (j1, j2, j3, j))
    if min(t1, t2, t3, t) < 0:
        raise EmptyDomain("negative spin")
    lo12, hi12 = max(abs(t1 - t2), abs(t3 - t)), min(t1 + t2, t3 + t)
    lo23, hi23 = max(abs(t2 - t3), abs(t1 - t)), min(t2 + t3, t1 + t)
    if (t1 + t2 + t3 + t) % 2:
        raise EmptyDomain("j1 + j2 + j3 + j must be an integer")
    if lo12 > hi12 or lo23 > hi23:
        raise EmptyDomain(f"no admissible (j12, j23) for ({j1}, {j2}, {j3}, {j})")
    size12 = (hi12 - lo12) // 2 + 1
    size23 = (hi23 - lo23) // 2 + 1
    assert size12 == size23, "screen must be square"
    return ScreenDomain(HalfInt(lo12), HalfInt(hi12), HalfInt(lo23), HalfInt(hi23), size12)
