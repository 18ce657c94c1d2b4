"""
Classical and Regge symmetries of the 6j symbol, canonical forms and the
degeneracy taxonomy of the screen.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .angular import HalfInt, HalfLike, SixJLabels, screen_domain


def _outer(args) -> tuple:
    if len(args) == 1 and isinstance(args[0], SixJLabels):
        return args[0].outer()
    if len(args) != 4:
        raise TypeError("expected SixJLabels or (j1, j2, j3, j)")
    return tuple(HalfInt.of(a) for a in args)


@dataclass(frozen=True)
class ReggeData:
    rho: HalfInt
    s: HalfInt


def regge_rho(*args) -> ReggeData:
    """``rho = [(j2 + j) - (j1 + j3)] / 2`` and the semi-perimeter ``s``."""
    j1, j2, j3, j = _outer(args)
    rho = HalfInt((j2.twice + j.twice - j1.twice - j3.twice) // 2)
    s = HalfInt((j1.twice + j2.twice + j3.twice + j.twice) // 2)
    return ReggeData(rho, s)


def regge_transform(labels: SixJLabels) -> SixJLabels:
    """Regge twin ``{j1+rho j2-rho j12; j3+rho j-rho j23}``; an involution."""
    rho = regge_rho(labels).rho
    return SixJLabels(labels.j1 + rho, labels.j2 - rho, labels.j12, labels.j3 + rho, labels.j - rho, labels.j23)


def regge_twin(j1: HalfLike, j2: HalfLike, j3: HalfLike, j: HalfLike) -> tuple:
    """Outer spins of the Regge-twinned screen."""
    j1, j2, j3, j = (HalfInt.of(v) for v in (j1, j2, j3, j))
    rho = regge_rho(j1, j2, j3, j).rho
    return (j1 + rho, j2 - rho, j3 + rho, j - rho)


def size_from_regge(j1: HalfLike, j2: HalfLike, j3: HalfLike, j: HalfLike) -> Fraction:
    """``2 min{J1, J2, J3, J, J1+rho, J2-rho, J3+rho, J-rho}`` with ``J = j + 1/2``.

    The last four values are the edges of the Regge twin.
    """
    outer = [HalfInt.of(v) for v in (j1, j2, j3, j)]
    values = outer + list(regge_twin(*outer))
    return 2 * min(v.edge for v in values)


# Symbol positions: 0=j1 1=j2 2=j12 (top row), 3=j3 4=j 5=j23 (bottom row).
# Columns are (0,3), (1,4), (2,5).
def _swap_cols(t, a, b):
    t = list(t)
    t[a], t[b] = t[b], t[a]
    t[a + 3], t[b + 3] = t[b + 3], t[a + 3]
    return tuple(t)


def _flip_cols(t, a, b):
    t = list(t)
    t[a], t[a + 3] = t[a + 3], t[a]
    t[b], t[b + 3] = t[b + 3], t[b]
    return tuple(t)


def _regge_twice(t):
    t1, t2, t12, t3, tj, t23 = t
    rho = (t2 + tj - t1 - t3) // 2
    return (t1 + rho, t2 - rho, t12, t3 + rho, tj - rho, t23)


_CLASSICAL = {
    "swap12": lambda t: _swap_cols(t, 0, 1),
    "swap23": lambda t: _swap_cols(t, 1, 2),
    "flip12": lambda t: _flip_cols(t, 0, 1),
    "flip13": lambda t: _flip_cols(t, 0, 2),
}
_FULL = dict(_CLASSICAL, regge=_regge_twice)


@dataclass(frozen=True)
class SymmetryOrbit:
    """Orbit elements with the generator word that reaches each from the seed."""

    elements: frozenset
    generators_applied: dict = field(compare=False, hash=False)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, labels):
        return labels in self.elements


def _closure(labels: SixJLabels, generators) -> SymmetryOrbit:
    seed = labels.twice()
    words = {seed: ""}
    frontier = [seed]
    while frontier:
        nxt = []
        for t in frontier:
            for name, g in generators.items():
                u = g(t)
                if u not in words:
                    words[u] = (words[t] + " " + name).strip()
                    nxt.append(u)
        frontier = nxt
    elements = {SixJLabels.from_twice(*t): w for t, w in words.items()}
    return SymmetryOrbit(frozenset(elements), elements)


def classical_orbit(labels: SixJLabels) -> SymmetryOrbit:
    """The (deduplicated) 24 column permutations and paired row flips."""
    return _closure(labels, _CLASSICAL)


def full_orbit(labels: SixJLabels) -> SymmetryOrbit:
    """Closure of the classical orbit under the Regge transform (order 144 group)."""
    return _closure(labels, _FULL)


def _order_key(labels: SixJLabels):
    return (labels.j1.twice, labels.j2.twice, labels.j3.twice, labels.j.twice, labels.j12.twice, labels.j23.twice)


def canonical_form(labels: SixJLabels) -> SixJLabels:
    """Lexicographically least orbit element under the order (j1, j2, j3, j, j12, j23)."""
    return min(full_orbit(labels).elements, key=_order_key)


DEGENERACY_FLAGS = {
    "B": "j1+j=j2+j3",
    "C": "j1+j2=j3+j",
    "D": "j1+j3=j2+j",
}


def degeneracy_flags(*args) -> frozenset:
    """Which linear-configuration conditions hold.

    B: j1 + j = j2 + j3, C: j1 + j2 = j3 + j, D: j1 + j3 = j2 + j.
    """
    j1, j2, j3, j = (h.twice for h in _outer(args))
    flags = set()
    if j1 + j == j2 + j3:
        flags.add("B")
    if j1 + j2 == j3 + j:
        flags.add("C")
    if j1 + j3 == j2 + j:
        flags.add("D")
    return frozenset(flags)


def degenerate_corners(*args) -> dict:
    """Screen corner (x, y) in J units where each flagged case is collinear.

    B touches the upper-left corner, C the lower-right, D the lower-left.
    """
    outer = _outer(args)
    dom = screen_domain(*outer)
    (xlo, xhi), (ylo, yhi) = dom.x_bounds, dom.y_bounds
    where = {"B": (xlo, yhi), "C": (xhi, ylo), "D": (xlo, ylo)}
    return {f: where[f] for f in sorted(degeneracy_flags(*outer))}


@dataclass(frozen=True)
class PieroCertificate:
    """Why the screen is expected to be mirror-symmetric about x = y.

    ``exact`` is True for the column equalities j1 = j3 and j2 = j, which
    map the symbol onto itself with j12 and j23 exchanged.  The Regge
    self-twin case D is reported with ``exact=False``.
    """

    condition: str
    exact: bool


def piero_axis(*args) -> Optional[PieroCertificate]:
    j1, j2, j3, j = _outer(args)
    if j1 == j3:
        return PieroCertificate("j1=j3", True)
    if j2 == j:
        return PieroCertificate("j2=j", True)
    if "D" in degeneracy_flags(j1, j2, j3, j):
        return PieroCertificate("D: j1+j3=j2+j (Regge self-twin, rho=0)", False)
    return None


def _regge_outer(q):
    t1, t2, t3, t = q
    rho = (t2 + t - t1 - t3) // 2
    return (t1 + rho, t2 - rho, t3 + rho, t - rho)


# Moves on outer quadruples (j1, j2, j3, j) that map a screen onto a screen;
# the flag marks an exchange of the j12 and j23 axes.
_SCREEN_MOVES = (
    (lambda q: (q[1], q[0], q[3], q[2]), False),  # swap columns 1, 2
    (lambda q: (q[2], q[3], q[0], q[1]), False),  # flip columns 1, 2
    (lambda q: (q[2], q[1], q[0], q[3]), True),  # flip columns 1, 3
    (lambda q: (q[0], q[3], q[2], q[1]), True),  # flip columns 2, 3
    (_regge_outer, False),
)


def screen_orbit(j1: HalfLike, j2: HalfLike, j3: HalfLike, j: HalfLike) -> dict:
    """Equivalent screens ``(j1, j2, j3, j)`` mapped to whether their axes are exchanged.

    Only moves that keep j12 and j23 as the screen variables are used.
    """
    seed = tuple(HalfInt.of(v).twice for v in (j1, j2, j3, j))
    seen = {seed: False}
    frontier = [seed]
    while frontier:
        nxt = []
        for q in frontier:
            for move, swaps in _SCREEN_MOVES:
                u = move(q)
                if u not in seen:
                    seen[u] = seen[q] ^ swaps
                    nxt.append(u)
        frontier = nxt
    return {tuple(HalfInt(t) for t in q): flag for q, flag in seen.items()}


def screen_canonical(j1: HalfLike, j2: HalfLike, j3: HalfLike, j: HalfLike) -> tuple:
    """Least equivalent screen ``(j1, j2, j3, j)`` and whether its axes are exchanged.

    The first entry of the result is ``min{J1..J, twin}`` minus 1/2.
    """
    orbit = screen_orbit(j1, j2, j3, j)
    best = min(orbit, key=lambda q: tuple(h.twice for h in q))
    return best, orbit[best]
