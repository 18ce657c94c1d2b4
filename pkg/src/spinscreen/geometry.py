"""
Geometry of the tetrahedron attached to ``{j1 j2 j12; j3 j j23}``.

Edges are the continuous lengths ``J = j + 1/2``.  The six edges sit on
vertices 0..3 as::

    d01 = J3   d02 = J    d03 = J23
    d12 = J12  d13 = J2   d23 = J1

so opposite pairs are (J1, J3), (J2, J) and (J12, J23), and the four faces
are the four triads of the symbol.  On the screen ``x = J12`` and
``y = J23``.

Scalar functions accept floats, numpy arrays or Fractions.  Fractions go
through the same polynomial expressions, which makes them exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .angular import HalfLike, HalfInt, screen_domain
from .errors import NoRoot, NotATriangle, OutOfScreen


@dataclass(frozen=True)
class TetraEdges:
    J1: object
    J2: object
    J3: object
    J: object
    J12: object
    J23: object

    def squares(self):
        return tuple(v * v for v in (self.J1, self.J2, self.J3, self.J, self.J12, self.J23))


def cayley_menger_matrix(e: TetraEdges):
    """Bordered 5x5 matrix of squared distances (vertex order 0..3)."""
    s1, s2, s3, s, s12, s23 = e.squares()
    return [
        [0, s3, s, s23, 1],
        [s3, 0, s12, s2, 1],
        [s, s12, 0, s1, 1],
        [s23, s2, s1, 0, 1],
        [1, 1, 1, 1, 0],
    ]


def det_exact(rows) -> Fraction:
    """Determinant of a square matrix of rationals by fraction-exact elimination."""
    a = [[Fraction(v) for v in row] for row in rows]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / a[k][k]
                for jj in range(k, n):
                    a[i][jj] -= f * a[k][jj]
    return det


def _cm_polynomial(a1, a2, a3, a4, a5, a6):
    """288 V**2 expanded; (a1,a4), (a2,a5), (a3,a6) are opposite squared edges."""
    return 2 * (
        a1 * a4 * (a2 + a3 + a5 + a6 - a1 - a4)
        + a2 * a5 * (a1 + a3 + a4 + a6 - a2 - a5)
        + a3 * a6 * (a1 + a2 + a4 + a5 - a3 - a6)
        - a1 * a2 * a6
        - a2 * a3 * a4
        - a3 * a1 * a5
        - a4 * a5 * a6
    )


def volume_squared_cm(e: TetraEdges):
    """Squared volume from the Cayley-Menger determinant.

    The determinant is expanded symbolically, so Fraction edges give an
    exact result and numpy arrays broadcast.  Negative values signal
    configurations with no Euclidean realisation.
    """
    s1, s2, s3, s, s12, s23 = e.squares()
    # vertices O=0, A=1, B=2, C=3: OA=J3, OB=J, OC=J23, BC=J1, CA=J2, AB=J12
    return _cm_polynomial(s3, s, s23, s1, s2, s12) / 288


def volume_squared_gram(e: TetraEdges):
    """Squared volume as det(G)/36 with G the Gram matrix of edges from vertex 0."""
    s1, s2, s3, s, s12, s23 = e.squares()
    # vectors u=0->1, v=0->2, w=0->3
    uu, vv, ww = s3, s, s23
    uv = (s3 + s - s12) / 2
    uw = (s3 + s23 - s2) / 2
    vw = (s + s23 - s1) / 2
    det = uu * (vv * ww - vw * vw) - uv * (uv * ww - vw * uw) + uw * (uv * vw - vv * uw)
    return det / 36


def triangle_area(a, b, c, tol=1e-12):
    """Heron area; tiny negative radicands (relative ``tol``) count as flat."""
    prod = (a + b + c) * (a + b - c) * (a - b + c) * (-a + b + c)
    scale = max(abs(a), abs(b), abs(c)) ** 4
    if prod < 0:
        if prod < -tol * scale:
            raise NotATriangle(f"({a}, {b}, {c}) violates the triangle inequality")
        return 0.0
    return math.sqrt(prod) / 4


def _area_over(a, b, y):
    """F(a, b, y) / y, finite at y = 0 when |a| = |b|."""
    a, b = abs(a), abs(b)
    if y == 0:
        if a != b:
            raise OutOfScreen("degenerate face at y = 0")
        return a / 2
    outer = (a + b) ** 2 - y * y
    inner = y * y - (a - b) ** 2
    prod = outer * inner
    if prod < 0:
        if prod < -1e-12 * max(a + b, y) ** 4:
            raise OutOfScreen(f"face ({a}, {b}, {y}) is not a triangle")
        return 0.0
    return math.sqrt(prod) / (4 * y)


@dataclass(frozen=True)
class Tetra:
    """Outer edges (J1, J2, J3, J) with the screen functions of x = J12, y = J23."""

    J1: float
    J2: float
    J3: float
    J: float

    @classmethod
    def from_spins(cls, j1: HalfLike, j2: HalfLike, j3: HalfLike, j: HalfLike, exact=False) -> "Tetra":
        edges = [HalfInt.of(v).edge for v in (j1, j2, j3, j)]
        return cls(*(edges if exact else map(float, edges)))

    @property
    def Jt2(self):
        return self.J1**2 + self.J2**2 + self.J3**2 + self.J**2

    @property
    def scale(self) -> float:
        """(max outer edge)**6, the natural size of V**2."""
        return float(max(abs(self.J1), abs(self.J2), abs(self.J3), abs(self.J))) ** 6

    def edges(self, x, y) -> TetraEdges:
        return TetraEdges(self.J1, self.J2, self.J3, self.J, x, y)

    def volume_squared(self, x, y):
        return volume_squared_cm(self.edges(x, y))

    def dV2_dx(self, x, y) -> float:
        """Partial derivative of V**2 in x (complex step, exact to roundoff)."""
        h = 1e-30
        return float(volume_squared_cm(self.edges(complex(x, h), complex(y))).imag / h)

    def dV2_dy(self, x, y) -> float:
        h = 1e-30
        return float(volume_squared_cm(self.edges(complex(x), complex(y, h))).imag / h)

    # -- ridges ---------------------------------------------------------

    def ridge_x_squared(self, y):
        """x**2 maximising V**2 at fixed y."""
        A = (self.J1**2 - self.J**2) * (self.J3**2 - self.J2**2)
        if y == 0:
            if A != 0:
                raise OutOfScreen("ridge undefined at y = 0")
            return self.Jt2 / 2
        y2 = y * y
        return (A + self.Jt2 * y2 - y2 * y2) / (2 * y2)

    def ridge_y_squared(self, x):
        A = (self.J1**2 - self.J2**2) * (self.J3**2 - self.J**2)
        if x == 0:
            if A != 0:
                raise OutOfScreen("ridge undefined at x = 0")
            return self.Jt2 / 2
        x2 = x * x
        return (A + self.Jt2 * x2 - x2 * x2) / (2 * x2)

    def ridge_x(self, y) -> float:
        r = self.ridge_x_squared(y)
        if r < 0:
            raise OutOfScreen(f"ridge radicand {float(r):.6g} < 0 at y = {float(y)}")
        return math.sqrt(r)

    def ridge_y(self, x) -> float:
        r = self.ridge_y_squared(x)
        if r < 0:
            raise OutOfScreen(f"ridge radicand {float(r):.6g} < 0 at x = {float(x)}")
        return math.sqrt(r)

    # -- constrained maxima ---------------------------------------------

    def vmax_along_x(self, y) -> float:
        """Largest volume over x at fixed y: 2 F(J1,J,y) F(J2,J3,y) / (3y)."""
        return 2 * y * _area_over(self.J1, self.J, y) * _area_over(self.J2, self.J3, y) / 3

    def vmax_along_y(self, x) -> float:
        return 2 * x * _area_over(self.J1, self.J2, x) * _area_over(self.J, self.J3, x) / 3

    # -- caustics -------------------------------------------------------

    def _caustic_half_gap(self, v, a, b, c, d):
        # 12 Vmax / v = 8 F(a,b,v) F(c,d,v) / v**2
        return 8 * _area_over(a, b, v) * _area_over(c, d, v)

    def caustic_roots_x(self, y):
        """Roots of V**2 = 0 in x at fixed y, ascending.

        Returns ``(roots, tangent)``; ``tangent`` is True when the two roots
        coincide (the line touches the caustic).
        """
        center = float(self.ridge_x_squared(y))
        gap = self._caustic_half_gap(y, self.J1, self.J, self.J2, self.J3)
        return _pick_roots(center, gap, y, float(self.Jt2) + float(y) ** 2)

    def caustic_roots_y(self, x):
        center = float(self.ridge_y_squared(x))
        gap = self._caustic_half_gap(x, self.J1, self.J2, self.J, self.J3)
        return _pick_roots(center, gap, x, float(self.Jt2) + float(x) ** 2)


def _pick_roots(center, gap, where, size):
    # center cancels terms of order ``size``; tolerate that much roundoff
    hi, lo = center + gap, center - gap
    tol = 1e-10 * size
    if hi < -tol:
        raise NoRoot(f"no caustic root at {float(where)}")
    roots = [math.sqrt(max(hi, 0.0))]
    tangent = gap <= tol
    if tangent:
        return roots, True
    if lo >= -tol:
        roots.insert(0, math.sqrt(max(lo, 0.0)))
    return roots, False


# -- curves on the screen --------------------------------------------------


@dataclass(frozen=True)
class CurveSample:
    """Polyline on the screen in J units.

    ``branch[i]`` tags point ``i`` ("minus" or "plus" root of the defining
    quadratic); ``closed`` means the last point connects back to the first.
    """

    kind: str
    points: np.ndarray = field(repr=False)
    branch: tuple = field(repr=False)
    closed: bool = False
    flags: frozenset = frozenset()
    gaps: int = 0

    def __len__(self):
        return len(self.points)


def _screen_box(j1, j2, j3, j):
    dom = screen_domain(j1, j2, j3, j)
    (xlo, xhi), (ylo, yhi) = dom.x_bounds, dom.y_bounds
    return float(xlo), float(xhi), float(ylo), float(yhi)


def chebyshev_nodes(lo: float, hi: float, n: int) -> np.ndarray:
    """n ascending Chebyshev-Lobatto points on [lo, hi], endpoints included."""
    k = np.arange(n)
    nodes = (lo + hi) / 2 - (hi - lo) / 2 * np.cos(np.pi * k / (n - 1))
    nodes[0], nodes[-1] = lo, hi
    return nodes


def _clip(v, lo, hi, what):
    span = hi - lo
    if v < lo - 1e-9 * span or v > hi + 1e-9 * span:
        raise OutOfScreen(f"{what} = {v} outside [{lo}, {hi}]")
    return min(max(v, lo), hi)


def sample_caustic(j1, j2, j3, j, n_points: int = 400) -> CurveSample:
    """Closed V = 0 curve: the minus roots upward in y, then the plus roots back down.

    Nodes cluster at the bottom and top edges, where the curve is tangent
    to the screen and the two roots merge.
    """
    from .symmetry import degeneracy_flags

    T = Tetra.from_spins(j1, j2, j3, j)
    xlo, xhi, ylo, yhi = _screen_box(j1, j2, j3, j)
    ys = chebyshev_nodes(ylo, yhi, max(n_points // 2, 2))
    minus, plus, gaps = [], [], 0
    for y in ys:
        try:
            roots, tangent = T.caustic_roots_x(y)
        except (NoRoot, OutOfScreen):
            gaps += 1
            continue
        x_hi = _clip(roots[-1], xlo, xhi, "caustic x")
        if tangent:
            minus.append((x_hi, y))
            continue
        plus.append((x_hi, y))
        if len(roots) == 2:
            minus.append((_clip(roots[0], xlo, xhi, "caustic x"), y))
        else:
            gaps += 1
    pts = minus + [p for p in reversed(plus)]
    # a tangency shared by both branches appears once
    dedup = [pts[0]] if pts else []
    for p in pts[1:]:
        if p != dedup[-1]:
            dedup.append(p)
    branch = tuple(["minus"] * len(minus) + ["plus"] * (len(dedup) - len(minus)))
    return CurveSample("caustic", np.array(dedup), branch, True, degeneracy_flags(j1, j2, j3, j), gaps)


def sample_ridges(j1, j2, j3, j, n_points: int = 200) -> tuple:
    """Ridge curves ``(x_Vmax(y), y)`` and ``(x, y_Vmax(x))`` clipped to the screen."""
    from .symmetry import degeneracy_flags

    T = Tetra.from_spins(j1, j2, j3, j)
    xlo, xhi, ylo, yhi = _screen_box(j1, j2, j3, j)
    flags = degeneracy_flags(j1, j2, j3, j)
    out = []
    for kind, lo, hi, cross_lo, cross_hi, fn in (
        ("ridge_x", ylo, yhi, xlo, xhi, T.ridge_x),
        ("ridge_y", xlo, xhi, ylo, yhi, T.ridge_y),
    ):
        pts, gaps = [], 0
        for t in chebyshev_nodes(lo, hi, max(n_points, 2)):
            try:
                r = fn(t)
            except OutOfScreen:
                gaps += 1
                continue
            if not cross_lo <= r <= cross_hi:
                gaps += 1
                continue
            pts.append((r, t) if kind == "ridge_x" else (t, r))
        out.append(CurveSample(kind, np.array(pts).reshape(-1, 2), ("plus",) * len(pts), False, flags, gaps))
    return tuple(out)


@dataclass(frozen=True)
class ConfigClass:
    region: str  # classical_inside | flat_on_caustic | forbidden_outside
    quadrilateral: str  # convex | concave | crossed


def classify_point(x, y, j1, j2, j3, j, tol: float = 1e-9) -> ConfigClass:
    """Sign of V**2 at (x, y), and the flattened-quadrilateral type by ridge quadrant.

    Beyond the ridge in both x and y the flattened quadrilateral is convex,
    beyond exactly one it is concave, below both it is crossed.
    """
    T = Tetra.from_spins(j1, j2, j3, j)
    v2 = float(T.volume_squared(x, y))
    if abs(v2) <= tol * T.scale:
        region = "flat_on_caustic"
    elif v2 > 0:
        region = "classical_inside"
    else:
        region = "forbidden_outside"
    # a negative ridge radicand puts the ridge at imaginary x: everything is beyond it
    above_x = x * x > T.ridge_x_squared(y)
    above_y = y * y > T.ridge_y_squared(x)
    quad = {2: "convex", 1: "concave", 0: "crossed"}[int(above_x) + int(above_y)]
    return ConfigClass(region, quad)


# -- 3j caustic ------------------------------------------------------------


def _exact(v):
    return v if isinstance(v, Fraction) else Fraction(v)


def threej_caustic_det(J1, J2, J3, m1, m2) -> Fraction:
    """Bordered 4x4 determinant with entries ``Ji**2 - mi**2``, ``m3 = -m1 - m2``.

    It equals ``-16 A**2`` for the triangle with squared sides
    ``Ji**2 - mi**2``, so it is negative in the classically allowed region
    and zero on the 3j caustic.  Evaluated exactly.
    """
    J1, J2, J3, m1, m2 = map(_exact, (J1, J2, J3, m1, m2))
    m3 = -m1 - m2
    a, b, c = J1 * J1 - m1 * m1, J2 * J2 - m2 * m2, J3 * J3 - m3 * m3
    return det_exact([[0, a, b, 1], [a, 0, c, 1], [b, c, 0, 1], [1, 1, 1, 0]])


def limit_det_ratio(J1, J2, J3, L1, L2, L3, R) -> Fraction:
    """Cayley-Menger determinant with apex distances ``Li + R``, divided by ``2 R**2``.

    Exact rational arithmetic; at large R float cancellation would destroy
    every digit.
    """
    J1, J2, J3, L1, L2, L3, R = map(_exact, (J1, J2, J3, L1, L2, L3, R))
    if R <= 0:
        raise ValueError("R must be positive")
    a1, a2, a3 = (L1 + R) ** 2, (L2 + R) ** 2, (L3 + R) ** 2
    s1, s2, s3 = J1 * J1, J2 * J2, J3 * J3
    det5 = det_exact([
        [0, a1, a2, a3, 1],
        [a1, 0, s3, s2, 1],
        [a2, s3, 0, s1, 1],
        [a3, s2, s1, 0, 1],
        [1, 1, 1, 1, 0],
    ])
    return det5 / (2 * R * R)


def _distance_to_caustic(T: Tetra, x: float, y: float, samples: np.ndarray) -> float:
    """Upper bound on the distance from (x, y) to V = 0.

    Uses the roots on the point's row and column and the nearest sampled
    curve point, all of which lie on the caustic.
    """
    best = float(np.min(np.hypot(samples[:, 0] - x, samples[:, 1] - y)))
    for solve, fixed, free in ((T.caustic_roots_x, y, x), (T.caustic_roots_y, x, y)):
        try:
            roots, _ = solve(fixed)
        except (NoRoot, OutOfScreen):
            continue
        best = min([best] + [abs(r - free) for r in roots])
    return best


def caustic_mirror_distance(j1, j2, j3, j, n_points: int = 400) -> float:
    """Hausdorff distance between the caustic and its reflection in x = y.

    Each sampled point is reflected and its distance to the caustic is
    bounded from above; reflection is an isometric involution, so the
    largest such bound bounds the Hausdorff distance.
    """
    T = Tetra.from_spins(j1, j2, j3, j)
    pts = sample_caustic(j1, j2, j3, j, n_points).points
    return max(_distance_to_caustic(T, float(y), float(x), pts) for x, y in pts)
