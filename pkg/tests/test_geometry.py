import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinscreen import (
    NoRoot,
    NotATriangle,
    OutOfScreen,
    Tetra,
    TetraEdges,
    caustic_mirror_distance,
    classify_point,
    limit_det_ratio,
    sample_caustic,
    sample_ridges,
    threej_caustic_det,
    volume_squared_cm,
    volume_squared_gram,
)
from spinscreen.figures import FIGURES
from spinscreen.geometry import cayley_menger_matrix, chebyshev_nodes, det_exact, triangle_area

FIG1A = FIGURES["1a"]


def embedded_signed_volume(J1, J2, J3, J, J12, J23):
    """Place the four vertices in space from their distances and take the triple product."""
    d01, d02, d03, d12, d13, d23 = J3, J, J23, J12, J2, J1
    p1 = np.array([d01, 0.0, 0.0])
    x2 = (d01**2 + d02**2 - d12**2) / (2 * d01)
    p2 = np.array([x2, math.sqrt(d02**2 - x2**2), 0.0])
    x3 = (d01**2 + d03**2 - d13**2) / (2 * d01)
    y3 = (d03**2 - d23**2 + p2 @ p2 - 2 * x3 * p2[0]) / (2 * p2[1])
    z3 = math.sqrt(d03**2 - x3**2 - y3**2)
    p3 = np.array([x3, y3, z3])
    return float(np.dot(p1, np.cross(p2, p3))) / 6


def test_volume_formulas_agree_at_fig1a_center():
    e = TetraEdges(45.5, 30.5, 55.5, 60.5, 45.5, 55.5)
    v_cm = volume_squared_cm(e)
    v_gram = volume_squared_gram(e)
    v_det = np.linalg.det(np.array(cayley_menger_matrix(e), dtype=float)) / 288
    v_emb = embedded_signed_volume(45.5, 30.5, 55.5, 60.5, 45.5, 55.5)
    assert v_cm > 0
    assert v_gram == pytest.approx(v_cm, rel=1e-12)
    assert v_det == pytest.approx(v_cm, rel=1e-9)
    assert v_emb**2 == pytest.approx(v_cm, rel=1e-9)


@given(st.lists(st.integers(1, 60), min_size=6, max_size=6))
@settings(max_examples=100, deadline=None)
def test_exact_formulas_agree(edges):
    e = TetraEdges(*(Fraction(2 * v + 1, 2) for v in edges))
    cm = volume_squared_cm(e)
    assert isinstance(cm, Fraction)
    assert cm == volume_squared_gram(e) == det_exact(cayley_menger_matrix(e)) / 288


def test_mirror_invariance():
    T = Tetra.from_spins(*FIG1A, exact=True)
    x, y = Fraction(81, 2), Fraction(101, 2)
    v = T.volume_squared(x, y)
    assert T.volume_squared(-x, y) == v == T.volume_squared(x, -y)
    neg = Tetra(-T.J1, -T.J2, T.J3, -T.J)
    assert neg.volume_squared(x, y) == v


def test_triangle_area():
    assert triangle_area(3, 4, 5) == pytest.approx(6)
    assert triangle_area(1, 1, 2) == 0.0
    with pytest.raises(NotATriangle):
        triangle_area(1, 1, 3)


def _argmax_x(T, y, lo, hi):
    # golden section on V^2 along x
    g = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    for _ in range(200):
        c, d = b - g * (b - a), a + g * (b - a)
        if T.volume_squared(c, y) > T.volume_squared(d, y):
            b = d
        else:
            a = c
    return (a + b) / 2


def test_ridge_is_numerical_maximum():
    T = Tetra.from_spins(*FIG1A)
    for y in (30.0, 55.5, 80.0):
        assert T.ridge_x(y) == pytest.approx(_argmax_x(T, y, 15, 76), rel=1e-7)


def test_ridge_stationary():
    T = Tetra.from_spins(*FIG1A)
    for y in np.linspace(26, 85, 12):
        x = T.ridge_x(y)
        assert abs(T.dV2_dx(x, y)) < 1e-9 * T.scale
        h = 1e-4
        fd = (T.volume_squared(x + h, y) - T.volume_squared(x - h, y)) / (2 * h)
        assert abs(fd) < 1e-6 * T.scale


def test_fig6_ridge_closed_form():
    T = Tetra.from_spins(100, 100, 100, 100)
    J0 = 100.5
    for y in (10.0, 80.0, 150.0):
        assert T.ridge_x(y) == pytest.approx(math.sqrt((4 * J0**2 - y**2) / 2), rel=1e-13)
    d = 2 * J0 / math.sqrt(3)
    assert d == pytest.approx(116.05, abs=5e-3)
    assert T.ridge_x(d) == pytest.approx(d, rel=1e-12)


def test_vmax_matches_ridge_volume():
    T = Tetra.from_spins(*FIG1A)
    y = 55.5
    assert T.vmax_along_x(y) == pytest.approx(math.sqrt(T.volume_squared(T.ridge_x(y), y)), rel=1e-12)
    x = 45.5
    assert T.vmax_along_y(x) == pytest.approx(math.sqrt(T.volume_squared(x, T.ridge_y(x))), rel=1e-12)


def test_caustic_root_ordering_and_residual():
    T = Tetra.from_spins(*FIG1A)
    roots, tangent = T.caustic_roots_x(55.5)
    assert not tangent and len(roots) == 2
    assert roots[0] < T.ridge_x(55.5) < roots[1]
    for r in roots:
        assert abs(T.volume_squared(r, 55.5)) < 1e-9 * T.scale


def test_fig1a_top_tangency_against_bisection():
    T = Tetra.from_spins(*FIG1A)
    roots, tangent = T.caustic_roots_x(86)
    assert tangent and len(roots) == 1
    lo, hi = 20.0, 40.0
    assert T.dV2_dx(lo, 86) > 0 > T.dV2_dx(hi, 86)
    for _ in range(200):
        mid = (lo + hi) / 2
        if T.dV2_dx(mid, 86) > 0:
            lo = mid
        else:
            hi = mid
    assert abs(roots[0] - lo) < 1e-6
    assert lo == pytest.approx(30.68217, abs=1e-5)
    assert abs(T.volume_squared(lo, 86)) < 1e-9 * T.scale


def test_no_root_outside():
    T = Tetra.from_spins(*FIG1A)
    with pytest.raises((NoRoot, OutOfScreen)):
        T.caustic_roots_x(200)


@pytest.mark.parametrize("name", sorted(FIGURES))
def test_sampled_caustic(name):
    quad = FIGURES[name]
    T = Tetra.from_spins(*quad)
    c = sample_caustic(*quad, n_points=500)
    assert c.closed and c.gaps == 0 and len(c) > 400
    res = np.abs([T.volume_squared(x, y) for x, y in c.points])
    assert res.max() < 1e-9 * T.scale
    assert c.points[0][1] == pytest.approx(c.points[-1][1], abs=1e-6) or c.points[0][1] <= c.points[-1][1]


@pytest.mark.parametrize("name", sorted(FIGURES))
def test_sampled_ridges(name):
    quad = FIGURES[name]
    T = Tetra.from_spins(*quad)
    rx, ry = sample_ridges(*quad, n_points=100)
    for x, y in rx.points:
        assert abs(T.dV2_dx(x, y)) < 1e-6 * T.scale
    for x, y in ry.points:
        assert abs(T.dV2_dy(x, y)) < 1e-6 * T.scale


def test_chebyshev_nodes():
    n = chebyshev_nodes(0.0, 1.0, 5)
    assert n[0] == 0.0 and n[-1] == 1.0 and np.all(np.diff(n) > 0)


def test_classify_points():
    ridge_cross = classify_point(45.5, 55.5, *FIG1A)
    assert ridge_cross.region == "classical_inside"
    corner = classify_point(16, 26, *FIG1A)
    assert (corner.region, corner.quadrilateral) == ("forbidden_outside", "crossed")
    T = Tetra.from_spins(*FIG1A)
    r = T.caustic_roots_x(55.5)[0][1]
    assert classify_point(r, 55.5, *FIG1A).region == "flat_on_caustic"
    assert classify_point(75.5, 85.5, *FIG1A).quadrilateral == "convex"


def test_mirror_distance():
    assert caustic_mirror_distance(100, 100, 100, 100) < 1e-9
    assert caustic_mirror_distance(100, 150, 100, 210) < 1e-9
    assert caustic_mirror_distance(100, 100, 150, 210) > 1


def test_threej_caustic_det_is_area():
    # sides squared 2, 3, 4
    d = threej_caustic_det(Fraction(3, 2), Fraction(3, 2), 2, Fraction(1, 2), Fraction(-5, 2))
    a, b, c = Fraction(9, 4) - Fraction(1, 4), Fraction(9, 4) - Fraction(25, 4), 4 - 4
    assert d == -(2 * a * b + 2 * b * c + 2 * c * a - a * a - b * b - c * c)


def test_limit_determinant_tends_to_minus_det4():
    J = (Fraction(5, 2), Fraction(5, 2), Fraction(7, 2))
    L = (Fraction(3, 2), Fraction(3, 2), Fraction(5, 2))
    m1, m2 = L[2] - L[1], L[0] - L[2]
    det4 = threej_caustic_det(*J, m1, m2)
    assert det4 < 0
    prev = None
    for R in (10**2, 10**4, 10**6):
        dev = abs(limit_det_ratio(*J, *L, R) / det4 + 1)
        if prev is not None:
            assert dev < prev
        prev = dev
    assert prev < 1e-3
