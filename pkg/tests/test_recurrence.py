import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinscreen import (
    EmptyDomain,
    HalfInt,
    SixJLabels,
    build_screen,
    orthonormality_defect,
    screen_domain,
    sixj_column,
    sixj_exact,
    transpose_defect,
)


def exact_grid(j1, j2, j3, j):
    dom = screen_domain(j1, j2, j3, j)
    return np.array(
        [[float(sixj_exact(SixJLabels(j1, j2, x, j3, j, y))) for y in dom.j23_values()] for x in dom.j12_values()]
    )


def rel_err(got, ref, floor=1e-12):
    mask = np.abs(ref) > floor
    return float(np.max(np.abs(got - ref)[mask] / np.abs(ref[mask])))


def test_fig1a_column_matches_exact():
    col = sixj_column(45, 30, 55, 60, 60)
    dom = screen_domain(45, 30, 55, 60)
    ref = np.array([float(sixj_exact(SixJLabels(45, 30, x, 55, 60, 60))) for x in dom.j12_values()])
    assert rel_err(col, ref) < 1e-10


def test_fig1a_screen_matches_exact():
    s = build_screen(45, 30, 55, 60)
    assert s.values.shape == (61, 61)
    assert rel_err(s.values, exact_grid(45, 30, 55, 60)) < 1e-10
    assert s.value(15, 25) == s.values[0, 0]


def test_fig6_screen_unitary():
    s = build_screen(100, 100, 100, 100)
    assert s.values.shape == (201, 201)
    assert orthonormality_defect(s, "columns") < 1e-10
    assert orthonormality_defect(s, "rows") < 1e-10
    assert np.max(s.column_defect) < 1e-10


def test_seeded_start_at_zero():
    # j12_min = 0 needs the exactly seeded first step
    s = build_screen(5, 5, 7, 7)
    assert int(s.domain.j12_min) == 0
    assert rel_err(s.values, exact_grid(5, 5, 7, 7)) < 1e-10


def test_half_integer_screen():
    s = build_screen("31/2", 20, "41/2", 25)
    assert rel_err(s.values, exact_grid("31/2", 20, "41/2", 25)) < 1e-10


def test_single_point_screen():
    s = build_screen(3, 0, 2, 5)
    assert s.values.shape == (1, 1)
    assert s.values[0, 0] == pytest.approx(float(sixj_exact(SixJLabels(3, 0, 3, 2, 5, 2))))


def test_threads_give_identical_values(monkeypatch):
    one = build_screen(60, 45, 70, 55, threads=1)
    four = build_screen(60, 45, 70, 55, threads=4)
    assert np.array_equal(one.values, four.values)
    monkeypatch.setenv("SPINSCREEN_THREADS", "3")
    env = build_screen(60, 45, 70, 55)
    assert np.array_equal(one.values, env.values)


def test_values_read_only():
    s = build_screen(2, 2, 2, 2)
    with pytest.raises(ValueError):
        s.values[0, 0] = 1.0


def test_empty_domain():
    with pytest.raises(EmptyDomain):
        build_screen(1, 1, 1, 5)


def test_column_outside_screen():
    with pytest.raises(ValueError):
        sixj_column(45, 30, 55, 60, 10)


def test_transpose_defect_symmetric_case():
    assert transpose_defect(build_screen(100, 150, 100, 210)) < 1e-15


def test_large_screen_runs():
    s = build_screen(1000, 1000, 100, 100)
    assert s.values.shape == (201, 201)
    assert orthonormality_defect(s) < 1e-10
    # spot check against the exact sum
    for a, b in [(0, 0), (100, 100), (200, 37), (17, 200)]:
        x, y = s.domain.j12_values()[a], s.domain.j23_values()[b]
        ref = float(sixj_exact(SixJLabels(1000, 1000, x, 100, 100, y)))
        assert s.values[a, b] == pytest.approx(ref, rel=1e-10, abs=1e-300)


@given(st.lists(st.integers(0, 50), min_size=4, max_size=4))
@settings(max_examples=40, deadline=None)
def test_random_screens_match_exact(tw):
    spins = [HalfInt(t) for t in tw]
    try:
        screen_domain(*spins)
    except EmptyDomain:
        return
    s = build_screen(*spins)
    ref = exact_grid(*spins)
    if np.any(np.abs(ref) > 1e-12):
        assert rel_err(s.values, ref) < 1e-10
    assert orthonormality_defect(s) < 1e-12
