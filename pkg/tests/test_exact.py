import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Rational
from sympy.physics.wigner import wigner_3j, wigner_6j

from spinscreen import (
    ExactRadical,
    HalfInt,
    InvalidSchedule,
    OracleRangeExceeded,
    SixJLabels,
    ThreeJLabels,
    exact_unitarity_defect,
    limit_ls_from_fd,
    sixj,
    sixj_exact,
    sixj_oracle_cg,
    threej_exact,
    threej_limit_estimate,
)
from spinscreen.exact import MAX_TWICE


def _sym(h: HalfInt):
    return Rational(h.twice, 2)


def _as_sympy(v: ExactRadical):
    from sympy import sqrt

    return Rational(v.r.numerator, v.r.denominator) * sqrt(v.d)


# -- ExactRadical ------------------------------------------------------------


def test_radical_normalisation():
    v = ExactRadical.from_parts(Fraction(1, 2), 12)  # sqrt(12)/2 = sqrt(3)
    assert (v.r, v.d) == (1, 3)
    w = ExactRadical.from_parts(1, Fraction(1, 2))  # sqrt(1/2) = sqrt(2)/2
    assert (w.r, w.d) == (Fraction(1, 2), 2)
    assert ExactRadical.from_parts(0, 5) == ExactRadical(Fraction(0), 1)


def test_radical_arithmetic():
    a = ExactRadical(Fraction(2, 3), 6)
    b = ExactRadical(Fraction(1, 5), 10)
    p = a * b  # 2/15 sqrt(60) = 4/15 sqrt(15)
    assert (p.r, p.d) == (Fraction(4, 15), 15)
    assert (a + a).r == Fraction(4, 3)
    assert (a + (-a)).is_zero
    with pytest.raises(ValueError):
        a + b
    assert a.square() == Fraction(8, 3)
    assert math.isclose(float(a), 2 / 3 * math.sqrt(6), rel_tol=1e-15)


def test_radical_decimal():
    v = ExactRadical(Fraction(1, 3))
    assert v.decimal_str(30) == "0." + "3" * 30
    assert str(v) == "1/3 * sqrt(1)"


# -- 6j ----------------------------------------------------------------------


@pytest.mark.parametrize(
    "labels, expected",
    [
        ((2, 1, 1, 0, 1, 1), ExactRadical(Fraction(1, 3))),
        ((1, 1, 1, 1, 1, 1), ExactRadical(Fraction(1, 6))),
        (("1/2", "1/2", 1, "1/2", "1/2", 1), ExactRadical(Fraction(1, 6))),
        ((1, 1, 3, 1, 1, 1), ExactRadical(Fraction(0))),
    ],
)
def test_sixj_known_values(labels, expected):
    assert sixj_exact(SixJLabels(*labels)) == expected


def test_sixj_exhaustive_against_sympy_small():
    """Every symbol with 2j <= 6, compared with sympy's Racah formula exactly."""
    count = 0
    for tw in itertools.product(range(7), repeat=6):
        lab = SixJLabels.from_twice(*tw)
        if not lab.is_valid():
            continue
        ours = _as_sympy(sixj_exact(lab))
        ref = wigner_6j(*(_sym(h) for h in lab.as_tuple()))
        assert (ours - ref).equals(0), lab
        count += 1
    assert count > 1000


@given(st.lists(st.integers(0, 12), min_size=6, max_size=6))
@settings(max_examples=200, deadline=None)
def test_sixj_matches_contraction_oracle(tw):
    lab = SixJLabels.from_twice(*tw)
    assert sixj_exact(lab) == sixj_oracle_cg(lab)


def test_oracle_guard():
    with pytest.raises(OracleRangeExceeded):
        sixj_oracle_cg(SixJLabels(11, 11, 11, 11, 11, 11))


@given(st.lists(st.integers(0, 60), min_size=6, max_size=6))
@settings(max_examples=100, deadline=None)
def test_sixj_invariant_under_column_permutation_and_row_flip(tw):
    a, b, c, d, e, f = tw
    ref = sixj_exact(SixJLabels.from_twice(a, b, c, d, e, f))
    assert sixj_exact(SixJLabels.from_twice(b, a, c, e, d, f)) == ref
    assert sixj_exact(SixJLabels.from_twice(a, c, b, d, f, e)) == ref
    assert sixj_exact(SixJLabels.from_twice(d, e, c, a, b, f)) == ref


def test_sixj_large_spins_float_consistency():
    # orthonormality of a column at j ~ 300 through exact values
    j1, j2, j3, j, j23 = 300, 250, 280, 270, 200
    total = Fraction(0)
    for x in range(max(abs(j1 - j2), abs(j3 - j)), min(j1 + j2, j3 + j) + 1):
        total += (2 * x + 1) * (2 * j23 + 1) * sixj_exact(SixJLabels(j1, j2, x, j3, j, j23)).square()
    assert total == 1


def test_sixj_cap():
    big = MAX_TWICE // 2 + 1
    with pytest.raises(ValueError):
        sixj_exact(SixJLabels(big, big, big, big, big, big))


def test_sixj_float_helper():
    assert sixj(1, 1, 1, 1, 1, 1) == pytest.approx(1 / 6, rel=1e-15)


@pytest.mark.parametrize("quad", [(1, 1, 1, 1), ("3/2", 2, "5/2", 1), (4, 3, 4, 3), (2, "1/2", "5/2", 3)])
def test_exact_unitarity(quad):
    assert exact_unitarity_defect(*quad) == 0.0


# -- 3j ----------------------------------------------------------------------


@pytest.mark.parametrize(
    "labels, square",
    [
        ((1, 1, 2, 0, 0, 0), Fraction(2, 15)),
        ((3, 3, 0, 1, -1, 0), Fraction(1, 7)),
    ],
)
def test_threej_known(labels, square):
    v = threej_exact(ThreeJLabels(*labels))
    assert v.square() == square and v.sign() == 1


def test_threej_against_sympy():
    for tw in itertools.product(range(5), repeat=3):
        for u1, u2 in itertools.product(range(-4, 5), repeat=2):
            lab = ThreeJLabels(*(HalfInt(t) for t in tw), HalfInt(u1), HalfInt(u2), HalfInt(-u1 - u2))
            ref = wigner_3j(*(Rational(t, 2) for t in (*tw, u1, u2, -u1 - u2)))
            assert (_as_sympy(threej_exact(lab)) - ref).equals(0), lab


def test_threej_selection_zero():
    assert threej_exact(ThreeJLabels(1, 1, 1, 0, 0, 0)).is_zero  # odd sum with m = 0
    assert threej_exact(ThreeJLabels(1, 1, 1, 1, 1, 0)).is_zero  # m sum nonzero


# -- 3j limit ----------------------------------------------------------------


def test_limit_value_converges():
    tj, rows = threej_limit_estimate(1, 1, 2, 1, 1, 1, [10, 20, 40, 80, 160])
    assert tj.square() == Fraction(2, 15)
    errs = [r.abs_error for r in rows]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert rows[3].abs_error == pytest.approx(2.27e-3, rel=1e-2)
    # error halves with R
    assert errs[-2] / errs[-1] == pytest.approx(2, rel=0.05)


def test_limit_zero_threej():
    tj, rows = threej_limit_estimate(1, 1, 1, 0, 0, 0, [10, 20, 40])
    assert tj.is_zero
    assert all(r.sign_ratio == 0 for r in rows)


def test_limit_schedule_validation():
    with pytest.raises(InvalidSchedule):
        threej_limit_estimate(1, 1, 2, 1, 1, 1, [20, 10])


def test_limit_ls_from_fd():
    l1, l2, l3 = limit_ls_from_fd(3, 1)
    assert (l3 - l2, l1 - l3) == (HalfInt.of(4), HalfInt.of(2))


def test_decimal_matches_float():
    rng = np.random.default_rng(5)
    for _ in range(50):
        tw = rng.integers(0, 40, 6)
        v = sixj_exact(SixJLabels.from_twice(*map(int, tw)))
        assert float(v) == float(v.decimal_str(40))
