"""
Whole 6j screens from the three-term recurrence in j12.

For fixed (j1, j2, j3, j, j23) the column f(x) = {j1 j2 x; j3 j j23}
satisfies::

    x E(x+1) f(x+1) + F(x) f(x) + (x+1) E(x) f(x-1) = 0

E does not depend on j23 and F is affine in j23(j23+1), so all columns of a
screen are advanced together as one numpy vector.  Each column is run
forward from j12_min and backward from j12_max; the two runs are glued at
the first maximum of the forward run, where both are still accurate,
normalised by unitarity and given the sign of the exact value at j12_max.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .angular import HalfInt, HalfLike, ScreenDomain, SixJLabels, screen_domain
from .errors import RecurrenceBreakdown
from .exact import sixj_exact

_BIG = 1e200


def _E(x, j1, j2, j3, j):
    val = (x * x - (j1 - j2) ** 2) * ((j1 + j2 + 1) ** 2 - x * x) * (x * x - (j3 - j) ** 2) * ((j3 + j + 1) ** 2 - x * x)
    return math.sqrt(max(val, 0.0))


def _F(x, j1, j2, j3, j, l23):
    """F(x) for every j23 in the vector ``l23 = j23 (j23 + 1)``."""
    xx = x * (x + 1)
    a1, a2, a3, a = j1 * (j1 + 1), j2 * (j2 + 1), j3 * (j3 + 1), j * (j + 1)
    base = xx * (-xx + a1 + a2) + a3 * (xx + a1 - a2) + a * (xx - a1 + a2)
    return (2 * x + 1) * (base - 2 * xx * l23)


def _rescale(f, k, cols):
    """Keep |f| below _BIG by scaling the computed rows of overflowing columns."""
    big = np.abs(f[k, cols]) > _BIG
    if big.any():
        idx = cols[big]
        f[:, idx] /= _BIG


def _forward(xs, js, l23, seed_ratio=None):
    n, m = len(xs), len(l23)
    f = np.zeros((n, m))
    f[0] = 1.0
    cols = np.arange(m)
    for k in range(n - 1):
        x = xs[k]
        if x == 0:
            # x E(x+1) vanishes at x = 0; the step comes from exact values
            f[1] = seed_ratio
        else:
            prev = f[k - 1] if k else 0.0
            f[k + 1] = -(_F(x, *js, l23) * f[k] + (x + 1) * _E(x, *js) * prev) / (x * _E(x + 1, *js))
        _rescale(f, k + 1, cols)
    return f


def _backward(xs, js, l23):
    n, m = len(xs), len(l23)
    g = np.zeros((n, m))
    g[n - 1] = 1.0
    cols = np.arange(m)
    for k in range(n - 1, 0, -1):
        x = xs[k]
        nxt = g[k + 1] if k + 1 < n else 0.0
        g[k - 1] = -(x * _E(x + 1, *js) * nxt + _F(x, *js, l23) * g[k]) / ((x + 1) * _E(x, *js))
        _rescale(g, k - 1, cols)
    return g


def _first_peak(col):
    a = np.abs(col)
    for k in range(len(a) - 1):
        if a[k + 1] < a[k]:
            return k
    return len(a) - 1


def _columns(j1, j2, j3, j, dom: ScreenDomain, j23_list):
    """Normalised columns (size x len(j23_list)) and their unitarity defects."""
    js = tuple(float(v) for v in (j1, j2, j3, j))
    xs = np.array([float(v) for v in dom.j12_values()])
    ys = np.array([float(v) for v in j23_list])
    l23 = ys * (ys + 1)
    n = len(xs)

    stretched = [sixj_exact(SixJLabels(j1, j2, dom.j12_max, j3, j, y)) for y in j23_list]
    if n == 1:
        vals = np.array([[float(v) for v in stretched]])
    else:
        seed_ratio = None
        if xs[0] == 0:
            low = [sixj_exact(SixJLabels(j1, j2, dom.j12_min, j3, j, y)) for y in j23_list]
            nxt = [sixj_exact(SixJLabels(j1, j2, dom.j12_min + 1, j3, j, y)) for y in j23_list]
            seed_ratio = np.array([float(b) / float(a) for a, b in zip(low, nxt)])
        fwd = _forward(xs, js, l23, seed_ratio)
        bwd = _backward(xs, js, l23)
        vals = np.empty_like(fwd)
        for c in range(len(ys)):
            m = _first_peak(fwd[:, c])
            if bwd[m, c] == 0 or fwd[m, c] == 0:
                raise RecurrenceBreakdown(f"vanishing join value in column j23={j23_list[c]}", column=c)
            # bring both runs to a common scale without overflowing
            f = fwd[:, c] / abs(fwd[m, c])
            g = bwd[:, c] * (fwd[m, c] / abs(fwd[m, c]) / bwd[m, c])
            vals[: m + 1, c] = f[: m + 1]
            vals[m + 1 :, c] = g[m + 1 :]

    weights = np.outer(2 * xs + 1, 2 * ys + 1)
    norm = np.sum(weights * vals * vals, axis=0)
    if not np.all(np.isfinite(norm)) or np.any(norm <= 0):
        bad = int(np.flatnonzero(~np.isfinite(norm) | (norm <= 0))[0])
        raise RecurrenceBreakdown(f"column j23={j23_list[bad]} lost all significance", column=bad)
    vals = vals / np.sqrt(norm)
    want = np.array([v.sign() for v in stretched])
    have = np.sign(vals[-1])
    vals = vals * np.where(want * have < 0, -1.0, 1.0)
    defect = np.abs(np.sum(weights * vals * vals, axis=0) - 1)
    return vals, defect


def sixj_column(j1: HalfLike, j2: HalfLike, j3: HalfLike, j: HalfLike, j23: HalfLike) -> np.ndarray:
    """Values of {j1 j2 j12; j3 j j23} for every allowed j12, ascending."""
    j1, j2, j3, j, j23 = (HalfInt.of(v) for v in (j1, j2, j3, j, j23))
    dom = screen_domain(j1, j2, j3, j)
    if not dom.contains(dom.j12_min, j23):
        raise ValueError(f"j23 = {j23} is outside the screen")
    vals, _ = _columns(j1, j2, j3, j, dom, [j23])
    return vals[:, 0]


@dataclass(frozen=True)
class Screen:
    """The orthogonal matrix ``values[j12 index, j23 index]``; index 0 is the minimum."""

    params: tuple
    domain: ScreenDomain
    values: np.ndarray = field(repr=False)
    column_defect: np.ndarray = field(repr=False)

    @property
    def j12(self) -> np.ndarray:
        return np.array([float(v) for v in self.domain.j12_values()])

    @property
    def j23(self) -> np.ndarray:
        return np.array([float(v) for v in self.domain.j23_values()])

    def weights(self) -> np.ndarray:
        return np.outer(2 * self.j12 + 1, 2 * self.j23 + 1)

    def orthogonal_matrix(self) -> np.ndarray:
        """sqrt((2j12+1)(2j23+1)) times the 6j values."""
        return np.sqrt(self.weights()) * self.values

    def value(self, j12: HalfLike, j23: HalfLike) -> float:
        a = (HalfInt.of(j12).twice - self.domain.j12_min.twice) // 2
        b = (HalfInt.of(j23).twice - self.domain.j23_min.twice) // 2
        return float(self.values[a, b])


def _thread_count(threads):
    if threads is None:
        env = os.environ.get("SPINSCREEN_THREADS")
        threads = int(env) if env else 1
    return max(1, int(threads))


def build_screen(j1: HalfLike, j2: HalfLike, j3: HalfLike, j: HalfLike, threads=None) -> Screen:
    """All 6j symbols ``{j1 j2 j12; j3 j j23}`` of a screen.

    ``threads`` (default: ``$SPINSCREEN_THREADS`` or 1) splits the columns
    into independent blocks.
    """
    j1, j2, j3, j = (HalfInt.of(v) for v in (j1, j2, j3, j))
    dom = screen_domain(j1, j2, j3, j)
    ys = dom.j23_values()
    nthreads = min(_thread_count(threads), len(ys))
    if nthreads == 1:
        vals, defect = _columns(j1, j2, j3, j, dom, ys)
    else:
        blocks = [ys[i::nthreads] for i in range(nthreads)]
        with ThreadPoolExecutor(nthreads) as pool:
            parts = list(pool.map(lambda b: _columns(j1, j2, j3, j, dom, b), blocks))
        vals = np.empty((dom.size, dom.size))
        defect = np.empty(dom.size)
        for i, (v, d) in enumerate(parts):
            vals[:, i::nthreads] = v
            defect[i::nthreads] = d
    vals.flags.writeable = False
    return Screen((j1, j2, j3, j), dom, vals, defect)


def orthonormality_defect(screen: Screen, axis: str = "columns") -> float:
    """Largest deviation of the weighted Gram matrix of lines from the identity.

    ``axis="columns"`` treats each fixed-j23 column as a vector over j12,
    ``"rows"`` each fixed-j12 row.  Covers both the normalisation of every
    line and the orthogonality of adjacent lines.
    """
    U = screen.orthogonal_matrix()
    if axis == "rows":
        U = U.T
    elif axis != "columns":
        raise ValueError("axis must be 'rows' or 'columns'")
    norms = np.einsum("ij,ij->j", U, U)
    worst = float(np.max(np.abs(norms - 1)))
    if U.shape[1] > 1:
        cross = np.einsum("ij,ij->j", U[:, :-1], U[:, 1:])
        worst = max(worst, float(np.max(np.abs(cross))))
    return worst


def transpose_defect(screen: Screen) -> float:
    """``max |{j1 j2 x; j3 j y} - {j1 j2 y; j3 j x}|`` over the screen.

    Symbols whose mirrored labels fall off the screen vanish, so a screen
    whose j12 and j23 ranges differ cannot have zero defect.
    """
    dom = screen.domain
    xs = [v.twice for v in dom.j12_values()]
    ys = [v.twice for v in dom.j23_values()]
    ix = {t: a for a, t in enumerate(xs)}
    iy = {t: b for b, t in enumerate(ys)}
    worst = 0.0
    for a, tx in enumerate(xs):
        for b, ty in enumerate(ys):
            if ty in ix and tx in iy:
                mirrored = screen.values[ix[ty], iy[tx]]
            else:
                mirrored = 0.0
            worst = max(worst, abs(float(screen.values[a, b]) - float(mirrored)))
    return worst
