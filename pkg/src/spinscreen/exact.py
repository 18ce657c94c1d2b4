"""
Exact 6j and 3j symbols in rational-radical arithmetic.

Every 6j or 3j symbol equals ``r * sqrt(d)`` with ``r`` rational and ``d``
a squarefree positive integer.  The square-root prefactor is a product of
factorial ratios, so it is assembled as a vector of prime exponents and
split into a rational part and a squarefree radicand without any integer
factorisation.  The single sum is carried out in exact integers.
"""

from __future__ import annotations

import decimal
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .angular import HalfInt, HalfLike, SixJLabels, triangle_ok
from .errors import InvalidSchedule

# Labels with 2j above this are rejected; factorial arguments then stay
# below 4 * MAX_TWICE + 2.
MAX_TWICE = 4000
_FACT_CAP = 2 * MAX_TWICE + 2


def _primes_upto(n: int) -> np.ndarray:
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve)


class _FactorialTable:
    """Lazily grown factorials and their prime exponent vectors.

    Growth happens under a lock; readers of already-built entries never
    see a partially written list.
    """

    def __init__(self, cap: int):
        self.cap = cap
        self.primes = _primes_upto(cap)
        self._values = [1]
        self._lock = threading.Lock()

    def value(self, n: int) -> int:
        if n < 0:
            raise ValueError("negative factorial")
        if n > self.cap:
            raise ValueError(f"factorial argument {n} exceeds table cap {self.cap}")
        values = self._values
        if n < len(values):
            return values[n]
        with self._lock:
            values = self._values
            while len(values) <= n:
                values.append(values[-1] * len(values))
            return values[n]

    @lru_cache(maxsize=None)
    def exponents(self, n: int) -> np.ndarray:
        """Legendre exponents of ``n!`` over ``self.primes``."""
        if n > self.cap:
            raise ValueError(f"factorial argument {n} exceeds table cap {self.cap}")
        out = np.zeros(len(self.primes), dtype=np.int64)
        k = int(np.searchsorted(self.primes, n, side="right"))
        primes = self.primes[:k].astype(np.int64)
        pk = primes.copy()
        while k:
            out[:k] += n // pk
            # primes are sorted, so those whose next power still fits form a prefix
            k = int(np.count_nonzero(pk <= n // primes))
            primes, pk = primes[:k], pk[:k] * primes[:k]
        out.flags.writeable = False
        return out


_FACT = _FactorialTable(_FACT_CAP)


def _fact(n: int) -> int:
    return _FACT.value(n)


def _split_square(exps: np.ndarray) -> tuple[Fraction, int]:
    """sqrt(prod p**e) = q * sqrt(d) with q rational and d squarefree."""
    half = exps // 2
    odd = exps - 2 * half
    primes = _FACT.primes
    num = den = 1
    for p, e in zip(primes[half > 0].tolist(), half[half > 0].tolist()):
        num *= p**e
    for p, e in zip(primes[half < 0].tolist(), (-half[half < 0]).tolist()):
        den *= p**e
    d = math.prod(primes[odd == 1].tolist())
    return Fraction(num, den), d


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = s**2 * d with d squarefree."""
    from sympy import factorint

    s = d = 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    return s, d


@dataclass(frozen=True)
class ExactRadical:
    """The real number ``r * sqrt(d)``; ``d`` is squarefree, ``d == 1`` when ``r == 0``."""

    r: Fraction
    d: int = 1

    @classmethod
    def from_parts(cls, r, d=1) -> "ExactRadical":
        """Normalise ``r * sqrt(d)`` for arbitrary rational ``d >= 0``."""
        r, d = Fraction(r), Fraction(d)
        if d < 0:
            raise ValueError("negative radicand")
        if r == 0 or d == 0:
            return cls(Fraction(0), 1)
        # sqrt(p/q) = sqrt(p*q)/q
        s, sq = _squarefree_split(d.numerator * d.denominator)
        return cls(r * Fraction(s, d.denominator), sq)

    @classmethod
    def signed_sqrt(cls, sign: int, square) -> "ExactRadical":
        """``sign * sqrt(square)`` for a nonnegative rational ``square``."""
        return cls.from_parts(sign, square)

    @property
    def is_zero(self) -> bool:
        return self.r == 0

    def sign(self) -> int:
        return (self.r > 0) - (self.r < 0)

    def square(self) -> Fraction:
        return self.r * self.r * self.d

    def __mul__(self, other):
        if not isinstance(other, ExactRadical):
            return ExactRadical(self.r * Fraction(other), self.d) if other else ExactRadical(Fraction(0))
        if self.is_zero or other.is_zero:
            return ExactRadical(Fraction(0))
        # both radicands squarefree: d1*d2 = g**2 * (d1/g) * (d2/g)
        g = math.gcd(self.d, other.d)
        return ExactRadical(self.r * other.r * g, (self.d // g) * (other.d // g))

    __rmul__ = __mul__

    def __neg__(self):
        return ExactRadical(-self.r, self.d)

    def __add__(self, other):
        if not isinstance(other, ExactRadical):
            other = ExactRadical(Fraction(other))
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if self.d != other.d:
            raise ValueError("sum of unlike radicals is not of the form r*sqrt(d)")
        r = self.r + other.r
        return ExactRadical(r, self.d if r else 1)

    def to_decimal(self, digits: int = 60) -> decimal.Decimal:
        if self.is_zero:
            return decimal.Decimal(0)
        with decimal.localcontext() as ctx:
            ctx.prec = digits + 10
            ctx.Emax = decimal.MAX_EMAX
            ctx.Emin = decimal.MIN_EMIN
            val = decimal.Decimal(self.r.numerator) / decimal.Decimal(self.r.denominator)
            val *= decimal.Decimal(self.d).sqrt()
            ctx.prec = digits
            return +val

    def __float__(self):
        return float(self.to_decimal(60))

    def decimal_str(self, digits: int = 30) -> str:
        """Positional decimal with ``digits`` significant digits."""
        return format(self.to_decimal(digits), "f")

    def __str__(self):
        return f"{self.r} * sqrt({self.d})"


ZERO = ExactRadical(Fraction(0))


def _tri_exponents(ta: int, tb: int, tc: int) -> np.ndarray:
    """Prime exponents of Delta(abc)**2 = (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!."""
    f = _FACT.exponents
    return (
        f((ta + tb - tc) // 2)
        + f((ta - tb + tc) // 2)
        + f((-ta + tb + tc) // 2)
        - f((ta + tb + tc) // 2 + 1)
    )


def _check_cap(*twice: int):
    if max(twice) > MAX_TWICE:
        raise ValueError(f"2j = {max(twice)} exceeds the supported maximum {MAX_TWICE}")


def sixj_exact(labels: SixJLabels) -> ExactRadical:
    """Exact value of ``{j1 j2 j12; j3 j j23}`` from Racah's single sum.

    Returns exact zero when a triangle condition fails.
    """
    if not labels.is_valid():
        return ZERO
    a, b, c, d, e, f = labels.twice()
    _check_cap(a, b, c, d, e, f)
    pre = _tri_exponents(a, b, c) + _tri_exponents(a, e, f) + _tri_exponents(d, b, f) + _tri_exponents(d, e, c)
    scale, rad = _split_square(pre)

    # all twice-sums below are even for a valid symbol
    alphas = ((a + b + c) // 2, (a + e + f) // 2, (d + b + f) // 2, (d + e + c) // 2)
    betas = ((a + b + d + e) // 2, (a + c + d + f) // 2, (b + c + e + f) // 2)
    tmin, tmax = max(alphas), min(betas)

    # Integer sum over the common denominator
    # L = prod (tmax - alpha)! * prod (beta - tmin)!, which every term divides.
    L = math.prod(_fact(tmax - x) for x in alphas) * math.prod(_fact(y - tmin) for y in betas)
    num = 0
    for t in range(tmin, tmax + 1):
        term = _fact(t + 1)
        for x in alphas:
            term *= _fact(tmax - x) // _fact(t - x)
        for y in betas:
            term *= _fact(y - tmin) // _fact(y - t)
        num += -term if t % 2 else term
    den = L
    r = Fraction(num, den) * scale
    if r == 0:
        return ZERO
    return ExactRadical(r, rad)


def exact_screen(j1: HalfLike, j2: HalfLike, j3: HalfLike, j: HalfLike) -> list:
    """``rows[a][b] = {j1 j2 j12_a; j3 j j23_b}`` exactly over the whole screen."""
    from .angular import screen_domain

    dom = screen_domain(j1, j2, j3, j)
    return [[sixj_exact(SixJLabels(j1, j2, x, j3, j, y)) for y in dom.j23_values()] for x in dom.j12_values()]


def exact_unitarity_defect(j1: HalfLike, j2: HalfLike, j3: HalfLike, j: HalfLike) -> float:
    """Largest deviation from the identity of the weighted Gram matrices of rows and columns.

    Every Gram entry is accumulated exactly as a sum of radicals grouped by
    radicand, so the result is exactly 0.0 if and only if both matrices are
    the identity.
    """
    from .angular import screen_domain

    dom = screen_domain(j1, j2, j3, j)
    wx = [2 * v.value + 1 for v in dom.j12_values()]
    wy = [2 * v.value + 1 for v in dom.j23_values()]
    grid = exact_screen(j1, j2, j3, j)
    cols = [list(c) for c in zip(*grid)]
    worst = 0.0
    # lines of fixed j23 run over j12 with weights wx, and vice versa
    for lines, w_run, w_fix in ((cols, wx, wy), (grid, wy, wx)):
        n = len(lines)
        for p in range(n):
            for q in range(p, n):
                groups: dict[int, Fraction] = {}
                for k, wk in enumerate(w_run):
                    term = lines[p][k] * lines[q][k]
                    if not term.is_zero:
                        groups[term.d] = groups.get(term.d, Fraction(0)) + term.r * wk
                # the sqrt(w_p w_q) prefactor does not affect vanishing; use w_p
                if p == q:
                    groups[1] = groups.get(1, Fraction(0)) - Fraction(1) / w_fix[p]
                for d, r in groups.items():
                    if r:
                        worst = max(worst, abs(float(ExactRadical(r * w_fix[p], d))))
    return worst


def sixj(j1, j2, j12, j3, j, j23) -> float:
    """Float value of ``{j1 j2 j12; j3 j j23}``."""
    return float(sixj_exact(SixJLabels(j1, j2, j12, j3, j, j23)))


@dataclass(frozen=True)
class ThreeJLabels:
    """Entries of ``(j1 j2 j3; m1 m2 m3)``."""

    j1: HalfInt
    j2: HalfInt
    j3: HalfInt
    m1: HalfInt
    m2: HalfInt
    m3: HalfInt

    def __post_init__(self):
        for name in ("j1", "j2", "j3", "m1", "m2", "m3"):
            object.__setattr__(self, name, HalfInt.of(getattr(self, name)))

    def selection_ok(self) -> bool:
        js = (self.j1, self.j2, self.j3)
        ms = (self.m1, self.m2, self.m3)
        if sum(m.twice for m in ms) != 0:
            return False
        for jj, m in zip(js, ms):
            if jj.twice < 0 or abs(m.twice) > jj.twice or (jj.twice - m.twice) % 2:
                return False
        return triangle_ok(*js)


def threej_exact(labels: ThreeJLabels) -> ExactRadical:
    """Exact 3j symbol (Racah's single sum); exact zero on selection-rule failure."""
    if not labels.selection_ok():
        return ZERO
    t1, t2, t3 = labels.j1.twice, labels.j2.twice, labels.j3.twice
    u1, u2, u3 = labels.m1.twice, labels.m2.twice, labels.m3.twice
    _check_cap(t1, t2, t3)
    f = _FACT.exponents
    pre = (
        _tri_exponents(t1, t2, t3)
        + f((t1 + u1) // 2) + f((t1 - u1) // 2)
        + f((t2 + u2) // 2) + f((t2 - u2) // 2)
        + f((t3 + u3) // 2) + f((t3 - u3) // 2)
    )
    scale, rad = _split_square(pre)

    # k runs where all six factorial arguments are nonnegative
    c1 = (t3 - t2 + u1) // 2
    c2 = (t3 - t1 - u2) // 2
    c3 = (t1 + t2 - t3) // 2
    c4 = (t1 - u1) // 2
    c5 = (t2 + u2) // 2
    kmin, kmax = max(0, -c1, -c2), min(c3, c4, c5)
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        den = _fact(k) * _fact(c1 + k) * _fact(c2 + k) * _fact(c3 - k) * _fact(c4 - k) * _fact(c5 - k)
        total += Fraction(-1 if k % 2 else 1, den)
    phase = (t1 - t2 - u3) // 2
    if phase % 2:
        total = -total
    r = total * scale
    if r == 0:
        return ZERO
    return ExactRadical(r, rad)


def limit_ls_from_fd(F: HalfLike, D: HalfLike) -> tuple:
    """Offsets ``(l1, l2, l3)`` for the alternative ``m1 = F + D, m2 = F - D`` input.

    With ``l3 = D`` the shifted radius ``R + l3 - D`` equals ``R``, so the
    6j entries ``Rbar + F, Rbar - F, Rbar + D`` become ``l_i + R``.
    """
    F, D = HalfInt.of(F), HalfInt.of(D)
    return (F, -F, D)


@dataclass(frozen=True)
class LimitRow:
    R: int
    scaled_sixj: float
    abs_error: float
    sign_ratio: int  # sign(6j) * sign(3j); 0 when either vanishes


def threej_limit_estimate(j1, j2, j3, l1, l2, l3, R_schedule) -> tuple:
    """Approach ``(j1 j2 j3; m1 m2 m3)`` through ``{j1 j2 j3; l1+R l2+R l3+R}``.

    With ``m1 = l3 - l2`` and ``m2 = l1 - l3``, the 6j multiplied by
    ``sqrt(2R + 1)`` tends to the 3j in magnitude.  Returns ``(threej, rows)``
    where ``rows`` is a list of :class:`LimitRow`; signs are reported
    separately because the relative phase is not fixed.
    """
    j1, j2, j3, l1, l2, l3 = (HalfInt.of(v) for v in (j1, j2, j3, l1, l2, l3))
    sched = [int(R) for R in R_schedule]
    if any(b <= a for a, b in zip(sched, sched[1:])):
        raise InvalidSchedule("R schedule must be strictly increasing")
    m1, m2 = l3 - l2, l1 - l3
    tj = threej_exact(ThreeJLabels(j1, j2, j3, m1, m2, -(m1 + m2)))
    target = abs(float(tj))
    rows = []
    for R in sched:
        labels = SixJLabels(j1, j2, j3, l1 + R, l2 + R, l3 + R)
        if not labels.is_valid():
            raise InvalidSchedule(f"R = {R} gives an invalid symbol {labels}")
        val = float(sixj_exact(labels)) * math.sqrt(2 * R + 1)
        sign = 0 if (val == 0 or tj.is_zero) else (1 if (val > 0) == (tj.sign() > 0) else -1)
        rows.append(LimitRow(R, val, abs(abs(val) - target), sign))
    return tj, rows
