"""
Brute-force 6j oracle: contraction of four 3j symbols over all projections.

This path shares nothing with :mod:`spinscreen.exact` beyond the label
types.  3j symbols come from a plain Fraction evaluation of their squares,
and the contraction is accumulated per radicand; linear independence of
square roots of distinct squarefree integers guarantees that a genuine
6j leaves exactly one nonzero radicand group.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .angular import SixJLabels
from .errors import OracleRangeExceeded
from .exact import ExactRadical, ZERO

ORACLE_MAX_TWICE = 20


def _squarefree(n: int) -> tuple[int, int]:
    s, d, p = 1, 1, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1
    return s, d * n


@lru_cache(maxsize=None)
def _threej(t1, t2, t3, u1, u2, u3):
    """3j symbol as ``(sign, r, d)``; twice-valued arguments."""
    if u1 + u2 + u3 or (t1 + t2 + t3) % 2:
        return (0, 0, 1)
    if not abs(t1 - t2) <= t3 <= t1 + t2:
        return (0, 0, 1)
    if abs(u1) > t1 or abs(u2) > t2 or abs(u3) > t3:
        return (0, 0, 1)
    f = math.factorial
    j1p, j1m = (t1 + u1) // 2, (t1 - u1) // 2
    j2p, j2m = (t2 + u2) // 2, (t2 - u2) // 2
    j3p, j3m = (t3 + u3) // 2, (t3 - u3) // 2
    a, b, c = (t1 + t2 - t3) // 2, (t1 - t2 + t3) // 2, (-t1 + t2 + t3) // 2
    sq = Fraction(f(a) * f(b) * f(c) * f(j1p) * f(j1m) * f(j2p) * f(j2m) * f(j3p) * f(j3m), f((t1 + t2 + t3) // 2 + 1))
    total = Fraction(0)
    for k in range(0, a + 1):
        args = (k, a - k, j1m - k, j2p - k, (t3 - t2 + u1) // 2 + k, (t3 - t1 - u2) // 2 + k)
        if min(args) < 0:
            continue
        total += Fraction((-1) ** k, math.prod(f(x) for x in args))
    if total == 0:
        return (0, 0, 1)
    # value = (-1)**(j1-j2-m3) * total * sqrt(sq)
    sign = -1 if ((t1 - t2 - u3) // 2) % 2 else 1
    if total < 0:
        sign, total = -sign, -total
    num, den = sq.numerator, sq.denominator
    s, d = _squarefree(num * den)
    return (sign, total * Fraction(s, den), d)


def sixj_oracle_cg(labels: SixJLabels) -> ExactRadical:
    """6j symbol by explicit summation over magnetic quantum numbers.

    Uses::

        {a b c}   sum (-1)**(sum_k (j_k - m_k)) (a  b  c ) (a  e  f ) (d  b  f ) (d  e  c )
        {d e f} =                             (-ma -mb -mc) (ma -me mf) (md mb -mf) (-md me mc)

    Limited to 2j <= 20 in every entry.
    """
    tw = labels.twice()
    if max(tw) > ORACLE_MAX_TWICE:
        raise OracleRangeExceeded(f"oracle guard is j <= {ORACLE_MAX_TWICE // 2}")
    if not labels.is_valid():
        return ZERO
    a, b, c, d, e, f = tw
    groups: dict[int, Fraction] = {}
    for ma in range(-a, a + 1, 2):
        for mb in range(-b, b + 1, 2):
            mc = -ma - mb
            if abs(mc) > c:
                continue
            s1, r1, d1 = _threej(a, b, c, -ma, -mb, -mc)
            if not s1:
                continue
            for md in range(-d, d + 1, 2):
                mf = md + mb
                me = ma + mf
                if abs(mf) > f or abs(me) > e:
                    continue
                s2, r2, d2 = _threej(a, e, f, ma, -me, mf)
                if not s2:
                    continue
                s3, r3, d3 = _threej(d, b, f, md, mb, -mf)
                if not s3:
                    continue
                s4, r4, d4 = _threej(d, e, c, -md, me, mc)
                if not s4:
                    continue
                phase = (a - ma + b - mb + c - mc + d - md + e - me + f - mf) // 2
                sign = s1 * s2 * s3 * s4 * (-1 if phase % 2 else 1)
                r = r1 * r2 * r3 * r4
                dd = 1
                for x in (d1, d2, d3, d4):
                    g = math.gcd(dd, x)
                    r *= g
                    dd = (dd // g) * (x // g)
                groups[dd] = groups.get(dd, Fraction(0)) + sign * r
    nonzero = {k: v for k, v in groups.items() if v}
    if not nonzero:
        return ZERO
    if len(nonzero) > 1:
        raise ArithmeticError(f"contraction left several radicands: {sorted(nonzero)}")
    (rad, r), = nonzero.items()
    return ExactRadical(r, rad)
