"""Double-double (compensated) arithmetic for badly cancelling series sums.

A value is a (hi, lo) pair of floats with hi + lo representing the number and
|lo| <= ulp(hi)/2.  All operations are branch-free, so they work unchanged on
numpy arrays (elementwise) as well as on plain floats.  Roundoff per operation
is ~2^-105, which keeps alternating q-series sums accurate even when the
result is ~1e-8 of the largest term.
"""

from __future__ import annotations

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker splitting constant


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _two_prod(a, b):
    p = a * b
    ac = _SPLITTER * a
    ah = ac - (ac - a)
    al = a - ah
    bc = _SPLITTER * b
    bh = bc - (bc - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def dd(a):
    """Promote a float (or array) to a double-double pair."""
    return a, a * 0.0


def add(x, y):
    sh, sl = two_sum(x[0], y[0])
    return two_sum(sh, sl + x[1] + y[1])


def mul(x, y):
    ph, pl = _two_prod(x[0], y[0])
    return two_sum(ph, pl + x[0] * y[1] + x[1] * y[0])


def div(x, y):
    qh = x[0] / y[0]
    ph, pl = _two_prod(qh, y[0])
    rl = (x[0] - ph) - pl + x[1] - qh * y[1]
    return two_sum(qh, rl / y[0])


def neg(x):
    return -x[0], -x[1]


def to_float(x):
    return x[0] + x[1]
