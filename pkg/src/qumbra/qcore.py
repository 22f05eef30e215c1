"""Scalar q-arithmetic: q-brackets, umbral factors and the arcsinh coefficients.

Everything here is a pure function of a :class:`QContext` (the dilation
parameter ``q`` plus the chosen q-derivative variant).  q-factorials are never
materialised on their own; they only enter through the ratio ``n!/[n]_q!`` or
through term ratios, which keeps all quantities inside double range even for
q > 1 where ``[n]_q!`` grows super-exponentially.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction


class Variant(str, Enum):
    """Which q-derivative the context uses: right, left or symmetric."""

    RIGHT = "right"
    LEFT = "left"
    SYMMETRIC = "sym"


@dataclass(frozen=True)
class QContext:
    """Dilation parameter q (> 0, != 1) together with the derivative variant."""

    q: float
    variant: Variant = Variant.RIGHT

    def __post_init__(self):
        if not isinstance(self.variant, Variant):
            object.__setattr__(self, "variant", Variant(self.variant))
        if not math.isfinite(self.q) or self.q <= 0.0:
            raise ValueError(f"q must be a positive real, got {self.q}")
        if self.q == 1.0:
            raise ValueError("q = 1 is rejected; use q = 1 +/- eps for continuous limits")

    @property
    def qplus(self) -> float:
        return self.q - 1.0

    @property
    def qminus(self) -> float:
        return 1.0 - 1.0 / self.q

    @property
    def qsym(self) -> float:
        return self.q - 1.0 / self.q


def q_bracket(ctx: QContext, n: int) -> float:
    """The q-integer [n]_q for the context's variant.

    Uses the power-sum form (e.g. 1 + q + ... + q^(n-1) for the right
    variant) rather than the (q^n - 1)/(q - 1) ratio, which loses precision
    near q -> 1.
    """
    if n < 0:
        raise ValueError(f"bracket index must be non-negative, got {n}")
    q = ctx.q
    acc = 0.0
    if ctx.variant is Variant.RIGHT:
        p = 1.0
        for _ in range(n):
            acc += p
            p *= q
    elif ctx.variant is Variant.LEFT:
        r = 1.0 / q
        p = 1.0
        for _ in range(n):
            acc += p
            p *= r
    else:
        # symmetric: sum_{k=0..n-1} q^(n-1-2k)
        p = q ** (n - 1) if n > 0 else 1.0
        r = 1.0 / (q * q)
        for _ in range(n):
            acc += p
            p *= r
    return acc


def q_factorial_ratio(ctx: QContext, n: int) -> float:
    """The umbral factor u_n = n!/[n]_q!, via the running product of k/[k]_q."""
    if n < 0:
        raise ValueError(f"factorial index must be non-negative, got {n}")
    acc = 1.0
    for k in range(1, n + 1):
        acc *= k / q_bracket(ctx, k)
    return acc


def cn_coefficient(n: int) -> Fraction:
    """Exact rational coefficient C_n of the arcsinh expansion.

    C_1 = 1 and C_n = prod_{k=2..n}(2k-3) / ((2n-1) prod_{k=2..n}(2k-2)) for
    n >= 2; these weight the odd powers in the symmetric beta series.
    """
    if n < 1:
        raise ValueError(f"C_n is defined for n >= 1, got {n}")
    if n == 1:
        return Fraction(1)
    num = math.prod(2 * k - 3 for k in range(2, n + 1))
    den = (2 * n - 1) * math.prod(2 * k - 2 for k in range(2, n + 1))
    return Fraction(num, den)


def arcsinh_partial_sum(z: float, terms: int) -> float:
    """Partial sum of arcsinh(z) = sum_n (-1)^(n+1) C_n z^(2n-1).

    Converges for |z| <= 1; this is the scalar series behind the symmetric
    beta operator's shift expansion.
    """
    acc = 0.0
    zp = z
    for n in range(1, terms + 1):
        acc += (-1.0) ** (n + 1) * float(cn_coefficient(n)) * zp
        zp *= z * z
    return acc
