"""Truncated coefficient space and the operator algebra acting on it.

Operators (shift T, q-derivative, multiplication by x, the beta operator and
friends) are dense (N+1)x(N+1) matrices on coefficient vectors of truncated
power series.  Each matrix carries two bookkeeping integers:

* ``degree_shift`` - the largest upward degree shift of any term in the
  operator (column n feeds rows <= n + degree_shift),
* ``excursion`` - the largest upward degree excursion along any composition
  path used to build the operator.

Truncation corrupts the top ``excursion`` rows, so identity checks assert
only on the ``interior`` rows; compositions accumulate excursions
conservatively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .qcore import QContext, Variant, cn_coefficient, q_bracket, q_factorial_ratio


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class CoeffSeries:
    """Coefficients c_0..c_N of a truncated power series sum c_n x^n."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficient vector must be one-dimensional and non-empty")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficient vector contains non-finite entries")
        object.__setattr__(self, "coeffs", _freeze(c))

    @property
    def trunc(self) -> int:
        return self.coeffs.size - 1

    def eval_at(self, x: float) -> float:
        """Horner evaluation of the truncated polynomial at x."""
        acc = 0.0
        for c in self.coeffs[::-1]:
            acc = acc * x + c
        return acc

    @staticmethod
    def unit(order: int) -> "CoeffSeries":
        c = np.zeros(order + 1)
        c[0] = 1.0
        return CoeffSeries(c)

    @staticmethod
    def monomial(degree: int, order: int) -> "CoeffSeries":
        if not 0 <= degree <= order:
            raise ValueError(f"monomial degree {degree} outside order {order}")
        c = np.zeros(order + 1)
        c[degree] = 1.0
        return CoeffSeries(c)


@dataclass(frozen=True)
class OperatorMatrix:
    """A finite linear map on CoeffSeries with truncation bookkeeping."""

    entries: np.ndarray
    degree_shift: int = 0
    excursion: int = 0

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=float)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError("operator entries must form a square matrix")
        object.__setattr__(self, "entries", _freeze(e))
        object.__setattr__(self, "excursion", max(self.excursion, self.degree_shift, 0))

    @property
    def order(self) -> int:
        return self.entries.shape[0] - 1

    @property
    def interior(self) -> range:
        """Rows on which the map agrees with the untruncated algebra."""
        return range(0, max(0, self.order + 1 - self.excursion))

    def apply(self, series: CoeffSeries) -> CoeffSeries:
        if series.trunc != self.order:
            raise ValueError("series order does not match operator order")
        return CoeffSeries(self.entries @ series.coeffs)

    def compose(self, other: "OperatorMatrix") -> "OperatorMatrix":
        """self after other (matrix product self @ other)."""
        if self.order != other.order:
            raise ValueError("cannot compose operators of different orders")
        return OperatorMatrix(
            self.entries @ other.entries,
            degree_shift=self.degree_shift + other.degree_shift,
            excursion=max(other.excursion, other.degree_shift + self.excursion),
        )

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self.compose(other)

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if self.order != other.order:
            raise ValueError("cannot add operators of different orders")
        return OperatorMatrix(
            self.entries + other.entries,
            degree_shift=max(self.degree_shift, other.degree_shift),
            excursion=max(self.excursion, other.excursion),
        )

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self + (-1.0) * other

    def __rmul__(self, scalar: float) -> "OperatorMatrix":
        return OperatorMatrix(scalar * self.entries, self.degree_shift, self.excursion)


def commutator(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """AB - BA; valid on the intersection of both composition interiors."""
    return a @ b - b @ a


def op_identity(order: int) -> OperatorMatrix:
    return OperatorMatrix(np.eye(order + 1))


def op_shift(ctx: QContext, order: int, inverse: bool = False) -> OperatorMatrix:
    """Dilation T: x^n -> q^n x^n (q^-n when inverse)."""
    diag = np.empty(order + 1)
    p = 1.0
    for n in range(order + 1):
        diag[n] = 1.0 / p if inverse else p
        p *= ctx.q
    return OperatorMatrix(np.diag(diag))


def op_delta(ctx: QContext, order: int) -> OperatorMatrix:
    """q-derivative on coefficients: x^n -> [n]_q x^(n-1)."""
    m = np.zeros((order + 1, order + 1))
    for n in range(1, order + 1):
        m[n - 1, n] = q_bracket(ctx, n)
    return OperatorMatrix(m, degree_shift=-1)


def op_mult_x(order: int) -> OperatorMatrix:
    """Multiplication by x; the degree-N coefficient is truncated away."""
    if order < 1:
        raise ValueError("multiplication by x needs order >= 1")
    m = np.zeros((order + 1, order + 1))
    for n in range(order):
        m[n + 1, n] = 1.0
    return OperatorMatrix(m, degree_shift=1, excursion=1)


def op_beta(ctx: QContext, order: int) -> OperatorMatrix:
    """The shift-commuting beta operator, diagonal n/[n]_q on monomials.

    The degree-0 entry is the m -> 0 limit (q - 1/q-variant constant over
    ln q), which is what the shift-series expansion sums to on constants.
    """
    diag = np.empty(order + 1)
    lnq = math.log(ctx.q)
    if ctx.variant is Variant.RIGHT:
        diag[0] = ctx.qplus / lnq
    elif ctx.variant is Variant.LEFT:
        diag[0] = ctx.qminus / lnq
    else:
        diag[0] = ctx.qsym / (2.0 * lnq)
    for n in range(1, order + 1):
        diag[n] = n / q_bracket(ctx, n)
    return OperatorMatrix(np.diag(diag))


def op_beta_x(ctx: QContext, order: int) -> OperatorMatrix:
    """B = beta . x in closed form: x^n -> ((n+1)/[n+1]_q) x^(n+1)."""
    if order < 1:
        raise ValueError("beta.x needs order >= 1")
    m = np.zeros((order + 1, order + 1))
    for n in range(order):
        m[n + 1, n] = (n + 1) / q_bracket(ctx, n + 1)
    return OperatorMatrix(m, degree_shift=1, excursion=1)


def op_euler(order: int) -> OperatorMatrix:
    """x d/dx on coefficients: x^n -> n x^n."""
    return OperatorMatrix(np.diag(np.arange(order + 1, dtype=float)))


def op_classical_derivative(order: int) -> OperatorMatrix:
    """d/dx on coefficients: x^n -> n x^(n-1)."""
    m = np.zeros((order + 1, order + 1))
    for n in range(1, order + 1):
        m[n - 1, n] = float(n)
    return OperatorMatrix(m, degree_shift=-1)


def op_umbral_weights(ctx: QContext, order: int) -> OperatorMatrix:
    """Diagonal of umbral factors u_n = n!/[n]_q! conjugating d/dx into the q-derivative."""
    diag = np.array([q_factorial_ratio(ctx, n) for n in range(order + 1)])
    return OperatorMatrix(np.diag(diag))


def project_on_one(ops: Sequence[OperatorMatrix]) -> CoeffSeries:
    """Apply the composition ops[0] . ops[1] ... to the constant series 1."""
    if not ops:
        raise ValueError("need at least one operator to project")
    series = CoeffSeries.unit(ops[0].order)
    for op in reversed(ops):
        series = op.apply(series)
    return series


def beta_shift_expansion(ctx: QContext, terms: int, order: int) -> OperatorMatrix:
    """Partial sum of the beta operator's series in shift operators.

    Diagonal on monomials.  Converges to :func:`op_beta` only on a
    q-dependent degree range (right: |q^n - 1| < 1, symmetric:
    |q^n - q^-n|/2 <= 1); outside it the partial sums are still returned and
    non-convergence is the caller's concern.
    """
    if terms < 1:
        raise ValueError("need at least one expansion term")
    q = ctx.q
    lnq = math.log(q)
    diag = np.empty(order + 1)
    if ctx.variant is Variant.SYMMETRIC:
        cs = [float(cn_coefficient(n + 1)) for n in range(terms)]
        for m in range(order + 1):
            s = (q**m - q**-m) / 2.0
            acc = 0.0
            sp = 1.0
            for n in range(terms):
                acc += (-1.0) ** n * cs[n] * sp
                sp *= s * s
            diag[m] = ctx.qsym / (2.0 * lnq) * acc
        return OperatorMatrix(np.diag(diag))
    for m in range(order + 1):
        if ctx.variant is Variant.RIGHT:
            z = q**m - 1.0
            sign = -1.0
            pref = ctx.qplus / lnq
        else:
            z = 1.0 - q**-m
            sign = 1.0
            pref = ctx.qminus / lnq
        acc = 0.0
        zp = 1.0
        for n in range(terms):
            acc += sign**n * zp / (n + 1)
            zp *= z
        diag[m] = pref * acc
    return OperatorMatrix(np.diag(diag))
