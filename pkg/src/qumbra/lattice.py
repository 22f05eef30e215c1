"""Geometric lattices x_n = x0 q^n and the recurrence marchers on them.

The q-difference equations become explicit recurrences on the lattice; the
marchers are the independent pointwise oracles against which the umbral
series are validated.  Marches are seeded from series values so that the
comparison is like-for-like (the recurrences fix only ratios).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .qcore import QContext
from .qfun import QSeriesFunction, convergence_radius, evaluate


@dataclass(frozen=True)
class GeometricLattice:
    """Index range [n_min, n_max] of points x0 q^n, with x0 > 0."""

    x0: float
    ctx: QContext
    n_min: int
    n_max: int

    def __post_init__(self):
        if not (math.isfinite(self.x0) and self.x0 > 0.0):
            raise ValueError(f"lattice base point must be positive, got {self.x0}")
        if self.n_min > self.n_max:
            raise ValueError("empty lattice index range")

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_max + 1)

    @property
    def points(self) -> np.ndarray:
        return self.x0 * self.ctx.q ** self.indices.astype(float)

    def point(self, n: int) -> float:
        return self.x0 * self.ctx.q ** float(n)


@dataclass(frozen=True)
class RightExp:
    lam: float


@dataclass(frozen=True)
class SymExp:
    lam: float


Equation = Union[RightExp, SymExp]


def march_right_exp(lat: GeometricLattice, lam: float, seed: float) -> np.ndarray:
    """March E(qx) = (1 + (q-1) lam x) E(x) from the seed at x0 (index 0).

    Backward steps divide by the same factor; a vanishing factor poisons that
    point and everything further backward with NaN, forward points are
    unaffected.
    """
    if not math.isfinite(seed):
        raise ValueError("seed value must be finite")
    if not (lat.n_min <= 0 <= lat.n_max):
        raise ValueError("lattice must contain the seed index 0")
    q = lat.ctx.q
    values = np.empty(lat.n_max - lat.n_min + 1)
    values[-lat.n_min] = seed
    v = seed
    for n in range(0, lat.n_max):
        v = (1.0 + (q - 1.0) * lam * lat.point(n)) * v
        values[n + 1 - lat.n_min] = v
    v = seed
    for n in range(0, lat.n_min, -1):
        factor = 1.0 + (q - 1.0) * lam * lat.point(n - 1)
        v = v / factor if factor != 0.0 else math.nan
        values[n - 1 - lat.n_min] = v
    return values


def march_symmetric_exp(
    lat: GeometricLattice, lam: float, seeds: tuple[float, float]
) -> np.ndarray:
    """March the three-term relation E(qx) = (q - 1/q) lam x E(x) + E(x/q).

    ``seeds`` are the values at x0 and x0/q (indices 0 and -1); the relation
    is explicit in both directions.
    """
    s0, sm1 = seeds
    if not (math.isfinite(s0) and math.isfinite(sm1)):
        raise ValueError("both seed values must be finite")
    if not (lat.n_min <= -1 and lat.n_max >= 0):
        raise ValueError("lattice must contain the seed indices 0 and -1")
    qs = lat.ctx.q - 1.0 / lat.ctx.q
    values = np.empty(lat.n_max - lat.n_min + 1)
    values[-lat.n_min] = s0
    values[-1 - lat.n_min] = sm1
    for n in range(0, lat.n_max):
        values[n + 1 - lat.n_min] = (
            qs * lam * lat.point(n) * values[n - lat.n_min] + values[n - 1 - lat.n_min]
        )
    for n in range(-1, lat.n_min, -1):
        values[n - 1 - lat.n_min] = (
            values[n + 1 - lat.n_min] - qs * lam * lat.point(n) * values[n - lat.n_min]
        )
    return values


def residual_on_lattice(
    f: QSeriesFunction, lat: GeometricLattice, equation: Equation
) -> float:
    """Max normalised residual of the defining relation over the lattice.

    Rejects lattices that leave the series' convergence domain; residuals
    are normalised by the larger side of the relation.
    """
    radius = convergence_radius(f.kind, f.ctx)
    reach = max(lat.point(lat.n_min), lat.point(lat.n_max + 1))
    if reach >= radius:
        raise ValueError(
            f"lattice reaches {reach}, outside convergence radius {radius}"
        )
    vals = {n: evaluate(f, lat.point(n)).value for n in range(lat.n_min, lat.n_max + 2)}
    q = lat.ctx.q
    worst = 0.0
    if isinstance(equation, RightExp):
        for n in range(lat.n_min, lat.n_max + 1):
            lhs = vals[n + 1]
            rhs = (1.0 + (q - 1.0) * equation.lam * lat.point(n)) * vals[n]
            scale = max(abs(lhs), abs(rhs))
            if scale > 0.0:
                worst = max(worst, abs(lhs - rhs) / scale)
    elif isinstance(equation, SymExp):
        qs = q - 1.0 / q
        for n in range(lat.n_min + 1, lat.n_max + 1):
            lhs = vals[n + 1]
            rhs = qs * equation.lam * lat.point(n) * vals[n] + vals[n - 1]
            scale = max(abs(lhs), abs(rhs))
            if scale > 0.0:
                worst = max(worst, abs(lhs - rhs) / scale)
    else:
        raise TypeError(f"unsupported equation {equation!r}")
    return worst
