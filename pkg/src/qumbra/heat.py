"""The q-heat equation on bivariate coefficient space.

Bivariate operators are Kronecker products of the one-variable operator
matrices (x-action on the row index, t-action on the column index of the
coefficient matrix c[m, n] ~ x^m t^n).  The module hardcodes the solved
six-generator symmetry algebra of the heat equation (two translations, the
identity scaling, the Galilei boost, the dilation and the projective
generator) and verifies it by commutator closure rather than deriving
determining equations symbolically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .opspace import (
    OperatorMatrix,
    _freeze,
    op_beta_x,
    op_classical_derivative,
    op_delta,
    op_identity,
    op_umbral_weights,
)
from .qcore import QContext, q_bracket, q_factorial_ratio


@dataclass(frozen=True)
class HeatContext:
    """Independent q-contexts for x and t plus the bivariate truncation orders."""

    ctx_x: QContext
    ctx_t: QContext
    m_order: int
    n_order: int

    def __post_init__(self):
        if self.m_order < 2 or self.n_order < 1:
            raise ValueError("bivariate truncation too small for the heat operator")


@dataclass(frozen=True)
class BiCoeffSeries:
    """Coefficients c[m, n] of sum c_{mn} x^m t^n."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim != 2:
            raise ValueError("bivariate coefficients must be a matrix")
        if not np.all(np.isfinite(c)):
            raise ValueError("bivariate coefficients contain non-finite entries")
        object.__setattr__(self, "coeffs", _freeze(c))

    @property
    def m_order(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def n_order(self) -> int:
        return self.coeffs.shape[1] - 1

    def eval_at(self, x: float, t: float) -> float:
        acc = 0.0
        for row in self.coeffs[::-1]:
            inner = 0.0
            for c in row[::-1]:
                inner = inner * t + c
            acc = acc * x + inner
        return acc

    def degrees(self) -> tuple[int, int]:
        """Actual (x, t) degrees of the stored polynomial."""
        nz = np.argwhere(self.coeffs != 0.0)
        if nz.size == 0:
            return 0, 0
        return int(nz[:, 0].max()), int(nz[:, 1].max())


@dataclass(frozen=True)
class BiOperatorMatrix:
    """Linear map on flattened BiCoeffSeries with per-variable bookkeeping."""

    entries: np.ndarray
    m_order: int
    n_order: int
    shift_x: int = 0
    exc_x: int = 0
    shift_t: int = 0
    exc_t: int = 0

    def __post_init__(self):
        dim = (self.m_order + 1) * (self.n_order + 1)
        e = np.asarray(self.entries, dtype=float)
        if e.shape != (dim, dim):
            raise ValueError("entry matrix does not match the truncation orders")
        object.__setattr__(self, "entries", _freeze(e))
        object.__setattr__(self, "exc_x", max(self.exc_x, self.shift_x, 0))
        object.__setattr__(self, "exc_t", max(self.exc_t, self.shift_t, 0))

    def apply(self, series: BiCoeffSeries) -> BiCoeffSeries:
        if (series.m_order, series.n_order) != (self.m_order, self.n_order):
            raise ValueError("series orders do not match operator orders")
        flat = self.entries @ series.coeffs.ravel()
        return BiCoeffSeries(flat.reshape(self.m_order + 1, self.n_order + 1))

    def compose(self, other: "BiOperatorMatrix") -> "BiOperatorMatrix":
        self._check(other)
        return BiOperatorMatrix(
            self.entries @ other.entries,
            self.m_order,
            self.n_order,
            shift_x=self.shift_x + other.shift_x,
            exc_x=max(other.exc_x, other.shift_x + self.exc_x),
            shift_t=self.shift_t + other.shift_t,
            exc_t=max(other.exc_t, other.shift_t + self.exc_t),
        )

    def __matmul__(self, other: "BiOperatorMatrix") -> "BiOperatorMatrix":
        return self.compose(other)

    def __add__(self, other: "BiOperatorMatrix") -> "BiOperatorMatrix":
        self._check(other)
        return BiOperatorMatrix(
            self.entries + other.entries,
            self.m_order,
            self.n_order,
            shift_x=max(self.shift_x, other.shift_x),
            exc_x=max(self.exc_x, other.exc_x),
            shift_t=max(self.shift_t, other.shift_t),
            exc_t=max(self.exc_t, other.exc_t),
        )

    def __sub__(self, other: "BiOperatorMatrix") -> "BiOperatorMatrix":
        return self + (-1.0) * other

    def __rmul__(self, scalar: float) -> "BiOperatorMatrix":
        return BiOperatorMatrix(
            scalar * self.entries,
            self.m_order,
            self.n_order,
            self.shift_x,
            self.exc_x,
            self.shift_t,
            self.exc_t,
        )

    def _check(self, other: "BiOperatorMatrix") -> None:
        if (self.m_order, self.n_order) != (other.m_order, other.n_order):
            raise ValueError("operator truncation orders do not match")


def from_kron(ax: OperatorMatrix, at: OperatorMatrix) -> BiOperatorMatrix:
    """Bivariate operator acting as ax on the x-index and at on the t-index."""
    return BiOperatorMatrix(
        np.kron(ax.entries, at.entries),
        ax.order,
        at.order,
        shift_x=ax.degree_shift,
        exc_x=ax.excursion,
        shift_t=at.degree_shift,
        exc_t=at.excursion,
    )


def commutator_bi(a: BiOperatorMatrix, b: BiOperatorMatrix) -> BiOperatorMatrix:
    return a @ b - b @ a


@dataclass(frozen=True)
class HeatGeneratorSet:
    """The six symmetry generators of the q-heat equation."""

    p0: BiOperatorMatrix  # time translation: delta_t
    p1: BiOperatorMatrix  # space translation: delta_x
    w: BiOperatorMatrix  # identity scaling
    b: BiOperatorMatrix  # Galilei boost: (beta_t t) delta_x + (beta_x x)/2
    d: BiOperatorMatrix  # dilation: 2 (beta_t t) delta_t + (beta_x x) delta_x + 1/2
    k: BiOperatorMatrix  # projective generator

    def as_list(self) -> list[BiOperatorMatrix]:
        return [self.p0, self.p1, self.w, self.b, self.d, self.k]

    names = ("P0", "P1", "W", "B", "D", "K")


def _pieces(hc: HeatContext):
    M, N = hc.m_order, hc.n_order
    ix, it = op_identity(M), op_identity(N)
    dx, dt = op_delta(hc.ctx_x, M), op_delta(hc.ctx_t, N)
    bx, bt = op_beta_x(hc.ctx_x, M), op_beta_x(hc.ctx_t, N)
    return ix, it, dx, dt, bx, bt


def heat_operator(hc: HeatContext) -> BiOperatorMatrix:
    """L = delta_t - delta_x delta_x on bivariate space."""
    ix, it, dx, dt, _, _ = _pieces(hc)
    return from_kron(ix, dt) - from_kron(dx @ dx, it)


def heat_generators(hc: HeatContext) -> HeatGeneratorSet:
    """Construct the six-generator symmetry set.

    The boost is built as (beta_t t) delta_x + (beta_x x)/2, the standard
    Galilei boost of the heat algebra; together with the dilation
    2 (beta_t t) delta_t + (beta_x x) delta_x + 1/2 and the projective
    generator the set closes into the six-dimensional algebra.
    """
    ix, it, dx, dt, bx, bt = _pieces(hc)
    w = from_kron(ix, it)
    p0 = from_kron(ix, dt)
    p1 = from_kron(dx, it)
    boost = from_kron(dx, bt) + 0.5 * from_kron(bx, it)
    dil = 2.0 * from_kron(ix, bt @ dt) + from_kron(bx @ dx, it) + 0.5 * w
    proj = (
        from_kron(ix, bt @ bt @ dt)
        + from_kron(bx @ dx, bt)
        + 0.25 * from_kron(bx @ bx, it)
        + 0.5 * from_kron(ix, bt)
    )
    return HeatGeneratorSet(p0=p0, p1=p1, w=w, b=boost, d=dil, k=proj)


def generator_from_coefficients(
    hc: HeatContext,
    tau: BiOperatorMatrix,
    xi: BiOperatorMatrix,
    phi: BiOperatorMatrix,
) -> BiOperatorMatrix:
    """Assemble tau . delta_t + xi . delta_x + phi from infinitesimal pieces."""
    ix, it, dx, dt, _, _ = _pieces(hc)
    return tau @ from_kron(ix, dt) + xi @ from_kron(dx, it) + phi


def heat_polynomials(hc: HeatContext, k_max: int) -> list[BiCoeffSeries]:
    """Umbral images of the caloric polynomials v_k, each annihilated by L.

    v_k = sum_j k!/((k-2j)! j!) u_{k-2j} u'_j x^(k-2j) t^j with the umbral
    factors u from each variable's context.
    """
    if k_max > min(hc.m_order, 2 * hc.n_order):
        raise ValueError("k_max exceeds what the truncation can represent")
    ux = [q_factorial_ratio(hc.ctx_x, m) for m in range(hc.m_order + 1)]
    ut = [q_factorial_ratio(hc.ctx_t, n) for n in range(hc.n_order + 1)]
    out = []
    for k in range(k_max + 1):
        c = np.zeros((hc.m_order + 1, hc.n_order + 1))
        for j in range(k // 2 + 1):
            weight = math.factorial(k) // (math.factorial(k - 2 * j) * math.factorial(j))
            c[k - 2 * j, j] = float(weight) * ux[k - 2 * j] * ut[j]
        out.append(BiCoeffSeries(c))
    return out


def separation_solution(hc: HeatContext, lam: float) -> BiCoeffSeries:
    """Product solution with c_{mn} = lam^(m/2+n) / ([m]_qx! [n]_qt!)."""
    if not (math.isfinite(lam) and lam > 0.0):
        raise ValueError("separation solution needs lam > 0")
    root = math.sqrt(lam)
    a = np.empty(hc.m_order + 1)
    a[0] = 1.0
    for m in range(1, hc.m_order + 1):
        a[m] = a[m - 1] * root / q_bracket(hc.ctx_x, m)
    b = np.empty(hc.n_order + 1)
    b[0] = 1.0
    for n in range(1, hc.n_order + 1):
        b[n] = b[n - 1] * lam / q_bracket(hc.ctx_t, n)
    return BiCoeffSeries(np.outer(a, b))


def boost_solution(hc: HeatContext, t0: float, u0: float = 1.0) -> BiCoeffSeries:
    """Umbral image of the time-shifted source kernel (t+t0)^(-1/2) exp(-x^2/(4(t+t0))).

    Expanding around a shifted time origin keeps every series well defined
    (the unshifted kernel has no expansion at t = 0); the shifted kernel is
    itself a heat solution, so its umbral image still satisfies L u = 0.
    """
    if not (math.isfinite(t0) and t0 > 0.0):
        raise ValueError("boost solution needs t0 > 0")
    c = np.zeros((hc.m_order + 1, hc.n_order + 1))
    g = 1.0
    for m in range(hc.m_order // 2 + 1):
        if m > 0:
            g *= (
                -0.5
                * (2 * m - 1)
                / (q_bracket(hc.ctx_x, 2 * m - 1) * q_bracket(hc.ctx_x, 2 * m))
            )
        a = -m - 0.5
        h = t0**a
        for n in range(hc.n_order + 1):
            c[2 * m, n] = u0 * g * h
            h *= (a - n) / (t0 * q_bracket(hc.ctx_t, n + 1))
    return BiCoeffSeries(c)


def continuous_boost_kernel(t0: float, u0: float, x: float, t: float) -> float:
    return u0 / math.sqrt(t + t0) * math.exp(-x * x / (4.0 * (t + t0)))


_TINY = 1e-300


def pde_residual(hc: HeatContext, u: BiCoeffSeries, exact_polynomial: bool = False) -> float:
    """Scaled max heat-equation residual of u on the trustworthy rows.

    For truncations of infinite series the top rows (m > M-2 or n > N-1)
    depend on coefficients beyond the truncation and are excluded; exact
    polynomials are checked everywhere.
    """
    ix, it, dx, dt, _, _ = _pieces(hc)
    lt = from_kron(ix, dt).apply(u).coeffs
    lxx = from_kron(dx @ dx, it).apply(u).coeffs
    if exact_polynomial:
        mask = np.ones_like(lt, dtype=bool)
    else:
        mask = np.zeros_like(lt, dtype=bool)
        mask[: hc.m_order - 1, : hc.n_order] = True
    scale = max(np.abs(lt[mask]).max(), np.abs(lxx[mask]).max(), _TINY)
    return float(np.abs((lt - lxx)[mask]).max() / scale)


def verify_symmetry(
    hc: HeatContext, gen: BiOperatorMatrix, basis: list[BiCoeffSeries]
) -> float:
    """Max scaled residual of L(G v) over the basis; zero means G preserves solutions."""
    worst = 0.0
    for v in basis:
        deg_x, deg_t = v.degrees()
        if deg_x + gen.exc_x > hc.m_order or deg_t + gen.exc_t > hc.n_order:
            raise ValueError("basis degree leaves the truncation interior under the generator")
        worst = max(worst, pde_residual(hc, gen.apply(v), exact_polynomial=True))
    return worst


@dataclass(frozen=True)
class ClosureResult:
    residual: float
    structure_constants: np.ndarray  # (6, 6, 6): [G_i, G_j] = sum_k c_{ijk} G_k


_CLOSURE_MARGIN = 4  # covers the worst pairwise commutator excursion ([B, K])


def closure_check(hc: HeatContext) -> ClosureResult:
    """Fit all 15 pairwise commutators in the 6-generator span by least squares.

    Returns the max relative fit residual and the fitted structure constants;
    both restricted to the sub-block of degrees at least _CLOSURE_MARGIN away
    from the truncation edge.
    """
    if min(hc.m_order, hc.n_order) < 12:
        raise ValueError("closure check needs truncation orders >= 12")
    gens = heat_generators(hc).as_list()
    M, N = hc.m_order, hc.n_order
    keep = np.zeros((M + 1, N + 1), dtype=bool)
    keep[: M + 1 - _CLOSURE_MARGIN, : N + 1 - _CLOSURE_MARGIN] = True
    sel = np.flatnonzero(keep.ravel())
    if sel.size < 4:
        raise ValueError("degenerate interior: truncation too small after margins")
    design = np.column_stack(
        [g.entries[np.ix_(sel, sel)].ravel() for g in gens]
    )
    span_scale = np.abs(design).max()
    constants = np.zeros((6, 6, 6))
    worst = 0.0
    for i in range(6):
        for j in range(i + 1, 6):
            comm = commutator_bi(gens[i], gens[j])
            target = comm.entries[np.ix_(sel, sel)].ravel()
            coeff, *_ = np.linalg.lstsq(design, target, rcond=None)
            misfit = np.abs(target - design @ coeff).max()
            scale = max(np.abs(target).max(), span_scale, _TINY)
            worst = max(worst, float(misfit / scale))
            constants[i, j] = coeff
            constants[j, i] = -coeff
    return ClosureResult(residual=worst, structure_constants=constants)


def umbral_conjugation_residual(hc: HeatContext) -> float:
    """Scaled residual of L_q U = U L_cont with U the bivariate umbral weights."""
    ix, it = op_identity(hc.m_order), op_identity(hc.n_order)
    ddx = op_classical_derivative(hc.m_order)
    ddt = op_classical_derivative(hc.n_order)
    l_cont = from_kron(ix, ddt) - from_kron(ddx @ ddx, it)
    weights = from_kron(op_umbral_weights(hc.ctx_x, hc.m_order),
                        op_umbral_weights(hc.ctx_t, hc.n_order))
    lq = heat_operator(hc)
    lhs = lq.entries @ weights.entries
    rhs = weights.entries @ l_cont.entries
    scale = max(np.abs(lhs).max(), np.abs(rhs).max(), _TINY)
    return float(np.abs(lhs - rhs).max() / scale)
