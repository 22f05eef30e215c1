"""Request/response models and the command implementations behind both the
HTTP API and the CLI.

Every command produces structured rows plus the canonical CSV rendering
(%.12e numerics, '#'-prefixed comment lines); rendering once here keeps the
byte-identical determinism contract in a single place.
"""

from __future__ import annotations

import math
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from . import heat, lattice, qfun
from .qcore import QContext, Variant
from .verify import PropertyReport, format_reports, run_verification

VariantName = Literal["right", "left", "sym"]


def _render_csv(header: list[str], rows: list[list[object]], comments: list[str]) -> str:
    def cell(value: object) -> str:
        if value is None:
            return ""
        if isinstance(value, bool):
            return "1" if value else "0"
        if isinstance(value, int):
            return str(value)
        return "%.12e" % value

    lines = [",".join(header)]
    lines.extend(",".join(cell(v) for v in row) for row in rows)
    lines.extend(comments)
    return "\n".join(lines) + "\n"


def _grid(start: float, stop: float, step: float) -> list[float]:
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(count)]


class _QModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    q: float
    variant: VariantName = "right"

    @field_validator("q")
    @classmethod
    def _q_valid(cls, v: float) -> float:
        if not math.isfinite(v) or v <= 0.0:
            raise ValueError("q must be a positive real")
        if v == 1.0:
            raise ValueError("q must differ from 1")
        return v

    def context(self) -> QContext:
        return QContext(self.q, Variant(self.variant))


class EvalRequest(_QModel):
    """Tabulate a q-function against its continuous counterpart on an x-grid."""

    kind: Literal["exp", "gauss"] = "exp"
    lam: float = Field(default=1.0, alias="lambda")
    trunc: int = Field(default=96, ge=4)
    xmin: float = 0.0
    xmax: float = 4.0
    step: float = 0.1

    @model_validator(mode="after")
    def _range_valid(self) -> "EvalRequest":
        if self.step <= 0.0:
            raise ValueError("step must be positive")
        if self.xmax < self.xmin:
            raise ValueError("xmax must not be below xmin")
        return self


class EvalRow(BaseModel):
    x: float
    continuous: float
    q_series: float
    converged: bool
    recurrence: Optional[float] = None


class EvalResponse(BaseModel):
    columns: list[str]
    rows: list[EvalRow]
    csv: str


class FirstZeroRequest(BaseModel):
    """Sweep the first-zero location of a q-function over a q-grid."""

    model_config = ConfigDict(populate_by_name=True)

    variant: VariantName = "right"
    kind: Literal["exp", "gauss"] = "exp"
    lam: float = Field(default=-1.0, alias="lambda")
    trunc: int = Field(default=128, ge=4)
    qmin: float = 1.05
    qmax: float = 2.0
    qstep: float = 0.05
    scan_xmax: float = 25.0
    scan_step: float = 0.05

    @model_validator(mode="after")
    def _grid_valid(self) -> "FirstZeroRequest":
        if self.variant == "left":
            raise ValueError("first-zero sweeps need a convergence classification; "
                             "the left variant has none")
        if self.qstep <= 0.0 or self.scan_step <= 0.0:
            raise ValueError("grid steps must be positive")
        if self.qmax < self.qmin:
            raise ValueError("qmax must not be below qmin")
        qs = _grid(self.qmin, self.qmax, self.qstep)
        if any(q <= 0.0 or q == 1.0 for q in qs):
            raise ValueError("q-grid touches an invalid dilation parameter")
        if min(qs) < 1.0 < max(qs):
            raise ValueError("q-grid must not straddle q = 1")
        return self


class FirstZeroRow(BaseModel):
    q: float
    first_zero: Optional[float]


class FirstZeroResponse(BaseModel):
    columns: list[str]
    rows: list[FirstZeroRow]
    csv: str


class HeatRequest(_QModel):
    """Sample a q-heat solution on a rectangular (x, t) grid."""

    mode: Literal["separation", "boost"] = "separation"
    lam: float = Field(default=1.0, alias="lambda")
    t0: float = 1.0
    u0: float = 1.0
    trunc: int = Field(default=24, ge=4)
    xmin: float = 0.0
    xmax: float = 1.0
    xstep: float = 0.125
    tmin: float = 0.0
    tmax: float = 0.5
    tstep: float = 0.0625

    @model_validator(mode="after")
    def _heat_valid(self) -> "HeatRequest":
        if self.xstep <= 0.0 or self.tstep <= 0.0:
            raise ValueError("grid steps must be positive")
        if self.xmax < self.xmin or self.tmax < self.tmin:
            raise ValueError("grid bounds are inverted")
        if self.mode == "separation" and self.lam <= 0.0:
            raise ValueError("separation mode needs lambda > 0")
        if self.mode == "boost" and self.t0 <= 0.0:
            raise ValueError("boost mode needs t0 > 0")
        return self


class HeatRow(BaseModel):
    x: float
    t: float
    u: float


class HeatResponse(BaseModel):
    columns: list[str]
    rows: list[HeatRow]
    max_pde_residual: float
    csv: str


class HermiteRequest(_QModel):
    """Tabulate the generalized-Hermite solution for a given eigenvalue."""

    energy: float = -1.0
    a1: float = 1.0
    a2: float = 0.0
    trunc: int = Field(default=96, ge=4)
    xmin: float = 0.0
    xmax: float = 2.0
    step: float = 0.1

    @model_validator(mode="after")
    def _range_valid(self) -> "HermiteRequest":
        if self.step <= 0.0:
            raise ValueError("step must be positive")
        if self.xmax < self.xmin:
            raise ValueError("xmax must not be below xmin")
        return self


class HermiteResponse(BaseModel):
    columns: list[str]
    rows: list[EvalRow]
    max_recurrence_residual: float
    csv: str


class VerifyRequest(BaseModel):
    qs: Optional[list[float]] = None
    trunc: Optional[int] = None
    tol: Optional[float] = None

    @field_validator("qs")
    @classmethod
    def _qs_valid(cls, v):
        if v is not None:
            for q in v:
                if not math.isfinite(q) or q <= 0.0 or q == 1.0:
                    raise ValueError(f"invalid q in list: {q}")
        return v

    @field_validator("trunc")
    @classmethod
    def _trunc_valid(cls, v):
        if v is not None and v < 4:
            raise ValueError("truncation override must be at least 4")
        return v


class PropertyReportModel(BaseModel):
    name: str
    passed: bool
    residual: float
    tol: float


class VerifyResponse(BaseModel):
    reports: list[PropertyReportModel]
    all_passed: bool
    report_text: str


_MARCH_STEPS = 48
_SPOT_CHECK_TOL = 1e-9


def _recurrence_right(ctx: QContext, lam: float, f: qfun.QSeriesFunction, x: float) -> float:
    if x <= 0.0:
        return qfun.evaluate(f, x).value
    if ctx.q > 1.0:
        anchor = x * ctx.q**-_MARCH_STEPS
        lat = lattice.GeometricLattice(anchor, ctx, 0, _MARCH_STEPS)
        seed = qfun.evaluate(f, anchor).value
        return float(lattice.march_right_exp(lat, lam, seed)[-1])
    anchor = x * ctx.q**_MARCH_STEPS
    lat = lattice.GeometricLattice(anchor, ctx, -_MARCH_STEPS, 0)
    seed = qfun.evaluate(f, anchor).value
    return float(lattice.march_right_exp(lat, lam, seed)[0])


def _recurrence_symmetric(ctx: QContext, lam: float, f: qfun.QSeriesFunction, x: float) -> float:
    if x <= 0.0:
        return qfun.evaluate(f, x).value
    if ctx.q > 1.0:
        anchor = x * ctx.q**-_MARCH_STEPS
        lat = lattice.GeometricLattice(anchor, ctx, -1, _MARCH_STEPS)
        seeds = (qfun.evaluate(f, anchor).value, qfun.evaluate(f, anchor / ctx.q).value)
        return float(lattice.march_symmetric_exp(lat, lam, seeds)[-1])
    anchor = x * ctx.q**_MARCH_STEPS
    lat = lattice.GeometricLattice(anchor, ctx, -_MARCH_STEPS, 1)
    seeds = (qfun.evaluate(f, anchor).value, qfun.evaluate(f, anchor / ctx.q).value)
    return float(lattice.march_symmetric_exp(lat, lam, seeds)[0])


def _spot_check_against_recurrence(rows: list[EvalRow], radius: float) -> None:
    candidates = [
        r
        for r in rows
        if r.recurrence is not None and 0.0 < r.x < radius and math.isfinite(r.recurrence)
    ]
    for row in sorted(candidates, key=lambda r: r.x)[:3]:
        scale = max(abs(row.q_series), abs(row.recurrence))
        if scale > 0.0 and abs(row.q_series - row.recurrence) > _SPOT_CHECK_TOL * scale:
            raise RuntimeError(
                f"series/recurrence mismatch at x={row.x}: "
                f"{row.q_series} vs {row.recurrence}"
            )


def run_eval(req: EvalRequest) -> EvalResponse:
    ctx = req.context()
    kind: qfun.Kind = qfun.QExp(req.lam) if req.kind == "exp" else qfun.QGauss(req.lam)
    f = qfun.build(kind, ctx, req.trunc)
    try:
        radius = qfun.convergence_radius(kind, ctx)
    except ValueError:
        radius = math.inf  # left variant: unclassified, report convergence flags only
    with_recurrence = req.kind == "exp" and req.variant in ("right", "sym")
    rows: list[EvalRow] = []
    for x in _grid(req.xmin, req.xmax, req.step):
        result = qfun.evaluate(f, x)
        rec = None
        if with_recurrence:
            if req.variant == "right":
                rec = _recurrence_right(ctx, req.lam, f, x)
            else:
                rec = _recurrence_symmetric(ctx, req.lam, f, x)
        rows.append(
            EvalRow(
                x=x,
                continuous=qfun.continuous_value(kind, x),
                q_series=result.value,
                converged=result.converged,
                recurrence=rec,
            )
        )
    if with_recurrence:
        _spot_check_against_recurrence(rows, radius)
    columns = ["x", "continuous", "q_series", "converged"]
    if with_recurrence:
        columns.append("recurrence")
    csv_rows = [
        [r.x, r.continuous, r.q_series, r.converged] + ([r.recurrence] if with_recurrence else [])
        for r in rows
    ]
    return EvalResponse(columns=columns, rows=rows, csv=_render_csv(columns, csv_rows, []))


def run_firstzero(req: FirstZeroRequest) -> FirstZeroResponse:
    rows: list[FirstZeroRow] = []
    for q in _grid(req.qmin, req.qmax, req.qstep):
        ctx = QContext(q, Variant(req.variant))
        kind: qfun.Kind = qfun.QExp(req.lam) if req.kind == "exp" else qfun.QGauss(req.lam)
        f = qfun.build(kind, ctx, req.trunc)
        radius = qfun.convergence_radius(kind, ctx)
        end = req.scan_xmax if math.isinf(radius) else min(req.scan_xmax, 0.999 * radius)
        zero = None
        if end > req.scan_step:
            zero = qfun.first_zero(f, qfun.ScanRange(req.scan_step, end, req.scan_step))
        rows.append(FirstZeroRow(q=q, first_zero=zero))
    columns = ["q", "first_zero"]
    csv_rows = [[r.q, r.first_zero] for r in rows]
    return FirstZeroResponse(
        columns=columns, rows=rows, csv=_render_csv(columns, csv_rows, [])
    )


def run_heat(req: HeatRequest) -> HeatResponse:
    ctx = req.context()
    hc = heat.HeatContext(ctx, ctx, req.trunc, req.trunc)
    if req.mode == "separation":
        solution = heat.separation_solution(hc, req.lam)
    else:
        solution = heat.boost_solution(hc, req.t0, req.u0)
    residual = heat.pde_residual(hc, solution)
    rows = [
        HeatRow(x=x, t=t, u=solution.eval_at(x, t))
        for x in _grid(req.xmin, req.xmax, req.xstep)
        for t in _grid(req.tmin, req.tmax, req.tstep)
    ]
    columns = ["x", "t", "u"]
    csv_rows = [[r.x, r.t, r.u] for r in rows]
    comments = ["# max_pde_residual=%.12e" % residual]
    return HeatResponse(
        columns=columns,
        rows=rows,
        max_pde_residual=residual,
        csv=_render_csv(columns, csv_rows, comments),
    )


def run_hermite(req: HermiteRequest) -> HermiteResponse:
    ctx = req.context()
    kind = qfun.QHermite(req.energy, req.a1, req.a2)
    f = qfun.build(kind, ctx, req.trunc)
    residual = qfun.hermite_residual(f)
    rows: list[EvalRow] = []
    for x in _grid(req.xmin, req.xmax, req.step):
        result = qfun.evaluate(f, x)
        rows.append(
            EvalRow(
                x=x,
                continuous=qfun.continuous_value(kind, x),
                q_series=result.value,
                converged=result.converged,
            )
        )
    columns = ["x", "continuous", "q_series", "converged"]
    csv_rows = [[r.x, r.continuous, r.q_series, r.converged] for r in rows]
    comments = ["# max_recurrence_residual=%.12e" % residual]
    return HermiteResponse(
        columns=columns,
        rows=rows,
        max_recurrence_residual=residual,
        csv=_render_csv(columns, csv_rows, comments),
    )


def run_verify(req: VerifyRequest) -> VerifyResponse:
    reports: list[PropertyReport] = run_verification(req.qs, req.trunc, req.tol)
    models = [
        PropertyReportModel(name=r.name, passed=r.passed, residual=r.residual, tol=r.tol)
        for r in reports
    ]
    return VerifyResponse(
        reports=models,
        all_passed=all(r.passed for r in reports),
        report_text=format_reports(reports) + "\n",
    )
