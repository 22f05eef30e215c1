"""q-umbral calculus engine.

Exact q-derivative/beta-operator algebra on truncated power series, umbral
q-special functions with lattice-recurrence oracles, and the q-heat symmetry
apparatus, exposed through a CLI and a FastAPI service.
"""

from .qcore import QContext, Variant, cn_coefficient, q_bracket, q_factorial_ratio
from .opspace import (
    CoeffSeries,
    OperatorMatrix,
    beta_shift_expansion,
    commutator,
    op_beta,
    op_beta_x,
    op_delta,
    op_euler,
    op_identity,
    op_mult_x,
    op_shift,
    project_on_one,
)
from .qfun import (
    QExp,
    QGauss,
    QHermite,
    QSeriesFunction,
    QShiftedPower,
    ScanRange,
    build,
    convergence_radius,
    evaluate,
    first_zero,
    hermite_residual,
)
from .lattice import (
    GeometricLattice,
    RightExp,
    SymExp,
    march_right_exp,
    march_symmetric_exp,
    residual_on_lattice,
)
from .heat import (
    BiCoeffSeries,
    HeatContext,
    HeatGeneratorSet,
    boost_solution,
    closure_check,
    heat_generators,
    heat_operator,
    heat_polynomials,
    separation_solution,
    verify_symmetry,
)
from .verify import PropertyReport, format_reports, run_verification

__version__ = "0.1.0"

__all__ = [
    "QContext",
    "Variant",
    "q_bracket",
    "q_factorial_ratio",
    "cn_coefficient",
    "CoeffSeries",
    "OperatorMatrix",
    "op_shift",
    "op_delta",
    "op_mult_x",
    "op_beta",
    "op_beta_x",
    "op_euler",
    "op_identity",
    "commutator",
    "project_on_one",
    "beta_shift_expansion",
    "QExp",
    "QGauss",
    "QShiftedPower",
    "QHermite",
    "QSeriesFunction",
    "ScanRange",
    "build",
    "evaluate",
    "convergence_radius",
    "first_zero",
    "hermite_residual",
    "GeometricLattice",
    "RightExp",
    "SymExp",
    "march_right_exp",
    "march_symmetric_exp",
    "residual_on_lattice",
    "HeatContext",
    "HeatGeneratorSet",
    "BiCoeffSeries",
    "heat_operator",
    "heat_generators",
    "heat_polynomials",
    "separation_solution",
    "boost_solution",
    "verify_symmetry",
    "closure_check",
    "PropertyReport",
    "run_verification",
    "format_reports",
]
