"""Numerical analysis of tent spaces, Duhamel products and Cesaro-like operators on the disk."""

from .config import Config, load_config
from .measures import CarlesonAnalysis, MeasureOn01, carleson_analyze, kernel_measure_integral, moment, tail
from .norms import (
    NormEstimate,
    TentParams,
    bergman_norm,
    growth_check,
    hardy_norm,
    tent_norm,
    tent_norm_derivative,
)
from .operators import (
    OperatorApplication,
    cesaro_classical,
    cesaro_like,
    duhamel_operator,
    hadamard_bergman,
)
from .quadrature import (
    DiskGrid,
    PolarRule,
    QuadratureError,
    SupGrid,
    integrate_circle,
    integrate_disk,
    integrate_radial,
    sup_on_grid,
)
from .series import (
    DiskPoint,
    TaylorSeries,
    TestFunctionSpec,
    add,
    cauchy_multiply,
    differentiate,
    dilate,
    duhamel,
    duhamel_split_identity_residual,
    evaluate,
    hadamard,
    make_test_function,
    modified_hadamard,
)
from .verify import VerificationReport, run_all

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
