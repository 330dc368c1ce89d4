"""Numerics for mollified and discrete negative zeta moments.

Submodules, roughly bottom-up: ``arith`` (multiplicative tables and
convolutions), ``zeta`` (high-precision point values and a vectorized
machine evaluator), ``zeros`` (certified zero caches), ``mollifier``
(tapered coefficient tables), ``constants`` (Euler products and polytope
volumes), ``moments`` (zero-sum reports and lower bounds), ``recipe``
(shifted local sums and series factorizations), ``twisted`` (contour
identities and main-term comparisons), ``characters`` (Gauss sums and
additive twists), ``cli`` (reporting entry point).
"""
from __future__ import annotations

__version__ = "0.1.0"

from .arith import CoefficientTable, FactoredInteger, tau_alpha_table
from .constants import euler_A0, polytope_mc, predicted_moments
from .errors import (
    CapacityError,
    ConfigError,
    IntegrityError,
    PreconditionError,
    VerificationError,
)
from .mollifier import MollifierParams, build_tables
from .moments import MomentReport, holder_verify, moment_report
from .recipe import ShiftTuple, Z_value
from .twisted import mcI_mcJ_evaluate, twisted_compare
from .zeros import ZeroCache, build_cache, cache_io, count_exact
from .zeta import ComplexHP, zeta_eval, zeta_f64

__all__ = [
    "__version__",
    "CapacityError",
    "CoefficientTable",
    "ComplexHP",
    "ConfigError",
    "FactoredInteger",
    "IntegrityError",
    "MollifierParams",
    "MomentReport",
    "PreconditionError",
    "ShiftTuple",
    "VerificationError",
    "ZeroCache",
    "Z_value",
    "build_cache",
    "build_tables",
    "cache_io",
    "count_exact",
    "euler_A0",
    "holder_verify",
    "mcI_mcJ_evaluate",
    "moment_report",
    "polytope_mc",
    "predicted_moments",
    "tau_alpha_table",
    "twisted_compare",
    "zeta_eval",
    "zeta_f64",
]
