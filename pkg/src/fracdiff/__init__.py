"""Differintegrals of power-logarithmic series and Meijer G-functions."""

from .errors import *  # noqa: F401,F403
from .expr import compile_expr, evaluate, parse, to_text
from .grunwald import GlConfig, fp_power_integral, gl_differint, hadamard_fp_demo
from .meijer import (
    GParams,
    builtin_gform,
    check_convergence,
    fracdiff_shift,
    fracdiff_shift_general,
    frint_params,
    slater_expand,
)
from .operator import (
    FracOrder,
    fracdiff_closed_form,
    fracdiff_power,
    fracdiff_power_log,
    fracdiff_product,
    fracdiff_series,
)
from .series import PowerLogSeries, PowerLogTerm, build

__version__ = "0.1.0"
