"""Exact generating functions for symmetric and shifted symmetric functions."""

from .combinatorics import (
    StraightenResult,
    conjugate,
    falling_factorial,
    stirling2,
    straighten,
)
from .families import (
    correlation_function,
    eval_element,
    eval_generators,
    family_table,
    hl_P,
    pfaffian,
    schur_bialternant,
    schur_e,
    schur_h,
    schurq,
)
from .ring import DerivationFamily, Element, format_element, hs_apply, parse_element
from .scalars import T, TPoly
from .series import CoeffTable, TruncatedSeries, correlation_expand, extract, invert
from .shifted import (
    qstar_multivar,
    qstar_series,
    rstar_multivar,
    rstar_series,
    shifted_schur,
    tau_apply,
)

__version__ = "0.1.0"
