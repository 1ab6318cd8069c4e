"""Exact generalized continued fractions, subfactorials and expansions of e."""

from .cf_core import (
    FAMILIES,
    AffineRule,
    Convergent,
    ExplicitList,
    Family,
    GCFSpec,
    GCFTerm,
    convergents,
    evaluate,
    simple_to_gcf,
    terms,
)
from .cf_invert import InversionResult, invert, invert_rationals
from .constants import CertifiedRational, constant_table, e_enclosure, log10_abs
from .derangement import (
    derangement_probability,
    factorial,
    subfactorial_integral,
    subfactorial_nearest,
    subfactorial_rec1,
    subfactorial_rec2,
    subfactorial_sum,
)

__version__ = "0.1.0"
