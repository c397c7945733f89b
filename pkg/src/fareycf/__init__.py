"""Exact continued-fraction convergents and mediants via tent-map dynamics.

The package computes regular/semi-regular continued fractions in exact
rational arithmetic, runs the planar natural extension of the Farey tent map
and its induced first-return systems on rectangle-algebra regions, and checks
the classical metric theory (limiting distributions of approximation
coefficients, Legendre-type theorems, Levy exponents) at desk scale.
"""

from .cf import (
    Rational,
    RcfExpansion,
    SrcfDigits,
    alternate_expansion,
    depth,
    farey_digit_pairs,
    farey_expansion_digits,
    gauss_step,
    rcf_convergents,
    rcf_expand,
    srcf_convergents,
)
from .dynamics import (
    FareyState,
    PointInOmega,
    advance,
    epsilon_bits,
    farey_convergent,
    farey_step,
    ito_convergent,
    natural_extension_step,
    orbit,
)
from .errors import (
    DigitBudgetError,
    FareyCFError,
    NonRecurrenceError,
    PrecisionError,
    RegionParseError,
)
from .regions import Verdict, h_value, is_proper, measure, membership, parse_region, sublevel_measure

__version__ = "0.1.0"

__all__ = [
    "Rational",
    "RcfExpansion",
    "SrcfDigits",
    "alternate_expansion",
    "depth",
    "farey_digit_pairs",
    "farey_expansion_digits",
    "gauss_step",
    "rcf_convergents",
    "rcf_expand",
    "srcf_convergents",
    "FareyState",
    "PointInOmega",
    "advance",
    "epsilon_bits",
    "farey_convergent",
    "farey_step",
    "ito_convergent",
    "natural_extension_step",
    "orbit",
    "Verdict",
    "h_value",
    "is_proper",
    "measure",
    "membership",
    "parse_region",
    "sublevel_measure",
    "DigitBudgetError",
    "FareyCFError",
    "NonRecurrenceError",
    "PrecisionError",
    "RegionParseError",
    "__version__",
]
