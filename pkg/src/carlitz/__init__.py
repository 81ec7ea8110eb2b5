"""Exact arithmetic for Carlitz multiple polylogarithms over F_q(theta).

The package computes the multiple polylogarithm families and their star
variants at both the infinite and the finite places, builds the associated
t-modules with their logarithm/exponential coefficient matrices, extends
the v-adic values to the closed unit polydisc, and tests the
torsion / simultaneous-vanishing / Eulerianness equivalences at desk scale.

Everything is exact or carries an explicit certified precision; see the
README for the module map and the CLI.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .errors import CarlitzError, DomainError, ElementParseError, PrecisionError
from .ext import ExtElem, ExtField
from .fq import Fq
from .laurent import (
    InfLaurent,
    carlitz_period_power,
    embed_k_inf,
    rational_reconstruct,
)
from .polylog import (
    CompositionIndex,
    cmpl_eval_inf,
    cmpl_eval_v,
    cmspl_eval_inf,
    cmspl_eval_v,
    l_sequence,
)
from .poly import Poly
from .ratfunc import RatFunc
from .taupoly import TauMatrixPoly
from .tmodule import TModule, build_tmodule, carlitz_module, special_point
from .vadic import VAdicNumber, VPlaceEmbedding, embed_k_v, hensel_lift

__version__ = "0.1.0"

__all__ = [
    "CarlitzError",
    "CompositionIndex",
    "DomainError",
    "ElementParseError",
    "ExtElem",
    "ExtField",
    "Fq",
    "InfLaurent",
    "KERNEL_BACKEND",
    "Poly",
    "PrecisionError",
    "RatFunc",
    "TModule",
    "TauMatrixPoly",
    "VAdicNumber",
    "VPlaceEmbedding",
    "build_tmodule",
    "carlitz_module",
    "carlitz_period_power",
    "cmpl_eval_inf",
    "cmpl_eval_v",
    "cmspl_eval_inf",
    "cmspl_eval_v",
    "embed_k_inf",
    "embed_k_v",
    "hensel_lift",
    "l_sequence",
    "rational_reconstruct",
    "special_point",
]
