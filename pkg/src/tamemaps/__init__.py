"""Tame morphisms from curves over finite fields to the projective line.

Exact arithmetic for fields, curves, local expansions, the fourth-power symbol
SY(f, g), pseudotameness and the constructive lift to tame maps, conic fibers
for elliptic curves in characteristic 2, the odd-characteristic sieve and tame
Belyi maps.
"""
from .curve import (CurveModel, Differential, Divisor, FuncElem, Place, d, divisor_of, local_expand,
                    residue, riemann_roch_basis, riemann_roch_space, valuation, zeta_inv_sq)
from .errors import *  # noqa: F401,F403
from .fields import FieldElem, FieldSpec, field
from .grammar import parse_curve, parse_field, parse_function

__version__ = "0.1.0"
