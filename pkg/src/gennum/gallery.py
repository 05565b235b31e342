"""The example nets: graded elements whose principal ideals are not
idempotent-generated, the strict radical chain, the doubly indexed variant,
and closure witnesses.

beta takes the value eps^(i+1) on the i-th dyadic-valuation piece; beta_m
raises the exponent to (i+1)^m, giving the strictly decreasing prime-like
chain (each divides the previous, none is in the radical of the next).
gamma lives on the doubly indexed catalog with the separable exponent
(i+1) + (j+1).
"""

from __future__ import annotations

from fractions import Fraction

from . import polys
from .calculus import nth_root_skeleton
from .core import GenNum, add, make_graded, make_idempotent, mul
from .errors import NotApplicable
from .exponents import ExpFn
from .ideals import stationary
from .indexsets import GRID, compl, mkset


def gallery_beta() -> GenNum:
    return make_graded("nu2", (1, 1))


def gallery_beta_m(m: int) -> GenNum:
    if m < 1:
        raise ValueError("m >= 1")
    p = (Fraction(1),)
    for _ in range(m):
        p = polys.mul(p, (Fraction(1), Fraction(1)))
    return make_graded("nu2", p)


def gallery_gamma() -> GenNum:
    return make_graded("nu2sq", ExpFn.separable((1, 1), (1, 1)))


def grid_family():
    """One grid point per block: the carrier of the escape values."""
    return mkset(1, (GRID,))


def gallery_closure_witness(a: GenNum) -> GenNum:
    """y in the closure of aK but not in aK: equals a off the grid family and
    carries square-rooted exponents on it.

    Exists exactly when aK is not idempotent-generated; raises NotApplicable
    otherwise."""
    if stationary(a) is not None:
        raise NotApplicable("aK is generated by an idempotent: it is closed")
    g = grid_family()
    half = nth_root_skeleton(a, 2)
    return add(mul(a, make_idempotent(compl(g), a.mode)),
               mul(half, make_idempotent(g, a.mode)))
