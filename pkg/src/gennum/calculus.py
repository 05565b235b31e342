"""Constructive decompositions: clean idempotents, zero-divisor splittings,
Bezout generators, skeletons, roots.

The clean set and split sets are computed at block granularity from eventual
dominance: any germ modification of the textbook pointwise threshold sets
preserves the defining equations, which are what the contracts state.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from . import profiles
from .core import (GenNum, abs2, add, alive_region, classify_element,
                   equal_germ, make_idempotent, mknum, mul, skeleton_of, sub,
                   z_test, zero_region, INVERTIBLE)
from .errors import NotOrthogonal
from .indexsets import IndexSet, compl, diag_set, empty_set, inter, union
from .profiles import INF, is_inf
from .rats import rat
from .values import Term, mkval

skeleton = skeleton_of


def clean_idempotent(a: GenNum) -> IndexSet:
    """T with e_T idempotent and a + e_T invertible (exchange property).

    Block-granular version of the region where |a| <= 1/2 eventually: pieces
    where the exponent is positive (or the value vanishes), plus exponent-0
    pieces with dominant squared modulus <= 1/4.
    """
    quarter = Fraction(1, 4)

    def small(e, cf) -> bool:
        if is_inf(e):
            return True
        if e > 0:
            return True
        return e == 0 and cf is not None and cf.abs2() <= quarter

    T = compl(a.support())
    for (d, v) in a.laws:
        T = union(T, profiles.law_region(d, v, small, kind="colevel"))
    return T


def split_zero_divisors(x: GenNum, y: GenNum) -> IndexSet:
    """S with x*e_S = 0 and y*e_coS = 0, given x*y = 0."""
    if not mul(x, y).is_zero():
        raise NotOrthogonal("product is not zero")
    S = zero_region(x)
    for (dy, _) in y.laws:
        for D in dy.plus:
            ds = diag_set(D)
            if z_test(x, ds):
                S = union(S, ds)
    return S


@dataclass(frozen=True)
class BezoutResult:
    """aK + bK = gen*K with gen = r*a + s*b exactly; skeleton is the
    unit-coefficient normal form generating the same ideal."""

    gen: GenNum
    r: GenNum
    s: GenNum
    skeleton: GenNum


def bezout_gen(a: GenNum, b: GenNum) -> BezoutResult:
    """Generator of aK + bK with exact Bezout witnesses.

    The split set picks, per block germ, the summand of larger modulus; on
    its side the generator literally equals that summand, so membership of a
    and b and the linear combination identity are all exact.
    """
    d = sub(abs2(a), abs2(b))
    neg = profiles.negative_region(d)  # where |a| < |b| eventually
    Sa = compl(neg)
    r = make_idempotent(Sa, a.mode)
    s = make_idempotent(neg, a.mode)
    gen = add(mul(r, a), mul(s, b))
    return BezoutResult(gen, r, s, skeleton_of(gen))


def meet_gen(a: GenNum, b: GenNum) -> GenNum:
    """Generator of aK ∩ bK: per block germ the summand of smaller modulus."""
    d = sub(abs2(a), abs2(b))
    neg = profiles.negative_region(d)  # |a| < |b|
    ea = make_idempotent(neg, a.mode)
    eb = make_idempotent(compl(neg), a.mode)
    return add(mul(ea, a), mul(eb, b))


def nth_root_skeleton(x: GenNum, n: int) -> GenNum:
    """Skeleton with all exponents divided by n; its n-th power generates the
    same principal ideal as skeleton(x)."""
    if n < 1:
        raise ValueError("root index must be >= 1")
    sk = skeleton_of(x)
    laws = []
    for (dom, v) in sk.laws:
        t = v.num[0]
        laws.append((dom, mkval(v.family, (Term(t.coeff, t.exp.scale(Fraction(1, n))),))))
    return mknum(sk.mode, laws, sk.skeletal)
