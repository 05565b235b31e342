"""Generalized numbers: exact arithmetic, equality, valuation, order.

A GenNum is a finite list of laws (domain, value) with exactly disjoint
domains; the uncovered region is zero.  Canonical form drops negligible laws
(value zero, domain not accumulating at 0, or exponent liminf +infinity), so
an element is zero in the ring iff its law list is empty, and two elements
are equal iff their exact difference canonicalizes to no laws.

The `skeletal` flag marks results known only up to eventually bounded
factors (they remain exact in valuation and in every ideal-membership
sense); exact operations never set it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from . import profiles
from .errors import (DivisionByZero, GennumError, ModeError, NotInvertible,
                     NotInvertibleOnS, NotModerate, Undecided)
from .exponents import ExpFn
from .indexsets import (IndexSet, PieceFamily, classify_set, compl, diff,
                        empty_set, family_support, full_set, inter, union,
                        FULL_AT_ZERO, NULL_AT_ZERO, SPLITTING)
from .polys import Poly
from .profiles import INF, cells, is_inf
from .rats import Coeff, ONE, rat
from .values import (Term, Val, mkval, val_add, val_conj, val_inv,
                     val_monomial, val_mul, val_neg, val_pow_int,
                     val_skeleton, VAL_ONE, val_const)

R = "R"
C = "C"

Law = Tuple[IndexSet, Val]


@dataclass(frozen=True)
class GenNum:
    mode: str
    laws: Tuple[Law, ...]
    skeletal: bool = False

    def is_zero(self) -> bool:
        return not self.laws

    def support(self) -> IndexSet:
        return profiles.support_set(self)

    def __str__(self) -> str:
        if not self.laws:
            return "0"
        parts = [f"[{v} on {d}]" for (d, v) in self.laws]
        s = " + ".join(parts)
        if self.skeletal:
            s += "  (skeletal)"
        return s


class _Shim:
    def __init__(self, laws):
        self.laws = laws


_LAW_STATUS_CACHE: dict = {}


def _law_status(domain: IndexSet, val: Val) -> str:
    if val.is_zero() or domain.is_null_germ():
        return "negligible"
    key = (domain, val)
    hit = _LAW_STATUS_CACHE.get(key)
    if hit is not None:
        return hit
    v = profiles.valuation_cells(cells(_Shim([(domain, val)])))
    out = "negligible" if is_inf(v) else (
        "non-moderate" if v == profiles.NEG_INF else "ok")
    if len(_LAW_STATUS_CACHE) < 200000:
        _LAW_STATUS_CACHE[key] = out
    return out


def mknum(mode: str, laws: Iterable[Law], skeletal: bool = False) -> GenNum:
    """Canonicalize: drop negligible laws, merge value-equal laws, sort.

    Moderateness (exponent liminf > -infinity on the law's own domain) is
    enforced here; it cannot be a property of the value alone.
    """
    merged = {}
    for (d, v) in laws:
        status = _law_status(d, v)
        if status == "negligible":
            continue
        if status == "non-moderate":
            raise NotModerate(f"law {v} on {d} has exponent liminf -infinity")
        k = v.key()
        if k in merged:
            merged[k] = (union(merged[k][0], d), v)
        else:
            merged[k] = (d, v)
    out = tuple(sorted(merged.values(), key=lambda law: (law[1].key(), law[0].key())))
    return GenNum(mode, out, skeletal)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def zero(mode: str = R) -> GenNum:
    return GenNum(mode, ())


def make_rational(c, mode: str = R) -> GenNum:
    cf = Coeff.of(c)
    if mode == R and not cf.is_real():
        raise ModeError("complex coefficient in R mode")
    if cf.is_zero():
        return zero(mode)
    return mknum(mode, [(full_set(), val_const(cf))])


def make_imag(mode: str = C) -> GenNum:
    if mode != C:
        raise ModeError("the imaginary unit lives in C mode")
    return mknum(C, [(full_set(), val_const(Coeff(Fraction(0), Fraction(1))))])


def make_alpha(mode: str = R) -> GenNum:
    return mknum(mode, [(full_set(), val_monomial(ONE, ExpFn.const(1)))])


def alpha_power(e, mode: str = R) -> GenNum:
    return mknum(mode, [(full_set(), val_monomial(ONE, ExpFn.const(rat(e))))])


def make_idempotent(s: IndexSet, mode: str = R) -> GenNum:
    return mknum(mode, [(s, VAL_ONE)])


def make_graded(family: Union[PieceFamily, str], g, coeff=1, mode: str = R) -> GenNum:
    """coeff * eps^g(piece) on the family's support.

    g: an ExpFn, a polynomial in the piece index (tuple of rationals, low
    degree first), or a rational constant.  Rejects exponent laws with
    liminf -infinity (non-moderate nets).
    """
    fam = family if isinstance(family, PieceFamily) else PieceFamily(str(family))
    if isinstance(g, ExpFn):
        e = g
    elif isinstance(g, tuple):
        e = ExpFn.of_poly_i(g)
    else:
        e = ExpFn.const(rat(g))
    cf = Coeff.of(coeff)
    if mode == R and not cf.is_real():
        raise ModeError("complex coefficient in R mode")
    if not e.bounded_below():
        raise NotModerate(f"exponent {e} has liminf -infinity")
    val = mkval(fam.kind, (Term(cf, e),))
    return mknum(mode, [(family_support(fam), val)])


# ---------------------------------------------------------------------------
# ring operations
# ---------------------------------------------------------------------------


def _check_modes(x: GenNum, y: GenNum) -> str:
    if x.mode != y.mode:
        raise ModeError(f"mixing modes {x.mode} and {y.mode}")
    return x.mode


def add(x: GenNum, y: GenNum) -> GenNum:
    mode = _check_modes(x, y)
    sx, sy = x.support(), y.support()
    laws: List[Law] = []
    for (dx, vx) in x.laws:
        for (dy, vy) in y.laws:
            laws.append((inter(dx, dy), val_add(vx, vy)))
        laws.append((diff(dx, sy), vx))
    for (dy, vy) in y.laws:
        laws.append((diff(dy, sx), vy))
    return mknum(mode, laws, x.skeletal or y.skeletal)


def neg(x: GenNum) -> GenNum:
    return GenNum(x.mode, tuple((d, val_neg(v)) for (d, v) in x.laws), x.skeletal)


def sub(x: GenNum, y: GenNum) -> GenNum:
    return add(x, neg(y))


def mul(x: GenNum, y: GenNum) -> GenNum:
    mode = _check_modes(x, y)
    laws: List[Law] = []
    for (dx, vx) in x.laws:
        for (dy, vy) in y.laws:
            laws.append((inter(dx, dy), val_mul(vx, vy)))
    return mknum(mode, laws, x.skeletal or y.skeletal)


def conj(x: GenNum) -> GenNum:
    return GenNum(x.mode, tuple((d, val_conj(v)) for (d, v) in x.laws), x.skeletal)


def scale(x: GenNum, c) -> GenNum:
    return mul(x, make_rational(c, x.mode))


def pow_int(x: GenNum, n: int) -> GenNum:
    if n == 0:
        return make_rational(1, x.mode)
    if n < 0:
        return pow_int(invert(x), -n)
    out = x
    for _ in range(n - 1):
        out = mul(out, x)
    return out


def pow_rational(x: GenNum, e) -> GenNum:
    """x^e for rational e; non-integer e needs per-law unit monomials."""
    e = rat(e)
    if e.denominator == 1:
        return pow_int(x, e.numerator)
    laws = []
    for (d, v) in x.laws:
        if len(v.num) != 1:
            raise GennumError("rational powers need single-term values")
        t = v.num[0]
        root = t.coeff.abs_exact()
        if t.coeff != ONE and (root is None or Coeff(root) != t.coeff):
            raise GennumError("rational powers need unit or positive rational "
                              "coefficients")
        cf = ONE if t.coeff == ONE else _rat_pow_coeff(t.coeff.re, e)
        laws.append((d, mkval(v.family, (Term(cf, t.exp.scale(e)),))))
    return mknum(x.mode, laws, x.skeletal)


def _rat_pow_coeff(c: Fraction, e: Fraction) -> Coeff:
    from .rats import rational_sqrt
    if e == Fraction(1, 2):
        r = rational_sqrt(c)
        if r is not None:
            return Coeff(r)
    if e.denominator == 1:
        return Coeff(c ** e.numerator)
    raise GennumError(f"coefficient {c}^{e} is not rational")


# ---------------------------------------------------------------------------
# equality, valuation
# ---------------------------------------------------------------------------


def equal_germ(x: GenNum, y: GenNum) -> bool:
    """True iff x - y is negligible, i.e. x == y in the ring."""
    return sub(x, y).is_zero()


def is_zero(x: GenNum) -> bool:
    return x.is_zero()


_VAL_CACHE: dict = {}


def valuation(x: GenNum):
    """Sharp valuation: exact rational, or +inf exactly for 0."""
    if x.is_zero():
        return INF
    hit = _VAL_CACHE.get(x)
    if hit is None:
        hit = profiles.valuation_cells(cells(x))
        if len(_VAL_CACHE) < 100000:
            _VAL_CACHE[x] = hit
    return hit


def sharp_dist(x: GenNum, y: GenNum):
    return valuation(sub(x, y))


def sharp_norm_display(v) -> str:
    return "0" if is_inf(v) else f"e^(-{v})"


# ---------------------------------------------------------------------------
# order and lattice (R mode)
# ---------------------------------------------------------------------------


def _require_R(x: GenNum) -> None:
    if x.mode != R:
        raise ModeError("order operations live in R mode")


def eventual_signs(x: GenNum):
    return profiles.sign_cells(cells(x))


def leq(x: GenNum, y: GenNum) -> bool:
    _require_R(x)
    _require_R(y)
    d = sub(y, x)
    return all(s >= 0 for s in eventual_signs(d))


def sup_num(x: GenNum, y: GenNum) -> GenNum:
    """Lattice join; skeletal only when a sign region leaves the fragment."""
    _require_R(x)
    d = sub(x, y)
    try:
        neg_reg = profiles.negative_region(d)  # where x < y eventually
    except Undecided:
        return _skeletal_select(x, y, lambda ex, ey: min(ex, ey))
    ey = make_idempotent(neg_reg, x.mode)
    ex = make_idempotent(compl(neg_reg), x.mode)
    return add(mul(x, ex), mul(y, ey))


def inf_num(x: GenNum, y: GenNum) -> GenNum:
    return neg(sup_num(neg(x), neg(y)))


def _skeletal_select(x: GenNum, y: GenNum, pick) -> GenNum:
    sk = skeleton_of(add(abs_num(x), abs_num(y)))
    return GenNum(sk.mode, sk.laws, True)


def abs_num(x: GenNum) -> GenNum:
    """|x|: exact in R mode; in C mode exact for single terms with rational
    modulus, else a skeletal unit-coefficient stand-in."""
    if x.mode == R:
        try:
            negr = profiles.negative_region(x)
        except Undecided:
            return GenNum(x.mode, skeleton_of(x).laws, True)
        e_neg = make_idempotent(negr, x.mode)
        return sub(x, mul(scale(x, 2), e_neg))
    laws = []
    skel = x.skeletal
    for (d, v) in x.laws:
        if len(v.num) == 1 and len(v.den) == 1:
            r = v.num[0].coeff.abs_exact()
            if r is not None:
                laws.append((d, mkval(v.family, (Term(Coeff(r), v.num[0].exp),))))
                continue
        laws.append((d, val_skeleton(v)))
        skel = True
    return mknum(R, laws, skel)


def abs2(x: GenNum) -> GenNum:
    """x * conj(x), always exact; real-valued."""
    y = mul(x, conj(x))
    return GenNum(R, y.laws, y.skeletal)


def skeleton_of(x: GenNum) -> GenNum:
    return mknum(x.mode, [(d, val_skeleton(v)) for (d, v) in x.laws], x.skeletal)


# ---------------------------------------------------------------------------
# support regions
# ---------------------------------------------------------------------------


def zero_region(x: GenNum) -> IndexSet:
    """Exact germ region where x vanishes: the complement of the law domains
    plus any in-domain pieces killed by coefficient cancellation."""
    reg = compl(x.support())
    for (d, v) in x.laws:
        reg = union(reg, profiles.law_region(
            d, v, lambda e, cf: is_inf(e), kind="sign"))
    return reg


def alive_region(x: GenNum) -> IndexSet:
    return compl(zero_region(x))


# ---------------------------------------------------------------------------
# classification and inverses
# ---------------------------------------------------------------------------

ZERO_CLASS = "Zero"
INVERTIBLE = "Invertible"
ZERO_DIVISOR = "ZeroDivisor"


def classify_element(x: GenNum) -> str:
    """Invertible iff |x| >= eps^m eventually for some m."""
    if x.is_zero():
        return ZERO_CLASS
    s = profiles.sup_exponent_cells(cells(x))
    return INVERTIBLE if not is_inf(s) else ZERO_DIVISOR


def invert(x: GenNum) -> GenNum:
    cls = classify_element(x)
    if cls == ZERO_CLASS:
        raise DivisionByZero("inverse of 0")
    if cls == ZERO_DIVISOR:
        raise NotInvertible("element is a zero divisor")
    laws = []
    skel = x.skeletal
    for (d, v) in x.laws:
        vi = val_inv(v)
        if vi is None:
            vi = val_inv(val_skeleton(v))
            skel = True
        laws.append((d, vi))
    return mknum(x.mode, laws, skel)


def divide(x: GenNum, y: GenNum) -> GenNum:
    return mul(x, invert(y))


def inv_test(x: GenNum, s: IndexSet) -> bool:
    """Is x invertible w.r.t. s: exists y with x*y = e_s?"""
    if classify_set(s) == NULL_AT_ZERO:
        raise GennumError("inv_test needs a set that accumulates at 0")
    if x.is_zero():
        return False
    cs = cells(x, universe=s)
    return not is_inf(profiles.sup_exponent_cells(cs))


def z_test(x: GenNum, s: IndexSet) -> bool:
    """Is x zero w.r.t. s: x * e_s = 0?"""
    return mul(x, make_idempotent(s, x.mode)).is_zero()


def invert_on(x: GenNum, s: IndexSet) -> GenNum:
    """y with x*y = e_s (y zero off s); skeletal when division leaves the
    class.  Raises NotInvertibleOnS when no such y exists."""
    if not inv_test(x, s):
        raise NotInvertibleOnS("x has no inverse relative to the set")
    laws = []
    skel = x.skeletal
    for (d, v) in x.laws:
        r = inter(d, s)
        vi = val_inv(v)
        if vi is None:
            vi = val_inv(val_skeleton(v))
            skel = True
        laws.append((r, vi))
    return mknum(x.mode, laws, skel)
