"""Law values: graded rational functions of eps.

A Val is num/den where num is a finite sum of terms coeff * eps^expfn with
pairwise distinct exponent laws, and den is a nonzero sum of constant-exponent
terms.  The den is normalized so its least-exponent term is 1*eps^0, which
makes the value's dominant behavior readable off the numerator.

family None means every exponent is constant: the Puiseux rational layer,
closed under +, *, and inverse.  family 'nu2'/'nu2sq' values are graded over
the catalog pieces; a single-term (monomial) denominator folds into the
numerator on normalization, so graded values never store one.  BlockIndexed
exponent laws are demoted at construction: a non-constant bounded-below
polynomial over the block index is negligible, so only the constant case
survives (as a Puiseux value).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import polys
from .errors import NotModerate
from .exponents import E0, ExpFn
from .indexsets import BLOCK_INDEXED, NU2, NU2SQ
from .rats import ONE, Coeff, rat


@dataclass(frozen=True)
class Term:
    coeff: Coeff
    exp: ExpFn

    def key(self):
        return self.exp.key() + self.coeff.sort_key()


Terms = Tuple[Term, ...]


@dataclass(frozen=True)
class Val:
    family: Optional[str]
    num: Terms
    den: Terms

    def is_zero(self) -> bool:
        return not self.num

    def is_const_exp(self) -> bool:
        return self.family is None

    def key(self):
        return (self.family or "", tuple(t.key() for t in self.num), tuple(t.key() for t in self.den))

    def __str__(self) -> str:
        if not self.num:
            return "0"
        n = " + ".join(_term_str(t) for t in self.num)
        if len(self.den) == 1 and self.den[0].exp.c == 0 and self.den[0].coeff == ONE:
            return n
        d = " + ".join(_term_str(t) for t in self.den)
        return f"({n}) / ({d})"


def _term_str(t: Term) -> str:
    e = t.exp
    if e.is_const() and e.c == 0:
        return str(t.coeff)
    base = f"eps^({e})"
    if t.coeff == ONE:
        return base
    return f"{t.coeff}*{base}"


DEN_ONE: Terms = (Term(ONE, E0),)


def _merge(terms: Sequence[Term]) -> Terms:
    acc = {}
    for t in terms:
        k = t.exp.key()
        if k in acc:
            acc[k] = Term(acc[k].coeff + t.coeff, t.exp)
        else:
            acc[k] = t
    return tuple(sorted((t for t in acc.values() if not t.coeff.is_zero()),
                        key=Term.key))


def mkval(family: Optional[str], num: Sequence[Term], den: Sequence[Term] = DEN_ONE) -> Val:
    num = _merge(num)
    den = _merge(den)
    if not den:
        raise ZeroDivisionError("zero denominator value")
    if any(not t.exp.is_const() for t in den):
        # graded denominators must be monomial; fold into the numerator
        if len(den) > 1:
            raise NotModerate("non-monomial graded denominator is outside the class")
        d = den[0]
        num = tuple(Term(t.coeff * d.coeff.inv(), t.exp.sub(d.exp)) for t in num)
        den = DEN_ONE
    # BlockIndexed demotion: non-constant exponents are negligible over blocks
    if family == BLOCK_INDEXED:
        for t in num:
            if not t.exp.bounded_below():
                raise NotModerate(f"exponent {t.exp} unbounded below")
        num = tuple(t for t in num if t.exp.is_const())
        family = None
    if not num:
        return Val(None, (), DEN_ONE)
    # moderateness is a joint property of (domain, value): enforced per law
    # at canonicalization, since a restricted domain can keep an exponent
    # law bounded that is unbounded over the whole catalog
    # normalize den: least exponent term becomes 1*eps^0
    d0 = min(den, key=lambda t: t.exp.c)
    if d0.exp.c != 0 or d0.coeff != ONE:
        inv = d0.coeff.inv()
        shift = d0.exp.c
        num = _merge(Term(t.coeff * inv, t.exp.shift(-shift)) for t in num)
        den = _merge(Term(t.coeff * inv, t.exp.shift(-shift)) for t in den)
    # family demotion
    if family == NU2SQ and not any(t.exp.uses_j() for t in num):
        family = NU2
    if family in (NU2, NU2SQ) and all(t.exp.is_const() for t in num):
        family = None
    if family is None and any(not t.exp.is_const() for t in num):
        raise NotModerate("non-constant exponent requires a piece family")
    return Val(family, num, den)


VAL_ZERO = mkval(None, ())
VAL_ONE = mkval(None, (Term(ONE, E0),))


def val_const(c: Coeff) -> Val:
    return mkval(None, (Term(c, E0),))


def val_monomial(coeff: Coeff, exp: ExpFn, family: Optional[str] = None) -> Val:
    fam = family if not exp.is_const() else family
    return mkval(fam, (Term(coeff, exp),))


def join_family(f1: Optional[str], f2: Optional[str]) -> Optional[str]:
    order = {None: 0, NU2: 1, NU2SQ: 2}
    return f1 if order[f1] >= order[f2] else f2


def val_add(a: Val, b: Val) -> Val:
    fam = join_family(a.family, b.family)
    num = [Term(t.coeff * s.coeff, t.exp.add(s.exp)) for t in a.num for s in b.den]
    num += [Term(t.coeff * s.coeff, t.exp.add(s.exp)) for t in b.num for s in a.den]
    den = [Term(t.coeff * s.coeff, t.exp.add(s.exp)) for t in a.den for s in b.den]
    return mkval(fam, num, den)


def val_neg(a: Val) -> Val:
    return Val(a.family, tuple(Term(-t.coeff, t.exp) for t in a.num), a.den)


def val_sub(a: Val, b: Val) -> Val:
    return val_add(a, val_neg(b))


def val_mul(a: Val, b: Val) -> Val:
    fam = join_family(a.family, b.family)
    num = [Term(t.coeff * s.coeff, t.exp.add(s.exp)) for t in a.num for s in b.num]
    den = [Term(t.coeff * s.coeff, t.exp.add(s.exp)) for t in a.den for s in b.den]
    return mkval(fam, num, den)


def val_scale(a: Val, c: Coeff) -> Val:
    return mkval(a.family, tuple(Term(t.coeff * c, t.exp) for t in a.num), a.den)


def val_conj(a: Val) -> Val:
    return Val(a.family,
               tuple(Term(t.coeff.conj(), t.exp) for t in a.num),
               tuple(Term(t.coeff.conj(), t.exp) for t in a.den))


def val_inv(a: Val) -> Optional[Val]:
    """1/a when it stays in the class, else None (skeletal fallback upstream)."""
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero value")
    if all(t.exp.is_const() for t in a.num):
        return mkval(None, a.den, a.num)
    if len(a.num) == 1:
        t = a.num[0]
        inv = t.coeff.inv()
        num = tuple(Term(s.coeff * inv, s.exp.sub(t.exp)) for s in a.den)
        return mkval(a.family, num)
    return None


def val_div(a: Val, b: Val) -> Optional[Val]:
    bi = val_inv(b)
    if bi is None:
        return None
    return val_mul(a, bi)


def val_pow_int(a: Val, n: int) -> Val:
    if n == 0:
        return VAL_ONE
    if n < 0:
        inv = val_inv(a)
        if inv is None:
            raise NotModerate("negative power outside the class")
        return val_pow_int(inv, -n)
    out = a
    for _ in range(n - 1):
        out = val_mul(out, a)
    return out


def dominant_term(a: Val):
    """(exp, coeff) of the least-exponent numerator term for const-exp values."""
    if a.is_zero():
        return None
    t = min(a.num, key=lambda t: t.exp.c)
    return t.exp.c, t.coeff


def val_skeleton(a: Val) -> Val:
    """Unit-coefficient dominant monomial.

    For graded values the dominant exponent law is the one minimizing the
    exact minimum over the catalog (the skeleton generates the same principal
    ideal; per-piece regime changes only shift by eventually bounded factors
    handled by the Skeletal flag upstream when they matter).
    """
    if a.is_zero():
        return VAL_ZERO
    if a.family is None:
        e, _ = dominant_term(a)
        return mkval(None, (Term(ONE, ExpFn.const(e)),))
    best = None
    for t in a.num:
        m = t.exp.min_value()
        rank = float("-inf") if m is None else m
        if best is None or rank < best[0]:
            best = (rank, t)
    return mkval(a.family, (Term(ONE, best[1].exp),))


def val_eval(a: Val, eps: Fraction, i: Optional[int], j: Optional[int]):
    """Float (or complex) evaluation at a sample point; None at a den pole."""
    fe = float(eps)

    def term_value(t: Term):
        g = float(t.exp.at(i, j))
        mag = fe ** g
        if t.coeff.is_real():
            return float(t.coeff.re) * mag
        return complex(float(t.coeff.re), float(t.coeff.im)) * mag

    num = sum(term_value(t) for t in a.num) if a.num else 0.0
    den = sum(term_value(t) for t in a.den)
    if den == 0:
        return None
    return num / den


def val_is_real(a: Val) -> bool:
    return all(t.coeff.is_real() for t in a.num + a.den)
