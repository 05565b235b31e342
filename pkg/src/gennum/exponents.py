"""Exponent laws of graded values.

An ExpFn is g(i, j) = c + p(i) + q(j) with rational c and polynomials p, q
without constant term (constants are folded into c).  Values over the Nu2
catalog use only (c, p); doubly indexed values use the separable sum.  A plain
rational exponent is the degenerate case p = q = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from . import polys
from .polys import Poly
from .rats import rat


def _strip_const(p: Poly) -> Tuple[Fraction, Poly]:
    if not p:
        return Fraction(0), ()
    return p[0], polys.trim((Fraction(0),) + p[1:])


@dataclass(frozen=True)
class ExpFn:
    c: Fraction = Fraction(0)
    pi: Poly = ()
    qj: Poly = ()

    @staticmethod
    def const(c) -> "ExpFn":
        return ExpFn(rat(c))

    @staticmethod
    def of_poly_i(p: Poly) -> "ExpFn":
        c, pp = _strip_const(p)
        return ExpFn(c, pp)

    @staticmethod
    def separable(p: Poly, q: Poly) -> "ExpFn":
        cp, pp = _strip_const(p)
        cq, qq = _strip_const(q)
        return ExpFn(cp + cq, pp, qq)

    def is_const(self) -> bool:
        return not self.pi and not self.qj

    def uses_j(self) -> bool:
        return bool(self.qj)

    def add(self, o: "ExpFn") -> "ExpFn":
        return ExpFn(self.c + o.c, polys.add(self.pi, o.pi), polys.add(self.qj, o.qj))

    def neg(self) -> "ExpFn":
        return ExpFn(-self.c, polys.neg(self.pi), polys.neg(self.qj))

    def sub(self, o: "ExpFn") -> "ExpFn":
        return self.add(o.neg())

    def scale(self, r) -> "ExpFn":
        r = rat(r)
        return ExpFn(self.c * r, polys.scale(self.pi, r), polys.scale(self.qj, r))

    def shift(self, c) -> "ExpFn":
        return ExpFn(self.c + rat(c), self.pi, self.qj)

    def poly_i(self) -> Poly:
        """c + p(i) as a polynomial in i (requires no j part)."""
        if self.qj:
            raise ValueError("exponent depends on j")
        return polys.add(polys.const(self.c), self.pi)

    def at(self, i: Optional[int] = None, j: Optional[int] = None) -> Fraction:
        v = self.c
        if self.pi:
            if i is None:
                raise ValueError("needs i")
            v += polys.evaluate(self.pi, i)
        if self.qj:
            if j is None:
                raise ValueError("needs j")
            v += polys.evaluate(self.qj, j)
        return v

    def subst_j_profile(self, jprofile) -> dict:
        raise NotImplementedError

    def along_affine(self, si, di, sj, dj) -> Poly:
        """g(si + di*k, sj + dj*k) as a polynomial in k."""
        p = polys.const(self.c)
        if self.pi:
            p = polys.add(p, polys.compose_affine(self.pi, si, di))
        if self.qj:
            p = polys.add(p, polys.compose_affine(self.qj, sj, dj))
        return p

    def at_row(self, i: int) -> Poly:
        """g(i, j) as a polynomial in j for fixed i."""
        base = self.c + (polys.evaluate(self.pi, i) if self.pi else Fraction(0))
        return polys.add(polys.const(base), self.qj)

    def bounded_below(self) -> bool:
        return polys.bounded_below_on_tail(self.pi) and polys.bounded_below_on_tail(self.qj)

    def min_value(self):
        """Exact min over N (or N^2); None when unbounded below."""
        mp, _ = polys.min_over_tail(self.pi) if self.pi else (Fraction(0), 0)
        mq, _ = polys.min_over_tail(self.qj) if self.qj else (Fraction(0), 0)
        if mp is None or mq is None:
            return None
        return self.c + mp + mq

    def key(self):
        return (self.c, self.pi, self.qj)

    def __str__(self) -> str:
        parts = []
        if self.c or (not self.pi and not self.qj):
            parts.append(str(self.c))
        if self.pi:
            parts.append(polys.poly_str(self.pi, "i"))
        if self.qj:
            parts.append(polys.poly_str(self.qj, "j"))
        return " + ".join(parts).replace("+ -", "- ")


E0 = ExpFn()
