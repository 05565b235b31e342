"""Univariate polynomials with rational coefficients over the index i in N.

Exponent laws of graded values are polynomials in a piece index; every
asymptotic decision below (valuation, level thresholds, dominance) reduces to
exact questions about such polynomials on integer tails: integer roots,
eventual sign, minima/suprema over {i : i >= K}.  Coefficients are Fractions,
stored low degree first, no trailing zeros.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, gcd
from typing import Optional, Tuple

from .rats import rat

Poly = Tuple[Fraction, ...]

PZERO: Poly = ()


def poly(*coeffs) -> Poly:
    return trim(tuple(rat(c) for c in coeffs))


def trim(p) -> Poly:
    p = tuple(p)
    n = len(p)
    while n and p[n - 1] == 0:
        n -= 1
    return p[:n]


def const(c) -> Poly:
    return trim((rat(c),))


def is_zero(p: Poly) -> bool:
    return not p


def is_const(p: Poly) -> bool:
    return len(p) <= 1


def const_val(p: Poly) -> Fraction:
    return p[0] if p else Fraction(0)


def degree(p: Poly) -> int:
    return len(p) - 1 if p else -1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim(tuple((p[k] if k < len(p) else 0) + (q[k] if k < len(q) else 0) for k in range(n)))


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def scale(p: Poly, c) -> Poly:
    c = rat(c)
    if c == 0:
        return ()
    return tuple(x * c for x in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for a, ca in enumerate(p):
        for b, cb in enumerate(q):
            out[a + b] += ca * cb
    return trim(tuple(out))


def evaluate(p: Poly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose_affine(p: Poly, s, d) -> Poly:
    """p(s + d*k) as a polynomial in k."""
    s, d = rat(s), rat(d)
    acc: Poly = ()
    lin = poly(s, d)
    for c in reversed(p):
        acc = add(mul(acc, lin), const(c))
    return acc


def leading(p: Poly) -> Fraction:
    return p[-1] if p else Fraction(0)


def eventual_sign(p: Poly) -> int:
    """Sign of p(i) for all large i."""
    lc = leading(p)
    return (lc > 0) - (lc < 0)


def root_bound(p: Poly) -> int:
    """Integer B with every real root of p below B (Cauchy bound)."""
    if len(p) <= 1:
        return 0
    lc = abs(p[-1])
    m = max(abs(c) for c in p[:-1])
    return int(ceil(1 + m / lc)) + 1


def nonneg_integer_roots(p: Poly, lo: int = 0) -> Tuple[int, ...]:
    """All integer roots of p in [lo, inf).  p == 0 is the caller's problem."""
    if not p:
        raise ValueError("zero polynomial has every root")
    if len(p) == 1:
        return ()
    bound = root_bound(p)
    return tuple(i for i in range(lo, max(lo, bound) + 1) if evaluate(p, i) == 0)


def stable_from(p: Poly, lo: int = 0) -> int:
    """Index M >= lo beyond which p is strictly monotone (or constant) with
    constant sign.  Beyond M, p(i) never revisits values and sign(p) is the
    eventual sign."""
    if len(p) <= 1:
        return lo
    m = root_bound(p)
    dp = sub(compose_affine(p, 1, 1), p)  # p(i+1) - p(i)
    if dp:
        m = max(m, root_bound(dp))
    return max(lo, m)


INF = float("inf")


def min_over_tail(p: Poly, lo: int = 0):
    """(min value, argmin) of p over integers i >= lo.

    Requires p bounded below there (leading coefficient > 0 or constant);
    returns (None, None) when unbounded below.
    """
    if not p:
        return Fraction(0), lo
    if len(p) == 1:
        return p[0], lo
    if leading(p) < 0:
        return None, None
    hi = stable_from(p, lo)
    best_i = lo
    best = evaluate(p, lo)
    for i in range(lo + 1, hi + 2):
        v = evaluate(p, i)
        if v < best:
            best, best_i = v, i
    return best, best_i


def sup_over_tail(p: Poly, lo: int = 0):
    """Supremum of p over integers i >= lo: a Fraction, or INF."""
    if not p:
        return Fraction(0)
    if len(p) == 1:
        return p[0]
    if leading(p) > 0:
        return INF
    hi = stable_from(p, lo)
    return max(evaluate(p, i) for i in range(lo, hi + 2))


def bounded_below_on_tail(p: Poly, lo: int = 0) -> bool:
    return is_zero(p) or leading(p) > 0 or is_const(p)


def tends_to_infinity(p: Poly) -> bool:
    return len(p) > 1 and leading(p) > 0


def sign_split_tail(p: Poly, lo: int = 0):
    """(threshold M, eventual sign, {i in [lo, M): sign p(i)}) over i >= lo."""
    m = stable_from(p, lo)
    pre = {i: _sgn(evaluate(p, i)) for i in range(lo, m + 1)}
    return m + 1, eventual_sign(p) if not is_const(p) else _sgn(const_val(p)), pre


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def poly_str(p: Poly, var: str = "i") -> str:
    if not p:
        return "0"
    parts = []
    for k, c in enumerate(p):
        if c == 0:
            continue
        if k == 0:
            parts.append(str(c))
        elif k == 1:
            parts.append(f"{c}*{var}" if c != 1 else var)
        else:
            parts.append(f"{c}*{var}^{k}" if c != 1 else f"{var}^{k}")
    return " + ".join(parts).replace("+ -", "- ")
