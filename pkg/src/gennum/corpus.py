"""Seeded random element generators for property suites.

All generators take an explicit random.Random; identical seeds give identical
corpora, so suite reports are reproducible byte for byte.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional

from .core import (GenNum, add, make_graded, make_idempotent, make_rational,
                   mknum, mul, alpha_power, R as MODE_R)
from .exponents import ExpFn
from .indexsets import (IndexSet, blocks_mod, compl, diff, empty_set,
                        full_set, grid_mod, inter, nu2_ge, nu2_piece, union)
from .rats import Coeff
from .values import Term, mkval


BASE_SETS = [
    full_set(),
    blocks_mod(0, 2), blocks_mod(1, 2),
    blocks_mod(1, 4), blocks_mod(3, 4), blocks_mod(0, 4),
    grid_mod(1, 2), grid_mod(0, 1),
    nu2_piece(0), nu2_piece(1), nu2_ge(2),
]


def random_set(rnd: random.Random, splitting: bool = False) -> IndexSet:
    from .indexsets import classify_set, SPLITTING
    while True:
        s = rnd.choice(BASE_SETS)
        if rnd.random() < 0.3:
            s = union(s, rnd.choice(BASE_SETS))
        if rnd.random() < 0.3:
            s = inter(s, rnd.choice(BASE_SETS))
        if not splitting or classify_set(s) == SPLITTING:
            return s


def random_rat(rnd: random.Random, nonzero: bool = True) -> Fraction:
    num = rnd.randint(-5, 5)
    if nonzero:
        while num == 0:
            num = rnd.randint(-5, 5)
    return Fraction(num, rnd.choice([1, 1, 2, 3]))


def random_exponent(rnd: random.Random) -> Fraction:
    return Fraction(rnd.randint(-4, 8), rnd.choice([1, 1, 2]))


def random_puiseux_val(rnd: random.Random, complex_ok: bool = False):
    terms = []
    exps = set()
    for _ in range(rnd.randint(1, 3)):
        e = random_exponent(rnd)
        if e in exps:
            continue
        exps.add(e)
        c = Coeff(random_rat(rnd), random_rat(rnd, nonzero=False) if complex_ok else Fraction(0))
        if c.is_zero():
            c = Coeff(Fraction(1))
        terms.append(Term(c, ExpFn.const(e)))
    den = [Term(Coeff(Fraction(1)), ExpFn.const(0))]
    if rnd.random() < 0.25:
        den.append(Term(Coeff(random_rat(rnd)), ExpFn.const(Fraction(rnd.randint(1, 3)))))
    return mkval(None, terms, den)


def random_graded_val(rnd: random.Random):
    # positive coefficients: sums of corpus elements then stay inside the
    # cancellation-free doubly-indexed fragment (the guard is exercised by
    # dedicated tests, not by random corpora)
    c0 = Fraction(rnd.randint(0, 3))
    c1 = Fraction(rnd.randint(1, 3))
    deg2 = rnd.random() < 0.25
    p = (c0, c1, Fraction(1)) if deg2 else (c0, c1)
    cf = Coeff(abs(random_rat(rnd)))
    return mkval("nu2", (Term(cf, ExpFn.of_poly_i(p)),))


def random_gennum(rnd: random.Random, mode: str = MODE_R,
                  graded: bool = True, complex_ok: bool = False,
                  gamma_ok: bool = False) -> GenNum:
    """A random element: one to three value laws on disjoint regions."""
    laws = []
    used = empty_set()
    for _ in range(rnd.randint(1, 3)):
        region = diff(random_set(rnd), used)
        used = union(used, region)
        roll = rnd.random()
        if graded and roll < 0.3:
            v = random_graded_val(rnd)
        elif gamma_ok and roll < 0.4:
            v = mkval("nu2sq", (Term(Coeff(abs(random_rat(rnd))),
                                     ExpFn.separable((Fraction(rnd.randint(0, 2)), Fraction(1)),
                                                     (Fraction(rnd.randint(0, 2)), Fraction(1)))),))
        else:
            v = random_puiseux_val(rnd, complex_ok)
        laws.append((region, v))
    return mknum(mode, laws)


def random_invertible(rnd: random.Random) -> GenNum:
    e = random_exponent(rnd)
    x = alpha_power(e)
    if rnd.random() < 0.5:
        x = add(x, make_rational(random_rat(rnd)))
        x = add(x, alpha_power(abs(e) + 1))
    from .core import classify_element, INVERTIBLE
    if classify_element(x) != INVERTIBLE:
        return alpha_power(e)
    return x


def random_nonneg(rnd: random.Random) -> GenNum:
    """A random element that is >= 0 in the order (R mode)."""
    from .core import abs_num
    return abs_num(random_gennum(rnd, graded=True))


def random_orthogonal_pair(rnd: random.Random):
    """(x, y) with x*y = 0, built from a random splitting set."""
    s = random_set(rnd, splitting=True)
    x = mul(random_gennum(rnd), make_idempotent(s))
    y = mul(random_gennum(rnd), make_idempotent(compl(s)))
    return x, y
