"""Floating-point sampling oracle.

The oracle never certifies an identity: floats cannot see negligibility.  It
evaluates canonical representatives at deterministic rational sample points
(grid point, 3/4 and 9/16 of each block's right endpoint), brackets the
valuation by the worst log-log slope over the deep half of the sampled
blocks, and falsifies order claims only on strict violations with a margin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .core import GenNum
from .errors import GennumError
from .indexsets import nu2, nu2sq_index
from .values import val_eval

CONSISTENT = "ConsistentWith"
CONTRADICTS = "Contradicts"


@dataclass(frozen=True)
class SampleProfile:
    depth: int = 64
    per_block: int = 3

    def __post_init__(self):
        if self.depth < 8:
            raise GennumError("sampling depth must be at least 8")
        if not (1 <= self.per_block <= 3):
            raise GennumError("per_block must be 1..3")

    def positions(self, n: int) -> List[Fraction]:
        hi = Fraction(1, 2 ** n)
        cands = [hi, hi * Fraction(3, 4), hi * Fraction(9, 16)]
        return cands[: self.per_block]


def eval_at(x: GenNum, eps: Fraction):
    """Float value of the canonical representative at eps (None at a pole)."""
    n = 0
    while eps <= Fraction(1, 2 ** (n + 1)):
        n += 1
    i, j = (nu2sq_index(n) if n >= 1 else (None, None))
    for (d, v) in x.laws:
        if d.contains(eps):
            return val_eval(v, eps, i, j)
    return 0.0


def sample_net(x: GenNum, profile: SampleProfile = SampleProfile()):
    """Deterministic table of (eps, value) over blocks 1..depth."""
    rows = []
    for n in range(1, profile.depth + 1):
        for eps in profile.positions(n):
            rows.append((eps, eval_at(x, eps)))
    return rows


def sample_table_csv(x: GenNum, profile: SampleProfile = SampleProfile()) -> str:
    lines = ["eps,value"]
    for eps, v in sample_net(x, profile):
        if v is None:
            sv = "pole"
        elif isinstance(v, complex):
            sv = f"{v.real!r}{'+' if v.imag >= 0 else ''}{v.imag!r}i"
        else:
            sv = repr(v)
        lines.append(f"{eps},{sv}")
    return "\n".join(lines) + "\n"


def oracle_val(x: GenNum, profile: SampleProfile = SampleProfile()):
    """Bracket (lo, hi) for the valuation from log-log slopes over the deep
    half of the sampled blocks; None when every deep sample vanishes."""
    slopes = []
    for n in range(max(1, profile.depth // 2), profile.depth + 1):
        for eps in profile.positions(n):
            v = eval_at(x, eps)
            if v is None:
                continue
            mag = abs(v)
            if mag == 0.0:
                continue
            slopes.append(math.log(mag) / math.log(float(eps)))
    if not slopes:
        return None
    est = min(slopes)
    return (est - 0.5, est + 0.5)


def oracle_leq(x: GenNum, y: GenNum,
               profile: SampleProfile = SampleProfile()) -> str:
    """Falsifies x <= y: Contradicts only on a strict deep violation with a
    relative margin."""
    for n in range(max(1, profile.depth // 2), profile.depth + 1):
        for eps in profile.positions(n):
            vx, vy = eval_at(x, eps), eval_at(y, eps)
            if vx is None or vy is None:
                continue
            vx, vy = float(vx), float(vy)
            tol = 1e-9 * (abs(vx) + abs(vy)) + 1e-300
            if vx > vy + tol:
                return CONTRADICTS
    return CONSISTENT


def oracle_equal(x: GenNum, y: GenNum,
                 profile: SampleProfile = SampleProfile()) -> str:
    for n in range(max(1, profile.depth // 2), profile.depth + 1):
        for eps in profile.positions(n):
            vx, vy = eval_at(x, eps), eval_at(y, eps)
            if vx is None or vy is None:
                continue
            dv = abs(vx - vy)
            if dv > 1e-9 * (abs(vx) + abs(vy)) + 1e-300:
                return CONTRADICTS
    return CONSISTENT
