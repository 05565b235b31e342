"""Decidable Boolean algebra of subsets of (0,1) on dyadic blocks.

The interval (0,1) is discretized by blocks B_n = (2^-(n+1), 2^-n] (block 0 is
(1/2, 1)); the grid point of block n >= 1 is g_n = 2^-n.  A set stores

  * an eventually periodic pattern of per-block traces (modulus + pattern),
  * finitely many exception blocks (these may carry explicit rational
    subintervals, the only place such pieces are allowed),
  * finitely many sparse grid-point diagonals: blocks b_k = a*2^(d*k) - b,
    each adding or removing one grid point per listed block.

Pattern/diag data is the germ content; exceptions are the recorded non-germ
part.  Boolean operations are exact set algebra on (0,1); classification and
germ comparisons read only the tail data.  The sparse diagonals realize the
"pick one point per level" constructions that no finite-modulus set can
express (annihilator witnesses), and stay closed under the Boolean ops.

All values are immutable after construction; operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import GennumError

# ---------------------------------------------------------------------------
# traces
# ---------------------------------------------------------------------------

GRID = 1
OPEN = 2
FULL = 3
EMPTY = 0

_BIT_NAMES = {EMPTY: "empty", GRID: "grid", OPEN: "open", FULL: "full"}

Piece = Tuple[Fraction, bool, Fraction, bool]  # lo, lo_incl, hi, hi_incl


@dataclass(frozen=True)
class Trace:
    """Per-block trace: one of the four pure kinds, or explicit pieces."""

    bits: Optional[int]  # None => explicit
    pieces: Tuple[Piece, ...] = ()

    def is_pure(self) -> bool:
        return self.bits is not None

    def is_empty(self) -> bool:
        return self.bits == EMPTY or (self.bits is None and not self.pieces)

    def alive(self) -> bool:
        return not self.is_empty()

    def grid_bit(self) -> bool:
        # explicit traces never appear in the germ region, bit irrelevant there
        return self.bits is not None and bool(self.bits & GRID)

    def __str__(self) -> str:
        if self.bits is not None:
            return _BIT_NAMES[self.bits]
        return "explicit[" + ",".join(_piece_str(p) for p in self.pieces) + "]"


def _piece_str(p: Piece) -> str:
    lo, il, hi, ih = p
    if lo == hi:
        return f"{{{lo}}}"
    return ("[" if il else "(") + f"{lo},{hi}" + ("]" if ih else ")")


T_EMPTY = Trace(EMPTY)
T_GRID = Trace(GRID)
T_OPEN = Trace(OPEN)
T_FULL = Trace(FULL)
_PURE = {EMPTY: T_EMPTY, GRID: T_GRID, OPEN: T_OPEN, FULL: T_FULL}


def block_bounds(n: int) -> Tuple[Fraction, Fraction, bool]:
    """(lo, hi, hi_inclusive) of block n; block 0 loses the point 1."""
    lo = Fraction(1, 2 ** (n + 1))
    hi = Fraction(1, 2 ** n)
    return lo, hi, n >= 1


def grid_point(n: int) -> Fraction:
    return Fraction(1, 2 ** n)


def _pure_pieces(bits: int, n: int) -> Tuple[Piece, ...]:
    lo, hi, hi_incl = block_bounds(n)
    if bits == EMPTY:
        return ()
    if bits == FULL:
        return ((lo, False, hi, hi_incl),)
    if bits == GRID:
        return ((hi, True, hi, True),) if hi_incl else ()
    # OPEN
    return ((lo, False, hi, False),)


def _normalize_pieces(pieces: Sequence[Piece]) -> Tuple[Piece, ...]:
    ps = sorted((p for p in pieces if p[0] < p[2] or (p[0] == p[2] and p[1] and p[3])),
                key=lambda p: (p[0], not p[1]))
    out: List[Piece] = []
    for p in ps:
        if out:
            lo, il, hi, ih = out[-1]
            plo, pil, phi, pih = p
            touches = plo < hi or (plo == hi and (ih or pil))
            if touches:
                if phi > hi or (phi == hi and pih and not ih):
                    out[-1] = (lo, il, phi, pih)
                continue
        out.append(p)
    return tuple(out)


def _piece_inter(p: Piece, q: Piece) -> Optional[Piece]:
    # later (stricter) lower bound wins; earlier (stricter) upper bound wins
    if (p[0], not p[1]) >= (q[0], not q[1]):
        lo, il = p[0], p[1]
    else:
        lo, il = q[0], q[1]
    if (p[2], p[3]) <= (q[2], q[3]):
        hi, ih = p[2], p[3]
    else:
        hi, ih = q[2], q[3]
    if lo < hi or (lo == hi and il and ih):
        return (lo, il, hi, ih)
    return None


def _pieces_inter(ps: Sequence[Piece], qs: Sequence[Piece]) -> Tuple[Piece, ...]:
    out = []
    for p in ps:
        for q in qs:
            r = _piece_inter(p, q)
            if r:
                out.append(r)
    return _normalize_pieces(out)


def _pieces_compl(ps: Sequence[Piece], n: int) -> Tuple[Piece, ...]:
    lo, hi, hi_incl = block_bounds(n)
    out: List[Piece] = []
    cur_lo, cur_il = lo, False
    for (plo, pil, phi, pih) in ps:
        if (cur_lo, not cur_il) < (plo, pil):
            out.append((cur_lo, cur_il, plo, not pil))
        cur_lo, cur_il = phi, not pih
    if cur_lo < hi or (cur_lo == hi and cur_il and hi_incl):
        out.append((cur_lo, cur_il, hi, hi_incl))
    return _normalize_pieces(out)


def _recognize(pieces: Tuple[Piece, ...], n: int) -> Trace:
    for bits in (EMPTY, GRID, OPEN, FULL):
        if pieces == _normalize_pieces(_pure_pieces(bits, n)):
            return _PURE[bits]
    return Trace(None, pieces)


def trace_fix0(t: Trace, n: int) -> Trace:
    """Block 0 has no grid point inside (0,1)."""
    if n == 0 and t.bits is not None:
        if t.bits == GRID:
            return T_EMPTY
        if t.bits == FULL:
            return T_OPEN  # (1/2,1) with no distinguished point; OPEN == FULL here
    return t


def trace_op(a: Trace, b: Trace, op: str, n: int) -> Trace:
    if a.bits is not None and b.bits is not None:
        if op == "inter":
            return _PURE[a.bits & b.bits]
        if op == "union":
            return _PURE[a.bits | b.bits]
        if op == "diff":
            return _PURE[a.bits & ~b.bits & 3]
    pa = _pure_pieces(a.bits, n) if a.bits is not None else a.pieces
    pb = _pure_pieces(b.bits, n) if b.bits is not None else b.pieces
    if op == "inter":
        return _recognize(_pieces_inter(pa, pb), n)
    if op == "union":
        return _recognize(_normalize_pieces(tuple(pa) + tuple(pb)), n)
    if op == "diff":
        return _recognize(_pieces_inter(pa, _pieces_compl(pb, n)), n)
    raise ValueError(op)


def trace_compl(t: Trace, n: int) -> Trace:
    if t.bits is not None:
        return _PURE[(~t.bits) & 3]
    return _recognize(_pieces_compl(t.pieces, n), n)


def trace_contains(t: Trace, eps: Fraction, n: int) -> bool:
    t = trace_fix0(t, n)
    if t.bits is not None:
        g = grid_point(n)
        if t.bits == EMPTY:
            return False
        if t.bits == FULL:
            return True
        if t.bits == GRID:
            return eps == g
        return eps != g
    for (lo, il, hi, ih) in t.pieces:
        if (lo < eps or (il and eps == lo)) and (eps < hi or (ih and eps == hi)):
            return True
    return False


# ---------------------------------------------------------------------------
# sparse grid-point diagonals
# ---------------------------------------------------------------------------


def nu2(n: int) -> int:
    if n <= 0:
        raise ValueError("nu2 of nonpositive")
    return (n & -n).bit_length() - 1


def odd_part(n: int) -> int:
    return n >> nu2(n)


def nu2sq_index(n: int) -> Tuple[int, int]:
    """(i, j) coordinates of block n >= 1 in the doubly indexed catalog."""
    i = nu2(n)
    o = n >> i
    return i, nu2(o + 1) - 1


def multiplicative_order(x: int, q: int) -> int:
    x %= q
    if gcd(x, q) != 1:
        raise ValueError("not a unit")
    k, y = 1, x
    while y != 1:
        y = (y * x) % q
        k += 1
    return k


@dataclass(frozen=True)
class Diag:
    """Grid points at blocks b_k = a*2^(d*k) - b for k >= 0."""

    a: int
    d: int
    b: int = 0

    def __post_init__(self):
        if self.a < 1 or self.d < 1 or self.b < 0 or self.a - self.b < 1:
            raise ValueError(f"bad diagonal ({self.a},{self.d},{self.b})")

    def block(self, k: int) -> int:
        return self.a * (1 << (self.d * k)) - self.b

    def blocks_upto(self, nmax: int) -> List[int]:
        out, k = [], 0
        while True:
            n = self.block(k)
            if n > nmax:
                return out
            out.append(n)
            k += 1

    def k_of_block(self, n: int) -> Optional[int]:
        t = n + self.b
        if t <= 0 or t % self.a:
            return None
        q = t // self.a
        if q & (q - 1):
            return None
        e = q.bit_length() - 1
        if e % self.d:
            return None
        return e // self.d

    def from_k(self, k0: int) -> "Diag":
        return Diag(self.a * (1 << (self.d * k0)), self.d, self.b)

    def sub(self, k0: int, stride: int) -> "Diag":
        """Blocks at k = k0 + stride*t."""
        return Diag(self.a * (1 << (self.d * k0)), self.d * stride, self.b)

    def key(self):
        return (self.a, self.d, self.b)

    def __str__(self):
        if self.b:
            return f"diag({self.a}*2^({self.d}k)-{self.b})"
        return f"diag({self.a}*2^({self.d}k))"


def diag_residue_split(D: Diag, M: int) -> Tuple[List[Tuple[int, int]], List[Tuple[Diag, int]]]:
    """Split D by block residue mod M.

    Returns (prefix, splits): prefix is [(k, block)] for the irregular head,
    splits is [(subdiag, residue)] covering all remaining k, each subdiag's
    blocks constant ≡ residue (mod M).
    """
    A = nu2(M)
    q = M >> A
    va = nu2(D.a)
    k2 = 0
    while va + D.d * k2 < A:
        k2 += 1
    P = 1 if q == 1 else multiplicative_order(pow(2, D.d, q), q)
    prefix = [(k, D.block(k)) for k in range(k2)]
    splits = []
    for t in range(P):
        sd = D.sub(k2 + t, P)
        splits.append((sd, sd.block(0) % M))
    return prefix, splits


def diag_intersect(D1: Diag, D2: Diag) -> Tuple[List[Diag], List[int]]:
    """Common blocks of two diagonals: (subdiagonals of D1, finite blocks)."""
    if D1.b == D2.b:
        if odd_part(D1.a) != odd_part(D2.a):
            return [], []
        v1, v2 = nu2(D1.a), nu2(D2.a)
        # v1 + d1 k = v2 + d2 m
        g = gcd(D1.d, D2.d)
        if (v2 - v1) % g:
            return [], []
        # find smallest k >= 0 with (v1 + d1 k - v2) % d2 == 0 and m >= 0
        step = D2.d // g
        for k0 in range(step):
            if (v1 + D1.d * k0 - v2) % D2.d == 0:
                k = k0
                while v1 + D1.d * k < v2:
                    k += step
                return [D1.sub(k, step)], []
        return [], []
    # different offsets: finitely many coincidences
    L = (abs(D1.b - D2.b) + D1.a + D2.a + 4).bit_length() + 2
    ks = range(0, max(1, (L - nu2(D1.a)) // D1.d + 2))
    ms = range(0, max(1, (L - nu2(D2.a)) // D2.d + 2))
    hits = set()
    for k in ks:
        if D2.k_of_block(D1.block(k)) is not None:
            hits.add(D1.block(k))
    for m in ms:
        if D1.k_of_block(D2.block(m)) is not None:
            hits.add(D2.block(m))
    return [], sorted(hits)


def diag_subtract(D1: Diag, D2: Diag) -> Tuple[List[Diag], List[int]]:
    """D1 minus D2's blocks: (kept subdiagonals, kept explicit blocks)."""
    subs, blocks = diag_intersect(D1, D2)
    if not subs and not blocks:
        return [D1], []
    if subs:
        # the overlap is the k-class k0 + step*t of D1
        sd = subs[0]
        k0 = D1.k_of_block(sd.block(0))
        step = sd.d // D1.d
        explicit = [D1.block(k) for k in range(k0)]
        kept = [D1.sub(k0 + r, step) for r in range(1, step)]
        return kept, explicit
    # finite removals: split at the largest removed k
    ks = {k for k in (D1.k_of_block(n) for n in blocks) if k is not None}
    if not ks:
        return [D1], []
    kmax = max(ks)
    explicit = [D1.block(k) for k in range(kmax + 1) if k not in ks]
    return [D1.from_k(kmax + 1)], explicit


def diag_index_profiles(D: Diag):
    """(i_profile, j_profile) of ν₂ and the second coordinate along D.

    Each profile is (prefix: dict k->value, tail_start, (s, t)) meaning the
    value is s + t*k for k >= tail_start (t == 0 for eventually constant).
    """
    va, Ao = nu2(D.a), odd_part(D.a)
    if D.b == 0:
        iprof = ({}, 0, (va, D.d))
        j = nu2(Ao + 1) - 1
        return iprof, ({}, 0, (j, 0))
    v = nu2(D.b)
    kstar = 0
    while va + D.d * kstar <= v:
        kstar += 1
    ipre = {k: nu2(D.block(k)) for k in range(kstar)}
    iprof = (ipre, kstar, (v, 0))
    B = D.b >> v
    if B == 1:
        # odd part + 1 = Ao * 2^(va + d k - v); j = va + d k - v - 1
        jpre = {k: nu2sq_index(D.block(k))[1] for k in range(kstar)}
        jprof = (jpre, kstar, (va - v - 1, D.d))
    else:
        w = nu2(B - 1)
        kj = kstar
        while va + D.d * kj - v <= w:
            kj += 1
        jpre = {k: nu2sq_index(D.block(k))[1] for k in range(kj)}
        jprof = (jpre, kj, (w - 1, 0))
    return iprof, jprof


# ---------------------------------------------------------------------------
# IndexSet
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IndexSet:
    modulus: int
    pattern: Tuple[int, ...]  # pure trace bits per residue
    exceptions: Tuple[Tuple[int, Trace], ...]
    plus: Tuple[Diag, ...] = ()
    minus: Tuple[Diag, ...] = ()

    # -- raw (pre-diagonal) trace -----------------------------------------
    def _base_trace(self, n: int) -> Trace:
        for (m, t) in self.exceptions:
            if m == n:
                return t
        return _PURE[self.pattern[n % self.modulus]]

    def trace_at(self, n: int) -> Trace:
        t = self._base_trace(n)
        if t.bits is not None and (self.plus or self.minus):
            hit_plus = any(d.k_of_block(n) is not None for d in self.plus)
            hit_minus = any(d.k_of_block(n) is not None for d in self.minus)
            if hit_minus:
                t = _PURE[t.bits & ~GRID & 3]
            elif hit_plus:
                t = _PURE[t.bits | GRID]
        return trace_fix0(t, n)

    def contains(self, eps: Fraction) -> bool:
        if not (0 < eps < 1):
            return False
        n = 0
        while eps <= Fraction(1, 1 << (n + 1)):
            n += 1
        return trace_contains(self.trace_at(n), eps, n)

    # -- bookkeeping -------------------------------------------------------
    def exc_bound(self) -> int:
        return max((m for m, _ in self.exceptions), default=0)

    def alive_residues(self) -> Tuple[int, ...]:
        return tuple(r for r in range(self.modulus) if self.pattern[r] != EMPTY)

    def is_null_germ(self) -> bool:
        return not self.alive_residues() and not self.plus

    def is_full_germ(self) -> bool:
        return all(b == FULL for b in self.pattern) and not self.minus

    def key(self):
        return (self.modulus, self.pattern, self.exceptions,
                tuple(d.key() for d in self.plus), tuple(d.key() for d in self.minus))

    def __str__(self) -> str:
        pat = ",".join(_BIT_NAMES[b] for b in self.pattern)
        s = f"set[mod {self.modulus}: {pat}]"
        if self.exceptions:
            s += " exc{" + ",".join(f"{m}:{t}" for m, t in self.exceptions) + "}"
        for d in self.plus:
            s += f" +{d}"
        for d in self.minus:
            s += f" -{d}"
        return s


def _reduce_pattern(modulus: int, pattern: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    for m in range(1, modulus + 1):
        if modulus % m:
            continue
        if all(pattern[r] == pattern[r % m] for r in range(modulus)):
            return m, tuple(pattern[:m])
    return modulus, tuple(pattern)


def mkset(modulus: int, pattern: Sequence[int], exceptions: Dict[int, Trace] = None,
          plus: Iterable[Diag] = (), minus: Iterable[Diag] = ()) -> IndexSet:
    """Canonical constructor: minimal modulus, folded diagonals, pruned exceptions."""
    exceptions = dict(exceptions or {})
    modulus, pattern = _reduce_pattern(modulus, list(pattern))

    # fold the irregular head of each diagonal into exceptions
    bound = max([m for m in exceptions] + [0]) + 1
    plus_clean: List[Diag] = []
    minus_clean: List[Diag] = []
    for sign, diags, sink in (("+", plus, plus_clean), ("-", minus, minus_clean)):
        for D in diags:
            k0 = 0
            while D.block(k0) < bound:
                n = D.block(k0)
                t = exceptions.get(n, _PURE[pattern[n % modulus]])
                if t.bits is not None:
                    nb = (t.bits | GRID) if sign == "+" else (t.bits & ~GRID & 3)
                    exceptions[n] = _PURE[nb]
                k0 += 1
            D = D.from_k(k0) if k0 else D
            # split by pattern grid bit; keep only the meaningful classes
            _, splits = diag_residue_split(D, modulus)
            for sd, res in splits:
                has_grid = bool(pattern[res % modulus] & GRID)
                if sign == "+" and not has_grid:
                    sink.append(sd)
                if sign == "-" and has_grid:
                    sink.append(sd)

    def dedupe(ds: List[Diag]) -> Tuple[Diag, ...]:
        seen, out = set(), []
        for d in sorted(ds, key=Diag.key):
            if d.key() not in seen:
                seen.add(d.key())
                out.append(d)
        return tuple(out)

    # prune exceptions equal to the pattern
    exc = {}
    for n, t in exceptions.items():
        base = _PURE[pattern[n % modulus]]
        tn, bn = trace_fix0(t, n), trace_fix0(base, n)
        if tn.bits is not None and bn.bits is not None and tn.bits == bn.bits:
            continue
        if t.bits is None and _recognize(t.pieces, n) == base:
            continue
        exc[n] = t
    return IndexSet(modulus, pattern, tuple(sorted(exc.items())),
                    dedupe(plus_clean), dedupe(minus_clean))


# -- constructors -----------------------------------------------------------


def empty_set() -> IndexSet:
    return mkset(1, (EMPTY,))


def full_set() -> IndexSet:
    return mkset(1, (FULL,))


def blocks_mod(residue: int, modulus: int) -> IndexSet:
    return mkset(modulus, tuple(FULL if r == residue % modulus else EMPTY for r in range(modulus)))


def grid_mod(residue: int, modulus: int) -> IndexSet:
    return mkset(modulus, tuple(GRID if r == residue % modulus else EMPTY for r in range(modulus)))


def block_single(n: int) -> IndexSet:
    return mkset(1, (EMPTY,), {n: T_FULL})


def grid_single(n: int) -> IndexSet:
    if n < 1:
        return empty_set()
    return mkset(1, (EMPTY,), {n: T_GRID})


def interval_set(p: Fraction, q: Fraction) -> IndexSet:
    """The open interval (p, q) ∩ (0,1) as an IndexSet."""
    p, q = Fraction(p), Fraction(q)
    if not (0 <= p < q <= 1):
        raise GennumError(f"interval({p},{q}) not inside [0,1]")
    if p == 0 and q == 1:
        return full_set()
    exc: Dict[int, Trace] = {}
    if p == 0:
        # full tail; explicit head down to the block containing q
        nq = 0
        while q <= Fraction(1, 1 << (nq + 1)):
            nq += 1
        for n in range(0, nq + 1):
            exc[n] = _block_interval_trace(n, p, q)
        return mkset(1, (FULL,), exc)
    # bounded away from 0
    np_ = 0
    while p < Fraction(1, 1 << (np_ + 1)):
        np_ += 1
    exc = {n: _block_interval_trace(n, p, q) for n in range(0, np_ + 1)}
    return mkset(1, (EMPTY,), exc)


def _block_interval_trace(n: int, p: Fraction, q: Fraction) -> Trace:
    lo, hi, hi_incl = block_bounds(n)
    piece = _piece_inter((lo, False, hi, hi_incl), (p, False, q, False))
    return _recognize(_normalize_pieces([piece] if piece else []), n)


def nu2_piece(i: int) -> IndexSet:
    return blocks_mod(1 << i, 1 << (i + 1))


def nu2_ge(k: int) -> IndexSet:
    """Blocks with ν₂(n) >= k (includes block 0, which is germ-irrelevant)."""
    return blocks_mod(0, 1 << k)


def nu2sq_piece(i: int, j: int) -> IndexSet:
    m = 1 << (i + j + 2)
    return blocks_mod((1 << i) * ((1 << (j + 1)) - 1), m)


def diag_set(D: Diag) -> IndexSet:
    return mkset(1, (EMPTY,), {}, plus=[D])


# ---------------------------------------------------------------------------
# Boolean algebra
# ---------------------------------------------------------------------------


_COMPL_CACHE: Dict = {}
_INTER_CACHE: Dict = {}


def compl(A: IndexSet) -> IndexSet:
    hit = _COMPL_CACHE.get(A)
    if hit is not None:
        return hit
    out = _compl_raw(A)
    if len(_COMPL_CACHE) < 200000:
        _COMPL_CACHE[A] = out
        _COMPL_CACHE[out] = A
    return out


def _compl_raw(A: IndexSet) -> IndexSet:
    pattern = tuple((~b) & 3 for b in A.pattern)
    exc = {n: trace_compl(t, n) for n, t in A.exceptions}
    return mkset(A.modulus, pattern, exc, plus=A.minus, minus=A.plus)


def _grid_labels_along(X: IndexSet, D: Diag):
    """Partition D's blocks by X's grid bit: ([(block, bit)], [(subdiag, bit)])."""
    prefix, splits = diag_residue_split(D, X.modulus)
    bound = X.exc_bound()
    expl: List[Tuple[int, bool]] = []
    work: List[Tuple[Diag, bool]] = []
    for (k, n) in prefix:
        expl.append((n, X.trace_at(n).grid_bit()))
    for sd, res in splits:
        # peel blocks that fall into X's exception region
        k0 = 0
        while sd.block(k0) <= bound:
            expl.append((sd.block(k0), X.trace_at(sd.block(k0)).grid_bit()))
            k0 += 1
        sd = sd.from_k(k0) if k0 else sd
        work.append((sd, bool(X.pattern[res % X.modulus] & GRID)))
    # X's own diagonals override the pattern bit
    for sign, ds in (("+", X.plus), ("-", X.minus)):
        for XD in ds:
            nxt: List[Tuple[Diag, bool]] = []
            for (sd, bit) in work:
                target = sign == "+"
                if bit == target:
                    nxt.append((sd, bit))
                    continue
                subs, blocks = diag_intersect(sd, XD)
                if not subs and not blocks:
                    nxt.append((sd, bit))
                    continue
                # carve the overlap out of sd
                rem = [(sd, bit)]
                for ov in subs:
                    rem2 = []
                    for (r, rb) in rem:
                        kept_d, kept_b = diag_subtract(r, ov)
                        rem2.extend((kd, rb) for kd in kept_d)
                        expl.extend((n, rb) for n in kept_b)
                    rem = rem2
                    nxt.append((ov, target))
                if blocks:
                    rem2 = []
                    for (r, rb) in rem:
                        own = [n for n in blocks if r.k_of_block(n) is not None]
                        if not own:
                            rem2.append((r, rb))
                            continue
                        kept_d, kept_b = _diag_remove_blocks(r, own)
                        rem2.extend((kd, rb) for kd in kept_d)
                        expl.extend((n, rb) for n in kept_b)
                        expl.extend((n, target) for n in own)
                    rem = rem2
                nxt.extend(rem)
            work = nxt
    return expl, work


def _diag_remove_blocks(D: Diag, blocks: Sequence[int]) -> Tuple[List[Diag], List[int]]:
    ks = sorted(k for k in (D.k_of_block(n) for n in blocks) if k is not None)
    if not ks:
        return [D], []
    kmax = ks[-1]
    explicit = [D.block(k) for k in range(kmax + 1) if k not in ks]
    return [D.from_k(kmax + 1)], explicit


def inter(A: IndexSet, B: IndexSet) -> IndexSet:
    key = (A, B)
    hit = _INTER_CACHE.get(key)
    if hit is not None:
        return hit
    out = _inter_raw(A, B)
    if len(_INTER_CACHE) < 400000:
        _INTER_CACHE[key] = out
    return out


def _inter_raw(A: IndexSet, B: IndexSet) -> IndexSet:
    M = (A.modulus * B.modulus) // gcd(A.modulus, B.modulus)
    pattern = tuple(A.pattern[r % A.modulus] & B.pattern[r % B.modulus] for r in range(M))
    exc: Dict[int, Trace] = {}
    keys = {n for n, _ in A.exceptions} | {n for n, _ in B.exceptions}
    for n in keys:
        exc[n] = trace_op(A.trace_at(n), B.trace_at(n), "inter", n)
    bound = max([n for n in keys] + [0])
    plus: List[Diag] = []
    minus: List[Diag] = []
    cands = list(A.plus) + list(A.minus) + list(B.plus) + list(B.minus)
    for D in cands:
        exA, wkA = _grid_labels_along(A, D)
        exB, wkB = _grid_labels_along(B, D)
        # explicit blocks: exact trace there
        for n, _ in set(exA) | set(exB):
            if n not in exc:
                exc[n] = trace_op(A.trace_at(n), B.trace_at(n), "inter", n)
        # aligned subdiagonals: true bit = bitA & bitB
        for (da, ba) in wkA:
            for (db, bb) in wkB:
                subs, blocks = diag_intersect(da, db)
                for n in blocks:
                    if n not in exc:
                        exc[n] = trace_op(A.trace_at(n), B.trace_at(n), "inter", n)
                for sd in subcs_skip_exc(subs, bound):
                    true_bit = ba and bb
                    _emit_grid_adjust(sd, true_bit, pattern, M, plus, minus, exc, A, B, "inter")
    return mkset(M, pattern, exc, plus, minus)


def subcs_skip_exc(subs: List[Diag], bound: int) -> List[Diag]:
    out = []
    for sd in subs:
        k0 = 0
        while sd.block(k0) <= bound:
            k0 += 1
        out.append(sd.from_k(k0) if k0 else sd)
    return out


def _emit_grid_adjust(sd: Diag, true_bit: bool, pattern, M: int,
                      plus: List[Diag], minus: List[Diag], exc, A, B, op: str) -> None:
    _, splits = diag_residue_split(sd, M)
    for ssd, res in splits:
        base_bit = bool(pattern[res % M] & GRID)
        if true_bit and not base_bit:
            plus.append(ssd)
        elif base_bit and not true_bit:
            minus.append(ssd)


def union(A: IndexSet, B: IndexSet) -> IndexSet:
    return compl(inter(compl(A), compl(B)))


def diff(A: IndexSet, B: IndexSet) -> IndexSet:
    return inter(A, compl(B))


def boolean_ops(a: IndexSet, b: IndexSet, op: str) -> IndexSet:
    """Exact set algebra on (0,1); 'compl' ignores b."""
    if op == "union":
        return union(a, b)
    if op == "inter":
        return inter(a, b)
    if op == "diff":
        return diff(a, b)
    if op == "compl":
        return compl(a)
    raise GennumError(f"unknown boolean op {op!r}")


# ---------------------------------------------------------------------------
# classification and germ comparisons
# ---------------------------------------------------------------------------

NULL_AT_ZERO = "NullAtZero"
FULL_AT_ZERO = "FullAtZero"
SPLITTING = "Splitting"


def classify_set(s: IndexSet) -> str:
    if s.is_null_germ():
        return NULL_AT_ZERO
    if s.is_full_germ():
        return FULL_AT_ZERO
    return SPLITTING


EQUAL_GERM = "EqualGerm"
SUBSET_GERM = "SubsetGerm"
SUPERSET_GERM = "SupersetGerm"
DISJOINT_GERM = "DisjointGerm"
INCOMPARABLE = "Incomparable"


def germ_relation(a: IndexSet, b: IndexSet) -> str:
    ab = diff(a, b).is_null_germ()
    ba = diff(b, a).is_null_germ()
    if ab and ba:
        return EQUAL_GERM
    if ab:
        return SUBSET_GERM
    if ba:
        return SUPERSET_GERM
    if inter(a, b).is_null_germ():
        return DISJOINT_GERM
    return INCOMPARABLE


def subset_germ(a: IndexSet, b: IndexSet) -> bool:
    return diff(a, b).is_null_germ()


def same_germ(a: IndexSet, b: IndexSet) -> bool:
    return germ_relation(a, b) == EQUAL_GERM


# ---------------------------------------------------------------------------
# piece families
# ---------------------------------------------------------------------------

BLOCK_INDEXED = "blocks"
NU2 = "nu2"
NU2SQ = "nu2sq"

FAMILIES = (BLOCK_INDEXED, NU2, NU2SQ)


@dataclass(frozen=True)
class PieceFamily:
    kind: str

    def __post_init__(self):
        if self.kind not in FAMILIES:
            raise GennumError(f"unknown piece family {self.kind!r}")

    def __str__(self):
        return self.kind


def family_piece(f: PieceFamily, index) -> IndexSet:
    """The index-th piece of the catalog family, as a canonical IndexSet."""
    if f.kind == BLOCK_INDEXED:
        if not isinstance(index, int) or index < 0:
            raise GennumError("BlockIndexed wants a single block index")
        return block_single(index)
    if f.kind == NU2:
        if not isinstance(index, int) or index < 0:
            raise GennumError("Nu2 wants a single piece index")
        return nu2_piece(index)
    if isinstance(index, int):
        raise GennumError("Nu2Squared requires a pair index (i, j)")
    i, j = index
    if i < 0 or j < 0:
        raise GennumError("Nu2Squared indices must be nonnegative")
    return nu2sq_piece(i, j)


def family_support(f: PieceFamily) -> IndexSet:
    """Union of all pieces: blocks n >= 1 for nu2/nu2sq, all blocks otherwise."""
    if f.kind == BLOCK_INDEXED:
        return full_set()
    return mkset(1, (FULL,), {0: T_EMPTY})
