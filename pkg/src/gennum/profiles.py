"""Exact asymptotic analysis of laws: the decision engine.

Every predicate of the calculus (valuation, negligibility, invertibility,
principal membership bounds, level sets, eventual sign) reduces to questions
about the effective exponent E of a law: the least exponent level whose
coefficient sum does not vanish.  This module decomposes one or two elements
into aligned cells over which E is a rational constant, a polynomial over a
one-parameter tail (piece index or diagonal step), or a separable polynomial
over the doubly indexed tail quadrant, and answers queries exactly per cell.

Cancellation handling is complete for one-parameter families (distinct
exponent polynomials collide at finitely many integer points).  On the
quadrant, multi-term values are decided when a total dominance order exists
or no tied coefficient subset can cancel; the genuinely out-of-fragment
remainder raises Undecided instead of approximating.

E conventions: a Fraction is live content, INF is exact zero content, and an
absent entry means the region does not meet that piece at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import polys
from .errors import Undecided, UndecidableRegion, UnsupportedCancellation
from .exponents import ExpFn
from .indexsets import (NU2, NU2SQ, Diag, IndexSet, diag_index_profiles,
                        diag_set, diff, empty_set, full_set, inter, nu2,
                        nu2_ge, nu2_piece, nu2sq_piece, union)
from .polys import Poly
from .rats import Coeff
from .values import Term, Val, join_family

INF = float("inf")
NEG_INF = float("-inf")


def is_inf(x) -> bool:
    return x == INF


Entry = Optional[Tuple[object, Optional[Coeff]]]  # None => region absent


# ---------------------------------------------------------------------------
# one-parameter effective exponent profiles
# ---------------------------------------------------------------------------


@dataclass
class P1:
    """Effective exponent over an integer parameter t >= 0.

    tail_alive False means the region has no content for t >= lo; tail None
    with tail_alive True means the value is exactly zero there.
    """

    explicit: Dict[int, Entry]
    lo: int
    tail: Optional[Tuple[Poly, Coeff]]
    tail_alive: bool = True

    def at(self, t: int) -> Entry:
        if t in self.explicit:
            return self.explicit[t]
        if t >= self.lo:
            if not self.tail_alive:
                return None
            if self.tail is None:
                return (INF, None)
            return (polys.evaluate(self.tail[0], t), self.tail[1])
        return (INF, None)


def p1_zero() -> P1:
    return P1({}, 0, None)


def effective_1d(terms: Sequence[Tuple[Coeff, Poly]], lo0: int = 0) -> P1:
    """Cancellation-aware profile of sum_t coeff_t * eps^(poly_t(param))."""
    if not terms:
        return P1({}, lo0, None)
    k = lo0
    ts = list(terms)
    for a in range(len(ts)):
        for b in range(a + 1, len(ts)):
            d = polys.sub(ts[a][1], ts[b][1])
            if polys.is_zero(d):
                raise ValueError("duplicate exponent polynomials must be merged")
            k = max(k, polys.stable_from(d, lo0) + 1)
    explicit: Dict[int, Entry] = {}
    for t in range(lo0, k):
        explicit[t] = _eval_levels(ts, t)
    tail_poly = min((p for _, p in ts), key=lambda p: polys.evaluate(p, k))
    tail_coeff = next(c for c, p in ts if p == tail_poly)
    return P1(explicit, k, (tail_poly, tail_coeff))


def _eval_levels(terms, t) -> Entry:
    levels: Dict[Fraction, Coeff] = {}
    for c, p in terms:
        v = polys.evaluate(p, t)
        levels[v] = levels.get(v, Coeff(Fraction(0))) + c
    for v in sorted(levels):
        if not levels[v].is_zero():
            return (v, levels[v])
    return (INF, None)


def apply_surv(p: P1, alive_fn, upto: int, tail_alive: bool) -> P1:
    lo = max(p.lo, upto)
    explicit: Dict[int, Entry] = {}
    for t in range(0, lo):
        explicit[t] = p.at(t) if alive_fn(t) else None
    for t in p.explicit:
        if t >= lo:
            explicit[t] = p.explicit[t] if alive_fn(t) else None
    return P1(explicit, lo, p.tail if tail_alive else None,
              p.tail_alive and tail_alive)


# ---------------------------------------------------------------------------
# survivors
# ---------------------------------------------------------------------------


def survivors_nu2(R: IndexSet):
    """(alive(i), upto, tail_bool): periodic accumulation of R per Nu2 piece."""
    am = nu2(R.modulus) if R.modulus % 2 == 0 else 0
    m2 = 1 << am
    alive = R.alive_residues()
    expl = {i: any(s % (1 << (i + 1)) == (1 << i) for s in alive) for i in range(am)}
    tail = any(s % m2 == 0 for s in alive)

    def fn(i: int) -> bool:
        return expl[i] if i < am else tail

    return fn, am, tail


def survivors_nu2sq(R: IndexSet):
    am = nu2(R.modulus) if R.modulus % 2 == 0 else 0
    m2 = 1 << am
    alive = R.alive_residues()
    quad = any(s % m2 == 0 for s in alive)

    def pair_alive(i: int, j: int) -> bool:
        if i >= am:
            return quad
        if i + j + 2 <= am:
            step = 1 << (i + j + 2)
            r = ((1 << i) * ((1 << (j + 1)) - 1)) % step
            return any(s % step == r for s in alive)
        return any(s % m2 == (m2 - (1 << i)) % m2 for s in alive)

    return pair_alive, am, quad


# ---------------------------------------------------------------------------
# cells
# ---------------------------------------------------------------------------


@dataclass
class Cell:
    kind: str  # 'atom' | 'tail' | 'quad'
    eu: object = INF
    ev: object = INF
    cu: Optional[Coeff] = None
    cv: Optional[Coeff] = None
    lo: int = 0
    tu: Optional[Tuple[Poly, Coeff]] = None
    tv: Optional[Tuple[Poly, Coeff]] = None
    i0: int = 0
    qu: Optional[Tuple[Term, ...]] = None
    qv: Optional[Tuple[Term, ...]] = None
    dia: bool = False  # diagonal cell: the parameter is the depth, so germ
                       # queries read the eventual value, not the minimum


def support_set(x) -> IndexSet:
    s = empty_set()
    for (d, _) in x.laws:
        s = union(s, d)
    return s


def law_pairs(u, v, universe: Optional[IndexSet] = None):
    uni = universe if universe is not None else full_set()
    su = inter(support_set(u), uni)
    sv = inter(support_set(v), uni) if v is not None else empty_set()
    out = []
    for (du, vu) in u.laws:
        dui = inter(du, uni)
        if v is not None:
            for (dv, vv) in v.laws:
                out.append((inter(dui, dv), vu, vv))
        out.append((diff(dui, sv), vu, None))
    if v is not None:
        for (dv, vv) in v.laws:
            out.append((diff(inter(dv, uni), su), None, vv))
    out.append((diff(uni, union(su, sv)), None, None))
    return [(r, a, b) for (r, a, b) in out if not r.is_null_germ()]


def _const_entry(val: Optional[Val]) -> Tuple[object, Optional[Coeff]]:
    if val is None or val.is_zero():
        return INF, None
    t = min(val.num, key=lambda t: t.exp.c)
    return t.exp.c, t.coeff


def _terms_in_i(val: Optional[Val]):
    if val is None or val.is_zero():
        return []
    return _merge_polys((t.coeff, t.exp.poly_i()) for t in val.num)


def _terms_in_row(val: Optional[Val], i: int):
    if val is None or val.is_zero():
        return []
    return _merge_polys((t.coeff, t.exp.at_row(i)) for t in val.num)


def _merge_polys(pairs):
    merged: Dict[Poly, Coeff] = {}
    for c, p in pairs:
        merged[p] = merged.get(p, Coeff(Fraction(0))) + c
    return [(c, p) for p, c in merged.items() if not c.is_zero()]


def _diag_p1(val: Optional[Val], D: Diag) -> P1:
    """Effective exponent along a diagonal, as a profile in the step k."""
    if val is None or val.is_zero():
        return p1_zero()
    (ipre, ilo, (si, di)), (jpre, jlo, (sj, dj)) = diag_index_profiles(D)
    lo = max(ilo, jlo)
    live = _merge_polys((t.coeff, t.exp.along_affine(si, di, sj, dj))
                        for t in val.num)
    prof = effective_1d(live, lo) if live else P1({}, lo, None)
    for k in range(lo):
        i = ipre.get(k, si + di * k)
        j = jpre.get(k, sj + dj * k)
        levels: Dict[Fraction, Coeff] = {}
        for t in val.num:
            v = t.exp.at(i, j)
            levels[v] = levels.get(v, Coeff(Fraction(0))) + t.coeff
        ent: Entry = (INF, None)
        for v in sorted(levels):
            if not levels[v].is_zero():
                ent = (v, levels[v])
                break
        prof.explicit[k] = ent
    return prof


_CELLS_CACHE: Dict = {}


def cells(u, v=None, universe: Optional[IndexSet] = None) -> List[Cell]:
    try:
        key = (u, v, universe)
        hit = _CELLS_CACHE.get(key)
    except TypeError:
        key = None
        hit = None
    if hit is not None:
        return hit
    out = _cells_raw(u, v, universe)
    if key is not None and len(_CELLS_CACHE) < 100000:
        _CELLS_CACHE[key] = out
    return out


def _cells_raw(u, v=None, universe: Optional[IndexSet] = None) -> List[Cell]:
    out: List[Cell] = []
    for (R, vu, vv) in law_pairs(u, v, universe):
        fam = join_family(vu.family if vu else None, vv.family if vv else None)
        if fam is None:
            if R.alive_residues() or R.plus:
                eu, cu = _const_entry(vu)
                ev, cv = _const_entry(vv)
                out.append(Cell("atom", eu=eu, ev=ev, cu=cu, cv=cv))
            continue
        if R.alive_residues():
            if fam == NU2:
                fn, am, tail = survivors_nu2(R)
                pu = apply_surv(_p1(_terms_in_i(vu)), fn, am, tail)
                pv = apply_surv(_p1(_terms_in_i(vv)), fn, am, tail)
                _emit_pair(out, pu, pv)
            else:
                pair_alive, am, quad = survivors_nu2sq(R)
                for i in range(am):
                    j0 = max(0, am - i - 1)
                    fn = (lambda j, _i=i: pair_alive(_i, j))
                    pu = apply_surv(_p1(_terms_in_row(vu, i)), fn, j0, pair_alive(i, j0))
                    pv = apply_surv(_p1(_terms_in_row(vv, i)), fn, j0, pair_alive(i, j0))
                    _emit_pair(out, pu, pv)
                if quad:
                    out.append(Cell("quad", i0=am,
                                    qu=vu.num if (vu and not vu.is_zero()) else None,
                                    qv=vv.num if (vv and not vv.is_zero()) else None))
        for D in R.plus:
            _emit_pair(out, _diag_p1(vu, D), _diag_p1(vv, D), dia=True)
    return out


def _p1(terms) -> P1:
    return effective_1d(terms) if terms else p1_zero()


def _emit_pair(out: List[Cell], pu: P1, pv: P1, dia: bool = False) -> None:
    lo = max(pu.lo, pv.lo)
    if not dia:
        keys = set(range(0, lo)) | set(pu.explicit) | set(pv.explicit)
        for t in sorted(keys):
            enu, env = pu.at(t), pv.at(t)
            if enu is None and env is None:
                continue
            eu, cu = enu if enu is not None else (INF, None)
            ev, cv = env if env is not None else (INF, None)
            out.append(Cell("atom", eu=eu, ev=ev, cu=cu, cv=cv))
    if pu.tail_alive or pv.tail_alive:
        if not (pu.tail_alive and pv.tail_alive):
            # survivorship is shared between the two sides of one region
            raise AssertionError("misaligned tail survivorship")
        out.append(Cell("tail", lo=lo, tu=pu.tail, tv=pv.tail, dia=dia))


# ---------------------------------------------------------------------------
# quadrant helpers
# ---------------------------------------------------------------------------


def _sep_range(e: ExpFn, i0: int):
    lo_p, _ = polys.min_over_tail(e.pi, i0) if e.pi else (Fraction(0), 0)
    lo_q, _ = polys.min_over_tail(e.qj, 0) if e.qj else (Fraction(0), 0)
    hi_p = polys.sup_over_tail(e.pi, i0) if e.pi else Fraction(0)
    hi_q = polys.sup_over_tail(e.qj, 0) if e.qj else Fraction(0)
    lo = NEG_INF if (lo_p is None or lo_q is None) else e.c + lo_p + lo_q
    hi = INF if (is_inf(hi_p) or is_inf(hi_q)) else e.c + hi_p + hi_q
    return lo, hi


def quad_guard(terms: Sequence[Term], i0: int) -> None:
    n = len(terms)
    if n < 2:
        return
    can_tie = [[False] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            lo, hi = _sep_range(terms[a].exp.sub(terms[b].exp), i0)
            can = lo <= 0 and (is_inf(hi) or hi >= 0)
            can_tie[a][b] = can_tie[b][a] = can
    for mask in range(3, 1 << n):
        idx = [a for a in range(n) if mask >> a & 1]
        if len(idx) < 2:
            continue
        if any(not can_tie[a][b] for x, a in enumerate(idx) for b in idx[x + 1:]):
            continue
        s = Coeff(Fraction(0))
        for a in idx:
            s = s + terms[a].coeff
        if s.is_zero():
            raise UnsupportedCancellation("coefficients can cancel along a quadrant tie")


def quad_min(terms: Optional[Sequence[Term]], i0: int):
    if terms is None:
        return INF
    quad_guard(terms, i0)
    best = INF
    for t in terms:
        lo, _ = _sep_range(t.exp, i0)
        if lo < best:
            best = lo
    return best


def quad_dominant(terms: Optional[Sequence[Term]], i0: int):
    """Term minimal on i >= i0', all j, with the adjusted i0'.

    Raises Undecided when no total dominance order exists on the quadrant.
    """
    if terms is None:
        return None, i0
    if len(terms) == 1:
        return terms[0], i0
    for cand in terms:
        ok = True
        bound = i0
        for other in terms:
            if other is cand:
                continue
            d = other.exp.sub(cand.exp)  # want >= 0 on the quadrant
            lo_q, _ = polys.min_over_tail(d.qj, 0) if d.qj else (Fraction(0), 0)
            if lo_q is None:
                ok = False
                break
            p = polys.add(polys.const(d.c + lo_q), d.pi)
            m, _ = polys.min_over_tail(p, bound)
            if m is None:
                ok = False
                break
            if m >= 0:
                continue
            if polys.tends_to_infinity(p):
                b = polys.stable_from(p, bound)
                while polys.evaluate(p, b) < 0:
                    b += 1
                bound = max(bound, b)
            else:
                ok = False
                break
        if ok:
            return cand, bound
    raise Undecided("no total dominance order on the quadrant")


def quad_sup_effective(terms: Optional[Sequence[Term]], i0: int):
    """sup over the quadrant of the effective exponent min_t g_t."""
    if terms is None:
        return INF
    quad_guard(terms, i0)
    istar = max([i0] + [polys.stable_from(t.exp.pi, i0) for t in terms]) + 1
    jstar = max([0] + [polys.stable_from(t.exp.qj, 0) for t in terms]) + 1
    best = NEG_INF
    for i in range(i0, istar + 1):
        for j in range(0, jstar + 1):
            best = max(best, min(t.exp.at(i, j) for t in terms))
    best = max(best, _dir_sup([t for t in terms if polys.is_const(t.exp.pi)],
                              axis="j"))
    best = max(best, _dir_sup([t for t in terms if polys.is_const(t.exp.qj)],
                              axis="i", lo=i0))
    return best


def _dir_sup(terms, axis: str, lo: int = 0):
    if not terms:
        return INF
    ps = []
    for t in terms:
        if axis == "j":
            base = t.exp.c + polys.const_val(t.exp.pi)
            var = t.exp.qj
        else:
            base = t.exp.c + polys.const_val(t.exp.qj)
            var = t.exp.pi
        ps.append(polys.add(polys.const(base), var))
    hi = max([polys.stable_from(p, lo) for p in ps] + [lo]) + 1
    best = NEG_INF
    for t in range(lo, hi + 1):
        best = max(best, min(polys.evaluate(p, t) for p in ps))
    consts = [polys.const_val(p) for p in ps if polys.is_const(p)]
    if consts:
        best = max(best, min(consts))
    elif all(polys.tends_to_infinity(p) for p in ps):
        best = INF
    return best


def _strip_rows(qterms, i: int):
    return _p1(_merge_polys((t.coeff, t.exp.at_row(i)) for t in qterms)) \
        if qterms else p1_zero()


# ---------------------------------------------------------------------------
# element and pair queries
# ---------------------------------------------------------------------------


def _eventual(p: Poly):
    """Limit of a polynomial tail: its value when constant, else +-inf."""
    if polys.is_const(p):
        return polys.const_val(p)
    return INF if polys.leading(p) > 0 else NEG_INF


def valuation_cells(cs: Sequence[Cell]) -> object:
    best = INF
    for c in cs:
        if c.kind == "atom":
            e = c.eu
        elif c.kind == "tail":
            if c.tu is None:
                continue
            if c.dia:
                e = _eventual(c.tu[0])
                if is_inf(e):
                    continue
            else:
                e, _ = polys.min_over_tail(c.tu[0], c.lo)
                if e is None:
                    e = NEG_INF  # non-moderate; rejected at canonicalization
        else:
            e = quad_min(c.qu, c.i0)
        if e < best:
            best = e
    return best


def sup_exponent_cells(cs: Sequence[Cell]) -> object:
    best = NEG_INF
    for c in cs:
        if c.kind == "atom":
            e = c.eu
        elif c.kind == "tail":
            if c.tu is None:
                e = INF
            elif c.dia:
                e = _eventual(c.tu[0])
            else:
                e = polys.sup_over_tail(c.tu[0], c.lo)
        else:
            e = quad_sup_effective(c.qu, c.i0)
        best = max(best, e)
        if is_inf(best):
            return INF
    return best


def sup_diff_cells(cs: Sequence[Cell]) -> object:
    """sup over cells of (E_v - E_u), INF when unbounded."""
    best = NEG_INF
    for c in cs:
        if c.kind == "atom":
            d = _diff_rule(c.eu, c.ev)
        elif c.kind == "tail":
            if c.dia:
                d = _dia_diff(c)
            else:
                if c.tu is None:
                    continue  # the candidate vanishes: no constraint
                if c.tv is None:
                    return INF  # generator vanishes where the candidate lives
                d = polys.sup_over_tail(polys.sub(c.tv[0], c.tu[0]), c.lo)
        else:
            if c.qu is None:
                continue
            if c.qv is None:
                return INF
            tv, iv = quad_dominant(c.qv, c.i0)
            tu, iu = quad_dominant(c.qu, c.i0)
            i1 = max(iu, iv)
            dexp = tv.exp.sub(tu.exp)
            dp = polys.sup_over_tail(dexp.pi, i1) if dexp.pi else Fraction(0)
            dq = polys.sup_over_tail(dexp.qj, 0) if dexp.qj else Fraction(0)
            d = INF if (is_inf(dp) or is_inf(dq)) else dexp.c + dp + dq
            for i in range(c.i0, i1):
                d = max(d, _p1_sup_diff(_strip_rows(c.qu, i), _strip_rows(c.qv, i)))
        if is_inf(d):
            return INF
        best = max(best, d)
    return best


def _dia_diff(c: Cell) -> object:
    """Eventual value of E_v - E_u along a diagonal."""
    eu = _eventual(c.tu[0]) if c.tu is not None else INF
    ev = _eventual(c.tv[0]) if c.tv is not None else INF
    if is_inf(eu):
        return NEG_INF  # the candidate is negligible along the diagonal
    if is_inf(ev):
        return INF      # the generator is negligible where the candidate lives
    return _eventual(polys.sub(c.tv[0], c.tu[0]))


def _p1_sup_diff(pu: P1, pv: P1) -> object:
    lo = max(pu.lo, pv.lo)
    best = NEG_INF
    for t in set(range(0, lo)) | set(pu.explicit) | set(pv.explicit):
        enu, env = pu.at(t), pv.at(t)
        eu = enu[0] if enu is not None else INF
        ev = env[0] if env is not None else INF
        best = max(best, _diff_rule(eu, ev))
        if is_inf(best):
            return INF
    if pu.tail_alive and pu.tail is not None:
        if pv.tail is None:
            return INF
        best = max(best, polys.sup_over_tail(polys.sub(pv.tail[0], pu.tail[0]), lo))
    return best


def _diff_rule(eu, ev) -> object:
    # eu: candidate exponent, ev: generator exponent (sup of ev - eu decides
    # membership).  A vanishing candidate imposes nothing; a vanishing
    # generator under a live candidate is an immediate refutation.
    if is_inf(eu):
        return NEG_INF
    if is_inf(ev):
        return INF
    return ev - eu


def inv_subset_cells(cs: Sequence[Cell]) -> bool:
    """Cells of (u=a, v=b): decides Inv(b) ⊆ Inv(a), i.e. Z(a) ⊆ Z(b).

    Per cell: wherever b keeps a finite exponent a must too, and a's exponent
    must stay bounded on every exponent sublevel set of b.
    """
    for c in cs:
        if c.kind == "atom":
            if not is_inf(c.ev) and is_inf(c.eu):
                return False
        elif c.kind == "tail":
            if c.dia:
                ev = _eventual(c.tv[0]) if c.tv is not None else INF
                if is_inf(ev):
                    continue  # b negligible along the diagonal
                eu = _eventual(c.tu[0]) if c.tu is not None else INF
                if is_inf(eu):
                    return False
                continue
            if c.tv is None:
                continue
            if c.tu is None:
                return False
            if polys.is_const(c.tv[0]) and not polys.is_const(c.tu[0]):
                return False
        else:
            if c.qv is None:
                continue
            if c.qu is None:
                return False
            tb, ib = quad_dominant(c.qv, c.i0)
            ta, ia = quad_dominant(c.qu, c.i0)
            b_i = not polys.is_const(tb.exp.pi)
            b_j = not polys.is_const(tb.exp.qj)
            if (not b_i and not polys.is_const(ta.exp.pi)) or \
               (not b_j and not polys.is_const(ta.exp.qj)):
                return False
            for i in range(c.i0, max(ia, ib)):
                if not _p1_inv_subset(_strip_rows(c.qu, i), _strip_rows(c.qv, i)):
                    return False
    return True


def _p1_inv_subset(pa: P1, pb: P1) -> bool:
    lo = max(pa.lo, pb.lo)
    for t in set(range(0, lo)) | set(pa.explicit) | set(pb.explicit):
        ena, enb = pa.at(t), pb.at(t)
        ea = ena[0] if ena is not None else INF
        eb = enb[0] if enb is not None else INF
        if not is_inf(eb) and is_inf(ea):
            return False
    if pb.tail_alive and pb.tail is not None:
        if pa.tail is None:
            return False
        if polys.is_const(pb.tail[0]) and not polys.is_const(pa.tail[0]):
            return False
    return True


# ---------------------------------------------------------------------------
# region construction (level sets, sign regions)
# ---------------------------------------------------------------------------


def law_region(domain: IndexSet, val: Val, pred, kind: str = "level") -> IndexSet:
    """Sub-IndexSet of `domain` where pred(E, coeff) holds, germ-exactly.

    kind 'level': pred is downward closed in E (true for small E, eventually
    false along exponent tails growing to infinity).  kind 'sign': pred
    depends only on the dominant coefficient, constant along tails.
    """
    reg = empty_set()
    fam = val.family
    if fam is None:
        e, cf = _const_entry(val)
        if pred(e, cf):
            reg = union(reg, domain)
    elif fam == NU2:
        fn, am, tail = survivors_nu2(domain)
        p1 = apply_surv(_p1(_terms_in_i(val)), fn, am, tail)
        expl, allfrom = _p1_sat(p1, pred, kind)
        for i in expl:
            reg = union(reg, inter(nu2_piece(i), domain))
        if allfrom is not None:
            reg = union(reg, inter(nu2_ge(allfrom), domain))
    else:
        pair_alive, am, quad = survivors_nu2sq(domain)
        dom_term, i0 = quad_dominant(val.num, am) if quad else (None, am)
        for i in range(i0):
            j0 = max(0, am - i - 1)
            fn = (lambda j, _i=i: pair_alive(_i, j))
            p1 = apply_surv(_p1(_terms_in_row(val, i)), fn, j0,
                            pair_alive(i, j0) if i < am else quad)
            expl, allfrom = _p1_sat(p1, pred, kind)
            for j in expl:
                reg = union(reg, inter(nu2sq_piece(i, j), domain))
            if allfrom is not None:
                part = inter(nu2_piece(i), domain)
                for j in range(allfrom):
                    part = diff(part, nu2sq_piece(i, j))
                reg = union(reg, part)
        if quad:
            reg = union(reg, _quad_region(dom_term, i0, domain, pred, kind))
    for D in domain.plus:
        p1 = _diag_p1(val, D)
        expl, allfrom = _p1_sat(p1, pred, kind)
        # finitely many single grid points are germ-null; only tails matter
        if allfrom is not None:
            reg = union(reg, diag_set(D.sub(allfrom, 1)))
    return reg


def _p1_sat(p: P1, pred, kind: str):
    """(explicit satisfying params, all-from index or None)."""
    expl = []
    hi = p.lo
    if p.tail is not None:
        hi = max(hi, polys.stable_from(p.tail[0], p.lo) + 1)
    for t in range(0, hi):
        ent = p.at(t)
        if ent is not None and pred(ent[0], ent[1]):
            expl.append(t)
    if not p.tail_alive:
        return expl, None
    if p.tail is None:
        return expl, (hi if pred(INF, None) else None)
    poly, cf = p.tail
    if polys.is_const(poly):
        return expl, (hi if pred(polys.const_val(poly), cf) else None)
    if kind == "sign":
        return expl, (hi if pred(polys.evaluate(poly, hi), cf) else None)
    if kind == "colevel":
        # upward closed in E: once the growing exponent qualifies, it stays
        t = hi
        while not pred(polys.evaluate(poly, t), cf):
            t += 1
            if t > hi + 100000:
                raise Undecided("colevel predicate did not settle on tail")
        return expl, t
    # level predicate along a tail growing to infinity: scan until it fails
    t = hi
    while pred(polys.evaluate(poly, t), cf):
        expl.append(t)
        t += 1
        if t > hi + 100000:
            raise Undecided("level predicate did not settle on tail")
    return expl, None


def _quad_region(dom_term: Term, i0: int, domain: IndexSet, pred, kind: str) -> IndexSet:
    e, cf = dom_term.exp, dom_term.coeff
    if kind == "sign":
        return inter(nu2_ge(i0), domain) if pred(e.c, cf) else empty_set()
    p_const = polys.is_const(e.pi)
    q_const = polys.is_const(e.qj)
    reg = empty_set()
    if p_const and q_const:
        if pred(e.c + polys.const_val(e.pi) + polys.const_val(e.qj), cf):
            reg = inter(nu2_ge(i0), domain)
        return reg
    if p_const and not q_const:
        raise UndecidableRegion(
            "region varies only with the second index: fixed-j columns are "
            "not eventually periodic")
    if q_const:
        base = e.c + polys.const_val(e.qj)
        p1 = effective_1d([(cf, polys.add(polys.const(base), e.pi))], i0)
        expl, allfrom = _p1_sat(p1, pred, kind)
        for i in expl:
            reg = union(reg, inter(nu2_piece(i), domain))
        if allfrom is not None:
            reg = union(reg, inter(nu2_ge(allfrom), domain))
        return reg
    if kind == "colevel":
        # upward closed in E: the complement region is a 'level' one, finite
        neg = lambda e_, cf_: not pred(e_, cf_)
        whole = inter(nu2_ge(i0), domain)
        return diff(whole, _quad_region(dom_term, i0, domain, neg, "level"))
    # both indices grow: the satisfying region is a finite union
    mq, _ = polys.min_over_tail(e.qj, 0)
    p1 = effective_1d([(cf, polys.add(polys.const(e.c + mq), e.pi))], i0)
    expl, allfrom = _p1_sat(p1, pred, kind)
    if allfrom is not None:
        raise UndecidableRegion("quadrant region not finite in the row index")
    for i in expl:
        base = e.c + polys.evaluate(e.pi, i)
        pj = effective_1d([(cf, polys.add(polys.const(base), e.qj))], 0)
        jexpl, jall = _p1_sat(pj, pred, kind)
        for j in jexpl:
            reg = union(reg, inter(nu2sq_piece(i, j), domain))
        if jall is not None:
            part = inter(nu2_piece(i), domain)
            for j in range(jall):
                part = diff(part, nu2sq_piece(i, j))
            reg = union(reg, part)
    return reg


# ---------------------------------------------------------------------------
# eventual sign (R mode)
# ---------------------------------------------------------------------------


def sign_cells(cs: Sequence[Cell]):
    """Set of eventual signs of the u side across all cells."""
    signs = set()
    for c in cs:
        if c.kind == "atom":
            signs.add(_coeff_sign(c.cu) if not is_inf(c.eu) else 0)
        elif c.kind == "tail":
            signs.add(_coeff_sign(c.tu[1]) if c.tu is not None else 0)
        else:
            if c.qu is None:
                signs.add(0)
            else:
                t, i1 = quad_dominant(c.qu, c.i0)
                signs.add(_coeff_sign(t.coeff))
                for i in range(c.i0, i1):
                    p1 = _strip_rows(c.qu, i)
                    for ent in p1.explicit.values():
                        if ent is not None:
                            signs.add(_coeff_sign(ent[1]) if not is_inf(ent[0]) else 0)
                    if p1.tail is not None:
                        signs.add(_coeff_sign(p1.tail[1]))
    return signs


def _coeff_sign(cf: Optional[Coeff]) -> int:
    if cf is None:
        return 0
    if not cf.is_real():
        raise Undecided("sign of a non-real coefficient")
    return (cf.re > 0) - (cf.re < 0)


def negative_region(x) -> IndexSet:
    """Germ region where x is eventually strictly negative (R mode)."""
    reg = empty_set()
    for (d, v) in x.laws:
        reg = union(reg, law_region(
            d, v,
            lambda e, cf: (not is_inf(e)) and cf is not None and _coeff_sign(cf) < 0,
            kind="sign"))
    return reg
