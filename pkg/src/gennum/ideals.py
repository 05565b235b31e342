"""Level sets, zero/invertibility predicates, and ideal decision procedures.

Membership in principal ideals, radicals, closures, z-closures, pure parts
and annihilators all reduce to exact exponent comparisons on aligned cells;
closure and z-closure of a principal ideal coincide, and both are decided by
the inclusion of invertibility families (level sets of the candidate must sit
inside levels of the generator, uniformly in the level index).

Witness constructions (annihilator escapes, orthogonal pairs) realize the
one-point-per-level selections as sparse grid diagonals and verify the
defining equations exactly before returning.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import polys, profiles
from .calculus import bezout_gen, meet_gen, nth_root_skeleton, skeleton_of
from .core import (GenNum, add, alive_region, classify_element, equal_germ,
                   inv_test, make_idempotent, mknum, mul, alpha_power,
                   neg, sub, z_test, zero_region, R as MODE_R)
from .errors import (GennumError, ImproperFilter, NotOrthogonal, ResourceLimit,
                     SIsCovered, Undecided, UnnormalizableIdeal)
from .exponents import ExpFn
from .indexsets import (FULL, GRID, Diag, IndexSet, NULL_AT_ZERO, PieceFamily,
                        SPLITTING, blocks_mod, classify_set, compl, diag_set,
                        diff, empty_set, full_set, inter, multiplicative_order,
                        nu2, nu2_ge, nu2_piece, subset_germ, same_germ, union)
from .profiles import INF, cells, is_inf, law_region
from .rats import Coeff
from .values import Term, Val, mkval, val_div, val_inv, val_skeleton


# ---------------------------------------------------------------------------
# level sets
# ---------------------------------------------------------------------------


def _level_pred(m: Fraction):
    def pred(e, cf) -> bool:
        if is_inf(e):
            return False
        if e < m:
            return True
        return e == m and cf is not None and cf.abs2() >= 1

    return pred


def level_set(a: GenNum, m) -> IndexSet:
    """L_m = block-granular germ region where |a_eps| >= eps^m.

    Exponent ties at m are resolved by squared coefficient modulus >= 1.
    """
    m = Fraction(m)
    reg = empty_set()
    for (d, v) in a.laws:
        reg = union(reg, law_region(d, v, _level_pred(m), kind="level"))
    return reg


@dataclass
class LevelScheme:
    """The parametric family m -> L_m of level sets of one element."""

    element: GenNum

    def at(self, m) -> IndexSet:
        return level_set(self.element, m)

    def sets(self, depth: int) -> List[IndexSet]:
        return [self.at(n) for n in range(depth + 1)]

    def stabilizes(self) -> Optional[IndexSet]:
        return stationary(self.element)


def stationary(a: GenNum) -> Optional[IndexSet]:
    """S with aK = e_S K when the level scheme is stationary, else None."""
    if a.is_zero():
        return empty_set()
    s = alive_region(a)
    if inv_test(a, s):
        return s
    return None


# ---------------------------------------------------------------------------
# Inv / Z comparisons
# ---------------------------------------------------------------------------


def inv_subset(a: GenNum, b: GenNum) -> bool:
    """Decides Inv(b) ⊆ Inv(a), equivalently Z(a) ⊆ Z(b)."""
    return profiles.inv_subset_cells(cells(a, b))


def in_closure_principal(x: GenNum, a: GenNum) -> bool:
    """x in the topological closure of aK: every level idempotent of x lies
    in aK, decided parametrically (equals the z-closure for principal
    ideals)."""
    return inv_subset(a, x)


def in_z_closure(x: GenNum, a: GenNum) -> bool:
    return inv_subset(a, x)


# ---------------------------------------------------------------------------
# principal and radical membership
# ---------------------------------------------------------------------------


@dataclass
class Membership:
    member: bool
    witness: Optional[GenNum] = None
    bound: Optional[Fraction] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.member


def in_principal(x: GenNum, a: GenNum) -> Membership:
    """x ∈ aK iff |x| <= eps^-N |a| eventually; returns a witness y with
    x = a*y when membership holds (skeletal if division leaves the class)."""
    s = profiles.sup_diff_cells(cells(x, a))
    if is_inf(s):
        return Membership(False, reason="exponent gap unbounded")
    if x.is_zero():
        return Membership(True, witness=mknum(x.mode, []), bound=Fraction(0))
    laws = []
    skel = x.skeletal or a.skeletal
    for (r, vx, va) in profiles.law_pairs(x, a):
        if vx is None:
            continue
        if va is None:
            continue  # unreachable for members: x vanishes where a does
        q = val_div(vx, va)
        if q is None:
            q = val_div(vx, val_skeleton(va))
            skel = True
        laws.append((r, q))
    bound = s if s != profiles.NEG_INF else Fraction(0)
    return Membership(True, witness=mknum(x.mode, laws, skel), bound=bound)


def in_radical(x: GenNum, a: GenNum) -> bool:
    """x ∈ rad(aK) = <n-th roots of |a|>: some power of x divides into aK."""
    for c in cells(x, a):
        if not _radical_cell_ok(c):
            return False
    return True


def _radical_cell_ok(c) -> bool:
    # u side: x, v side: a.  Need: exists n, N with E_a <= n*E_x + n*N on the
    # cell, and E_x = INF wherever E_a = INF.
    if c.kind == "atom":
        return not (is_inf(c.ev) and not is_inf(c.eu))
    if c.kind == "tail":
        if c.dia:
            ea = profiles._eventual(c.tv[0]) if c.tv is not None else INF
            ex = profiles._eventual(c.tu[0]) if c.tu is not None else INF
            if is_inf(ea):
                return is_inf(ex)
            if is_inf(ex):
                return True
            return _poly_radical_ok(c.tu[0] if c.tu else (), c.tv[0] if c.tv else ())
        if c.tv is None:
            return c.tu is None  # generator zero on live content: x must be too
        if c.tu is None:
            return False
        return _poly_radical_ok(c.tu[0], c.tv[0])
    # quad
    if c.qv is None:
        return c.qu is None
    if c.qu is None:
        return True
    tv, iv = profiles.quad_dominant(c.qv, c.i0)
    tu, iu = profiles.quad_dominant(c.qu, c.i0)
    return (_axis_radical_ok(tu.exp.pi, tv.exp.pi) and
            _axis_radical_ok(tu.exp.qj, tv.exp.qj))


def _zero_tail_ok(c) -> bool:
    # a zero-content tail of the generator with live x-content refutes
    return c.tu is None


def _poly_radical_ok(px: polys.Poly, pa: polys.Poly) -> bool:
    if polys.is_const(pa):
        return True
    if polys.is_const(px):
        return False
    return polys.degree(pa) <= polys.degree(px)


def _axis_radical_ok(px: polys.Poly, pa: polys.Poly) -> bool:
    if polys.is_const(pa):
        return True
    if polys.is_const(px):
        return False
    return polys.degree(pa) <= polys.degree(px)


# ---------------------------------------------------------------------------
# pure part
# ---------------------------------------------------------------------------


@dataclass
class PurePartScheme:
    """m(aK) presented by its countable idempotent scheme e_{L_n}."""

    element: GenNum

    def level(self, n) -> IndexSet:
        return level_set(self.element, n)

    def is_single(self) -> bool:
        return stationary(self.element) is not None

    def sets(self, depth: int) -> List[IndexSet]:
        out, prev = [], empty_set()
        for n in range(depth + 1):
            ln = self.level(n)
            if not same_germ(ln, prev):
                out.append(ln)
                prev = ln
        return out


def pure_part(a: GenNum) -> PurePartScheme:
    return PurePartScheme(a)


def in_pure_part(x: GenNum, a: GenNum) -> bool:
    """x ∈ m(aK): x = x*e_{L_n} for some n, i.e. the generator's exponent is
    bounded on the region where x lives."""
    s = alive_region(x)
    if s.is_null_germ():
        return True
    cs = cells(a, universe=s)
    return not is_inf(profiles.sup_exponent_cells(cs))


def merged_generator(scheme: Union[PurePartScheme, Sequence[IndexSet]],
                     mode: str = MODE_R) -> GenNum:
    """An element whose principal ideal has the scheme as its pure part.

    For the scheme of an element this is its skeleton; for an explicit
    increasing chain T_1 ⊆ T_2 ⊆ ... it is sum alpha^n e_{T_n minus T_n-1}.
    """
    if isinstance(scheme, PurePartScheme):
        return skeleton_of(scheme.element)
    prev = empty_set()
    acc = mknum(mode, [])
    for n, t in enumerate(scheme, start=1):
        ring = diff(t, prev)
        acc = add(acc, mul(alpha_power(n, mode), make_idempotent(ring, mode)))
        prev = union(prev, t)
    return acc


# ---------------------------------------------------------------------------
# annihilators and witness diagonals
# ---------------------------------------------------------------------------


def in_annihilator(x: GenNum, a: GenNum) -> bool:
    return mul(x, a).is_zero()


def _grid_candidates(R: IndexSet) -> List[int]:
    """Alive residues of R whose trace contains its grid point."""
    return [s for s in range(R.modulus) if R.pattern[s] in (GRID, FULL)]


def _diag_escape_i(R: IndexSet, i_start: int) -> Optional[Diag]:
    """A diagonal of grid points in R, one per piece, with piece index
    escaping to infinity (i = i0 + k*P)."""
    M = R.modulus
    A = nu2(M) if M % 2 == 0 else 0
    q = M >> A
    cands = [s for s in _grid_candidates(R) if s % (1 << A) == 0]
    if not cands:
        return None
    s0 = cands[0] % q if q > 1 else 0
    P = 1 if q == 1 else multiplicative_order(2, q)
    i0 = max(A, i_start)
    bound = R.exc_bound()
    while True:
        if q == 1:
            t = 1
        else:
            inv2i = pow(pow(2, i0, q), -1, q)
            t = (s0 * inv2i) % q
            if t == 0:
                t = q  # q is odd
            elif t % 2 == 0:
                t += q
        first = t * (1 << i0)
        if first > bound:
            return Diag(first, P, 0)
        i0 += P


def _diag_escape_j(R: IndexSet, i_fix: int, j_start: int) -> Optional[Diag]:
    """A diagonal of grid points in R inside row i_fix with the second index
    escaping (j = j0 + k*P).  Blocks 2^i (2^(j+1) - 1)."""
    M = R.modulus
    A = nu2(M) if M % 2 == 0 else 0
    q = M >> A
    P = 1 if q == 1 else multiplicative_order(2, q)
    bound = R.exc_bound()
    targets = set(_grid_candidates(R))
    if not targets:
        return None
    jmin = max(j_start, A - i_fix)  # stabilizes the 2-part of the residue
    for j0 in range(jmin, jmin + P + A + 8):
        n = (1 << i_fix) * ((1 << (j0 + 1)) - 1)
        if n <= bound:
            continue
        if n % M in targets:
            return Diag(1 << (i_fix + j0 + 1), P, 1 << i_fix)
    return None


def _row_candidates(R: IndexSet) -> List[int]:
    """Plausible fixed first-index values for content of R."""
    A = nu2(R.modulus) if R.modulus % 2 == 0 else 0
    out = set()
    for s in _grid_candidates(R):
        if s == 0 or s % (1 << A) == 0:
            out.update({A, A + 1})
        else:
            out.add(nu2(s))
    return sorted(out)


def find_ann_witness(x: GenNum, a: GenNum) -> Optional[IndexSet]:
    """T with e_T*a = 0 and x*e_T != 0, exactly when x is outside the closure
    of aK (the double-annihilator shadow); None when x is inside."""
    if inv_subset(a, x):
        return None
    for (r, vx, va) in profiles.law_pairs(x, a):
        if vx is None:
            continue
        for cand in _witness_candidates(r, vx, va):
            if cand is not None and _check_witness(cand, x, a):
                return cand
    raise Undecided("no representable annihilator witness found")


def _check_witness(T: IndexSet, x: GenNum, a: GenNum) -> bool:
    if classify_set(T) == NULL_AT_ZERO:
        return False
    eT = make_idempotent(T, x.mode)
    return mul(a, eT).is_zero() and not mul(x, eT).is_zero()


def _witness_candidates(r: IndexSet, vx: Val, va: Optional[Val]) -> List[IndexSet]:
    alive_pred = lambda e, cf: not is_inf(e)
    if va is None:
        # the generator vanishes on the whole region
        return [law_region(r, vx, alive_pred, kind="sign")]
    out: List[IndexSet] = []
    # pieces where the generator's value cancels but x lives
    dead = law_region(r, va, lambda e, cf: is_inf(e), kind="sign")
    livex = law_region(r, vx, alive_pred, kind="sign")
    both = inter(dead, livex)
    if not both.is_null_germ():
        out.append(both)
    # escape along growing exponents of the generator where x stays bounded
    fam = va.family
    if fam == "nu2":
        d = _diag_escape_i(r, i_start=1)
        if d is not None:
            out.append(diag_set(d))
    elif fam == "nu2sq":
        try:
            dom, _ = profiles.quad_dominant(va.num, 0)
            pi_grows = not polys.is_const(dom.exp.pi)
            qj_grows = not polys.is_const(dom.exp.qj)
        except Undecided:
            pi_grows = qj_grows = True
        if pi_grows:
            d = _diag_escape_i(r, i_start=1)
            if d is not None:
                out.append(diag_set(d))
        if qj_grows:
            for i_fix in _row_candidates(r):
                d = _diag_escape_j(r, i_fix, j_start=1)
                if d is not None:
                    out.append(diag_set(d))
    return out


def annihilator_split(a: GenNum, bs: Sequence[GenNum]) -> IndexSet:
    """S with a*e_coS = 0 and b_j*e_S = 0 for every j (finite-family version
    of the countable-annihilator selection, built block-granularly)."""
    for b in bs:
        if not mul(b, a).is_zero():
            raise NotOrthogonal("a generator does not annihilate a")
    S = alive_region(a)
    for b in bs:
        for (db, _) in b.laws:
            for D in db.plus:
                ds = diag_set(D)
                if z_test(a, ds):
                    S = diff(S, ds)
    eS = make_idempotent(S, a.mode)
    ecoS = make_idempotent(compl(S), a.mode)
    if not mul(a, ecoS).is_zero():
        raise Undecided("split set failed the annihilation equation for a")
    for b in bs:
        if not mul(b, eS).is_zero():
            raise Undecided("split set failed the annihilation equation for b")
    return S


def _split_alive(T: IndexSet) -> Tuple[IndexSet, IndexSet]:
    """Two germ-disjoint alive halves of an alive set."""
    if T.plus and not T.alive_residues():
        D = T.plus[0]
        return diag_set(D.sub(0, 2)), diag_set(D.sub(1, 2))
    alive = T.alive_residues()
    s = alive[0]
    M = T.modulus
    return inter(T, blocks_mod(s, 2 * M)), inter(T, blocks_mod(s + M, 2 * M))


def orthogonal_witness(S: IndexSet, gens: Sequence[GenNum]) -> Tuple[IndexSet, IndexSet]:
    """A disjoint pair T, T' ⊆ S of alive sets with e_T and e_T' annihilating
    every generator; exists whenever e_S is outside the closure of the
    generated ideal."""
    mode = gens[0].mode if gens else MODE_R
    from .core import abs2
    A = mknum(mode, [])
    for g in gens:
        A = add(A, abs2(g))
    eS = make_idempotent(S, A.mode if gens else MODE_R)
    if inv_subset(A, eS):
        raise SIsCovered("e_S lies in the closure of the generated ideal")
    T0 = find_ann_witness(eS, A)
    if T0 is None:
        raise SIsCovered("e_S lies in the closure of the generated ideal")
    T1, T2 = _split_alive(T0)
    for T in (T1, T2):
        eT = make_idempotent(T, A.mode)
        for g in gens:
            if not mul(g, eT).is_zero():
                raise Undecided("orthogonal witness failed verification")
    if not mul(make_idempotent(T1, A.mode), make_idempotent(T2, A.mode)).is_zero():
        raise Undecided("witness halves are not orthogonal")
    return T1, T2


def orthogonal_decomposition(a: GenNum, depth: int = 8) -> Tuple[List[IndexSet], bool]:
    """Pairwise disjoint S_n = L_n minus L_(n-1) generating the pure part;
    exhausted=True when the scheme is stationary within the depth."""
    out: List[IndexSet] = []
    prev = empty_set()
    stat = stationary(a)
    for n in range(depth + 1):
        ln = level_set(a, n)
        sn = diff(ln, prev)
        if not sn.is_null_germ():
            out.append(sn)
        prev = ln
        if stat is not None and same_germ(ln, stat):
            return out, True
    return out, stat is not None


# ---------------------------------------------------------------------------
# ideal expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdealExpr:
    """Syntax tree over principal and idempotent-generated ideals."""

    op: str  # principal|idemgen|scheme|sum|product|intersect|radical|closure|zclosure|purepart|ann
    elem: Optional[GenNum] = None
    sets: Tuple[IndexSet, ...] = ()
    items: Tuple["IdealExpr", ...] = ()


def principal(a: GenNum) -> IdealExpr:
    return IdealExpr("principal", elem=a)


def idem_gen(sets: Sequence[IndexSet]) -> IdealExpr:
    return IdealExpr("idemgen", sets=tuple(sets))


def scheme_ideal(a: GenNum) -> IdealExpr:
    return IdealExpr("scheme", elem=a)


def ideal_sum(*items: IdealExpr) -> IdealExpr:
    return IdealExpr("sum", items=tuple(items))


def ideal_product(*items: IdealExpr) -> IdealExpr:
    return IdealExpr("product", items=tuple(items))


def ideal_intersect(*items: IdealExpr) -> IdealExpr:
    return IdealExpr("intersect", items=tuple(items))


def radical(i: IdealExpr) -> IdealExpr:
    return IdealExpr("radical", items=(i,))


def closure(i: IdealExpr) -> IdealExpr:
    return IdealExpr("closure", items=(i,))


def z_closure(i: IdealExpr) -> IdealExpr:
    return IdealExpr("zclosure", items=(i,))


def pure_part_ideal(i: IdealExpr) -> IdealExpr:
    return IdealExpr("purepart", items=(i,))


def annihilator(a: GenNum) -> IdealExpr:
    return IdealExpr("ann", elem=a)


@dataclass(frozen=True)
class NormalIdeal:
    """Decidable core: kind in principal|scheme|radical|closure|ann|mixed."""

    kind: str
    gen: GenNum
    idem: Optional[IndexSet] = None  # mixed: aK + e_idem K


def normalize_ideal(I: IdealExpr) -> NormalIdeal:
    if I.op == "principal":
        return NormalIdeal("principal", I.elem)
    if I.op == "idemgen":
        u = empty_set()
        for s in I.sets:
            u = union(u, s)
        return NormalIdeal("principal", make_idempotent(u))
    if I.op == "scheme":
        return NormalIdeal("scheme", I.elem)
    if I.op == "ann":
        return NormalIdeal("ann", I.elem)
    if I.op == "sum":
        parts = [normalize_ideal(i) for i in I.items]
        if any(p.kind == "closure" for p in parts):
            g = _combine([_closure_gen(p) for p in parts])
            return NormalIdeal("closure", g)
        if all(p.kind == "principal" for p in parts):
            return NormalIdeal("principal", _combine([p.gen for p in parts]))
        if all(p.kind == "scheme" for p in parts):
            return NormalIdeal("scheme", _combine([p.gen for p in parts]))
        if all(p.kind in ("principal", "mixed") for p in parts):
            gens, idem = [], empty_set()
            for p in parts:
                if _is_idem_gen(p.gen):
                    idem = union(idem, alive_region(p.gen))
                else:
                    gens.append(p.gen)
                if p.idem is not None:
                    idem = union(idem, p.idem)
            if not gens:
                return NormalIdeal("principal", make_idempotent(idem))
            return NormalIdeal("mixed", _combine(gens), idem)
        raise UnnormalizableIdeal("sum does not normalize")
    if I.op == "product":
        parts = [normalize_ideal(i) for i in I.items]
        if all(p.kind == "principal" for p in parts):
            g = parts[0].gen
            for p in parts[1:]:
                g = mul(g, p.gen)
            return NormalIdeal("principal", g)
        raise UnnormalizableIdeal("product does not normalize")
    if I.op == "intersect":
        parts = [normalize_ideal(i) for i in I.items]
        if all(p.kind == "principal" for p in parts):
            g = parts[0].gen
            for p in parts[1:]:
                g = meet_gen(g, p.gen)
            return NormalIdeal("principal", g)
        if all(p.kind == "scheme" for p in parts):
            g = parts[0].gen
            for p in parts[1:]:
                g = meet_gen(g, p.gen)
            return NormalIdeal("scheme", g)
        raise UnnormalizableIdeal("intersection does not normalize")
    if I.op == "radical":
        p = normalize_ideal(I.items[0])
        if p.kind == "principal":
            return NormalIdeal("radical", p.gen)
        if p.kind in ("scheme", "radical", "closure", "ann"):
            return p  # pure/radical/closed ideals are already radical
        if p.kind == "mixed":
            raise UnnormalizableIdeal("radical of a mixed sum")
    if I.op in ("closure", "zclosure"):
        p = normalize_ideal(I.items[0])
        if p.kind == "ann":
            return p  # annihilators are closed
        if I.op == "zclosure" and p.kind == "scheme":
            return p  # pure ideals are z-ideals
        return NormalIdeal("closure", _closure_gen(p))
    if I.op == "purepart":
        p = normalize_ideal(I.items[0])
        if p.kind == "principal":
            return NormalIdeal("scheme", p.gen)
        if p.kind == "scheme":
            return p
        if p.kind == "mixed":
            return NormalIdeal("scheme", _combine([p.gen, make_idempotent(p.idem)]))
        raise UnnormalizableIdeal("pure part does not normalize")
    raise UnnormalizableIdeal(f"unknown ideal operation {I.op!r}")


def _combine(gens: List[GenNum]) -> GenNum:
    g = gens[0]
    for h in gens[1:]:
        g = bezout_gen(g, h).gen
    return g


def _closure_gen(p: NormalIdeal) -> GenNum:
    if p.kind in ("principal", "radical", "closure", "scheme"):
        return p.gen
    if p.kind == "mixed":
        return bezout_gen(p.gen, make_idempotent(p.idem)).gen
    raise UnnormalizableIdeal(f"closure of {p.kind}")


def _is_idem_gen(g: GenNum) -> bool:
    s = stationary(g)
    return s is not None and equal_germ(g, make_idempotent(s, g.mode))


def in_ideal(x: GenNum, I: Union[IdealExpr, NormalIdeal]) -> bool:
    n = normalize_ideal(I) if isinstance(I, IdealExpr) else I
    if n.kind == "principal":
        return bool(in_principal(x, n.gen))
    if n.kind == "mixed":
        xe = mul(x, make_idempotent(compl(n.idem), x.mode))
        return bool(in_principal(xe, n.gen))
    if n.kind == "scheme":
        return in_pure_part(x, n.gen)
    if n.kind == "radical":
        return in_radical(x, n.gen)
    if n.kind == "closure":
        return inv_subset(n.gen, x)
    if n.kind == "ann":
        return mul(x, n.gen).is_zero()
    raise UnnormalizableIdeal(n.kind)


def in_closure(x: GenNum, I: Union[IdealExpr, NormalIdeal]) -> bool:
    """Membership in the topological closure of the normalized ideal."""
    n = normalize_ideal(I) if isinstance(I, IdealExpr) else I
    if n.kind == "ann":
        return mul(x, n.gen).is_zero()
    return inv_subset(_closure_gen(n), x)


def in_closure_counted(x: GenNum, a: GenNum, depth: int = 6) -> bool:
    """Closure membership by the level characterization, checked literally at
    integer levels up to depth and parametrically beyond."""
    for m in range(depth + 1):
        e = make_idempotent(level_set(x, m), x.mode)
        if not in_principal(e, a):
            return False
    return inv_subset(a, x)


# ---------------------------------------------------------------------------
# pseudoprime probe
# ---------------------------------------------------------------------------


def pseudoprime_check(I: Union[IdealExpr, NormalIdeal],
                      test_family: Sequence[IndexSet]) -> dict:
    """Family-relative pseudoprimality probe: for each set in the Boolean
    algebra generated by the family, report whether e_S or e_coS lies in I.
    A set with neither is a certificate that I is not pseudoprime; agreement
    everywhere only confirms relative to the family."""
    n = normalize_ideal(I) if isinstance(I, IdealExpr) else I
    atoms: List[IndexSet] = [full_set()]
    for s in test_family:
        nxt = []
        for a in atoms:
            for part in (inter(a, s), diff(a, s)):
                if not part.is_null_germ():
                    nxt.append(part)
        atoms = nxt
    if len(atoms) > 12:
        raise ResourceLimit("too many atoms in the generated algebra")
    rows = []
    certificate = None
    for mask in range(1, 1 << len(atoms)):
        u = empty_set()
        for k, a in enumerate(atoms):
            if mask >> k & 1:
                u = union(u, a)
        e_in = in_ideal(make_idempotent(u), n)
        co_in = in_ideal(make_idempotent(compl(u)), n)
        rows.append({"set": str(u), "e_in": e_in, "co_in": co_in})
        if not e_in and not co_in and certificate is None:
            certificate = str(u)
    return {
        "atoms": len(atoms),
        "elements": len(rows),
        "rows": rows,
        "pseudoprime_relative_to_family": certificate is None,
        "counterexample": certificate,
    }


# ---------------------------------------------------------------------------
# filter-relative quotients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FilterBase:
    """Finite union-closed family of splitting sets; generates a proper
    idempotent ideal.  Finite union-closure has a top element, which decides
    quotient membership."""

    members: Tuple[IndexSet, ...]

    @staticmethod
    def of(sets: Sequence[IndexSet]) -> "FilterBase":
        sets = list(sets)
        if not sets:
            raise ImproperFilter("empty filter base")
        closed: List[IndexSet] = []
        for s in sets:
            if classify_set(s) == NULL_AT_ZERO:
                raise ImproperFilter("filter member is null at 0")
            closed.append(s)
        top = closed[0]
        for s in closed[1:]:
            top = union(top, s)
        if classify_set(top) != SPLITTING:
            raise ImproperFilter("finite union is full at 0: ideal not proper")
        return FilterBase(tuple(closed))

    @property
    def top(self) -> IndexSet:
        t = self.members[0]
        for s in self.members[1:]:
            t = union(t, s)
        return t


def quotient_equiv(x: GenNum, y: GenNum, F: FilterBase) -> bool:
    """x ~ y modulo the closure of the filter ideal: every level set of the
    difference sits germ-inside a member of the union closure."""
    d = sub(x, y)
    return z_test(d, compl(F.top))


def quotient_val(x: GenNum, F: FilterBase):
    """Valuation in the quotient: max over members S of v(x*e_coS)."""
    from .core import valuation
    return valuation(mul(x, make_idempotent(compl(F.top), x.mode)))
