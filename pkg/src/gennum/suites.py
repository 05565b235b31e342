"""Named verification suites.

Each suite builds a seeded corpus, checks its properties exactly, and returns
a deterministic report dict: identical seed and size give identical reports.
These are the library-level counterparts of the acceptance criteria; the CLI
`check` subcommand and the test suite both dispatch here.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from . import corpus, profiles
from .calculus import (bezout_gen, clean_idempotent, meet_gen,
                       nth_root_skeleton, split_zero_divisors)
from .core import (GenNum, INVERTIBLE, abs2, abs_num, add, alpha_power,
                   classify_element, conj, equal_germ, inf_num, inv_test,
                   make_alpha, make_idempotent, make_rational, mul, neg,
                   pow_int, scale, sub, valuation, z_test, zero)
from .errors import UnknownSuite
from .gallery import (gallery_beta, gallery_beta_m, gallery_closure_witness,
                      gallery_gamma)
from .ideals import (FilterBase, LevelScheme, find_ann_witness,
                     in_closure_counted, in_closure_principal, in_principal,
                     in_radical, in_z_closure, inv_subset, level_set,
                     quotient_equiv, quotient_val, stationary)
from .indexsets import classify_set, compl, same_germ
from .oracle import (CONSISTENT, SampleProfile, oracle_equal, oracle_leq,
                     oracle_val)
from .profiles import INF, is_inf


class Report:
    def __init__(self, suite: str, seed: int):
        self.suite = suite
        self.seed = seed
        self.checks = 0
        self.failures: List[str] = []

    def check(self, ok: bool, label: str) -> bool:
        self.checks += 1
        if not ok:
            self.failures.append(label)
        return ok

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "checks": self.checks,
            "failed": len(self.failures),
            "failures": self.failures[:10],
            "ok": not self.failures,
        }


def suite_ultrametric(seed: int = 0, size: int = 500, depth: int = 64) -> dict:
    rep = Report("ultrametric", seed)
    rnd = random.Random(seed)
    elems = [corpus.random_gennum(rnd, gamma_ok=True) for _ in range(size)]
    one = make_rational(1)
    for k in range(size):
        x = elems[k]
        y = elems[(k + 1) % size]
        z = elems[(k + 7) % size]
        vx, vy = valuation(x), valuation(y)
        vs = valuation(add(x, y))
        rep.check(vs >= min(vx, vy), f"v(x+y)>=min at {k}")
        if vx != vy:
            rep.check(vs == min(vx, vy), f"v(x+y)=min at {k}")
        vm = valuation(mul(x, y))
        lower = INF if (is_inf(vx) or is_inf(vy)) else vx + vy
        rep.check(vm >= lower, f"v(xy)>=vx+vy at {k}")
        if k % 5 == 0:
            rep.check(equal_germ(mul(x, add(y, z)), add(mul(x, y), mul(x, z))),
                      f"distributivity at {k}")
            rep.check(equal_germ(mul(mul(x, y), z), mul(x, mul(y, z))),
                      f"associativity at {k}")
            rep.check(equal_germ(conj(mul(x, y)), mul(conj(x), conj(y))),
                      f"conj involution at {k}")
            ax = abs_num(x)
            if not ax.skeletal:
                rep.check(equal_germ(abs2(x), mul(ax, ax)), f"abs2=abs^2 at {k}")
    return rep.as_dict()


def suite_exchange(seed: int = 0, size: int = 200, depth: int = 64) -> dict:
    rep = Report("exchange", seed)
    rnd = random.Random(seed)
    for k in range(size):
        a = corpus.random_gennum(rnd, gamma_ok=True)
        t = clean_idempotent(a)
        e = make_idempotent(t, a.mode)
        rep.check(equal_germ(mul(e, e), e), f"e^2=e at {k}")
        rep.check(classify_element(add(a, e)) == INVERTIBLE,
                  f"a+e invertible at {k}")
    return rep.as_dict()


def suite_zero_divisors(seed: int = 0, size: int = 200, depth: int = 64) -> dict:
    rep = Report("zero-divisors", seed)
    rnd = random.Random(seed)
    for k in range(size):
        x, y = corpus.random_orthogonal_pair(rnd)
        s = split_zero_divisors(x, y)
        rep.check(mul(x, make_idempotent(s, x.mode)).is_zero(),
                  f"x e_S = 0 at {k}")
        rep.check(mul(y, make_idempotent(compl(s), x.mode)).is_zero(),
                  f"y e_coS = 0 at {k}")
        # lemma equivalences, R-mode inf form
        ix = inf_num(abs_num(x), abs_num(y))
        rep.check(ix.is_zero(), f"inf(|x|,|y|)=0 at {k}")
        u = corpus.random_gennum(rnd)
        w = corpus.random_gennum(rnd)
        prod_zero = mul(u, w).is_zero()
        iw = inf_num(abs_num(u), abs_num(w))
        rep.check(prod_zero == iw.is_zero(), f"uv=0 iff inf=0 at {k}")
    return rep.as_dict()


def suite_bezout(seed: int = 0, size: int = 200, depth: int = 64) -> dict:
    rep = Report("bezout", seed)
    rnd = random.Random(seed)
    for k in range(size):
        a = corpus.random_gennum(rnd)
        b = corpus.random_gennum(rnd)
        bz = bezout_gen(a, b)
        rep.check(bool(in_principal(a, bz.gen)), f"a in gK at {k}")
        rep.check(bool(in_principal(b, bz.gen)), f"b in gK at {k}")
        combo = add(mul(bz.r, a), mul(bz.s, b))
        rep.check(equal_germ(bz.gen, combo), f"g = ra+sb at {k}")
        rep.check(bool(in_principal(bz.gen, bz.skeleton)) and
                  bool(in_principal(bz.skeleton, bz.gen)),
                  f"skeleton ideal-equal at {k}")
        m = meet_gen(a, b)
        rep.check(bool(in_principal(m, a)), f"meet in aK at {k}")
        rep.check(bool(in_principal(m, b)), f"meet in bK at {k}")
        probe = mul(mul(a, b), corpus.random_gennum(rnd))
        rep.check(bool(in_principal(probe, m)), f"abt in meetK at {k}")
        x = corpus.random_gennum(rnd)
        if in_principal(x, a) and in_principal(x, b):
            rep.check(bool(in_principal(x, m)), f"probe equivalence at {k}")
    return rep.as_dict()


def _fin_gen_corpus(rnd: random.Random) -> List[GenNum]:
    a = make_alpha()
    es = make_idempotent(corpus.random_set(rnd, splitting=True))
    beta = gallery_beta()
    out = [
        make_rational(1), a, pow_int(a, 2), pow_int(a, 5), alpha_power(Fraction(-2)),
        es, mul(es, a), mul(es, pow_int(a, 3)),
        add(mul(es, make_rational(3)), mul(make_idempotent(compl(corpus.random_set(rnd, splitting=True))), a)),
        beta, gallery_beta_m(2), gallery_beta_m(3), gallery_gamma(),
        mul(es, beta), add(beta, a),
    ]
    while len(out) < 30:
        out.append(corpus.random_gennum(rnd, gamma_ok=True))
    return out[:30]


def suite_thm_closed_fin_gen(seed: int = 0, size: int = 30, depth: int = 64) -> dict:
    """Five independently computed routes to 'aK is closed' must agree:
    stationarity, square roots staying inside, scheme stabilization,
    closure membership matching plain membership on probes, and z-closure
    membership matching plain membership on probes."""
    rep = Report("thm-closed-fin-gen", seed)
    rnd = random.Random(seed)
    elems = _fin_gen_corpus(rnd)[:size]
    bound = 12  # beyond every exponent magnitude in the corpus above
    a0 = make_alpha()
    for k, a in enumerate(elems):
        if a.is_zero():
            continue
        p1 = stationary(a) is not None
        p2 = bool(in_principal(nth_root_skeleton(a, 2), a))
        # the scheme is a single set iff some finite level reaches the whole
        # support; corpus exponents stay below the bound
        from .core import alive_region
        p3 = same_germ(level_set(a, bound), alive_region(a))
        probes = [make_rational(1), a0, pow_int(a0, 3), a, mul(a, a0),
                  make_idempotent(level_set(a, 2), a.mode)]
        if not p1:
            probes.append(gallery_closure_witness(a))
        p4 = all(in_closure_counted(x, a, depth=3) == bool(in_principal(x, a))
                 for x in probes)
        p5 = all(in_z_closure(x, a) == bool(in_principal(x, a))
                 for x in probes)
        agree = p1 == p2 == p3 == p4 == p5
        rep.check(agree, f"matrix disagrees at {k}: {p1},{p2},{p3},{p4},{p5}")
    return rep.as_dict()


def suite_gallery(seed: int = 0, size: int = 0, depth: int = 64) -> dict:
    rep = Report("gallery", seed)
    betas = {m: gallery_beta_m(m) for m in range(1, 6)}
    for m in range(2, 6):
        rep.check(bool(in_principal(betas[m], betas[m - 1])),
                  f"beta_{m} in beta_{m-1}K")
        rep.check(not in_radical(betas[m - 1], betas[m]),
                  f"beta_{m-1} not in rad(beta_{m}K)")
    for m in range(2, 6):
        for n in range(2, 6):
            rep.check(inv_subset(betas[m], betas[n]),
                      f"Inv(beta_{n}) subset Inv(beta_{m})")
    beta = gallery_beta()
    y = gallery_closure_witness(beta)
    rep.check(in_closure_principal(y, beta), "witness in closure")
    rep.check(not in_principal(y, beta), "witness not member")
    rep.check(stationary(beta) is None, "beta K not idempotent-generated")
    g = gallery_gamma()
    rep.check(valuation(g) == 2, "gamma valuation 2")
    yg = gallery_closure_witness(g)
    rep.check(in_closure_principal(yg, g) and not in_principal(yg, g),
              "gamma witness")
    return rep.as_dict()


def suite_annihilator(seed: int = 0, size: int = 100, depth: int = 64) -> dict:
    rep = Report("annihilator", seed)
    rnd = random.Random(seed)
    gens = [gallery_beta(), gallery_beta_m(2), gallery_gamma()]
    a0 = make_alpha()
    k = 0
    while k < size:
        a = gens[k % len(gens)]
        roll = k % 7
        if roll == 0:
            x = make_rational(1)
        elif roll == 1:
            x = pow_int(a0, (k % 3) + 1)
        elif roll == 2:
            x = make_idempotent(corpus.random_set(rnd, splitting=True))
        elif roll == 3:
            x = mul(a, corpus.random_gennum(rnd))
        elif roll == 4:
            x = make_idempotent(level_set(a, (k % 4) + 1), a.mode)
        elif roll == 5:
            x = gallery_closure_witness(a)
        else:
            x = corpus.random_gennum(rnd)
        inside = in_closure_principal(x, a)
        w = find_ann_witness(x, a)
        rep.check((w is not None) == (not inside), f"witness iff outside at {k}")
        if w is not None:
            ew = make_idempotent(w, x.mode)
            rep.check(mul(a, ew).is_zero(), f"a e_T = 0 at {k}")
            rep.check(not mul(x, ew).is_zero(), f"x e_T != 0 at {k}")
        k += 1
    return rep.as_dict()


def suite_quotient(seed: int = 0, size: int = 50, depth: int = 64) -> dict:
    rep = Report("quotient", seed)
    rnd = random.Random(seed)
    for k in range(size):
        members = [corpus.random_set(rnd, splitting=True)]
        if rnd.random() < 0.5:
            members.append(corpus.random_set(rnd, splitting=True))
        try:
            F = FilterBase.of(members)
        except Exception:
            continue
        x = corpus.random_gennum(rnd)
        y = corpus.random_gennum(rnd)
        z = corpus.random_gennum(rnd)
        rep.check(quotient_equiv(x, x, F), f"reflexive at {k}")
        rep.check(quotient_equiv(x, y, F) == quotient_equiv(y, x, F),
                  f"symmetric at {k}")
        if quotient_equiv(x, y, F) and quotient_equiv(y, z, F):
            rep.check(quotient_equiv(x, z, F), f"transitive at {k}")
        qx, qy = quotient_val(x, F), quotient_val(y, F)
        qs = quotient_val(add(x, y), F)
        rep.check(qs >= min(qx, qy), f"quotient ultrametric at {k}")
        rep.check(is_inf(quotient_val(x, F)) == quotient_equiv(x, zero(x.mode), F),
                  f"qval=inf iff x~0 at {k}")
        # difference supported inside a member is invisible
        s = members[0]
        shifted = add(x, mul(corpus.random_gennum(rnd), make_idempotent(s, x.mode)))
        rep.check(quotient_equiv(shifted, x, F), f"member shift invisible at {k}")
    return rep.as_dict()


def suite_concordance(seed: int = 0, size: int = 40, depth: int = 64) -> dict:
    rep = Report("concordance", seed)
    rnd = random.Random(seed)
    prof = SampleProfile(depth=depth)
    elems = [make_alpha(), pow_int(make_alpha(), 3), gallery_beta(),
             gallery_beta_m(2), gallery_gamma(),
             make_graded_check()]
    elems += [corpus.random_gennum(rnd, gamma_ok=False) for _ in range(size)]
    for k, x in enumerate(elems):
        v = valuation(x)
        br = oracle_val(x, prof)
        if is_inf(v):
            rep.check(br is None, f"zero bracket at {k}")
        else:
            rep.check(br is not None and br[0] <= float(v) <= br[1],
                      f"valuation {v} outside bracket {br} at {k}")
        rep.check(oracle_equal(x, x, prof) == CONSISTENT, f"x==x at {k}")
    one = make_rational(1)
    for k in range(size):
        x = corpus.random_gennum(rnd)
        ax = abs_num(x)
        if not ax.skeletal:
            rep.check(oracle_leq(zero(), ax, prof) == CONSISTENT,
                      f"0<=|x| at {k}")
        y = add(x, abs2(corpus.random_gennum(rnd)))
        rep.check(oracle_leq(x, y, prof) == CONSISTENT, f"x<=x+|t|^2 at {k}")
        s = mul(x, one)
        rep.check(oracle_equal(x, s, prof) == CONSISTENT, f"x*1==x at {k}")
    a = make_alpha()
    rep.check(oracle_leq(pow_int(a, 2), a, prof) == CONSISTENT, "a^2<=a")
    g = oracle_val(gallery_gamma(), prof)
    rep.check(g is not None and g[0] <= 2.0 <= g[1], "gamma bracket contains 2")
    return rep.as_dict()


def make_graded_check() -> GenNum:
    from .core import make_graded
    return make_graded("nu2", (Fraction(9), Fraction(-6), Fraction(1)))


def suite_fring(seed: int = 0, size: int = 100, depth: int = 64) -> dict:
    """Lattice laws: (a^b)c = (ac)^(bc) for c >= 0, absorption, order."""
    rep = Report("f-ring", seed)
    rnd = random.Random(seed)
    from .core import leq, sup_num
    for k in range(size):
        a = corpus.random_gennum(rnd)
        b = corpus.random_gennum(rnd)
        c = corpus.random_nonneg(rnd)
        if c.skeletal:
            continue
        lhs = mul(inf_num(a, b), c)
        rhs = inf_num(mul(a, c), mul(b, c))
        if lhs.skeletal or rhs.skeletal:
            continue
        rep.check(equal_germ(lhs, rhs), f"(a^b)c=(ac)^(bc) at {k}")
        s = sup_num(a, b)
        if not s.skeletal:
            rep.check(equal_germ(sup_num(a, s), s), f"absorption at {k}")
            rep.check(leq(a, s) and leq(b, s), f"join bound at {k}")
        rep.check(leq(a, b) == equal_germ(sup_num(a, b), b), f"leq iff sup at {k}")
    return rep.as_dict()


SUITES: Dict[str, Callable] = {
    "ultrametric": suite_ultrametric,
    "exchange": suite_exchange,
    "zero-divisors": suite_zero_divisors,
    "bezout": suite_bezout,
    "thm-closed-fin-gen": suite_thm_closed_fin_gen,
    "gallery": suite_gallery,
    "annihilator": suite_annihilator,
    "quotient": suite_quotient,
    "concordance": suite_concordance,
    "f-ring": suite_fring,
}


def run_suite(name: str, seed: int = 0, depth: int = 64,
              size: Optional[int] = None) -> dict:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {sorted(SUITES)}")
    fn = SUITES[name]
    kwargs = {"seed": seed, "depth": depth}
    if size is not None:
        kwargs["size"] = size
    return fn(**kwargs)


def run_all(seed: int = 0, depth: int = 64) -> List[dict]:
    return [run_suite(n, seed=seed, depth=depth) for n in sorted(SUITES)]
