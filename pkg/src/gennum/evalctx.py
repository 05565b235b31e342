"""Script evaluation: dynamically typed dispatch over the parsed AST.

Values are tagged (kind, payload) with kinds rat, num (GenNum), set, ideal,
filter, poly (inside graded arguments), name.  Every deliberate failure is a
GennumError converted into a structured error report; nothing else escapes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import calculus, core, gallery, ideals, lang, oracle, suites
from .core import GenNum
from .errors import (GennumError, LangError, SyntaxErr, TypeMismatch,
                     UnknownIdentifier)
from .exponents import ExpFn
from .indexsets import (IndexSet, blocks_mod, block_single, classify_set,
                        boolean_ops, compl, diff, empty_set, full_set,
                        germ_relation, grid_mod, grid_single, interval_set,
                        inter, nu2_ge, nu2_piece, nu2sq_piece, union)
from .lang import (Arrow, BinOp, Call, EIdem, FilterLit, Let, Num, PostK,
                   Query, Ref, Script, Unary)
from .profiles import INF, is_inf
from .rats import Coeff

SCHEMA = "gennum-report/1"


@dataclass
class Env:
    mode: str = "R"
    depth: int = 64
    seed: int = 0
    bindings: Dict[str, Tuple[str, object]] = None

    def __post_init__(self):
        if self.bindings is None:
            self.bindings = {}


def _want(kind: str, v: Tuple[str, object]):
    k, payload = v
    if k == kind:
        return payload
    if kind == "num" and k == "rat":
        return core.make_rational(payload)
    if kind == "ideal" and k == "num":
        return ideals.principal(payload)
    if kind == "set" and k == "num":
        raise TypeMismatch("expected a set, got a generalized number")
    raise TypeMismatch(f"expected {kind}, got {k}")


def _num(env: Env, v) -> GenNum:
    k, payload = v
    if k == "rat":
        return core.make_rational(payload, env.mode)
    if k == "num":
        return payload
    raise TypeMismatch(f"expected a generalized number, got {k}")


def _int(v) -> int:
    k, payload = v
    if k == "rat" and Fraction(payload).denominator == 1:
        return int(payload)
    raise TypeMismatch("expected an integer")


class Evaluator:
    def __init__(self, env: Optional[Env] = None):
        self.env = env or Env()

    # -- expressions --------------------------------------------------------
    def eval(self, node) -> Tuple[str, object]:
        env = self.env
        if isinstance(node, Num):
            return ("rat", Fraction(node.value))
        if isinstance(node, Ref):
            if node.name == "eps":
                return ("num", core.make_alpha(env.mode))
            if node.name == "i":
                return ("num", core.make_imag(env.mode))
            if node.name in env.bindings:
                return env.bindings[node.name]
            raise UnknownIdentifier(f"unbound identifier {node.name!r}")
        if isinstance(node, Unary):
            k, p = self.eval(node.expr)
            if k == "rat":
                return ("rat", -p)
            if k == "num":
                return ("num", core.neg(p))
            raise TypeMismatch(f"cannot negate a {k}")
        if isinstance(node, BinOp):
            return self._binop(node)
        if isinstance(node, EIdem):
            s = _want("set", self.eval(node.setexpr))
            return ("num", core.make_idempotent(s, env.mode))
        if isinstance(node, PostK):
            k, p = self.eval(node.expr)
            if k == "num":
                return ("ideal", ideals.principal(p))
            if k == "rat":
                return ("ideal", ideals.principal(core.make_rational(p, env.mode)))
            raise TypeMismatch("K applies to a generalized number")
        if isinstance(node, FilterLit):
            sets = [_want("set", self.eval(s)) for s in node.sets]
            return ("filter", ideals.FilterBase.of(sets))
        if isinstance(node, Call):
            return self._call(node)
        if isinstance(node, Arrow):
            raise TypeMismatch("an exponent law only appears inside graded()")
        raise LangError(f"unknown node {node!r}")

    def _binop(self, node: BinOp):
        if node.op == "mod":
            raise TypeMismatch("'mod' only appears inside blocks()/grid()")
        lk, lp = self.eval(node.left)
        rk, rp = self.eval(node.right)
        if lk == "rat" and rk == "rat":
            if node.op == "+":
                return ("rat", lp + rp)
            if node.op == "-":
                return ("rat", lp - rp)
            if node.op == "*":
                return ("rat", lp * rp)
            if node.op == "/":
                if rp == 0:
                    raise GennumError("rational division by zero")
                return ("rat", lp / rp)
            if node.op == "^":
                if Fraction(rp).denominator != 1:
                    raise TypeMismatch("rational^rational is not supported")
                return ("rat", Fraction(lp) ** int(rp))
        if lk == "ideal" or rk == "ideal":
            li = _want("ideal", (lk, lp))
            ri = _want("ideal", (rk, rp))
            if node.op == "+":
                return ("ideal", ideals.ideal_sum(li, ri))
            if node.op == "*":
                return ("ideal", ideals.ideal_product(li, ri))
            if node.op == "^":
                return ("ideal", ideals.ideal_intersect(li, ri))
            raise TypeMismatch(f"operator {node.op!r} undefined on ideals")
        if lk in ("num", "rat") and rk in ("num", "rat"):
            x, y = _num(self.env, (lk, lp)), _num(self.env, (rk, rp))
            if node.op == "+":
                return ("num", core.add(x, y))
            if node.op == "-":
                return ("num", core.sub(x, y))
            if node.op == "*":
                return ("num", core.mul(x, y))
            if node.op == "/":
                return ("num", core.divide(x, y))
            if node.op == "^":
                if rk != "rat":
                    raise TypeMismatch("exponent must be rational")
                return ("num", core.pow_rational(x, rp))
        raise TypeMismatch(f"operator {node.op!r} undefined on {lk},{rk}")

    # -- calls ---------------------------------------------------------------
    def _call(self, node: Call):
        env = self.env
        fn = node.fn
        if fn in ("blocks", "grid"):
            residue, modulus, single = self._residue_spec(node.args)
            mk_mod = blocks_mod if fn == "blocks" else grid_mod
            mk_one = block_single if fn == "blocks" else grid_single
            if single is not None:
                return ("set", mk_one(single))
            return ("set", mk_mod(residue, modulus))
        if fn == "interval":
            if len(node.args) != 2:
                raise TypeMismatch("interval(p, q)")
            p = _want("rat", self.eval(node.args[0]))
            q = _want("rat", self.eval(node.args[1]))
            return ("set", interval_set(p, q))
        if fn == "nu2":
            return ("set", nu2_piece(_int(self.eval(node.args[0]))))
        if fn == "nu2ge":
            return ("set", nu2_ge(_int(self.eval(node.args[0]))))
        if fn == "nu2sq":
            return ("set", nu2sq_piece(_int(self.eval(node.args[0])),
                                       _int(self.eval(node.args[1]))))
        if fn in ("union", "inter", "diff"):
            a = _want("set", self.eval(node.args[0]))
            b = _want("set", self.eval(node.args[1]))
            return ("set", boolean_ops(a, b, fn))
        if fn == "not":
            return ("set", compl(_want("set", self.eval(node.args[0]))))
        if fn == "graded":
            return self._graded(node.args)
        if fn in ("abs", "abs2", "conj", "skeleton"):
            x = _num(env, self.eval(node.args[0]))
            f = {"abs": core.abs_num, "abs2": core.abs2,
                 "conj": core.conj, "skeleton": calculus.skeleton}[fn]
            return ("num", f(x))
        if fn in ("max", "min"):
            x = _num(env, self.eval(node.args[0]))
            y = _num(env, self.eval(node.args[1]))
            f = core.sup_num if fn == "max" else core.inf_num
            return ("num", f(x, y))
        if fn == "inv":
            return ("num", core.invert(_num(env, self.eval(node.args[0]))))
        if fn == "rad":
            return ("ideal", ideals.radical(_want("ideal", self.eval(node.args[0]))))
        if fn == "cl":
            return ("ideal", ideals.closure(_want("ideal", self.eval(node.args[0]))))
        if fn == "zcl":
            return ("ideal", ideals.z_closure(_want("ideal", self.eval(node.args[0]))))
        if fn == "m":
            return ("ideal", ideals.pure_part_ideal(_want("ideal", self.eval(node.args[0]))))
        if fn == "ann":
            return ("ideal", ideals.annihilator(_num(env, self.eval(node.args[0]))))
        if fn == "beta":
            return ("num", gallery.gallery_beta())
        if fn == "beta_m":
            return ("num", gallery.gallery_beta_m(_int(self.eval(node.args[0]))))
        if fn == "gamma":
            return ("num", gallery.gallery_gamma())
        if fn == "witness":
            return ("num", gallery.gallery_closure_witness(
                _num(env, self.eval(node.args[0]))))
        raise UnknownIdentifier(f"unknown function {fn!r}")

    def _residue_spec(self, args):
        if len(args) != 1:
            raise TypeMismatch("blocks/grid take one residue spec")
        a = args[0]
        if isinstance(a, Ref):
            if a.name == "even":
                return 0, 2, None
            if a.name == "odd":
                return 1, 2, None
            if a.name == "all":
                return 0, 1, None
            raise TypeMismatch("residue spec: even|odd|all|n|r mod m")
        if isinstance(a, BinOp) and a.op == "mod":
            r = _int(self.eval(a.left))
            m = _int(self.eval(a.right))
            if m < 1:
                raise TypeMismatch("modulus must be >= 1")
            return r % m, m, None
        if isinstance(a, Num):
            return 0, 1, a.value
        raise TypeMismatch("residue spec: even|odd|all|n|r mod m")

    def _graded(self, args):
        if len(args) != 2:
            raise TypeMismatch("graded(family, exponent law)")
        fam = args[0]
        if not isinstance(fam, Ref) or fam.name not in ("nu2", "nu2sq", "blocks"):
            raise TypeMismatch("family must be nu2, nu2sq or blocks")
        body = args[1]
        if isinstance(body, Arrow):
            body = body.body
        ci, pi, pj = _poly_of(body, self)
        e = ExpFn(ci, pi, pj)
        return ("num", core.make_graded(fam.name, e, 1, self.env.mode))

    # -- queries -------------------------------------------------------------
    def run_query(self, q: Query) -> dict:
        env = self.env
        opts = dict(q.opts)
        depth = opts.get("depth", env.depth)
        verb = q.verb
        rep: dict = {"verb": verb, "query": lang.print_item(q)}
        if verb == "set":
            raise TypeMismatch("':set' is reserved")
        if verb == "val":
            v = core.valuation(_num(env, self.eval(q.args[0])))
            rep["result"] = _fmt_val(v)
            rep["sharp_norm"] = core.sharp_norm_display(v)
            return rep
        if verb == "classify":
            rep["result"] = core.classify_element(_num(env, self.eval(q.args[0])))
            return rep
        if verb == "eq":
            x, y = (_num(env, self.eval(a)) for a in q.args[:2])
            rep["result"] = core.equal_germ(x, y)
            return rep
        if verb == "leq":
            x, y = (_num(env, self.eval(a)) for a in q.args[:2])
            rep["result"] = core.leq(x, y)
            return rep
        if verb == "levels":
            x = _num(env, self.eval(q.args[0]))
            ms = [_want("rat", self.eval(a)) for a in q.args[1:]] or list(range(0, 5))
            rep["result"] = {str(m): str(ideals.level_set(x, m)) for m in ms}
            return rep
        if verb == "stationary":
            s = ideals.stationary(_num(env, self.eval(q.args[0])))
            rep["result"] = None if s is None else str(s)
            rep["stationary"] = s is not None
            return rep
        if verb == "clean":
            a = _num(env, self.eval(q.args[0]))
            t = calculus.clean_idempotent(a)
            e = core.make_idempotent(t, a.mode)
            rep["result"] = {
                "set": str(t),
                "idempotent": core.equal_germ(core.mul(e, e), e),
                "sum_invertible":
                    core.classify_element(core.add(a, e)) == core.INVERTIBLE,
            }
            return rep
        if verb == "split":
            x, y = (_num(env, self.eval(a)) for a in q.args[:2])
            s = calculus.split_zero_divisors(x, y)
            rep["result"] = {
                "set": str(s),
                "x_annihilated": core.mul(x, core.make_idempotent(s, x.mode)).is_zero(),
                "y_annihilated": core.mul(y, core.make_idempotent(compl(s), x.mode)).is_zero(),
            }
            return rep
        if verb in ("gcd", "meet"):
            a, b = (_num(env, self.eval(t)) for t in q.args[:2])
            if verb == "gcd":
                bz = calculus.bezout_gen(a, b)
                rep["result"] = {
                    "generator": str(bz.gen),
                    "skeleton": str(bz.skeleton),
                    "r": str(bz.r),
                    "s": str(bz.s),
                    "combination_exact": core.equal_germ(
                        bz.gen, core.add(core.mul(bz.r, a), core.mul(bz.s, b))),
                    "a_in": bool(ideals.in_principal(a, bz.gen)),
                    "b_in": bool(ideals.in_principal(b, bz.gen)),
                }
            else:
                g = calculus.meet_gen(a, b)
                rep["result"] = {
                    "generator": str(g),
                    "in_a": bool(ideals.in_principal(g, a)),
                    "in_b": bool(ideals.in_principal(g, b)),
                }
            return rep
        if verb == "root":
            x = _num(env, self.eval(q.args[0]))
            n = _int(self.eval(q.args[1]))
            rep["result"] = str(calculus.nth_root_skeleton(x, n))
            return rep
        if verb in ("skeleton", "abs", "abs2"):
            x = _num(env, self.eval(q.args[0]))
            f = {"skeleton": calculus.skeleton, "abs": core.abs_num,
                 "abs2": core.abs2}[verb]
            y = f(x)
            rep["result"] = str(y)
            rep["skeletal"] = y.skeletal
            return rep
        if verb == "in":
            x = _num(env, self.eval(q.args[0]))
            ide = _want("ideal", self.eval(q.inarg))
            member = ideals.in_ideal(x, ide)
            rep["result"] = member
            n = ideals.normalize_ideal(ide)
            rep["normal_form"] = n.kind
            if member and n.kind == "principal":
                w = ideals.in_principal(x, n.gen)
                rep["witness"] = str(w.witness)
                rep["witness_skeletal"] = w.witness.skeletal
            return rep
        if verb == "rad-in":
            x, a = (_num(env, self.eval(t)) for t in q.args[:2])
            rep["result"] = ideals.in_radical(x, a)
            return rep
        if verb == "closure-in":
            x = _num(env, self.eval(q.args[0]))
            ide = _want("ideal", self.eval(q.inarg))
            rep["result"] = ideals.in_closure(x, ide)
            return rep
        if verb == "zclosure-in":
            x, a = (_num(env, self.eval(t)) for t in q.args[:2])
            rep["result"] = ideals.in_z_closure(x, a)
            return rep
        if verb == "ann":
            x, a = (_num(env, self.eval(t)) for t in q.args[:2])
            rep["result"] = ideals.in_annihilator(x, a)
            return rep
        if verb == "ann-witness":
            x, a = (_num(env, self.eval(t)) for t in q.args[:2])
            w = ideals.find_ann_witness(x, a)
            if w is None:
                rep["result"] = None
                rep["in_closure"] = True
            else:
                e = core.make_idempotent(w, x.mode)
                rep["result"] = str(w)
                rep["in_closure"] = False
                rep["a_killed"] = core.mul(a, e).is_zero()
                rep["x_alive"] = not core.mul(x, e).is_zero()
            return rep
        if verb == "ortho":
            s = _want("set", self.eval(q.args[0]))
            gens = [_num(env, self.eval(t)) for t in q.args[1:]]
            t1, t2 = ideals.orthogonal_witness(s, gens)
            rep["result"] = {"T": str(t1), "T2": str(t2),
                             "disjoint": core.mul(core.make_idempotent(t1),
                                                  core.make_idempotent(t2)).is_zero()}
            return rep
        if verb == "pseudoprime":
            ide = _want("ideal", self.eval(q.args[0]))
            fam = [_want("set", self.eval(t)) for t in q.args[1:]]
            rep["result"] = ideals.pseudoprime_check(ide, fam)
            return rep
        if verb == "qequiv":
            x, y = (_num(env, self.eval(t)) for t in q.args[:2])
            F = _want("filter", self.eval(q.args[2]))
            rep["result"] = ideals.quotient_equiv(x, y, F)
            return rep
        if verb == "qval":
            x = _num(env, self.eval(q.args[0]))
            F = _want("filter", self.eval(q.args[1]))
            rep["result"] = _fmt_val(ideals.quotient_val(x, F))
            return rep
        if verb == "gallery":
            name = q.args[0].name
            rep["result"] = str(_gallery_by_name(name))
            return rep
        if verb == "oracle":
            x = _num(env, self.eval(q.args[0]))
            prof = oracle.SampleProfile(depth=depth)
            br = oracle.oracle_val(x, prof)
            rep["result"] = {"bracket": br, "depth": depth,
                             "symbolic": _fmt_val(core.valuation(x))}
            return rep
        if verb == "sample":
            x = _num(env, self.eval(q.args[0]))
            prof = oracle.SampleProfile(depth=min(depth, 24))
            rep["result"] = {"csv": oracle.sample_table_csv(x, prof)}
            return rep
        if verb == "check":
            name = q.args[0].name
            rep["result"] = suites.run_suite(name, seed=opts.get("seed", env.seed),
                                             depth=depth)
            return rep
        if verb == "show":
            k, p = self.eval(q.args[0])
            rep["result"] = str(p)
            rep["kind"] = k
            return rep
        raise LangError(f"verb {verb!r} not implemented")

    # -- scripts -------------------------------------------------------------
    def run_script(self, text: str) -> dict:
        out = {"schema": SCHEMA, "mode": self.env.mode, "reports": []}
        try:
            script = lang.parse_script(text)
        except GennumError as e:
            out["reports"].append(e.payload())
            out["ok"] = False
            return out
        ok = True
        for item in script.items:
            try:
                if isinstance(item, Let):
                    self.env.bindings[item.name] = self.eval(item.expr)
                else:
                    out["reports"].append(self.run_query(item))
            except GennumError as e:
                p = e.payload()
                if isinstance(item, Query):
                    p["query"] = lang.print_item(item)
                out["reports"].append(p)
                ok = False
        out["ok"] = ok
        return out


def _fmt_val(v) -> object:
    if is_inf(v):
        return "inf"
    return str(v)


def _gallery_by_name(name: str) -> GenNum:
    if name == "beta":
        return gallery.gallery_beta()
    if name.startswith("beta") and name[4:].isdigit():
        return gallery.gallery_beta_m(int(name[4:]))
    if name == "gamma":
        return gallery.gallery_gamma()
    if name == "witness":
        return gallery.gallery_closure_witness(gallery.gallery_beta())
    raise UnknownIdentifier(f"unknown gallery element {name!r}; "
                            "try beta, beta2..beta5, gamma, witness")


def _poly_of(node, ev: Evaluator):
    """Evaluate a polynomial expression in i and j into (const, p_i, q_j)."""
    from . import polys

    def rec(n):
        if isinstance(n, Num):
            return {(0, 0): Fraction(n.value)}
        if isinstance(n, Ref):
            if n.name == "i":
                return {(1, 0): Fraction(1)}
            if n.name == "j":
                return {(0, 1): Fraction(1)}
            k, p = ev.eval(n)
            if k == "rat":
                return {(0, 0): p}
            raise TypeMismatch("exponent laws use i, j and rationals")
        if isinstance(n, Unary):
            return {k: -v for k, v in rec(n.expr).items()}
        if isinstance(n, BinOp):
            l, r = rec(n.left), rec(n.right)
            if n.op == "+":
                out = dict(l)
                for k, v in r.items():
                    out[k] = out.get(k, Fraction(0)) + v
                return out
            if n.op == "-":
                out = dict(l)
                for k, v in r.items():
                    out[k] = out.get(k, Fraction(0)) - v
                return out
            if n.op == "*":
                out = {}
                for (a, b), u in l.items():
                    for (c, d), w in r.items():
                        k = (a + c, b + d)
                        out[k] = out.get(k, Fraction(0)) + u * w
                return out
            if n.op == "/":
                if list(r) != [(0, 0)] or r[(0, 0)] == 0:
                    raise TypeMismatch("exponent division only by rationals")
                return {k: v / r[(0, 0)] for k, v in l.items()}
            if n.op == "^":
                if list(r) != [(0, 0)] or Fraction(r[(0, 0)]).denominator != 1:
                    raise TypeMismatch("exponent power must be an integer")
                e = int(r[(0, 0)])
                out = {(0, 0): Fraction(1)}
                for _ in range(e):
                    nxt = {}
                    for (a, b), u in out.items():
                        for (c, d), w in l.items():
                            k = (a + c, b + d)
                            nxt[k] = nxt.get(k, Fraction(0)) + u * w
                    out = nxt
                return out
        raise TypeMismatch("unsupported exponent law")

    coeffs = {k: v for k, v in rec(node).items() if v != 0}
    if any(a and b for (a, b) in coeffs):
        raise TypeMismatch("exponent laws must be separable: no i*j terms")
    const = coeffs.get((0, 0), Fraction(0))
    di = max((a for (a, b) in coeffs), default=0)
    dj = max((b for (a, b) in coeffs), default=0)
    pi = tuple(coeffs.get((k, 0), Fraction(0)) for k in range(0, di + 1))
    qj = tuple(coeffs.get((0, k), Fraction(0)) for k in range(0, dj + 1))
    from . import polys as P
    pi = P.trim((Fraction(0),) + pi[1:]) if len(pi) > 1 else ()
    qj = P.trim((Fraction(0),) + qj[1:]) if len(qj) > 1 else ()
    return const, pi, qj
