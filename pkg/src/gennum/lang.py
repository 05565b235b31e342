"""Expression language: lexer, recursive-descent parser, printer.

Scripts are sequences of let-bindings and colon-prefixed queries:

    let S = blocks(0 mod 2)
    let b = graded(nu2, i -> i + 1)
    :val eps^3
    :in y in cl(bK)
    :qequiv x, y, filter{S}

The printer emits canonical text; parse(print(parse(s))) == parse(s).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import SyntaxErr

# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * / ^ mod
    left: object
    right: object


@dataclass(frozen=True)
class Unary:
    op: str
    expr: object


@dataclass(frozen=True)
class Call:
    fn: str
    args: Tuple[object, ...]


@dataclass(frozen=True)
class EIdem:
    setexpr: object


@dataclass(frozen=True)
class PostK:
    expr: object


@dataclass(frozen=True)
class Arrow:
    vars: Tuple[str, ...]
    body: object


@dataclass(frozen=True)
class FilterLit:
    sets: Tuple[object, ...]


@dataclass(frozen=True)
class Let:
    name: str
    expr: object


@dataclass(frozen=True)
class Query:
    verb: str
    args: Tuple[object, ...]
    inarg: Optional[object] = None  # ':in x in I'
    opts: Tuple[Tuple[str, int], ...] = ()


@dataclass(frozen=True)
class Script:
    items: Tuple[object, ...]


# ---------------------------------------------------------------------------
# lexer
# ---------------------------------------------------------------------------

PUNCT = set("()+-*/^={},;")


@dataclass
class Tok:
    kind: str  # num ident punct verb opt arrow brace
    text: str
    line: int
    col: int


def lex(text: str) -> List[Tok]:
    toks: List[Tok] = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            toks.append(Tok("nl", "\n", line, col))
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "-" and i + 1 < n and text[i + 1] == ">":
            toks.append(Tok("arrow", "->", line, col))
            i += 2
            col += 2
            continue
        if ch == "-" and i + 1 < n and text[i + 1] == "-":
            j = i + 2
            while j < n and (text[j].isalnum() or text[j] == "-"):
                j += 1
            toks.append(Tok("opt", text[i + 2:j], line, col))
            col += j - i
            i = j
            continue
        if ch == ":":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] in "-_"):
                j += 1
            if j == i + 1:
                raise SyntaxErr(line, col, "verb name after ':'")
            toks.append(Tok("verb", text[i + 1:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Tok("num", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(Tok("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in PUNCT or ch in "{}":
            toks.append(Tok("punct", ch, line, col))
            i += 1
            col += 1
            continue
        raise SyntaxErr(line, col, "a token", ch)
    toks.append(Tok("eof", "", line, col))
    return toks


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

VERBS = {
    "val": 1, "classify": 1, "eq": 2, "leq": 2, "levels": 2, "stationary": 1,
    "clean": 1, "split": 2, "gcd": 2, "meet": 2, "root": 2, "skeleton": 1,
    "abs": 1, "abs2": 1, "in": 1, "rad-in": 2, "closure-in": 1,
    "zclosure-in": 2, "ann": 2, "ann-witness": 2, "ortho": -1,
    "pseudoprime": -1, "qequiv": 3, "qval": 2, "gallery": 1, "oracle": 1,
    "sample": 1, "check": 1, "set": 1, "show": 1,
}

IN_VERBS = {"in", "closure-in"}


class Parser:
    def __init__(self, toks: List[Tok]):
        self.toks = toks
        self.pos = 0

    def peek(self) -> Tok:
        return self.toks[self.pos]

    def next(self) -> Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def err(self, expected: str) -> SyntaxErr:
        t = self.peek()
        return SyntaxErr(t.line, t.col, expected, t.text or "<eof>")

    def expect(self, kind: str, text: Optional[str] = None) -> Tok:
        t = self.peek()
        if t.kind != kind or (text is not None and t.text != text):
            raise self.err(text or kind)
        return self.next()

    def skip_nl(self):
        while self.peek().kind == "nl" or (self.peek().kind == "punct" and self.peek().text == ";"):
            self.next()

    def parse_script(self) -> Script:
        items: List[object] = []
        self.skip_nl()
        while self.peek().kind != "eof":
            t = self.peek()
            if t.kind == "ident" and t.text == "let":
                self.next()
                name = self.expect("ident").text
                self.expect("punct", "=")
                items.append(Let(name, self.parse_expr()))
            elif t.kind == "verb":
                items.append(self.parse_query())
            else:
                raise self.err("'let' or a ':verb'")
            self.skip_nl()
        return Script(tuple(items))

    def parse_query(self) -> Query:
        vt = self.expect("verb")
        verb = vt.text
        if verb not in VERBS:
            raise SyntaxErr(vt.line, vt.col, "a known verb", verb)
        args: List[object] = []
        inarg = None
        if verb == "gallery" or verb == "check":
            name = self.expect("ident").text
            while self.peek().kind == "punct" and self.peek().text == "-":
                self.next()
                name += "-" + self.expect("ident").text
            args.append(Ref(name))
        else:
            if not self._at_line_end():
                args.append(self.parse_expr())
                if verb in IN_VERBS and self.peek().kind == "ident" and self.peek().text == "in":
                    self.next()
                    inarg = self.parse_expr()
                while self.peek().kind == "punct" and self.peek().text == ",":
                    self.next()
                    args.append(self.parse_expr())
        opts: List[Tuple[str, int]] = []
        while self.peek().kind == "opt":
            o = self.next()
            v = self.expect("num")
            opts.append((o.text, int(v.text)))
        return Query(verb, tuple(args), inarg, tuple(opts))

    def _at_line_end(self) -> bool:
        return self.peek().kind in ("nl", "eof") or \
            (self.peek().kind == "punct" and self.peek().text == ";")

    # expressions -----------------------------------------------------------
    def parse_expr(self) -> object:
        node = self.parse_term()
        while self.peek().kind == "punct" and self.peek().text in "+-":
            op = self.next().text
            node = BinOp(op, node, self.parse_term())
        if self.peek().kind == "ident" and self.peek().text == "mod":
            self.next()
            node = BinOp("mod", node, self.parse_term())
        return node

    def parse_term(self) -> object:
        node = self.parse_power()
        while self.peek().kind == "punct" and self.peek().text in "*/":
            op = self.next().text
            node = BinOp(op, node, self.parse_power())
        return node

    def parse_power(self) -> object:
        node = self.parse_unary()
        if self.peek().kind == "punct" and self.peek().text == "^":
            self.next()
            node = BinOp("^", node, self.parse_power())
        return node

    def parse_unary(self) -> object:
        if self.peek().kind == "punct" and self.peek().text == "-":
            self.next()
            return Unary("-", self.parse_unary())
        return self.parse_postfix()

    def parse_postfix(self) -> object:
        node = self.parse_primary()
        while self.peek().kind == "ident" and self.peek().text == "K":
            self.next()
            node = PostK(node)
        return node

    def parse_primary(self) -> object:
        t = self.peek()
        if t.kind == "num":
            self.next()
            return Num(int(t.text))
        if t.kind == "punct" and t.text == "(":
            self.next()
            # arrow with tuple of variables: (i, j) -> body
            save = self.pos
            names = self._try_var_tuple()
            if names is not None and self.peek().kind == "arrow":
                self.next()
                return Arrow(names, self.parse_expr())
            self.pos = save
            node = self.parse_expr()
            self.expect("punct", ")")
            return node
        if t.kind == "ident":
            name = self.next().text
            if name == "filter" and self.peek().kind == "punct" and self.peek().text == "{":
                self.next()
                sets = [self.parse_expr()]
                while self.peek().kind == "punct" and self.peek().text == ",":
                    self.next()
                    sets.append(self.parse_expr())
                self.expect("punct", "}")
                return FilterLit(tuple(sets))
            if name == "e" and self.peek().kind == "punct" and self.peek().text == "{":
                self.next()
                inner = self.parse_expr()
                self.expect("punct", "}")
                return EIdem(inner)
            if self.peek().kind == "arrow":
                self.next()
                return Arrow((name,), self.parse_expr())
            if self.peek().kind == "punct" and self.peek().text == "(":
                self.next()
                args: List[object] = []
                if not (self.peek().kind == "punct" and self.peek().text == ")"):
                    args.append(self.parse_expr())
                    while self.peek().kind == "punct" and self.peek().text == ",":
                        self.next()
                        args.append(self.parse_expr())
                self.expect("punct", ")")
                return Call(name, tuple(args))
            if name.endswith("K") and len(name) > 1:
                return PostK(Ref(name[:-1]))
            return Ref(name)
        raise self.err("an expression")

    def _try_var_tuple(self) -> Optional[Tuple[str, ...]]:
        names: List[str] = []
        while True:
            if self.peek().kind != "ident":
                return None
            names.append(self.next().text)
            t = self.peek()
            if t.kind == "punct" and t.text == ",":
                self.next()
                continue
            if t.kind == "punct" and t.text == ")":
                self.next()
                return tuple(names)
            return None


def parse_script(text: str) -> Script:
    return Parser(lex(text)).parse_script()


def parse_expr_text(text: str) -> object:
    p = Parser(lex(text))
    node = p.parse_expr()
    p.skip_nl()
    if p.peek().kind != "eof":
        raise p.err("end of expression")
    return node


# ---------------------------------------------------------------------------
# printer
# ---------------------------------------------------------------------------


def print_expr(e) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Ref):
        return e.name
    if isinstance(e, Unary):
        return f"-{print_expr(e.expr)}"
    if isinstance(e, BinOp):
        if e.op == "mod":
            return f"{print_expr(e.left)} mod {print_expr(e.right)}"
        l, r = print_expr(e.left), print_expr(e.right)
        if isinstance(e.left, BinOp) and _prec(e.left.op) < _prec(e.op):
            l = f"({l})"
        if isinstance(e.right, BinOp) and _prec(e.right.op) <= _prec(e.op):
            r = f"({r})"
        return f"{l} {e.op} {r}" if e.op in "+-" else f"{l}{e.op}{r}"
    if isinstance(e, Call):
        return f"{e.fn}({', '.join(print_expr(a) for a in e.args)})"
    if isinstance(e, EIdem):
        return "e{" + print_expr(e.setexpr) + "}"
    if isinstance(e, PostK):
        inner = print_expr(e.expr)
        if isinstance(e.expr, Ref):
            return inner + "K"
        return f"({inner}) K"
    if isinstance(e, Arrow):
        v = e.vars[0] if len(e.vars) == 1 else "(" + ", ".join(e.vars) + ")"
        return f"{v} -> {print_expr(e.body)}"
    if isinstance(e, FilterLit):
        return "filter{" + ", ".join(print_expr(s) for s in e.sets) + "}"
    raise TypeError(f"unprintable node {e!r}")


def _prec(op: str) -> int:
    return {"+": 1, "-": 1, "*": 2, "/": 2, "^": 3, "mod": 0}[op]


def print_item(it) -> str:
    if isinstance(it, Let):
        return f"let {it.name} = {print_expr(it.expr)}"
    if isinstance(it, Query):
        parts = [f":{it.verb}"]
        if it.args:
            parts.append(print_expr(it.args[0]))
        if it.inarg is not None:
            parts.append("in")
            parts.append(print_expr(it.inarg))
        for a in it.args[1:]:
            parts[-1] = parts[-1] + ","
            parts.append(print_expr(a))
        for (o, v) in it.opts:
            parts.append(f"--{o} {v}")
        return " ".join(parts)
    raise TypeError(f"unprintable item {it!r}")


def print_script(s: Script) -> str:
    return "\n".join(print_item(it) for it in s.items) + "\n"
