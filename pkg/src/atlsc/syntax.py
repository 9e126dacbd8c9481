"""Concrete syntax for both logics.

Strategy formulas::

    <<a1,a2>> phi    <<a1>>_0 phi    [[a1]] phi    [[a1]]_0 phi
    <<co a1>> phi    <<co a1>>_0 phi  relax(a1) phi  keep(a1) phi
    E phi   A phi   X phi   F phi   G phi   phi U psi   ! & | ->   true false

QCTL* formulas use ``E``/``A`` as path quantifiers and add
``exists P. phi``/``forall P. phi``. Unary operators bind tightest, then
``U`` (right associative), ``&``, ``|`` and ``->`` (right associative).
Derived operators are expanded while parsing and re-sugared by the printer.
"""

from __future__ import annotations

import re

from .errors import FormulaSyntaxError, StratificationError
from .formula import (
    APath, And, Bottom, EPath, Exists, Forall, Formula, Implies, Next, Not, Or, Prop, Relax,
    RelaxCo, StratQ, StratQCo, Top, Until, children, is_state,
)

ATL = "atl"
QCTL = "qctl"

KEYWORDS = {"X", "U", "F", "G", "E", "A", "true", "false", "exists", "forall", "relax", "keep", "co"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<sym><<|>>_0|>>|\[\[|\]\]_0|\]\]|->|[()!&|,.])
  | (?P<ident>[A-Za-z_#][A-Za-z0-9_#@]*)
    """,
    re.VERBOSE,
)


def _tokenize(text: str):
    toks = []
    i = 0
    line, line_start = 1, 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[i]!r}", line, i - line_start + 1)
        kind = m.lastgroup
        val = m.group()
        if kind == "ws":
            for j, ch in enumerate(val):
                if ch == "\n":
                    line += 1
                    line_start = i + j + 1
        else:
            if kind == "ident" and val in KEYWORDS:
                kind = "kw"
            toks.append((kind, val, (line, i - line_start + 1)))
        i = m.end()
    toks.append(("eof", "", (line, i - line_start + 1)))
    return toks


class _Parser:
    def __init__(self, text: str, logic: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.logic = logic

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise FormulaSyntaxError(msg, *tok[2])

    def expect(self, val):
        tok = self.take()
        if tok[1] != val or tok[0] == "ident":
            self.error(f"expected {val!r}, found {tok[1] or 'end of input'!r}", tok)
        return tok

    def parse(self):
        f = self.implies()
        if self.peek()[0] != "eof":
            self.error(f"unexpected {self.peek()[1]!r}")
        return f

    def implies(self):
        left = self.disjunction()
        tok = self.peek()
        if tok[1] == "->" and tok[0] == "sym":
            self.take()
            return Implies(left, self.implies(), pos=tok[2])
        return left

    def disjunction(self):
        first = self.conjunction()
        args = [first]
        while self.peek()[:2] == ("sym", "|"):
            self.take()
            args.append(self.conjunction())
        return first if len(args) == 1 else Or(tuple(args), pos=first.pos)

    def conjunction(self):
        first = self.until()
        args = [first]
        while self.peek()[:2] == ("sym", "&"):
            self.take()
            args.append(self.until())
        return first if len(args) == 1 else And(tuple(args), pos=first.pos)

    def until(self):
        left = self.unary()
        tok = self.peek()
        if tok[:2] == ("kw", "U"):
            self.take()
            return Until(left, self.until(), pos=tok[2])
        return left

    def coalition(self, closer):
        names = []
        if self.peek()[1] in closer and self.peek()[0] == "sym":
            return tuple(names), self.take()[1]
        while True:
            tok = self.take()
            if tok[0] != "ident":
                self.error(f"expected an agent name, found {tok[1] or 'end of input'!r}", tok)
            names.append(tok[1])
            nxt = self.take()
            if nxt[0] == "sym" and nxt[1] in closer:
                return tuple(names), nxt[1]
            if nxt[1] != ",":
                self.error(f"expected ',' or {closer[0]!r} in coalition", nxt)

    def unary(self):
        tok = self.peek()
        kind, val, pos = tok
        if kind == "sym" and val == "!":
            self.take()
            return Not(self.unary(), pos=pos)
        if kind == "kw":
            if val == "X":
                self.take()
                return Next(self.unary(), pos=pos)
            if val == "F":
                self.take()
                return Until(Top(), self.unary(), pos=pos)
            if val == "G":
                self.take()
                return Not(Until(Top(), Not(self.unary())), pos=pos)
            if val in ("E", "A"):
                self.take()
                body = self.unary()
                if self.logic == QCTL:
                    return (EPath if val == "E" else APath)(body, pos=pos)
                if val == "A":
                    return RelaxCo((), StratQ((), False, body), pos=pos)
                return Not(RelaxCo((), StratQ((), False, Not(body))), pos=pos)
            if val in ("exists", "forall") and self.logic == QCTL:
                self.take()
                name = self.take()
                if name[0] != "ident":
                    self.error("expected a proposition after quantifier", name)
                self.expect(".")
                body = self.unary()
                return (Exists if val == "exists" else Forall)(name[1], body, pos=pos)
            if val in ("relax", "keep") and self.logic == ATL:
                self.take()
                self.expect("(")
                names, _ = self.coalition((")",))
                body = self.unary()
                return (Relax if val == "relax" else RelaxCo)(names, body, pos=pos)
            if val == "true":
                self.take()
                return Top(pos=pos)
            if val == "false":
                self.take()
                return Bottom(pos=pos)
        if kind == "sym" and val == "<<" and self.logic == ATL:
            self.take()
            co = False
            if self.peek()[:2] == ("kw", "co"):
                self.take()
                co = True
            names, closer = self.coalition((">>", ">>_0"))
            body = self.unary()
            cls = StratQCo if co else StratQ
            return cls(names, closer == ">>_0", body, pos=pos)
        if kind == "sym" and val == "[[" and self.logic == ATL:
            self.take()
            names, closer = self.coalition(("]]", "]]_0"))
            body = self.unary()
            return Not(StratQ(names, closer == "]]_0", Not(body)), pos=pos)
        if kind == "sym" and val == "(":
            self.take()
            f = self.implies()
            self.expect(")")
            return f
        if kind == "ident":
            self.take()
            return Prop(val, pos=pos)
        self.error(f"unexpected {val or 'end of input'!r}")


def check_stratification(f: Formula, logic: str) -> None:
    """Raise if a path formula sits where a state formula is required."""

    def need_state(g, where):
        if not is_state(g):
            pos = f"{g.pos[0]}:{g.pos[1]}: " if g.pos else ""
            raise StratificationError(f"{pos}path formula used as the argument of {where}")

    def walk(g):
        if isinstance(g, (Relax, RelaxCo)):
            need_state(g.arg, "relax" if isinstance(g, Relax) else "keep")
        elif isinstance(g, (Exists, Forall)):
            need_state(g.arg, "a propositional quantifier")
        for h in children(g):
            walk(h)

    need_state(f, "the top level")
    walk(f)


def parse_atlsc(text: str) -> Formula:
    f = _Parser(text, ATL).parse()
    check_stratification(f, ATL)
    return f


def parse_qctl(text: str) -> Formula:
    f = _Parser(text, QCTL).parse()
    check_stratification(f, QCTL)
    return f


def parse_path(text: str, logic: str = QCTL) -> Formula:
    """Parse without requiring a state formula at the top."""
    return _Parser(text, logic).parse()


# printing

_PREC = {Implies: 1, Or: 2, And: 3, Until: 4}
_UNARY_PREC = 5


def _coal(names):
    return ",".join(names)


def _prec(f):
    if isinstance(f, Until) and isinstance(f.left, Top):
        return _UNARY_PREC
    return _PREC.get(type(f), _UNARY_PREC)


def _sugar(f: Formula):
    """Return (prefix, body) when ``f`` prints as a unary prefix operator."""
    if isinstance(f, Not):
        g = f.arg
        if (isinstance(g, RelaxCo) and g.coalition == () and isinstance(g.arg, StratQ)
                and g.arg.coalition == () and not g.arg.memoryless and isinstance(g.arg.arg, Not)):
            return "E ", g.arg.arg.arg
        if isinstance(g, Until) and isinstance(g.left, Top) and isinstance(g.right, Not):
            return "G ", g.right.arg
        if isinstance(g, StratQ) and isinstance(g.arg, Not):
            return f"[[{_coal(g.coalition)}]]{'_0' if g.memoryless else ''} ", g.arg.arg
        return "!", g
    if isinstance(f, Until) and isinstance(f.left, Top):
        return "F ", f.right
    if isinstance(f, RelaxCo) and f.coalition == () and isinstance(f.arg, StratQ) \
            and f.arg.coalition == () and not f.arg.memoryless:
        return "A ", f.arg.arg
    if isinstance(f, Next):
        return "X ", f.arg
    if isinstance(f, StratQ):
        return f"<<{_coal(f.coalition)}>>{'_0' if f.memoryless else ''} ", f.arg
    if isinstance(f, StratQCo):
        return f"<<co {_coal(f.coalition)}>>{'_0' if f.memoryless else ''} ", f.arg
    if isinstance(f, Relax):
        return f"relax({_coal(f.coalition)}) ", f.arg
    if isinstance(f, RelaxCo):
        return f"keep({_coal(f.coalition)}) ", f.arg
    if isinstance(f, Exists):
        return f"exists {f.prop}. ", f.arg
    if isinstance(f, Forall):
        return f"forall {f.prop}. ", f.arg
    if isinstance(f, EPath):
        return "E ", f.arg
    if isinstance(f, APath):
        return "A ", f.arg
    return None


def to_text(f: Formula) -> str:
    out = []
    _emit(f, out)
    return "".join(out)


def _wrap(f, out, paren):
    if paren:
        out.append("(")
        _emit(f, out)
        out.append(")")
    else:
        _emit(f, out)


def _emit(f: Formula, out: list) -> None:
    # explicit stack for deep unary chains, recursion for binary nodes
    while True:
        if isinstance(f, Prop):
            out.append(f.name)
            return
        if isinstance(f, Top):
            out.append("true")
            return
        if isinstance(f, Bottom):
            out.append("false")
            return
        sug = _sugar(f)
        if sug is not None:
            prefix, body = sug
            out.append(prefix)
            if _prec(body) < _UNARY_PREC:
                _wrap(body, out, True)
                return
            f = body
            continue
        if isinstance(f, (And, Or)):
            sep = " & " if isinstance(f, And) else " | "
            p = _prec(f)
            for i, g in enumerate(f.args):
                if i:
                    out.append(sep)
                _wrap(g, out, _prec(g) <= p)
            return
        if isinstance(f, Until):
            _wrap(f.left, out, _prec(f.left) <= _PREC[Until])
            out.append(" U ")
            _wrap(f.right, out, _prec(f.right) < _PREC[Until])
            return
        if isinstance(f, Implies):
            _wrap(f.left, out, _prec(f.left) <= _PREC[Implies])
            out.append(" -> ")
            _wrap(f.right, out, _prec(f.right) < _PREC[Implies])
            return
        raise TypeError(f"cannot print {type(f).__name__}")

