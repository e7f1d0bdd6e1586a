"""Group expression language.

Grammar (whitespace is free between tokens)::

    expr    := NAME '(' args ')' | NAME
    S(n) A(n) C(n) D(n) AGL(d,q) GL(d,q) GammaL(d,q)
    direct(expr, expr) wreath(expr, expr) atlas(NAME)
    group(n; perms) cosets(expr; perms)
    perms   := [perm (',' perm)*]
    perm    := '()' | cycle+
    cycle   := '(' INT ((' ' | ',') INT)* ')'

A bare NAME is an atlas entry.  Printing is canonical: no spaces except
between the points of a cycle.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .fields import SUPPORTED_ORDERS

__all__ = ["GroupExpr", "GroupExprError", "parse_group_expr", "print_group_expr", "KINDS"]

# kind -> signature: "i" integer, "q" field order, "e" expression, "n" name, "p" perm list
KINDS = {
    "S": "i",
    "A": "i",
    "C": "i",
    "D": "i",
    "AGL": "iq",
    "GL": "iq",
    "GammaL": "iq",
    "direct": "ee",
    "wreath": "ee",
    "atlas": "n",
    "group": "i;p",
    "cosets": "e;p",
}


@dataclass(frozen=True)
class GroupExpr:
    """A node: ``kind`` plus arguments (ints, names, child nodes or a tuple of perms).

    A perm is a tuple of cycles, each a tuple of 1-based points.
    """

    kind: str
    args: tuple

    def __str__(self):
        return print_group_expr(self)


class GroupExprError(ValueError):
    def __init__(self, message, offset):
        super().__init__(f"at byte {offset}: {message}")
        self.offset = offset


_WORD = re.compile(r"[A-Za-z0-9_]+")
_INT = re.compile(r"\d+")


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        pos = self.pos if pos is None else pos
        raise GroupExprError(msg, len(self.text[:pos].encode()))

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            self.error(f"expected {ch!r}, got {got!r}")
        self.pos += 1

    def integer(self):
        self.skip()
        m = _INT.match(self.text, self.pos)
        if not m:
            self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def name(self):
        self.skip()
        m = _WORD.match(self.text, self.pos)
        if not m:
            self.error("expected a name")
        self.pos = m.end()
        return m.group()

    def expr(self):
        self.skip()
        start = self.pos
        m = _WORD.match(self.text, self.pos)
        if not m:
            self.error("expected a group expression")
        word = m.group()
        self.pos = m.end()
        if self.peek() != "(":
            return GroupExpr("atlas", (word,))
        if word not in KINDS:
            self.error(f"unknown constructor {word!r}", start)
        self.expect("(")
        sig = KINDS[word]
        args = []
        first = True
        for s in sig:
            if s == ";":
                self.expect(";")
                first = True
                continue
            if not first:
                if self.peek() != ",":
                    self.error(f"{word} expects more arguments")
                self.pos += 1
            first = False
            here = self.pos
            if s in "iq":
                v = self.integer()
                if v < 1:
                    self.error("expected a positive integer", here)
                if s == "q" and v not in SUPPORTED_ORDERS:
                    self.error(f"unsupported field size {v}", here)
                args.append(v)
            elif s == "e":
                args.append(self.expr())
            elif s == "n":
                args.append(self.name())
            elif s == "p":
                args.append(self.perms())
        if self.peek() == ",":
            self.error(f"too many arguments for {word}")
        self.expect(")")
        e = GroupExpr(word, tuple(args))
        self.validate(e, start)
        return e

    def perms(self):
        out = []
        if self.peek() == ")":
            return ()
        while True:
            out.append(self.perm())
            if self.peek() != ",":
                return tuple(out)
            self.pos += 1

    def perm(self):
        cycles = []
        if self.peek() != "(":
            self.error("expected a permutation in cycle notation")
        while self.peek() == "(":
            self.pos += 1
            if self.peek() == ")":
                self.pos += 1
                if cycles:
                    self.error("empty cycle inside a permutation")
                return ()
            pts = [self.integer()]
            while self.peek() != ")":
                if self.peek() == ",":
                    self.pos += 1
                here = self.pos
                pts.append(self.integer())
                if pts[-1] in pts[:-1]:
                    self.error(f"point {pts[-1]} repeated in a cycle", here)
            self.pos += 1
            if 0 in pts:
                self.error("points are numbered from 1")
            cycles.append(tuple(pts))
        return tuple(cycles)

    def validate(self, e, start):
        if e.kind == "D" and e.args[0] < 3:
            self.error("D(n) needs n >= 3", start)
        if e.kind == "group":
            n = e.args[0]
            for p in e.args[1]:
                for c in p:
                    if max(c) > n:
                        self.error(f"point {max(c)} exceeds degree {n}", start)


def parse_group_expr(text):
    p = _Parser(text)
    e = p.expr()
    if p.peek():
        p.error(f"unexpected trailing text {text[p.pos:]!r}")
    return e


def _print_perm(p):
    if not p:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in p)


def print_group_expr(e):
    if e.kind == "atlas":
        return f"atlas({e.args[0]})"
    parts = []
    sig = KINDS[e.kind].replace(";", "")
    for s, a in zip(sig, e.args):
        if s == "e":
            parts.append(print_group_expr(a))
        elif s == "p":
            parts.append(",".join(_print_perm(p) for p in a))
        else:
            parts.append(str(a))
    if ";" in KINDS[e.kind]:
        return f"{e.kind}({parts[0]};{parts[1]})"
    return f"{e.kind}({','.join(parts)})"
