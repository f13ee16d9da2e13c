"""Parser and printer for connected-sum expressions.

    expr  := 'S3' | '∅' | term ('#' term)*
    term  := ['-'] (int '*')? atom
    atom  := 'L(' int ',' int ')' | 'S(' int '/' int ';' param (',' param)* ')'
    param := 'V=[' int (',' int)* ']' | 'g4=' int | 'nu+=' ('true' | 'false')

Whitespace is ignored.  Syntax errors report the byte offset into the UTF-8
input and the set of tokens that would have been accepted there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .floer import VSequence
from .lens import LensSpace, LensSum, reverse_orientation


class ExprSyntaxError(ValueError):
    def __init__(self, text: str, pos: int, expected):
        self.offset = len(text[:pos].encode("utf-8"))
        self.expected = tuple(sorted(set(expected)))
        found = text[pos:pos + 1] or "end of input"
        super().__init__("syntax error at byte %d: expected %s, found %r"
                         % (self.offset, " or ".join(map(repr, self.expected)), found))


@dataclass(frozen=True)
class LensAtom:
    p: int
    q: int

    def __str__(self) -> str:
        return "L(%d,%d)" % (self.p, self.q)


@dataclass(frozen=True)
class SurgeryAtom:
    p: int
    q: int
    V: tuple[int, ...]
    g4: int | None = None
    nu_plus: bool | None = None

    def __str__(self) -> str:
        parts = ["V=[%s]" % ",".join(map(str, self.V))]
        if self.g4 is not None:
            parts.append("g4=%d" % self.g4)
        if self.nu_plus is not None:
            parts.append("nu+=%s" % ("true" if self.nu_plus else "false"))
        return "S(%d/%d; %s)" % (self.p, self.q, ", ".join(parts))

    def description(self):
        from .obstruct import SurgeryDescription
        return SurgeryDescription(self.p, self.q, VSequence(self.V), self.g4, self.nu_plus)


@dataclass(frozen=True)
class Term:
    atom: LensAtom | SurgeryAtom
    mult: int = 1
    negated: bool = False

    def __str__(self) -> str:
        s = str(self.atom)
        if self.mult != 1:
            s = "%d*%s" % (self.mult, s)
        return "-" + s if self.negated else s


@dataclass(frozen=True)
class Expression:
    terms: tuple[Term, ...]

    def __str__(self) -> str:
        return " # ".join(map(str, self.terms)) if self.terms else "S3"

    @property
    def is_lens_sum(self) -> bool:
        return all(isinstance(t.atom, LensAtom) for t in self.terms)

    def lens_sum(self) -> LensSum:
        """The expression as a multiset of lens spaces (no surgery terms allowed)."""
        out = []
        for t in self.terms:
            if not isinstance(t.atom, LensAtom):
                raise ValueError("%s is not a lens space" % t.atom)
            L = _lens(t.atom)
            if t.negated:
                L = reverse_orientation(L)
            out.extend([L] * t.mult)
        return LensSum(out)

    def summands(self) -> list:
        """Flattened summands: ``LensSpace`` or ``SurgeryDescription`` objects."""
        out = []
        for t in self.terms:
            if isinstance(t.atom, LensAtom):
                L = _lens(t.atom)
                if t.negated:
                    L = reverse_orientation(L)
                out.extend([L] * t.mult)
            else:
                if t.negated:
                    raise ValueError("orientation reversal of a surgery term is not supported")
                out.extend([t.atom.description()] * t.mult)
        return out


def _lens(a: LensAtom) -> LensSpace:
    L = LensSpace.normalized(a.p, a.q)
    if L is None:
        raise ValueError("L(1,q) is S^3; write S3 instead")
    return L


def from_lens_sum(X: LensSum) -> Expression:
    return Expression(tuple(Term(LensAtom(L.p, L.q), n) for L, n in sorted(X.counts().items())))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, tok: str) -> bool:
        self.ws()
        return self.text.startswith(tok, self.pos)

    def accept(self, tok: str) -> bool:
        if self.peek(tok):
            self.pos += len(tok)
            return True
        return False

    def expect(self, tok: str):
        if not self.accept(tok):
            self.fail([tok])

    def fail(self, expected):
        self.ws()
        raise ExprSyntaxError(self.text, self.pos, expected)

    def integer(self) -> int:
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if start == self.pos:
            self.fail(["integer"])
        return int(self.text[start:self.pos])

    def positive(self) -> int:
        self.ws()
        start = self.pos
        n = self.integer()
        if n < 1:
            self.pos = start
            self.fail(["positive integer"])
        return n

    def parse(self) -> Expression:
        if self.accept("S3") or self.accept("∅"):
            self.ws()
            if self.pos != len(self.text):
                self.fail(["end of input"])
            return Expression(())
        terms = [self.term()]
        while self.accept("#"):
            terms.append(self.term())
        self.ws()
        if self.pos != len(self.text):
            self.fail(["#", "end of input"])
        return Expression(tuple(terms))

    def term(self) -> Term:
        neg = self.accept("-")
        mult = 1
        self.ws()
        if self.pos < len(self.text) and self.text[self.pos].isdigit():
            mult = self.positive()
            self.expect("*")
        return Term(self.atom(), mult, neg)

    def atom(self):
        if self.accept("L"):
            self.expect("(")
            p = self.positive()
            self.expect(",")
            q = self.positive()
            self.expect(")")
            if math.gcd(p, q) != 1 or p < 2:
                raise ValueError("L(%d,%d) needs coprime p > 1 and q" % (p, q))
            return LensAtom(p, q)
        if self.accept("S"):
            self.expect("(")
            p = self.positive()
            self.expect("/")
            q = self.positive()
            self.expect(";")
            V, g4, nu = None, None, None
            while True:
                if self.accept("V"):
                    self.expect("=")
                    self.expect("[")
                    vals = [self.integer()]
                    while self.accept(","):
                        vals.append(self.integer())
                    self.expect("]")
                    V = tuple(vals)
                elif self.accept("g4"):
                    self.expect("=")
                    g4 = self.integer()
                elif self.accept("nu+"):
                    self.expect("=")
                    if self.accept("true"):
                        nu = True
                    elif self.accept("false"):
                        nu = False
                    else:
                        self.fail(["true", "false"])
                else:
                    self.fail(["V", "g4", "nu+"])
                if self.accept(")"):
                    break
                if not self.accept(","):
                    self.fail([",", ")"])
            if V is None:
                raise ValueError("surgery term needs V=[...]")
            atom = SurgeryAtom(p, q, V, g4, nu)
            atom.description()  # validates V, slope and flags
            return atom
        self.fail(["L(", "S("])


def parse(text: str) -> Expression:
    return _Parser(text).parse()
