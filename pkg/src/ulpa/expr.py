"""Element expression grammar, pretty printer, and the path / polynomial syntaxes.

    expr   := term (('+'|'-') term)*        (a leading sign is allowed; "0" is zero)
    term   := [coeff '*'] factor ('*' factor)*
    factor := 'p' '{' id (',' id)* '}' | 's' '[' id ']' | 's*' '[' id ']'
    coeff  := int | int '/' int

Paths are written ``prefix|cycle`` with comma separated edge ids, e.g. ``e|f``
for e f f f ...; twist polynomials in ``t`` like ``t^2-t-1``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import Algebra, Element, normalize
from .paths import InfinitePath
from .ultragraph import Ultragraph, bits


class ParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.col = line, col
        super().__init__(f"{msg} at line {line}, column {col}")


class UnknownName(KeyError):
    def __str__(self):
        return self.args[0]


_IDENT = re.compile(r"[A-Za-z0-9_@.\-]+")
_INT = re.compile(r"\d+")


class _Parser:
    def __init__(self, alg: Algebra, text: str):
        self.alg = alg
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ParseError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.peek(s):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def ident(self) -> str:
        self.skip()
        m = _IDENT.match(self.text, self.pos)
        if not m:
            self.error("expected an identifier")
        self.pos = m.end()
        return m.group()

    def integer(self) -> int | None:
        self.skip()
        m = _INT.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return int(m.group())

    def parse(self) -> Element:
        self.skip()
        if self.text.strip() == "0":
            return self.alg.zero()
        sign = 1
        if self.peek("-"):
            self.pos += 1
            sign = -1
        elif self.peek("+"):
            self.pos += 1
        total = self.term().scale(sign)
        while True:
            self.skip()
            if self.pos >= len(self.text):
                return total
            if self.peek("+"):
                self.pos += 1
                total = total + self.term()
            elif self.peek("-"):
                self.pos += 1
                total = total - self.term()
            else:
                self.error("expected '+' or '-'")

    def term(self) -> Element:
        start = self.pos
        coeff = self.integer()
        if coeff is not None:
            c = Fraction(coeff)
            if self.peek("/"):
                self.pos += 1
                d = self.integer()
                if d is None:
                    self.error("expected a denominator")
                if d == 0:
                    self.error("zero denominator")
                c = Fraction(coeff, d)
            self.skip()
            if self.pos >= len(self.text) or self.text[self.pos] in "+-":
                self.pos = start
                self.skip()
                self.error("a coefficient must multiply a generator")
            self.expect("*")
            value = self.factor().scale(c)
        else:
            value = self.factor()
        while self.peek("*"):
            self.pos += 1
            value = value * self.factor()
        return value

    def factor(self) -> Element:
        U = self.alg.U
        self.skip()
        if self.text.startswith("s*", self.pos):
            self.pos += 2
            self.expect("[")
            at = self.pos
            name = self.ident()
            self.expect("]")
            if not U.has_edge(name):
                raise UnknownName(f"unknown edge {name!r} at column {at + 1}")
            return self.alg.s_star(name)
        if self.text.startswith("s", self.pos):
            self.pos += 1
            self.expect("[")
            at = self.pos
            name = self.ident()
            self.expect("]")
            if not U.has_edge(name):
                raise UnknownName(f"unknown edge {name!r} at column {at + 1}")
            return self.alg.s(name)
        if self.text.startswith("p", self.pos):
            self.pos += 1
            self.expect("{")
            names = []
            while True:
                at = self.pos
                name = self.ident()
                if not U.has_vertex(name):
                    raise UnknownName(f"unknown vertex {name!r} at column {at + 1}")
                names.append(name)
                if self.peek(","):
                    self.pos += 1
                    continue
                self.expect("}")
                break
            return self.alg.p(*names)
        self.error("expected p{...}, s[...] or s*[...]")


def parse_element(alg: Algebra, text: str) -> Element:
    return _Parser(alg, text).parse()


def format_monomial(U: Ultragraph, alpha, mid: int, beta) -> str:
    parts = [f"s[{U.edge_names[e]}]" for e in alpha]
    implicit = U.eff_range(tuple(alpha)) & U.eff_range(tuple(beta))
    if not alpha and not beta or mid != implicit:
        parts.append("p{" + ",".join(U.vnames(mid)) + "}")
    parts += [f"s*[{U.edge_names[e]}]" for e in reversed(beta)]
    return "*".join(parts)


def _coeff_sign(alg: Algebra, c):
    if alg.field.prime is None and c < 0:
        return -1, -c
    return 1, c


def format_terms(alg: Algebra, terms: dict) -> str:
    """Print raw terms in the expression grammar (singleton middles with equal
    coefficient and words are merged back into one middle set)."""
    if not terms:
        return "0"
    merged: dict = {}
    for (a, A, b), c in terms.items():
        key = (tuple(a), tuple(b), c)
        merged[key] = merged.get(key, 0) | A
    items = sorted(((a, A, b, c) for (a, b, c), A in merged.items()),
                   key=lambda t: (len(t[0]) - len(t[2]), len(t[0]), len(t[2]), t[0], t[2], bits(t[1])))
    out = []
    for i, (a, A, b, c) in enumerate(items):
        sign, mag = _coeff_sign(alg, c)
        body = format_monomial(alg.U, a, A, b)
        if mag != 1:
            body = f"{mag}*{body}"
        if i == 0:
            out.append(("-" if sign < 0 else "") + body)
        else:
            out.append((" - " if sign < 0 else " + ") + body)
    return "".join(out)


def format_element(a: Element) -> str:
    """Pretty print the normal form of ``a``."""
    return format_terms(a.alg, normalize(a).terms)


# -- infinite path syntax ------------------------------------------------------------

def parse_path(U: Ultragraph, text: str) -> InfinitePath:
    """``prefix|cycle`` with comma separated edge ids."""
    if text.count("|") != 1:
        raise ValueError(f"path {text!r} must have the form prefix|cycle")
    pre, cyc = text.split("|")

    def word(s):
        s = s.strip()
        if not s:
            return ()
        out = []
        for name in s.split(","):
            name = name.strip()
            if not U.has_edge(name):
                raise UnknownName(f"unknown edge {name!r}")
            out.append(U.e(name))
        return tuple(out)

    p = InfinitePath.periodic(word(pre), word(cyc))
    p.check(U)
    return p


def format_path(U: Ultragraph, p: InfinitePath) -> str:
    if not p.is_periodic:
        head = ",".join(U.wnames(p.prefix))
        return f"{head}|~{p.stream.name}@{p.offset}"
    return ",".join(U.wnames(p.prefix)) + "|" + ",".join(U.wnames(p.cycle))


# -- polynomial syntax ------------------------------------------------------------------

_POLY_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(t(?:\^(\d+))?)?")


def parse_poly(text: str) -> list[Fraction]:
    """Coefficient list (constant term first) of a polynomial in ``t``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _POLY_TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"cannot parse polynomial {text!r} at column {pos + 1}")
        sign = -1 if m.group(1) == "-" else 1
        if pos > 0 and not m.group(1):
            raise ValueError(f"missing operator in polynomial {text!r} at column {pos + 1}")
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        deg = 0 if m.group(3) is None else int(m.group(4) or 1)
        coeffs[deg] = coeffs.get(deg, Fraction(0)) + sign * c
        pos = m.end()
    top = max(coeffs)
    out = [coeffs.get(i, Fraction(0)) for i in range(top + 1)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out
