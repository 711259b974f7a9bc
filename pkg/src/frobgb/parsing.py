"""Text surface syntax for polynomials.

Grammar (whitespace ignored)::

    poly := ['-'] term (('+' | '-') term)*
    term := int | int '*' mono | mono
    mono := var ['^' uint] ('*' var ['^' uint])*
"""

from __future__ import annotations

import re

from .errors import ParseError
from .poly import Polynomial, PolyRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        num, name, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(("int", int(num), start))
        elif name is not None:
            tokens.append(("var", name, start))
        else:
            if sym not in "+-*^":
                raise ParseError(f"unexpected character {sym!r}", text, start)
            tokens.append((sym, sym, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            self.fail(f"expected {kind}, found {tok[0]}")
        self.i += 1
        return tok

    def fail(self, message):
        raise ParseError(message, self.text, self.peek()[2])

    def poly(self) -> dict:
        acc: dict[tuple, int] = {}
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        while True:
            coeff, exps = self.term()
            acc[exps] = acc.get(exps, 0) + sign * coeff
            kind = self.peek()[0]
            if kind == "end":
                return acc
            if kind not in "+-":
                self.fail(f"expected '+' or '-', found {kind}")
            sign = 1 if self.take()[0] == "+" else -1

    def term(self):
        kind = self.peek()[0]
        if kind == "int":
            coeff = self.take()[1]
            if self.peek()[0] != "*":
                return coeff, (0,) * self.ring.n
            self.take("*")
            return coeff, self.mono()
        if kind == "var":
            return 1, self.mono()
        self.fail(f"expected a term, found {kind}")

    def mono(self):
        exps = [0] * self.ring.n
        while True:
            _, name, pos = self.take("var")
            try:
                idx = self.ring.order.index(name)
            except ValueError:
                raise ParseError(f"unknown variable {name!r}", self.text, pos) from None
            power = 1
            if self.peek()[0] == "^":
                self.take()
                if self.peek()[0] == "-":
                    self.fail("negative exponent")
                power = self.take("int")[1]
            exps[idx] += power
            if self.peek()[0] != "*":
                return tuple(exps)
            self.take()


def parse_poly(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``text`` into canonical form in ``ring``; coefficients are reduced mod p."""
    if not isinstance(text, str):
        raise ParseError("expected a string", repr(text), 0)
    return ring.from_dict(_Parser(text, ring).poly())


def parse_list(text: str, ring: PolyRing) -> list[Polynomial]:
    """Comma-separated generators; an empty string gives no generators."""
    if not text.strip():
        return []
    return [parse_poly(part, ring) for part in text.split(",")]


def format_poly(f: Polynomial) -> str:
    if not f:
        return "0"
    names = f.ring.names
    parts = []
    for exps, c in f.items():
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    return "+".join(parts)


def poly_text(op: str, value, ring: PolyRing | None = None):
    if op == "parse":
        if ring is None:
            raise ValueError("parsing needs a ring")
        return parse_poly(value, ring)
    if op == "format":
        return format_poly(value)
    raise ValueError(f"unknown text operation {op!r}")
