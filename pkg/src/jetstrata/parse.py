"""Polynomial expression parser and scheme file loader.

Grammar (whitespace insignificant):

    expr   := term (('+'|'-') term)*
    term   := ('-')? factor ('*' factor)*
    factor := base ('^' natural)?
    base   := integer | variable | '(' expr ')'
"""

from __future__ import annotations

import json
import re
from typing import Dict, List, Optional, Sequence, Tuple

from .rings.poly import MultiPolynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, source: Optional[str] = None) -> None:
        self.line, self.column, self.source = line, column, source
        where = f"{source}: " if source else ""
        super().__init__(f"{where}line {line}, column {column}: {message}")


def _position(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


class _Parser:
    def __init__(
        self, text: str, names: Sequence[str], source: Optional[str], aliases: Optional[Dict[str, int]] = None
    ) -> None:
        self.text = text
        self.index = dict(aliases or {})
        self.index.update({n: i for i, n in enumerate(names)})
        self.nvars = len(names)
        self.source = source
        self.toks: List[Tuple[str, str, int]] = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if not m:
                break
            kind = "int" if m.group(1) else "name" if m.group(2) else "op"
            self.toks.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
            pos = m.end()
        self.toks.append(("end", "", len(text.rstrip()) if text.strip() else len(text)))
        self.i = 0

    def error(self, msg: str, offset: Optional[int] = None) -> ParseError:
        if offset is None:
            offset = self.toks[self.i][2]
        line, col = _position(self.text, offset)
        return ParseError(msg, line, col, self.source)

    def peek(self) -> Tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> Tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def parse(self) -> MultiPolynomial:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        e = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self) -> MultiPolynomial:
        acc = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> MultiPolynomial:
        neg = False
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            neg = True
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            acc = acc * self.factor()
        return -acc if neg else acc

    def factor(self) -> MultiPolynomial:
        b = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, val, _ = self.peek()
            if kind != "int":
                raise self.error("exponent must be a natural number")
            self.take()
            b = b ** int(val)
        return b

    def base(self) -> MultiPolynomial:
        kind, val, off = self.peek()
        if kind == "int":
            self.take()
            return MultiPolynomial.constant(self.nvars, int(val))
        if kind == "name":
            if val not in self.index:
                raise self.error(f"unknown variable {val!r}")
            self.take()
            return MultiPolynomial.variable(self.nvars, self.index[val])
        if kind == "op" and val == "(":
            self.take()
            e = self.expr()
            if not (self.peek()[0] == "op" and self.peek()[1] == ")"):
                raise self.error("expected ')'")
            self.take()
            return e
        if kind == "end":
            raise self.error("unexpected end of expression")
        raise self.error(f"unexpected {val!r}")


def parse_polynomial(
    text: str, names: Sequence[str], source: Optional[str] = None, aliases: Optional[Dict[str, int]] = None
) -> MultiPolynomial:
    return _Parser(text, names, source, aliases).parse()


def _literal_offset(text: str, literal: str, start: int) -> int:
    """Offset of the first character inside the JSON string ``literal`` at or after ``start``; -1 if absent."""
    i = text.find(json.dumps(literal), start)
    return -1 if i < 0 else i + 1


def load_scheme_text(text: str, name: Optional[str] = None):
    from .jets import AffineScheme

    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, name) from None
    if not isinstance(data, dict):
        raise ParseError("scheme file must hold a JSON object", 1, 1, name)
    for key in ("nvars", "generators", "dim"):
        if key not in data:
            raise ParseError(f"missing key {key!r}", 1, 1, name)
    N = data["nvars"]
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise ParseError("'nvars' must be a positive integer", 1, 1, name)
    names = data.get("vars") or [f"x{i + 1}" for i in range(N)]
    # without explicit names, x, y, z, w also work for N <= 4
    aliases = {} if data.get("vars") or N > 4 else {c: i for i, c in enumerate("xyzw"[:N])}
    if len(names) != N:
        raise ParseError(f"'vars' lists {len(names)} names for nvars={N}", 1, 1, name)
    if not isinstance(data["generators"], list) or not all(isinstance(g, str) for g in data["generators"]):
        raise ParseError("'generators' must be a list of strings", 1, 1, name)
    gens = []
    cursor = text.find('"generators"')
    for k, g in enumerate(data["generators"]):
        at = _literal_offset(text, g, max(cursor, 0))
        if at >= 0:
            cursor = at
        try:
            gens.append(parse_polynomial(g, names, aliases=aliases))
        except ParseError as exc:
            line, col = exc.line, exc.column
            if at >= 0 and exc.line == 1 and "\\" not in json.dumps(g):
                # report the position inside the file rather than inside the string
                line, col = _position(text, at + exc.column - 1)
            raise ParseError(f"generator {k + 1}: {str(exc).split(': ', 1)[-1]}", line, col, name) from None
    return AffineScheme(gens, data["dim"], names, name=data.get("name", name))


def load_scheme(path: str):
    with open(path) as fh:
        return load_scheme_text(fh.read(), name=path)
