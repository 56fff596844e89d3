"""
Parser de consultas.

Gramática:
    query := atom ("," atom)*
    atom  := NAME "(" var ("," var)* ")"
    var   := NAME | "[" NAME "]"

Los nombres de relación repetidos se convierten en etiquetas R#1, R#2, ...
(relation = "R") para que cada átomo tenga su propia relación en la base.
"""

import re
from collections import Counter
from dataclasses import dataclass

from ..core.errors import QuerySyntaxError
from ..core.model import Atom, Query, Variable, VarKind

_TOKENS = re.compile(
    r"(?P<NAME>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<LPAREN>\()|(?P<RPAREN>\))"
    r"|(?P<LBRACK>\[)|(?P<RBRACK>\])"
    r"|(?P<COMMA>,)"
    r"|(?P<NEWLINE>\n)"
    r"|(?P<SKIP>[ \t\r]+)"
    r"|(?P<MISMATCH>.)"
)


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    """Tokens con posición (línea y columna desde 1); añade un EOF final."""
    tokens: list[Token] = []
    line, line_start = 1, 0
    for m in _TOKENS.finditer(text):
        kind = m.lastgroup
        column = m.start() - line_start + 1
        if kind == "NEWLINE":
            line, line_start = line + 1, m.end()
        elif kind == "MISMATCH":
            raise QuerySyntaxError(f"carácter inesperado {m.group()!r}", line, column)
        elif kind != "SKIP":
            tokens.append(Token(kind, m.group(), line, column))
    tokens.append(Token("EOF", "", line, len(text) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def expect(self, kind: str, what: str) -> Token:
        tok = self.current
        if tok.kind != kind:
            found = tok.text or "fin de la entrada"
            raise QuerySyntaxError(f"se esperaba {what}, se encontró {found!r}", tok.line, tok.column)
        self.pos += 1
        return tok

    def accept(self, kind: str) -> bool:
        if self.current.kind == kind:
            self.pos += 1
            return True
        return False

    def var(self) -> Variable:
        if self.accept("LBRACK"):
            name = self.expect("NAME", "nombre de variable").text
            self.expect("RBRACK", "']'")
            return Variable(name, VarKind.INTERVAL)
        return Variable(self.expect("NAME", "variable o '['").text)

    def atom(self) -> tuple[str, list[Variable]]:
        name = self.expect("NAME", "nombre de relación").text
        self.expect("LPAREN", "'('")
        schema = [self.var()]
        while self.accept("COMMA"):
            schema.append(self.var())
        self.expect("RPAREN", "')' o ','")
        return name, schema

    def query(self) -> list[tuple[str, list[Variable]]]:
        atoms = [self.atom()]
        while self.accept("COMMA"):
            atoms.append(self.atom())
        self.expect("EOF", "',' o fin de la entrada")
        return atoms


def parse_query(text: str) -> Query:
    """
    Parsea el texto de una consulta.

    Raises:
        QuerySyntaxError: texto fuera de la gramática (con línea y columna)
        DuplicateVariableInAtom: la misma variable dos veces en un átomo
        KindMismatch: una variable usada como punto y como intervalo
    """
    parsed = _Parser(text).query()
    counts = Counter(name for name, _ in parsed)
    seen: Counter[str] = Counter()
    atoms = []
    for name, schema in parsed:
        if counts[name] > 1:
            seen[name] += 1
            label = f"{name}#{seen[name]}"
        else:
            label = name
        atoms.append(Atom(label, tuple(schema), relation=name))
    return Query(tuple(atoms))


def format_query(q: Query) -> str:
    """Inverso de parse_query: usa el nombre de relación, no la etiqueta."""
    return ", ".join(
        f"{a.relation}({','.join(str(v) for v in a.schema)})" for a in q.atoms
    )


__all__ = ["Token", "tokenize", "parse_query", "format_query"]
