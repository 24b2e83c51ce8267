"""Parser for the concrete process syntax.

    process ::= 'rec' VAR '.' process | unit ('[]' unit)*
    unit    ::= ACTION '(' params ')' '.' cont | 'end' | VAR | '(' process ')'
    cont    ::= unit | 'rec' VAR '.' process

Identifiers starting with an uppercase letter are formals or process
variables; integers and double-quoted strings are data values. Choice
associates to the left, and ``rec`` extends as far right as possible.
"""
import re
from typing import List, NamedTuple, Optional

from ..errors import ParseError
from .syntax import ACTION_KINDS, END, Choice, Formal, Prefix, Process, Rec, Var

_TOKEN_RE = re.compile(r"""
    (?P<space>\s+)
  | (?P<choice>\[\])
  | (?P<int>-?\d+)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[().,])
""", re.VERBOSE)


class Token(NamedTuple):
    kind: str
    text: str
    line: int


def tokenize(source: str, field: Optional[str] = None) -> List[Token]:
    tokens = []
    position, line = 0, 1
    while position < len(source):
        match = _TOKEN_RE.match(source, position)
        if not match:
            raise ParseError(f"Unexpected character {source[position]!r}", field, line)
        kind = match.lastgroup
        text = match.group()
        if kind != "space":
            tokens.append(Token(kind, text, line))
        line += text.count("\n")
        position = match.end()
    tokens.append(Token("eof", "", line))
    return tokens


class _Parser:
    def __init__(self, source: str, field: Optional[str]):
        self.field = field
        self.tokens = tokenize(source, field)
        self.position = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.position]

    def error(self, message: str) -> ParseError:
        token = self.current
        found = token.text or "end of input"
        return ParseError(f"{message}, found {found!r}", self.field, token.line)

    def take(self, kind: str, text: Optional[str] = None) -> Token:
        token = self.current
        if token.kind != kind or (text is not None and token.text != text):
            raise self.error(f"Expected {text or kind}")
        self.position += 1
        return token

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        token = self.current
        return token.kind == kind and (text is None or token.text == text)

    def parse(self) -> Process:
        process = self.process()
        if not self.at("eof"):
            raise self.error("Expected end of process")
        return process

    def process(self) -> Process:
        if self.at("ident", "rec"):
            return self.rec()
        process = self.unit()
        while self.at("choice"):
            self.position += 1
            process = Choice(process, self.unit())
        return process

    def rec(self) -> Process:
        self.take("ident", "rec")
        name = self.variable()
        self.take("punct", ".")
        return Rec(name, self.process())

    def variable(self) -> str:
        token = self.take("ident")
        if not token.text[0].isupper():
            self.position -= 1
            raise self.error("Expected a variable (uppercase identifier)")
        return token.text

    def unit(self) -> Process:
        token = self.current
        if token.kind == "punct" and token.text == "(":
            self.position += 1
            process = self.process()
            self.take("punct", ")")
            return process
        if token.kind != "ident":
            raise self.error("Expected a process")
        if token.text == "end":
            self.position += 1
            return END
        if token.text == "rec":
            return self.rec()
        if token.text[0].isupper():
            self.position += 1
            return Var(token.text)
        if token.text in ACTION_KINDS:
            return self.prefix()
        raise self.error(f"Unknown action (expected one of {', '.join(ACTION_KINDS)})")

    def prefix(self) -> Process:
        kind = self.take("ident").text
        self.take("punct", "(")
        params = []
        if not self.at("punct", ")"):
            params.append(self.param())
            while self.at("punct", ","):
                self.position += 1
                params.append(self.param())
        self.take("punct", ")")
        self.take("punct", ".")
        return Prefix(kind, tuple(params), self.unit())

    def param(self):
        token = self.current
        if token.kind == "int":
            self.position += 1
            return int(token.text)
        if token.kind == "string":
            self.position += 1
            return token.text[1:-1].replace('\\"', '"')
        if token.kind == "ident" and token.text[0].isupper():
            self.position += 1
            return Formal(token.text)
        raise self.error("Expected a value or a formal")


def parse_process(source: str, field: Optional[str] = None) -> Process:
    """Parse one process; ParseError carries ``field`` and the offending line."""
    return _Parser(source, field).parse()


def parse_tuple(values, field: Optional[str] = None) -> tuple:
    """A ground tuple from a JSON list of integers and strings."""
    if not isinstance(values, (list, tuple)):
        raise ParseError("A tuple must be a list of values", field)
    for value in values:
        if not isinstance(value, (int, str)) or isinstance(value, bool):
            raise ParseError(f"Unsupported tuple value {value!r}", field)
    return tuple(values)
