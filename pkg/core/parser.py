"""
Expression Parser Module
------------------------

Responsible for:
- Tokenizing polynomial / Φ / operator text
- Recursive-descent parsing into canonical Polynomial values
- Canonical formatting (the inverse of parsing)

Grammar:
    expr     := term (('+' | '-') term)*
    term     := '-'? factor ('*' factor)*
    factor   := base ('^' uint)?
    base     := rational | ident | '(' expr ')'
    rational := int ('/' uint)?

IMPORTANT:
• '^' binds tighter than unary minus, which binds tighter than '*'
• No implicit multiplication, no decimals, no functions
• Error positions are 1-based columns into the original text
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Union

from config.settings import PHI_RING, XY_RING
from core.diffop import DiffOperator, PhiSpec, symbol_ring
from core.errors import PolySyntaxError, UnknownVariable
from core.poly import Polynomial, render


# =================================================
# 1. COMPILED PATTERNS
# =================================================

TOKEN_PATTERN = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<number>\d+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<plus>\+)"
    r"|(?P<minus>-)"
    r"|(?P<star>\*)"
    r"|(?P<caret>\^)"
    r"|(?P<slash>/)"
    r"|(?P<lparen>\()"
    r"|(?P<rparen>\))"
)

EOF = "eof"

_DISPLAY = {
    "number": "number",
    "ident": "identifier",
    "plus": "'+'",
    "minus": "'-'",
    "star": "'*'",
    "caret": "'^'",
    "slash": "'/'",
    "lparen": "'('",
    "rparen": "')'",
    EOF: "end of input",
}


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    position: int       # 1-based column


# =================================================
# 2. TOKENIZER
# =================================================

def tokenize(text: Union[str, bytes]) -> List[Token]:
    """
    Split text into tokens. The stream always ends with an EOF token at
    position len(text) + 1.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    if not isinstance(text, str):
        raise TypeError(f"expected text, got {type(text).__name__}")

    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        match = TOKEN_PATTERN.match(text, pos)
        if not match:
            raise PolySyntaxError(pos + 1, ("token",), repr(text[pos]))
        kind = match.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, match.group(), pos + 1))
        pos = match.end()

    tokens.append(Token(EOF, "", len(text) + 1))
    return tokens


# =================================================
# 3. RECURSIVE DESCENT
# =================================================

class _Parser:
    def __init__(self, text, ring: Sequence[str]):
        self.tokens = tokenize(text)
        self.index = 0
        self.ring = tuple(ring)
        self._variables = {name: Polynomial.variable(self.ring, name) for name in self.ring}
        self._exponent_closed = False   # last factor already carried ^n

    # ---------------- TOKEN STREAM ----------------

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        tok = self.tokens[self.index]
        if tok.kind != EOF:
            self.index += 1
        return tok

    def _fail(self, expected: Iterable[str]):
        tok = self.current
        found = _DISPLAY[EOF] if tok.kind == EOF else repr(tok.lexeme)
        raise PolySyntaxError(tok.position, [_DISPLAY[k] for k in expected], found)

    def _expect(self, kind: str) -> Token:
        if self.current.kind != kind:
            self._fail([kind])
        return self._advance()

    # ---------------- GRAMMAR ----------------

    def parse(self) -> Polynomial:
        value = self.expr()
        if self.current.kind != EOF:
            expected = ["plus", "minus", "star"]
            if not self._exponent_closed:
                expected.append("caret")
            self._fail(expected + [EOF])
        return value

    def expr(self) -> Polynomial:
        value = self.term()
        while self.current.kind in ("plus", "minus"):
            op = self._advance().kind
            rhs = self.term()
            value = value + rhs if op == "plus" else value - rhs
        return value

    def term(self) -> Polynomial:
        negate = False
        if self.current.kind == "minus":
            self._advance()
            negate = True

        value = self.factor()
        if negate:
            value = -value
        while self.current.kind == "star":
            self._advance()
            value = value * self.factor()
        return value

    def factor(self) -> Polynomial:
        value = self.base()
        if self.current.kind == "caret":
            self._advance()
            exponent = self._expect("number")
            value = value ** int(exponent.lexeme)
            self._exponent_closed = True
        else:
            self._exponent_closed = False
        return value

    def base(self) -> Polynomial:
        tok = self.current
        if tok.kind == "number":
            return Polynomial.constant(self.ring, self.rational())
        if tok.kind == "ident":
            self._advance()
            if tok.lexeme not in self._variables:
                raise UnknownVariable(tok.lexeme, self.ring, tok.position)
            return self._variables[tok.lexeme]
        if tok.kind == "lparen":
            self._advance()
            value = self.expr()
            self._expect("rparen")
            return value
        expected = ["number", "ident", "lparen"]
        if self.index == 0 or self.tokens[self.index - 1].kind in ("plus", "minus", "lparen"):
            expected.append("minus")
        self._fail(expected)

    def rational(self) -> Fraction:
        numerator = int(self._advance().lexeme)
        if self.current.kind != "slash":
            return Fraction(numerator)
        self._advance()
        denominator = self.current
        if denominator.kind != "number":
            self._fail(["number"])
        if int(denominator.lexeme) == 0:
            raise PolySyntaxError(denominator.position, ("positive integer",), "0")
        self._advance()
        return Fraction(numerator, int(denominator.lexeme))


# =================================================
# 4. PUBLIC API
# =================================================

def parse_poly(text, ring: Sequence[str] = XY_RING) -> Polynomial:
    return _Parser(text, ring).parse()


def parse_phi(text) -> PhiSpec:
    return PhiSpec(parse_poly(text, PHI_RING))


def parse_operator(text, variables: Sequence[str] = XY_RING) -> DiffOperator:
    return DiffOperator(parse_poly(text, symbol_ring(variables)))


def format_expr(value: Union[Polynomial, DiffOperator, PhiSpec]) -> str:
    """
    Canonical text of a polynomial, operator or Φ; parsing it back yields
    the same value.
    """
    if isinstance(value, DiffOperator):
        return render(value.symbol)
    if isinstance(value, PhiSpec):
        return render(value.phi)
    if isinstance(value, Polynomial):
        return render(value)
    raise TypeError(f"cannot format {type(value).__name__}")
