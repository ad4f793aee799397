"""Sum-of-quotient expressions over the Pochhammer factors f_a.

An expression is a sum of terms, each term a signed integer coefficient times
a power of q times a quotient of f_a factors, e.g.

    f9^2/f18 - 2*q*f3*f18^2/(f6*f9)

Grammar (EBNF):

    expression := [ sign ] term { sign term }
    sign       := '+' | '-'
    term       := primary { ('*' | '/') primary }
    primary    := '(' term ')' | atom
    atom       := INTEGER | 'q' [ '^' INTEGER ] | 'f' INTEGER [ '^' signed ]
    signed     := [ '-' ] INTEGER

Multiplication is always explicit ("2*q*f3", never "2qf3").  Integer literals
may not appear after '/', q may not end up in a denominator, and f subscripts
must be >= 1.  parse_eta_expression and format_eta_expression round-trip.
"""

from __future__ import annotations

from dataclasses import dataclass


class EtaParseError(ValueError):
    """Parse failure with the offending position and what was expected."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


@dataclass(frozen=True)
class EtaQuotient:
    """One term: coeff * q^q_power * prod f_a^b.

    factors is canonical: duplicate subscripts merged, zero exponents dropped,
    sorted by subscript.  Structural equality is therefore meaningful.
    """

    factors: tuple[tuple[int, int], ...] = ()
    coeff: int = 1
    q_power: int = 0

    def __post_init__(self):
        if self.q_power < 0:
            raise ValueError(f"q power must be >= 0, got {self.q_power}")
        merged: dict[int, int] = {}
        for a, b in self.factors:
            if a < 1:
                raise ValueError(f"f subscript must be >= 1, got {a}")
            merged[a] = merged.get(a, 0) + b
        canonical = tuple(sorted((a, b) for a, b in merged.items() if b))
        object.__setattr__(self, "factors", canonical)


# -- tokenizer ---------------------------------------------------------------

_OPS = set("+-*/^()")


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    """Tokens are (kind, value, position); kinds: INT, Q, FSYM, one of +-*/^()."""
    tokens: list[tuple[str, object, int]] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("INT", int(text[i:j]), i))
            i = j
            continue
        if ch == "q":
            tokens.append(("Q", "q", i))
            i += 1
            continue
        if ch == "f":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise EtaParseError("expected integer subscript after 'f'", i + 1)
            sub = int(text[i + 1 : j])
            if sub < 1:
                raise EtaParseError("f subscript must be >= 1", i + 1)
            tokens.append(("FSYM", sub, i))
            i = j
            continue
        raise EtaParseError(f"unexpected character {ch!r}", i)
    tokens.append(("END", None, n))
    return tokens


# -- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, object, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, object, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected: str) -> EtaParseError:
        kind, value, position = self.peek()
        found = "end of input" if kind == "END" else repr(str(value))
        return EtaParseError(f"expected {expected}, found {found}", position)

    def parse_expression(self) -> list[EtaQuotient]:
        terms = []
        sign = 1
        kind, _, _ = self.peek()
        if kind in ("+", "-"):
            self.advance()
            sign = -1 if kind == "-" else 1
        terms.append(self.parse_term(sign))
        while True:
            kind, _, _ = self.peek()
            if kind == "END":
                return terms
            if kind in ("+", "-"):
                self.advance()
                terms.append(self.parse_term(-1 if kind == "-" else 1))
                continue
            raise self.fail("'+', '-', or end of input")

    def parse_term(self, sign: int) -> EtaQuotient:
        coeff, q_power, factors = self.parse_primary(invert=False)
        while True:
            kind, _, _ = self.peek()
            if kind not in ("*", "/"):
                break
            self.advance()
            c, s, f = self.parse_primary(invert=(kind == "/"))
            coeff *= c
            q_power += s
            factors.extend(f)
        return EtaQuotient(tuple(factors), sign * coeff, q_power)

    def parse_primary(self, invert: bool) -> tuple[int, int, list[tuple[int, int]]]:
        """Returns (coeff, q_power, factors) with denominator handling applied."""
        kind, value, position = self.peek()
        if kind == "(":
            self.advance()
            coeff, q_power, factors = self.parse_primary(invert)
            while True:
                kind, _, _ = self.peek()
                if kind == ")":
                    self.advance()
                    return coeff, q_power, factors
                if kind in ("*", "/"):
                    op = self.advance()[0]
                    c, s, f = self.parse_primary(invert ^ (op == "/"))
                    coeff *= c
                    q_power += s
                    factors.extend(f)
                    continue
                raise self.fail("'*', '/', or ')'")
        if kind == "INT":
            if invert:
                raise EtaParseError("integer coefficients may not appear in denominators", position)
            self.advance()
            return value, 0, []
        if kind == "Q":
            if invert:
                raise EtaParseError("q may not appear in a denominator", position)
            self.advance()
            exponent = self.parse_exponent(allow_negative=False, default=1)
            return 1, exponent, []
        if kind == "FSYM":
            self.advance()
            exponent = self.parse_exponent(allow_negative=True, default=1)
            return 1, 0, [(value, -exponent if invert else exponent)]
        raise self.fail("an integer, 'q', 'f<subscript>', or '('")

    def parse_exponent(self, allow_negative: bool, default: int) -> int:
        kind, _, _ = self.peek()
        if kind != "^":
            return default
        self.advance()
        sign = 1
        kind, value, position = self.peek()
        if kind == "-" and allow_negative:
            self.advance()
            sign = -1
            kind, value, position = self.peek()
        if kind != "INT":
            raise self.fail("an integer exponent after '^'")
        self.advance()
        return sign * value


def parse_eta_expression(text: str) -> list[EtaQuotient]:
    """Parse a sum-of-quotients expression into its list of terms."""
    return _Parser(text).parse_expression()


# -- printer -----------------------------------------------------------------


def _format_factor(a: int, b: int) -> str:
    return f"f{a}" if b == 1 else f"f{a}^{b}"


def format_eta_quotient(eq: EtaQuotient) -> str:
    """Canonical rendering of one term, without a leading sign."""
    numerator = []
    magnitude = abs(eq.coeff)
    if magnitude != 1:
        numerator.append(str(magnitude))
    if eq.q_power == 1:
        numerator.append("q")
    elif eq.q_power > 1:
        numerator.append(f"q^{eq.q_power}")
    numerator.extend(_format_factor(a, b) for a, b in eq.factors if b > 0)
    denominator = [_format_factor(a, -b) for a, b in eq.factors if b < 0]
    text = "*".join(numerator) if numerator else "1"
    if not denominator:
        return text
    if len(denominator) == 1:
        return f"{text}/{denominator[0]}"
    return f"{text}/({'*'.join(denominator)})"


def format_eta_expression(terms: list[EtaQuotient] | tuple[EtaQuotient, ...]) -> str:
    """Canonical rendering of an expression; round-trips through the parser."""
    if not terms:
        return "0"
    pieces = []
    for i, eq in enumerate(terms):
        body = format_eta_quotient(eq)
        if i == 0:
            pieces.append(f"-{body}" if eq.coeff < 0 else body)
        else:
            pieces.append(f" - {body}" if eq.coeff < 0 else f" + {body}")
    return "".join(pieces)
