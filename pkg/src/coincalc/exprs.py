"""Tiny expression language for homotopy classes on the command line.

    EXPR  := TERM ('+' TERM)*
    TERM  := INT '*' ATOM | ATOM
    ATOM  := INT | GEN | NAMED
    NAMED := zero | iota | whitehead(q) | hopfR | hopfC | hopfH | alpha1_3
           | susp(EXPR [, k])

GEN is a generator name of the context entry pi_m(S^q); a bare INT is the
corresponding multiple of iota and only makes sense when m = q.  Named
classes must land in the context entry; susp(EXPR, k) evaluates EXPR in
pi_{m-k}(S^{q-k}) and suspends k times (k defaults to 1).
"""

from __future__ import annotations

import re

from .spheres import SphereClass, SphereTables, Unknown


class ExprError(ValueError):
    """Parse or evaluation failure, with the offending position."""


_TOKEN_RE = re.compile(r"\s*(-?\d+|[A-Za-z_][A-Za-z_0-9]*|[()*,+])")
_INT_RE = re.compile(r"-?\d+")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match:
            if text[pos:].strip() == "":
                break
            raise ExprError(
                f"cannot read expression at position {pos}: {text[pos:]!r}"
            )
        tokens.append((match.group(1), match.start(1)))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, tables: SphereTables, tokens: list[tuple[str, int]]):
        self.tables = tables
        self.tokens = tokens
        self.index = 0

    def peek(self):
        return self.tokens[self.index][0] if self.index < len(self.tokens) else None

    def take(self, expected=None):
        if self.index >= len(self.tokens):
            raise ExprError(f"unexpected end of expression, wanted {expected!r}")
        tok, pos = self.tokens[self.index]
        if expected is not None and tok != expected:
            raise ExprError(f"expected {expected!r} at position {pos}, got {tok!r}")
        self.index += 1
        return tok, pos

    def expr(self, m: int, q: int) -> SphereClass:
        total = self.term(m, q)
        while self.peek() == "+":
            self.take("+")
            total = total + self.term(m, q)
        return total

    def term(self, m: int, q: int) -> SphereClass:
        tok = self.peek()
        if tok is not None and _INT_RE.fullmatch(tok):
            number, pos = self.take()
            if self.peek() == "*":
                self.take("*")
                return self.atom(m, q).scale(int(number))
            if m != q:
                raise ExprError(
                    f"bare integer at position {pos} is a degree and needs "
                    f"m = q; context is pi_{m}(S^{q})"
                )
            return self.tables.cls(m, q, [int(number)])
        return self.atom(m, q)

    def _susp(self, m: int, q: int) -> SphereClass:
        self.take("(")
        # Find the matching ")" and a possible top-level ", k" to learn the
        # suspension depth before parsing the inner expression.
        depth = 1
        comma_at = None
        close_at = None
        for j in range(self.index, len(self.tokens)):
            tok = self.tokens[j][0]
            if tok == "(":
                depth += 1
            elif tok == ")":
                depth -= 1
                if depth == 0:
                    close_at = j
                    break
            elif tok == "," and depth == 1:
                comma_at = j
        if close_at is None:
            raise ExprError("unbalanced parentheses in susp(...)")
        times = 1
        inner_end = close_at
        if comma_at is not None:
            count_tokens = self.tokens[comma_at + 1 : close_at]
            if len(count_tokens) != 1 or not count_tokens[0][0].isdigit():
                raise ExprError("susp(EXPR, k) needs a positive integer k")
            times = int(count_tokens[0][0])
            if times < 1:
                raise ExprError("susp count must be >= 1")
            inner_end = comma_at
        inner = _Parser(self.tables, self.tokens[self.index : inner_end])
        cls = inner.expr(m - times, q - times)
        if inner.peek() is not None:
            tok, pos = inner.tokens[inner.index]
            raise ExprError(f"unexpected {tok!r} at position {pos} inside susp(...)")
        self.index = close_at + 1
        out = self.tables.suspend_iter(cls, times)
        if isinstance(out, Unknown):
            raise ExprError(f"cannot suspend {times} time(s): {out.reason}")
        return out

    def atom(self, m: int, q: int) -> SphereClass:
        tok, pos = self.take()
        if tok == "zero":
            return self.tables.zero(m, q)
        if tok == "iota":
            if m != q:
                raise ExprError(
                    f"iota lives in pi_{q}(S^{q}); context is pi_{m}(S^{q})"
                )
            return self.tables.cls(m, q, [1])
        if tok == "whitehead":
            self.take("(")
            qq, _ = self.take()
            self.take(")")
            return self._fit(self.tables.whitehead(int(qq)), m, q, f"whitehead({qq})", pos)
        if tok == "susp":
            return self._susp(m, q)
        if tok in self.tables.raw.named:
            return self._fit(self.tables.named(tok), m, q, tok, pos)
        try:
            return self.tables.generator(m, q, tok)
        except Exception:
            entry = self.tables.lookup(m, q)
            raise ExprError(
                f"unknown name {tok!r} at position {pos}; generators of "
                f"pi_{m}(S^{q}) are {list(entry.gen_names)}, named classes are "
                f"{sorted(self.tables.raw.named)}"
            ) from None

    @staticmethod
    def _fit(cls: SphereClass, m: int, q: int, what: str, pos: int) -> SphereClass:
        if (cls.m, cls.q) != (m, q):
            raise ExprError(
                f"{what} lives in pi_{cls.m}(S^{cls.q}) but the context is "
                f"pi_{m}(S^{q}) (position {pos})"
            )
        return cls


def parse_class(tables: SphereTables, text: str, m: int, q: int) -> SphereClass:
    """Evaluate an expression as a class of pi_m(S^q)."""
    parser = _Parser(tables, _tokenize(text))
    out = parser.expr(m, q)
    if parser.peek() is not None:
        tok, pos = parser.tokens[parser.index]
        raise ExprError(f"unexpected trailing {tok!r} at position {pos}")
    return out
