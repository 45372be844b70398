"""Component registry and the composition expression language.

Grammar (left-associative):

    expr := atom { "(+)" atom }
    atom := NAME | NAME "[" expr "]"

Leaf names resolve registered components; a bare pattern name yields the
pattern instantiated over opaque element tokens; NAME[expr] is the dynamic
composition of the inner component into the named pattern.
"""

from __future__ import annotations

import re
from typing import List, Optional, Tuple

from .bounds import Bounds, DEFAULT_BOUNDS
from .cells import cchar, ccolor, cnat
from .composition import dynamic_compose, static_compose
from .errors import ExprError
from .kernel import Component
from .patterns import instantiate, set_pattern, string_pattern, token_component

COMPONENTS = {
    "cchar": cchar,
    "cnat": cnat,
    "ccolor": ccolor,
}

PATTERNS = {
    "set-literal": lambda: set_pattern("literal"),
    "set-guarded": lambda: set_pattern("guarded"),
    "string": string_pattern,
}

_TOKENS = re.compile(r"\s*(\(\+\)|\[|\]|[a-z0-9_-]+)")


def registry_names() -> dict:
    return {"components": sorted(COMPONENTS), "patterns": sorted(PATTERNS)}


def _tokenize(text: str) -> List[Tuple[str, int]]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKENS.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ExprError(f"unexpected character {text[pos:].strip()[0]!r}", pos)
            break
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> Optional[Tuple[str, int]]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ExprError("unexpected end of expression", len(self.text))
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        if self.peek() is not None:
            tok, pos = self.peek()
            raise ExprError(f"unexpected token {tok!r}", pos)
        return node

    def expr(self):
        parts = [self.atom()]
        while self.peek() is not None and self.peek()[0] == "(+)":
            self.take()
            parts.append(self.atom())
        return parts[0] if len(parts) == 1 else ("oplus", parts)

    def atom(self):
        tok, pos = self.take()
        if tok in ("(+)", "[", "]"):
            raise ExprError(f"expected a name, got {tok!r}", pos)
        if self.peek() is not None and self.peek()[0] == "[":
            self.take()
            inner = self.expr()
            closing = self.peek()
            if closing is None or closing[0] != "]":
                raise ExprError("missing ']'", pos)
            self.take()
            return ("dyn", tok, pos, inner)
        return ("name", tok, pos)


def _eval(node, b: Bounds) -> Component:
    kind = node[0]
    if kind == "name":
        _, name, pos = node
        if name in COMPONENTS:
            return COMPONENTS[name]()
        if name in PATTERNS:
            # Bare pattern over opaque tokens; admissibility needs two states
            # even when the runtime universe is smaller.
            check_b = b.with_(universe=max(2, b.universe))
            return instantiate(PATTERNS[name](), token_component(), b=check_b)
        raise ExprError(f"unknown name {name!r}", pos)
    if kind == "dyn":
        _, name, pos, inner = node
        if name not in PATTERNS:
            raise ExprError(f"{name!r} is not a pattern", pos)
        child = _eval(inner, b)
        return dynamic_compose(PATTERNS[name](), child, b=b)
    if kind == "oplus":
        return static_compose(*(_eval(p, b) for p in node[1]))
    raise ExprError(f"bad expression node {kind!r}")


def build(expr: str, b: Bounds = DEFAULT_BOUNDS) -> Component:
    """Build the component denoted by a composition expression."""
    return _eval(_Parser(expr).parse(), b)
