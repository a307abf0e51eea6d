"""S-expression reader with source spans."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .errors import ReadError, UnbalancedParen
from .terms import Span

# Reserved for generated names (freshness primes, read-back subscripts).
RESERVED = frozenset("′″‴₀₁₂₃₄₅₆₇₈₉")


@dataclass(frozen=True)
class Atom:
    text: str
    kind: str  # "symbol" | "nat"
    span: Span = field(compare=False, default=None)

    @property
    def is_symbol(self) -> bool:
        return self.kind == "symbol"


@dataclass(frozen=True)
class SList:
    items: tuple["Syntax", ...]
    span: Span = field(compare=False, default=None)

    def __len__(self) -> int:
        return len(self.items)

    @property
    def head(self) -> str | None:
        if self.items and isinstance(self.items[0], Atom) and self.items[0].is_symbol:
            return self.items[0].text
        return None


Syntax = Union[Atom, SList]


def read(text: str) -> list[Syntax]:
    """Read all top-level forms. ``;`` starts a comment to end of line."""
    top: list[Syntax] = []
    # Stack of (items, start line, start col) for open lists.
    stack: list[tuple[list, int, int]] = []
    i, n = 0, len(text)
    line, col = 1, 1

    def emit(node):
        (stack[-1][0] if stack else top).append(node)

    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line, col = line + 1, 1
        elif c.isspace():
            i += 1
            col += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "([":
            stack.append(([], line, col))
            i += 1
            col += 1
        elif c in ")]":
            if not stack:
                raise UnbalancedParen("unexpected ')'", Span(line, col, line, col + 1))
            items, l0, c0 = stack.pop()
            i += 1
            col += 1
            emit(SList(tuple(items), Span(l0, c0, line, col)))
        else:
            start = i
            while i < n and not text[i].isspace() and text[i] not in "()[];":
                i += 1
            tok = text[start:i]
            span = Span(line, col, line, col + len(tok))
            col += len(tok)
            if RESERVED.intersection(tok):
                raise ReadError(f"identifier {tok!r} uses a reserved character", span)
            kind = "nat" if tok.isascii() and tok.isdigit() else "symbol"
            emit(Atom(tok, kind, span))
    if stack:
        _, l0, c0 = stack[-1]
        raise UnbalancedParen("unclosed '('", Span(l0, c0, line, col))
    return top


def unparse(stx: Syntax) -> str:
    # Iterative so deeply nested programs print without recursion.
    out: list[str] = []
    stack: list = [stx]
    while stack:
        node = stack.pop()
        if isinstance(node, str):
            out.append(node)
        elif isinstance(node, Atom):
            out.append(node.text)
        else:
            out.append("(")
            stack.append(")")
            for k, child in enumerate(reversed(node.items)):
                stack.append(child)
                if k != len(node.items) - 1:
                    stack.append(" ")
    return "".join(out)


def unparse_all(forms: list[Syntax]) -> str:
    return "\n".join(unparse(f) for f in forms)
