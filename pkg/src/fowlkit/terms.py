"""Mutable term IR.

Every node carries a session-unique ``node_id`` and an optional source span.
Elaboration repairs terms by assigning to child slots; a node's class (its
tag) never changes. Extensions add variants by subclassing :class:`Term`.
"""

from __future__ import annotations

import itertools
import re
from typing import ClassVar, Iterator, NamedTuple


class Span(NamedTuple):
    line: int
    col: int
    end_line: int
    end_col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}-{self.end_line}:{self.end_col}"


class AllocStats:
    """Allocation counters for terms and values (used by scaling tests)."""

    def __init__(self):
        self.terms = 0
        self.values = 0

    def snapshot(self) -> tuple[int, int]:
        return self.terms, self.values


STATS = AllocStats()
_node_ids = itertools.count(1)

#: tag -> Term subclass, for every variant defined so far (base and extensions).
TERM_CLASSES: dict[str, type[Term]] = {}


class Term:
    __slots__ = ("node_id", "src")

    tag: ClassVar[str] = ""
    head: ClassVar[str] = ""
    fields: ClassVar[tuple[str, ...]] = ()
    # Subset of ``fields`` holding child Terms (a child slot may hold None).
    children: ClassVar[tuple[str, ...]] = ()
    # Payload field naming the bound variable, and the children it scopes over.
    binder: ClassVar[str | None] = None
    scoped: ClassVar[tuple[str, ...]] = ()

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        if "tag" not in cls.__dict__:
            # A refinement of an existing variant: extra slots are payload.
            return
        cls.fields = tuple(cls.__dict__.get("__slots__", ()))
        if "children" not in cls.__dict__:
            cls.children = tuple(f for f in cls.fields if f != cls.binder)
        if not cls.head:
            cls.head = cls.tag
        if cls.tag:
            if cls.tag in TERM_CLASSES and TERM_CLASSES[cls.tag] is not cls:
                raise ValueError(f"duplicate term tag {cls.tag!r}")
            TERM_CLASSES[cls.tag] = cls

    def __init__(self, *args, src: Span | None = None):
        fields = self.fields
        if len(args) != len(fields):
            raise TypeError(f"{type(self).__name__} takes {len(fields)} fields, got {len(args)}")
        for name, value in zip(fields, args):
            setattr(self, name, value)
        self.node_id = next(_node_ids)
        self.src = src
        STATS.terms += 1

    def child_terms(self) -> Iterator[Term]:
        for name in self.children:
            c = getattr(self, name)
            if c is not None:
                yield c

    def __repr__(self) -> str:
        return show(self)


# --- base variants ---------------------------------------------------------

class Var(Term):
    tag = "var"
    __slots__ = ("name",)
    children = ()


class Sort(Term):
    tag = "sort"
    head = "Type"
    __slots__ = ("level",)
    children = ()


class Pi(Term):
    tag = "pi"
    head = "Pi"
    binder = "name"
    scoped = ("cod",)
    __slots__ = ("name", "dom", "cod")


class Lam(Term):
    tag = "lam"
    head = "lambda"
    binder = "name"
    scoped = ("body",)
    __slots__ = ("name", "ann", "body")


class App(Term):
    tag = "app"
    __slots__ = ("fn", "arg")


class Ann(Term):
    tag = "ann"
    __slots__ = ("subject", "type")


class NatType(Term):
    tag = "nat"
    head = "Nat"
    __slots__ = ()


class Zero(Term):
    tag = "zero"
    __slots__ = ()


class Suc(Term):
    tag = "suc"
    __slots__ = ("pred",)


class IndNat(Term):
    tag = "ind-nat"
    head = "ind-Nat"
    __slots__ = ("motive", "base", "step", "target")


class BoolType(Term):
    tag = "bool"
    head = "Bool"
    __slots__ = ()


class TrueLit(Term):
    tag = "true"
    __slots__ = ()


class FalseLit(Term):
    tag = "false"
    __slots__ = ()


class IndBool(Term):
    """Boolean eliminator. ``motive`` is None until inferred (the ``if`` form)."""

    tag = "ind-bool"
    head = "ind-Bool"
    __slots__ = ("motive", "on_true", "on_false", "target")


class Equal(Term):
    tag = "equal"
    head = "Equal"
    __slots__ = ("type", "lhs", "rhs")


class Refl(Term):
    tag = "refl"
    __slots__ = ("subject",)


class J(Term):
    tag = "j"
    head = "J"
    __slots__ = ("motive", "proof", "on_refl")


class Define(Term):
    """Top-level ``(define name body)``; only valid as a program form."""

    tag = "define"
    __slots__ = ("name", "body")
    children = ("body",)


# --- binder names ----------------------------------------------------------

_SUBSCRIPTS = "₀₁₂₃₄₅₆₇₈₉"
_TO_SUB = str.maketrans("0123456789", _SUBSCRIPTS)


_SUFFIX = re.compile(r"(?:[′″‴]+\d*)?[₀-₉]*$")


def base_name(hint: str) -> str:
    """Strip readback subscripts and freshness primes from a binder hint."""
    return _SUFFIX.sub("", hint) or "x"


def readback_name(hint: str, depth: int) -> str:
    """Binder name used by readback at ``depth``; never produced by fresh_name."""
    return base_name(hint) + str(depth).translate(_TO_SUB)


# --- structural utilities --------------------------------------------------

def walk(t: Term) -> Iterator[Term]:
    """Pre-order traversal without recursion."""
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        for name in reversed(node.children):
            c = getattr(node, name)
            if c is not None:
                stack.append(c)


def node_count(t: Term) -> int:
    return sum(1 for _ in walk(t))


def node_ids(t: Term) -> set[int]:
    return {n.node_id for n in walk(t)}


def snapshot(t: Term):
    """Content snapshot (ids, payloads, structure) used to detect mutation."""
    def snap(node):
        if node is None:
            return None
        if not isinstance(node, Term):
            return ("payload", node)
        return (node.tag, node.node_id) + tuple(snap(getattr(node, f)) for f in node.fields)
    return snap(t)


def numeral_value(t: Term) -> int | None:
    """The integer denoted by a Suc/Zero chain, or None."""
    n = 0
    while isinstance(t, Suc):
        n += 1
        t = t.pred
    return n if isinstance(t, Zero) else None


def numeral(n: int, make=None) -> Term:
    if make is None:
        t: Term = Zero()
        for _ in range(n):
            t = Suc(t)
        return t
    t = make("zero")
    for _ in range(n):
        t = make("suc", t)
    return t


def show(t: Term | None) -> str:
    """Render a term in surface syntax."""
    if t is None:
        return "_"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Sort):
        return f"(Type {t.level})"
    if isinstance(t, (Suc, Zero)):
        n = numeral_value(t)
        if n is not None:
            return str(n)
    if isinstance(t, Pi):
        if base_name(t.name) == "_":
            return f"(-> {show(t.dom)} {show(t.cod)})"
        return f"(Pi ({t.name} {show(t.dom)}) {show(t.cod)})"
    if isinstance(t, Lam):
        if t.ann is None:
            return f"(lambda ({t.name}) {show(t.body)})"
        return f"(lambda ({t.name} {show(t.ann)}) {show(t.body)})"
    if isinstance(t, App):
        args = []
        while isinstance(t, App):
            args.append(show(t.arg))
            t = t.fn
        return "(" + " ".join([show(t)] + args[::-1]) + ")"
    if not t.fields:
        return t.head
    if t.binder is not None:
        name = getattr(t, t.binder)
        rest = [f for f in t.fields if f != t.binder]
        first, others = rest[0], rest[1:]
        parts = [f"({name} {show(getattr(t, first))})"] + [show(getattr(t, f)) for f in others]
        return f"({t.head} " + " ".join(parts) + ")"
    parts = []
    for f in t.fields:
        v = getattr(t, f)
        parts.append(show(v) if (v is None or isinstance(v, Term)) else str(v))
    return f"({t.head} " + " ".join(parts) + ")"
