"""Interposable judgements, rule dispatch tables and constructor routing.

A judgement is a named :class:`JudgementSlot`. Every call site goes through
the slot, so installing an override changes the behaviour of all callers,
including rules written before the override existed. Overrides form a
per-slot stack; the resolved implementation is cached in ``slot.fn`` and the
cache is refreshed whenever the stack changes.
"""

from __future__ import annotations

import contextlib
from typing import Any, Callable

from .errors import DuplicateJudgement, DuplicateRule, UnknownRule, UnknownTag
from .terms import TERM_CLASSES, Term


class JudgementSlot:
    __slots__ = ("name", "default", "arity", "_stack", "fn")

    def __init__(self, name: str, default: Callable, arity: int | None = None):
        self.name = name
        self.default = default
        self.arity = arity
        self._stack: list[Callable] = []
        self.fn = default

    @property
    def current(self) -> Callable:
        return self.fn

    def resolve(self) -> Callable:
        """Uncached resolution; always equal to ``self.fn``."""
        return self._stack[-1] if self._stack else self.default

    def invoke(self, *args):
        if self.arity is not None and len(args) != self.arity:
            raise TypeError(f"{self.name}: expected {self.arity} arguments, got {len(args)}")
        return self.fn(*args)

    __call__ = invoke

    def push(self, impl: Callable) -> None:
        self._stack.append(impl)
        self.fn = impl

    def pop(self, impl: Callable) -> None:
        if not self._stack or self._stack[-1] is not impl:
            raise RuntimeError(f"override for {self.name} popped out of order")
        self._stack.pop()
        self.fn = self.resolve()

    @property
    def depth(self) -> int:
        return len(self._stack)

    def __repr__(self) -> str:
        return f"<JudgementSlot {self.name} depth={len(self._stack)}>"


@contextlib.contextmanager
def overriding(slot: JudgementSlot, impl: Callable):
    slot.push(impl)
    try:
        yield slot
    finally:
        slot.pop(impl)


def with_override(slot: JudgementSlot, impl: Callable, body: Callable[[], Any]):
    """Run ``body`` with ``impl`` bound in ``slot``; restore on any exit."""
    with overriding(slot, impl):
        return body()


class DispatchTable:
    """judgement -> term tag -> rule."""

    def __init__(self):
        self.rules: dict[str, dict[str, Callable]] = {}

    def register(self, judgement: str, tag: str, rule: Callable) -> None:
        table = self.rules.setdefault(judgement, {})
        if tag in table:
            if table[tag] is rule:
                return
            raise DuplicateRule(f"{judgement} already has a rule for {tag!r}")
        table[tag] = rule

    def get(self, judgement: str, tag: str) -> Callable | None:
        return self.rules.get(judgement, {}).get(tag)

    def lookup(self, judgement: str, tag: str, span=None) -> Callable:
        rule = self.get(judgement, tag)
        if rule is None:
            raise UnknownRule(judgement, tag, span)
        return rule

    def table(self, judgement: str) -> dict[str, Callable]:
        return self.rules.setdefault(judgement, {})

    def tags(self, judgement: str) -> set[str]:
        return set(self.rules.get(judgement, {}))


class ConstructorRegistry:
    """Routes node construction through the currently registered constructor."""

    def __init__(self):
        self.ctors: dict[str, Callable[..., Term]] = {}

    def constructor(self, tag: str) -> Callable[..., Term]:
        ctor = self.ctors.get(tag)
        if ctor is None:
            cls = TERM_CLASSES.get(tag)
            if cls is None:
                raise UnknownTag(f"unknown term tag {tag!r}")
            return cls
        return ctor

    def register(self, tag: str, ctor: Callable[..., Term]) -> None:
        if tag not in TERM_CLASSES:
            raise UnknownTag(f"unknown term tag {tag!r}")
        self.ctors[tag] = ctor

    def make(self, tag: str, *fields, src=None) -> Term:
        return self.constructor(tag)(*fields, src=src)


class JudgementRegistry:
    """Session-local judgements, rule tables and constructors."""

    def __init__(self):
        self.slots: dict[str, JudgementSlot] = {}
        self.table = DispatchTable()
        self.constructors = ConstructorRegistry()

    def define_judgement(self, name: str, default: Callable,
                         arity: int | None = None) -> JudgementSlot:
        if name in self.slots:
            raise DuplicateJudgement(f"judgement {name!r} already defined")
        slot = self.slots[name] = JudgementSlot(name, default, arity)
        return slot

    def slot(self, name: str) -> JudgementSlot:
        try:
            return self.slots[name]
        except KeyError:
            raise UnknownRule(name, "<judgement>") from None

    def register_rule(self, judgement: str, tag: str, rule: Callable) -> None:
        self.table.register(judgement, tag, rule)

    def register_constructor(self, tag: str, ctor: Callable[..., Term]) -> None:
        self.constructors.register(tag, ctor)

    def make_node(self, tag: str, *fields, src=None) -> Term:
        return self.constructors.make(tag, *fields, src=src)

    def invoke(self, name: str, *args):
        return self.slots[name].fn(*args)


def tag_dispatch(table: DispatchTable, judgement: str, position: int = 1,
                 key: Callable[[Any], str] | None = None) -> Callable:
    """Default implementation of a judgement: look up a rule by the tag of
    argument ``position`` (or ``key(arg)``) and call it with all arguments."""
    rules = table.table(judgement)

    def dispatch(*args):
        subject = args[position]
        tag = subject.tag if key is None else key(subject)
        rule = rules.get(tag)
        if rule is None:
            raise UnknownRule(judgement, tag, getattr(subject, "src", None))
        return rule(*args)

    dispatch.__name__ = f"dispatch_{judgement.replace('-', '_').replace('?', '_p')}"
    return dispatch
