"""Micros and language composition.

A micro maps surface syntax straight to IR. Its children are expanded
through :func:`expand` (via ``ctx.expand``), so a child written in an
extension's syntax is visible to a base language's micro. Languages are
composed by importing parents and shadowing selected heads; composition
never mutates a parent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Iterable, Mapping

from .env import Env
from .errors import AmbiguousForm, ArityError, ExpandError, IllegalShadow, UnknownForm
from .reader import Atom, SList, Syntax
from .terms import TERM_CLASSES, Define, Term


@dataclass(frozen=True, eq=False)
class Micro:
    head: str
    expander: Callable[[Syntax, "ExpandContext"], Term]
    atom: bool = False  # may appear as a bare identifier
    form: bool = True   # may appear at the head of a list

    def __call__(self, stx: Syntax, ctx: "ExpandContext") -> Term:
        return self.expander(stx, ctx)


def micro(head: str, *, atom: bool = False, form: bool = True):
    def wrap(fn):
        return Micro(head, fn, atom=atom, form=form)
    return wrap


def _default_make(tag: str, *fields, src=None) -> Term:
    return TERM_CLASSES[tag](*fields, src=src)


@dataclass(frozen=True, eq=False)
class LanguageDef:
    """A micro table, rules, judgements and overrides layered on parents.

    ``table`` is the effective micro table: parents merged left to right,
    then this language's own micros. A head already provided by a parent may
    only be redefined if it is listed in ``shadows``.
    """

    name: str
    parents: tuple["LanguageDef", ...] = ()
    micros: Mapping[str, Micro] = field(default_factory=dict)
    shadows: frozenset[str] = frozenset()
    # (name, factory): factory(registry) returns the default implementation.
    judgements: tuple = ()
    # (slot name, impl), installed for the lifetime of a session.
    judgement_overrides: tuple = ()
    # (judgement, tag, rule)
    rule_additions: tuple = ()
    # (tag, constructor)
    constructor_overrides: tuple = ()
    table: Mapping[str, Micro] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "micros", MappingProxyType(dict(self.micros)))
        object.__setattr__(self, "shadows", frozenset(self.shadows))
        object.__setattr__(self, "parents", tuple(self.parents))
        object.__setattr__(self, "table", MappingProxyType(self._effective_table()))

    def _effective_table(self) -> dict[str, Micro]:
        merged: dict[str, Micro] = {}
        owner: dict[str, str] = {}
        ambiguous: dict[str, tuple[str, str]] = {}
        for parent in self.parents:
            for head, m in parent.table.items():
                if head in merged and merged[head] is not m:
                    ambiguous[head] = (owner[head], parent.name)
                    continue
                merged[head] = m
                owner.setdefault(head, parent.name)
        for head in self.shadows:
            if head not in merged and head not in ambiguous:
                raise IllegalShadow(head)
            if head not in self.micros:
                raise IllegalShadow(head, f"{self.name} provides no replacement")
        for head, (a, b) in ambiguous.items():
            if head not in self.shadows:
                raise AmbiguousForm(head, a, b)
        for head, m in self.micros.items():
            if head in merged and head not in self.shadows and merged[head] is not m:
                raise AmbiguousForm(head, owner[head], self.name)
            merged[head] = m
        return merged

    def lineage(self) -> list["LanguageDef"]:
        """Ancestors first, each language once (diamonds are merged)."""
        out: list[LanguageDef] = []
        seen: set[int] = set()

        def visit(lang):
            if id(lang) in seen:
                return
            seen.add(id(lang))
            for p in lang.parents:
                visit(p)
            out.append(lang)

        visit(self)
        return out

    def provenance(self, head: str) -> str | None:
        """Name of the language whose micro ``head`` resolves to."""
        m = self.table.get(head)
        if m is None:
            return None
        for lang in reversed(self.lineage()):
            if lang.micros.get(head) is m:
                return lang.name
        return None

    def __repr__(self) -> str:
        return f"<LanguageDef {self.name}>"


def compose(name: str, parents: Iterable[LanguageDef] = (),
            additions: Iterable[Micro] | Mapping[str, Micro] = (),
            shadows: Iterable[str] = (), overrides: Iterable = (), *,
            rules: Iterable = (), judgements: Iterable = (),
            constructors: Iterable = ()) -> LanguageDef:
    if isinstance(additions, Mapping):
        micros = dict(additions)
    else:
        micros = {m.head: m for m in additions}
    return LanguageDef(
        name=name,
        parents=tuple(parents),
        micros=micros,
        shadows=frozenset(shadows),
        judgements=tuple(judgements),
        judgement_overrides=tuple(overrides),
        rule_additions=tuple(rules),
        constructor_overrides=tuple(constructors),
    )


# --- expansion ---------------------------------------------------------------

class ExpandContext:
    """Language handle, node constructor, and the variables in scope.

    Bound variables shadow micros of the same name, both as identifiers and
    at the head of an application.
    """

    __slots__ = ("lang", "make", "scope", "depth", "top")

    def __init__(self, lang: LanguageDef, make=None, scope: Env | None = None,
                 depth: int = 0):
        self.lang = lang
        self.make = _default_make if make is None else make
        self.scope = Env() if scope is None else scope
        self.depth = depth
        self.top = None  # the program form being expanded, if any

    def bind(self, name: str) -> ExpandContext:
        return ExpandContext(self.lang, self.make, self.scope.extend(name, True), self.depth + 1)

    def at_top(self, stx: Syntax) -> bool:
        """True if ``stx`` is a whole program form (not a subterm)."""
        return stx is self.top

    def declare(self, name: str) -> None:
        """Record a top-level definition for the rest of the program."""
        self.scope.define(name, True)

    def expand(self, stx: Syntax) -> Term:
        return expand(stx, self.lang, self)


def expand(stx: Syntax, lang: LanguageDef, ctx: ExpandContext | None = None) -> Term:
    if ctx is None:
        ctx = ExpandContext(lang)
    table = lang.table
    make = ctx.make
    if isinstance(stx, Atom):
        if stx.kind == "nat":
            t = make("zero", src=stx.span)
            for _ in range(int(stx.text)):
                t = make("suc", t, src=stx.span)
            return t
        name = stx.text
        if name not in ctx.scope:
            m = table.get(name)
            if m is not None and m.atom:
                return m.expander(stx, ctx)
        return make("var", name, src=stx.span)
    items = stx.items
    if not items:
        raise UnknownForm("()", stx.span)
    head = stx.head
    if head is not None and head not in ctx.scope:
        m = table.get(head)
        if m is not None:
            if not m.form:
                raise ArityError(head, 0, len(items) - 1, stx.span)
            return m.expander(stx, ctx)
        raise UnknownForm(head, stx.span)
    fn = ctx.expand(items[0])
    for arg in items[1:]:
        fn = make("app", fn, ctx.expand(arg), src=stx.span)
    return fn


def expand_program(forms: Iterable[Syntax], lang: LanguageDef,
                   ctx: ExpandContext | None = None) -> list[Term]:
    if ctx is None:
        ctx = ExpandContext(lang)
    out = []
    for stx in forms:
        ctx.top = stx
        try:
            t = expand(stx, lang, ctx)
        finally:
            ctx.top = None
        if isinstance(t, Define):
            ctx.declare(t.name)
        out.append(t)
    return out


# --- helpers for writing micros ----------------------------------------------

def form_args(stx: Syntax, count: int | tuple[int, ...]) -> tuple[Syntax, ...]:
    """Arguments of a list form, checked against the allowed arity."""
    if not isinstance(stx, SList):
        raise ExpandError(f"{stx.text} must be used as (" + stx.text + " ...)", stx.span)
    args = stx.items[1:]
    allowed = (count,) if isinstance(count, int) else count
    if len(args) not in allowed:
        expected = count if isinstance(count, int) else " or ".join(map(str, allowed))
        raise ArityError(stx.head or "form", expected, len(args), stx.span)
    return args


def symbol(stx: Syntax, what: str = "identifier") -> str:
    if not (isinstance(stx, Atom) and stx.is_symbol):
        raise ExpandError(f"expected {what}", stx.span)
    return stx.text


def binder(stx: Syntax, annotated: bool | None = None) -> tuple[str, Syntax | None]:
    """Parse ``(x T)`` or ``(x)``. ``annotated`` forces one shape."""
    if not isinstance(stx, SList) or len(stx.items) not in (1, 2):
        raise ExpandError("expected a binder (x T) or (x)", stx.span)
    name = symbol(stx.items[0], "binder name")
    ann = stx.items[1] if len(stx.items) == 2 else None
    if annotated is True and ann is None:
        raise ExpandError(f"binder {name} needs a type", stx.span)
    if annotated is False and ann is not None:
        raise ExpandError(f"binder {name} takes no type", stx.span)
    return name, ann


def contains_syntax(t: Term) -> bool:
    """True if any field of any node still holds surface syntax."""
    from .terms import walk
    for node in walk(t):
        for f in node.fields:
            if isinstance(getattr(node, f), (Atom, SList)):
                return True
    return False
