"""Elaboration sessions: one registry, one language, one set of environments."""

from __future__ import annotations

from typing import Iterable

from . import reader
from ._deep import deep
from .env import EnvTriple
from .frontend import ExpandContext, LanguageDef, expand, expand_program
from .nbe import ev
from .registry import JudgementRegistry
from .terms import Term
from .values import Value


class Session:
    """A fresh registry built from a language's lineage.

    Judgement overrides declared by the language (and its ancestors) stay
    installed until :meth:`close`. Sessions are single-threaded and must not
    be shared; top-level definitions persist across :meth:`run` calls.
    """

    def __init__(self, lang: LanguageDef):
        self.lang = lang
        self.registry = reg = JudgementRegistry()
        lineage = lang.lineage()
        for l in lineage:
            for name, factory in l.judgements:
                reg.define_judgement(name, factory(reg))
        for l in lineage:
            for judgement, tag, rule in l.rule_additions:
                reg.register_rule(judgement, tag, rule)
            for tag, ctor in l.constructor_overrides:
                reg.register_constructor(tag, ctor)
        self._installed: list = []
        for l in lineage:
            for slot_name, impl in l.judgement_overrides:
                slot = reg.slot(slot_name)
                slot.push(impl)
                self._installed.append((slot, impl))
        self.envs = EnvTriple.empty()
        self.expander = ExpandContext(lang, make=self.make)
        s = reg.slots
        self._synth = s["synth"]
        self._check = s["check"]
        self._constr = s["constr-synth"]
        self._consistent = s["type-consistent?"]
        self.closed = False

    # judgements -----------------------------------------------------------

    def synth(self, e: Term, envs: EnvTriple | None = None):
        return self._synth.fn(self, e, self.envs if envs is None else envs)

    def check(self, e: Term, expected: Value, envs: EnvTriple | None = None):
        return self._check.fn(self, e, expected, self.envs if envs is None else envs)

    def constr_synth(self, e: Term, head: str, args, envs: EnvTriple | None = None):
        return self._constr.fn(self, e, head, args, self.envs if envs is None else envs)

    def consistent(self, a: Value, b: Value, depth: int = 0) -> bool:
        return self._consistent.fn(self, a, b, depth)

    def invoke(self, name: str, *args):
        return self.registry.slots[name].fn(self, *args)

    def make(self, tag: str, *fields, src=None) -> Term:
        return self.registry.make_node(tag, *fields, src=src)

    # pipeline -------------------------------------------------------------

    def read(self, text: str):
        return reader.read(text)

    @deep
    def expand(self, stx) -> Term:
        return expand(stx, self.lang, self.expander)

    @deep
    def expand_program(self, forms: Iterable) -> list[Term]:
        return expand_program(forms, self.lang, self.expander)

    @deep
    def elaborate(self, forms: list[Term]):
        from .base import elaborate_program
        return elaborate_program(forms, self)

    @deep
    def run(self, text: str):
        """Read, expand and elaborate ``text``; returns the program items."""
        return self.elaborate(self.expand_program(self.read(text)))

    @deep
    def synth_top(self, e: Term):
        """Synthesize a closed expression in the session's top-level scope."""
        r, ty = self.synth(e)
        return (e if r is None else r), ty

    def evaluate(self, e: Term) -> Value:
        return deep(ev)(e, self.envs.v_env)

    # lifetime -------------------------------------------------------------

    def close(self) -> None:
        if self.closed:
            return
        for slot, impl in reversed(self._installed):
            slot.pop(impl)
        self._installed.clear()
        self.closed = True

    def __enter__(self) -> Session:
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def session(lang: LanguageDef | str) -> Session:
    """Open a session on a language definition or a registered language name."""
    if isinstance(lang, str):
        from .langs import language
        lang = language(lang)
    return Session(lang)
