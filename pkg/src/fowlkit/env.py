"""Environments threaded through evaluation and elaboration."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnboundVariable
from .terms import base_name
from .values import Value, VNeutral


class _Link:
    __slots__ = ("name", "value", "next")

    def __init__(self, name, value, next_):
        self.name = name
        self.value = value
        self.next = next_


class Env:
    """Persistent local bindings over a shared table of top-level definitions.

    ``extend`` never mutates; ``define`` adds a top-level binding and is only
    used by the program driver.
    """

    __slots__ = ("globals", "locals")

    def __init__(self, globals_: dict | None = None, locals_: _Link | None = None):
        self.globals = {} if globals_ is None else globals_
        self.locals = locals_

    def extend(self, name: str, value) -> Env:
        return Env(self.globals, _Link(name, value, self.locals))

    def lookup(self, name: str, span=None):
        link = self.locals
        while link is not None:
            if link.name == name:
                return link.value
            link = link.next
        try:
            return self.globals[name]
        except KeyError:
            raise UnboundVariable(name, span) from None

    def __contains__(self, name: str) -> bool:
        link = self.locals
        while link is not None:
            if link.name == name:
                return True
            link = link.next
        return name in self.globals

    def define(self, name: str, value) -> None:
        self.globals[name] = value

    def local_names(self) -> list[str]:
        out = []
        link = self.locals
        while link is not None:
            out.append(link.name)
            link = link.next
        return out


class RenameEnv:
    """Freshness table. Names are never reissued within a session."""

    __slots__ = ("counts", "issued")

    def __init__(self):
        self.counts: dict[str, int] = {}
        self.issued: set[str] = set()


def _suffix(k: int) -> str:
    return "′" * k if k <= 3 else f"′{k}"


def fresh_name(r: RenameEnv, hint: str) -> tuple[str, RenameEnv]:
    """Return a name derived from ``hint`` that ``r`` has never issued."""
    stem = base_name(hint)
    k = r.counts.get(stem, 0)
    name = stem + _suffix(k) if k else stem
    while name in r.issued:
        k += 1
        name = stem + _suffix(k)
    r.counts[stem] = k + 1
    r.issued.add(name)
    return name, r


@dataclass(frozen=True)
class EnvTriple:
    """Typing (t_env), definition (v_env) and renaming (r_env) environments."""

    t_env: Env
    v_env: Env
    r_env: RenameEnv

    @classmethod
    def empty(cls) -> EnvTriple:
        return cls(Env(), Env(), RenameEnv())

    def bind(self, name: str, type_: Value) -> tuple[EnvTriple, VNeutral]:
        """Enter a binder: ``name : type_`` with a fresh neutral as its value.

        The neutral's own name is bound too, so read-back terms mentioning it
        can be elaborated in the same scope.
        """
        # Surface names never contain primes, so a primed neutral name can
        # neither capture nor be captured by a user binder.
        self.r_env.issued.add(name)
        fresh, r = fresh_name(self.r_env, name)
        x = VNeutral(fresh)
        t_env = self.t_env.extend(name, type_)
        v_env = self.v_env.extend(name, x)
        t_env = t_env.extend(fresh, type_)
        v_env = v_env.extend(fresh, x)
        return EnvTriple(t_env, v_env, r), x

    def define(self, name: str, type_: Value, value: Value) -> None:
        self.t_env.define(name, type_)
        self.v_env.define(name, value)
        self.r_env.issued.add(name)
