"""fowl-geq: a static gradual extension of fowl.

Adds the unknown type ``?`` and replaces conversion by consistency. Every
change to existing behaviour is made through judgement overrides installed
for the lifetime of a session, plus shadowing of the ``J``, ``Equal`` and
``refl`` micros. Casts are recorded as inert ``Cast`` nodes; there is no
run-time cast semantics.
"""

from __future__ import annotations

import functools

from . import terms as T
from .base import (
    check_child, elab_type, j_rule, refl_check_rule, show_value, synth_child,
    synth_equal, value_of,
)
from .errors import InconsistentTypes
from .frontend import LanguageDef, compose, form_args, micro
from .langs import fowl
from .nbe import compare, convertible, ev, evaluator, j_eliminate, vsort
from .values import VEqual, VPi, VRefl, Value, const


# --- terms and values ----------------------------------------------------------

class Unk(T.Term):
    tag = "unk"
    head = "?"
    __slots__ = ()


class Cast(T.Term):
    """``subject`` coerced from ``source`` to ``target`` (static record only)."""

    tag = "cast"
    __slots__ = ("subject", "source", "target")


class EqualG(T.Term):
    tag = "equal-geq"
    head = "Equal"
    __slots__ = ("type", "lhs", "rhs")


class ReflG(T.Term):
    tag = "refl-geq"
    head = "refl"
    __slots__ = ("subject",)


class JG(T.Term):
    tag = "j-geq"
    head = "J"
    __slots__ = ("motive", "proof", "on_refl")


class VUnk(Value):
    __slots__ = ()

    def reify(self, depth):
        return Unk()


VUNK = VUnk()


class VEqualG(VEqual):
    __slots__ = ()

    def reify(self, depth):
        return EqualG(self.type.reify(depth), self.lhs.reify(depth), self.rhs.reify(depth))


class VReflG(VRefl):
    __slots__ = ()

    def reify(self, depth):
        return ReflG(self.subject.reify(depth))


def is_unk(v: Value) -> bool:
    return v is VUNK


@evaluator(Unk)
def _ev_unk(t, env):
    return VUNK


@evaluator(Cast)
def _ev_cast(t, env):
    return ev(t.subject, env)


@evaluator(EqualG)
def _ev_equal_g(t, env):
    return VEqualG(ev(t.type, env), ev(t.lhs, env), ev(t.rhs, env))


@evaluator(ReflG)
def _ev_refl_g(t, env):
    return VReflG(ev(t.subject, env))


@evaluator(JG)
def _ev_j_g(t, env):
    return j_eliminate(lambda: ev(t.motive, env), ev(t.proof, env), ev(t.on_refl, env), JG)


# --- judgements ----------------------------------------------------------------

def type_consistent_geq(s, a: Value, b: Value, depth: int = 0) -> bool:
    """Gradual consistency: ``?`` relates to everything, structure elsewhere.

    Neutral values are compared by conversion only.
    """
    return compare(a, b, depth, is_unk)


def coerce_unk(s, e: T.Term, source: Value, target: Value, envs):
    """Cast ``e`` from ``source`` to ``target``; no cast when they are convertible."""
    if convertible(source, target):
        return None
    if not s.consistent(source, target):
        raise InconsistentTypes("types are not consistent", e.src,
                                show_value(target), show_value(source))
    return s.make("cast", e, source.reify(0), target.reify(0), src=e.src)


#: Canonical type a checkable form is elaborated against when ``?`` is expected.
GERMS = {
    "lam": lambda: VPi("_", VUNK, const(VUNK)),
}


def add_germ(tag: str, germ) -> None:
    GERMS[tag] = germ


def geq_check(s, e, expected, envs):
    """Check with consistency, inserting a cast where types differ."""
    rules = s.registry.table.table("check")
    if expected is VUNK and e.tag in GERMS:
        germ = GERMS[e.tag]()
        r = rules[e.tag](s, e, germ, envs)
        return coerce_unk(s, e if r is None else r, germ, expected, envs)
    rule = rules.get(e.tag)
    if rule is not None and expected is not VUNK:
        return rule(s, e, expected, envs)
    r, got = s.synth(e, envs)
    r2 = s.invoke("coerce-unk", e if r is None else r, got, expected, envs)
    return r if r2 is None else r2


#: Fields of constructor nodes that hold types.
TYPE_POSITIONS: dict[str, tuple[str, ...]] = {"nil": ("elem",), "vcons": ("elem",)}


def geq_constr_synth(s, e, head, args, envs):
    """Let ``?``-typed arguments stand in type positions, then defer to the base rule."""
    for field in TYPE_POSITIONS.get(head, ()):
        ty = synth_child(s, e, field, envs)
        if ty is VUNK:
            child = getattr(e, field)
            setattr(e, field, s.make("cast", child, s.make("unk", src=child.src),
                                     s.make("sort", 0, src=child.src), src=child.src))
    return s.registry.slot("constr-synth").default(s, e, head, args, envs)


# --- rules ---------------------------------------------------------------------

def synth_unk(s, e, envs):
    return None, vsort(0)


def synth_cast(s, e, envs):
    elab_type(s, e, "source", envs)
    elab_type(s, e, "target", envs)
    check_child(s, e, "subject", value_of(e.source, envs), envs)
    return None, value_of(e.target, envs)


def synth_refl_g(s, e, envs):
    return s.constr_synth(e, "refl-geq", [e.subject], envs)


def constr_refl_g(s, e, head, args, envs):
    ty = synth_child(s, e, "subject", envs)
    v = value_of(e.subject, envs)
    return None, VEqualG(ty, v, v)


GEQ_RULES = (
    ("synth", "unk", synth_unk),
    ("synth", "cast", synth_cast),
    ("synth", "equal-geq", synth_equal),
    ("synth", "refl-geq", synth_refl_g),
    ("synth", "j-geq", j_rule(VEqualG, VReflG)),
    ("check", "refl-geq", refl_check_rule(VEqualG)),
    ("constr-synth", "refl-geq", constr_refl_g),
)


@micro("?", atom=True, form=False)
def m_unk(stx, ctx):
    return ctx.make("unk", src=stx.span)


@micro("Equal")
def m_equal_g(stx, ctx):
    a, x, y = (ctx.expand(a) for a in form_args(stx, 3))
    return ctx.make("equal-geq", a, x, y, src=stx.span)


@micro("refl")
def m_refl_g(stx, ctx):
    (x,) = form_args(stx, 1)
    return ctx.make("refl-geq", ctx.expand(x), src=stx.span)


@micro("J")
def m_j_g(stx, ctx):
    motive, proof, on_refl = (ctx.expand(a) for a in form_args(stx, 3))
    return ctx.make("j-geq", motive, proof, on_refl, src=stx.span)


GEQ_MICROS = (m_unk, m_equal_g, m_refl_g, m_j_g)


@functools.cache
def fowl_geq() -> LanguageDef:
    return compose(
        "fowl-geq", [fowl()], GEQ_MICROS,
        shadows={"J", "Equal", "refl"},
        overrides=[
            ("check", geq_check),
            ("constr-synth", geq_constr_synth),
            ("type-consistent?", type_consistent_geq),
        ],
        rules=GEQ_RULES,
        judgements=[("coerce-unk", lambda reg: coerce_unk)],
    )
