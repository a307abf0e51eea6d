"""fowl-vec: length-indexed vectors, added on top of fowl-base.

Surface forms::

    (Vec n A)                      : Type i  when A : Type i
    (nil A)                        : Vec 0 A
    (:: A n h t)                   : Vec (suc n) A  when h : A, t : Vec n A
    (ind-Vec A motive base step len target)

with ``motive : (n : Nat) -> Vec n A -> Type``,
``base : motive 0 (nil A)`` and
``step : (n : Nat) (h : A) (t : Vec n A) -> motive n t -> motive (suc n) (:: A n h t)``.
"""

from __future__ import annotations

import functools

from . import terms as T
from .base import (
    check_child, check_motive, elab_type, fowl_base, pi, value_of,
)
from .frontend import LanguageDef, compose, form_args, micro
from .nbe import apply_all, ev, evaluator, vsort
from .errors import StuckEliminator
from .values import Frame, VNAT, VNeutral, VSuc, VZERO, Value, reify_opt


# --- terms -------------------------------------------------------------------

class VecType(T.Term):
    tag = "vec"
    head = "Vec"
    __slots__ = ("len", "elem")


class VNil(T.Term):
    tag = "nil"
    __slots__ = ("elem",)


class VCons(T.Term):
    tag = "vcons"
    head = "::"
    __slots__ = ("elem", "len", "first", "rest")


class IndVec(T.Term):
    tag = "ind-vec"
    head = "ind-Vec"
    __slots__ = ("elem", "motive", "base", "step", "len", "target")


# --- values ------------------------------------------------------------------

class VVec(Value):
    __slots__ = ("len", "elem")
    parts = ("len", "elem")

    def __init__(self, len_: Value, elem: Value):
        self.len = len_
        self.elem = elem

    def reify(self, depth):
        return VecType(self.len.reify(depth), self.elem.reify(depth))


class VVNil(Value):
    __slots__ = ("elem",)
    parts = ("elem",)

    def __init__(self, elem: Value):
        self.elem = elem

    def reify(self, depth):
        return VNil(self.elem.reify(depth))


class VVCons(Value):
    __slots__ = ("elem", "len", "first", "rest")
    parts = ("elem", "len", "first", "rest")

    def __init__(self, elem: Value, len_: Value, first: Value, rest: Value):
        self.elem = elem
        self.len = len_
        self.first = first
        self.rest = rest

    def reify(self, depth):
        cells = []
        v: Value = self
        while type(v) is VVCons:
            cells.append(v)
            v = v.rest
        t = v.reify(depth)
        for c in reversed(cells):
            t = VCons(c.elem.reify(depth), c.len.reify(depth), c.first.reify(depth), t)
        return t


class FIndVec(Frame):
    __slots__ = ("elem", "motive", "base", "step", "len")
    parts = ("elem", "motive", "base", "step", "len")

    def __init__(self, elem, motive, base, step, len_):
        self.elem = elem
        self.motive = motive
        self.base = base
        self.step = step
        self.len = len_

    def reify(self, target, depth):
        return IndVec(self.elem.reify(depth), reify_opt(self.motive, depth),
                      self.base.reify(depth), self.step.reify(depth),
                      self.len.reify(depth), target)


def vec_cells(v: Value) -> tuple[list[VVCons], Value]:
    """The cons cells of a vector value, outermost first, and its tail."""
    cells = []
    while type(v) is VVCons:
        cells.append(v)
        v = v.rest
    return cells, v


# --- evaluation --------------------------------------------------------------

@evaluator(VecType)
def _ev_vec(t, env):
    return VVec(ev(t.len, env), ev(t.elem, env))


@evaluator(VNil)
def _ev_nil(t, env):
    return VVNil(ev(t.elem, env))


@evaluator(VCons)
def _ev_cons(t, env):
    cells = []
    while type(t) is VCons:
        cells.append(t)
        t = t.rest
    v = ev(t, env)
    for c in reversed(cells):
        v = VVCons(ev(c.elem, env), ev(c.len, env), ev(c.first, env), v)
    return v


def ind_vec(elem: Value, motive, base: Value, step: Value, len_: Value,
            target: Value) -> Value:
    """Vector recursion, iterative in the vector's length."""
    cells, tail = vec_cells(target)
    if type(tail) is VVNil:
        acc = base
    elif type(tail) is VNeutral:
        tail_len = cells[-1].len if cells else len_
        acc = tail.push(FIndVec(elem, motive(), base, step, tail_len))
    else:
        raise StuckEliminator(f"ind-Vec on {tail!r}")
    for c in reversed(cells):
        acc = apply_all(step, c.len, c.first, c.rest, acc)
    return acc


@evaluator(IndVec)
def _ev_ind_vec(t, env):
    return ind_vec(ev(t.elem, env), lambda: None if t.motive is None else ev(t.motive, env),
                   ev(t.base, env), ev(t.step, env), ev(t.len, env), ev(t.target, env))


# --- rules -------------------------------------------------------------------

def synth_vec(s, e, envs):
    check_child(s, e, "len", VNAT, envs)
    level = elab_type(s, e, "elem", envs)
    return None, vsort(level)


def synth_nil(s, e, envs):
    return s.constr_synth(e, "nil", [e.elem], envs)


def synth_cons(s, e, envs):
    return s.constr_synth(e, "vcons", [e.elem, e.len, e.first, e.rest], envs)


def constr_nil(s, e, head, args, envs):
    elab_type(s, e, "elem", envs)
    return None, VVec(VZERO, value_of(e.elem, envs))


def constr_cons(s, e, head, args, envs):
    elab_type(s, e, "elem", envs)
    a = value_of(e.elem, envs)
    check_child(s, e, "len", VNAT, envs)
    n = value_of(e.len, envs)
    check_child(s, e, "first", a, envs)
    check_child(s, e, "rest", VVec(n, a), envs)
    return None, VVec(VSuc(n), a)


def synth_ind_vec(s, e, envs):
    elab_type(s, e, "elem", envs)
    a = value_of(e.elem, envs)
    m = check_motive(s, e, "motive", [
        ("n", lambda: VNAT),
        ("v", lambda n: VVec(n, a)),
    ], envs)
    check_child(s, e, "base", apply_all(m, VZERO, VVNil(a)), envs)
    step = pi("n", VNAT, lambda n: pi("h", a, lambda h: pi(
        "t", VVec(n, a), lambda t: pi(
            "ih", apply_all(m, n, t), lambda _: apply_all(m, VSuc(n), VVCons(a, n, h, t))))))
    check_child(s, e, "step", step, envs)
    check_child(s, e, "len", VNAT, envs)
    n = value_of(e.len, envs)
    check_child(s, e, "target", VVec(n, a), envs)
    return None, apply_all(m, n, value_of(e.target, envs))


VEC_RULES = (
    ("synth", "vec", synth_vec),
    ("synth", "nil", synth_nil),
    ("synth", "vcons", synth_cons),
    ("synth", "ind-vec", synth_ind_vec),
    ("constr-synth", "nil", constr_nil),
    ("constr-synth", "vcons", constr_cons),
)


# --- micros ------------------------------------------------------------------

@micro("Vec")
def m_vec(stx, ctx):
    n, a = form_args(stx, 2)
    return ctx.make("vec", ctx.expand(n), ctx.expand(a), src=stx.span)


@micro("nil")
def m_nil(stx, ctx):
    (a,) = form_args(stx, 1)
    return ctx.make("nil", ctx.expand(a), src=stx.span)


@micro("::")
def m_cons(stx, ctx):
    a, n, h, t = form_args(stx, 4)
    return ctx.make("vcons", ctx.expand(a), ctx.expand(n), ctx.expand(h), ctx.expand(t),
                    src=stx.span)


@micro("ind-Vec")
def m_ind_vec(stx, ctx):
    args = [ctx.expand(x) for x in form_args(stx, 6)]
    return ctx.make("ind-vec", *args, src=stx.span)


VEC_MICROS = (m_vec, m_nil, m_cons, m_ind_vec)


@functools.cache
def fowl_vec() -> LanguageDef:
    return compose("fowl-vec", [fowl_base()], VEC_MICROS, rules=VEC_RULES)
