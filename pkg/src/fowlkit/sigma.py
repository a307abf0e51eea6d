"""fowl-sigma: dependent pairs, added on top of fowl-base.

Surface forms: ``(Sigma (x A) B)``, ``(cons a b)`` and
``(ind-Sigma motive on-pair target)`` where
``motive : Sigma A B -> Type`` and ``on-pair : (x : A) (y : B x) -> motive (cons x y)``.
"""

from __future__ import annotations

import functools

from . import terms as T
from .base import check_child, check_motive, elab_type, fowl_base, pi, synth_child, type_error, value_of
from .errors import StuckEliminator
from .frontend import LanguageDef, binder, compose, form_args, micro
from .nbe import Closure, apply, apply_all, ev, evaluator, vsort
from .values import Frame, VNeutral, Value, const


class SigmaType(T.Term):
    tag = "sigma"
    head = "Sigma"
    binder = "name"
    scoped = ("snd_type",)
    __slots__ = ("name", "fst_type", "snd_type")


class Pair(T.Term):
    tag = "pair"
    head = "cons"
    __slots__ = ("fst", "snd")


class IndSigma(T.Term):
    tag = "ind-sigma"
    head = "ind-Sigma"
    __slots__ = ("motive", "on_pair", "target")


class VSigma(Value):
    __slots__ = ("name", "fst", "snd")
    parts = ("fst",)
    closures = ("snd",)

    def __init__(self, name: str, fst: Value, snd):
        self.name = name
        self.fst = fst
        self.snd = snd

    def reify(self, depth):
        x = T.readback_name(self.name, depth)
        return SigmaType(x, self.fst.reify(depth),
                         self.snd.apply(VNeutral(x)).reify(depth + 1))


class VPair(Value):
    __slots__ = ("fst", "snd")
    parts = ("fst", "snd")

    def __init__(self, fst: Value, snd: Value):
        self.fst = fst
        self.snd = snd

    def reify(self, depth):
        return Pair(self.fst.reify(depth), self.snd.reify(depth))


class FIndSigma(Frame):
    __slots__ = ("motive", "on_pair")
    parts = ("motive", "on_pair")

    def __init__(self, motive, on_pair):
        self.motive = motive
        self.on_pair = on_pair

    def reify(self, target, depth):
        return IndSigma(self.motive.reify(depth), self.on_pair.reify(depth), target)


@evaluator(SigmaType)
def _ev_sigma(t, env):
    return VSigma(t.name, ev(t.fst_type, env), Closure(env, t.name, t.snd_type))


@evaluator(Pair)
def _ev_pair(t, env):
    return VPair(ev(t.fst, env), ev(t.snd, env))


def ind_sigma(motive, on_pair: Value, target: Value) -> Value:
    if type(target) is VPair:
        return apply_all(on_pair, target.fst, target.snd)
    if type(target) is VNeutral:
        return target.push(FIndSigma(motive(), on_pair))
    raise StuckEliminator(f"ind-Sigma on {target!r}")


@evaluator(IndSigma)
def _ev_ind_sigma(t, env):
    return ind_sigma(lambda: ev(t.motive, env), ev(t.on_pair, env), ev(t.target, env))


# --- rules -------------------------------------------------------------------

def synth_sigma(s, e, envs):
    i = elab_type(s, e, "fst_type", envs)
    inner, _ = envs.bind(e.name, value_of(e.fst_type, envs))
    j = elab_type(s, e, "snd_type", inner)
    return None, vsort(max(i, j))


def synth_pair(s, e, envs):
    return s.constr_synth(e, "pair", [e.fst, e.snd], envs)


def constr_pair(s, e, head, args, envs):
    a = synth_child(s, e, "fst", envs)
    b = synth_child(s, e, "snd", envs)
    return None, VSigma("_", a, const(b))


def check_pair(s, e, expected, envs):
    if type(expected) is not VSigma:
        type_error("a pair needs a Sigma type", e, expected)
    check_child(s, e, "fst", expected.fst, envs)
    check_child(s, e, "snd", expected.snd.apply(value_of(e.fst, envs)), envs)
    return None


def synth_ind_sigma(s, e, envs):
    ty = synth_child(s, e, "target", envs)
    if type(ty) is not VSigma:
        type_error("ind-Sigma expects a pair", e.target, got=ty)
    m = check_motive(s, e, "motive", [("p", lambda: ty)], envs)
    on_pair = pi("x", ty.fst, lambda x: pi(
        "y", ty.snd.apply(x), lambda y: apply(m, VPair(x, y))))
    check_child(s, e, "on_pair", on_pair, envs)
    return None, apply(m, value_of(e.target, envs))


SIGMA_RULES = (
    ("synth", "sigma", synth_sigma),
    ("synth", "pair", synth_pair),
    ("synth", "ind-sigma", synth_ind_sigma),
    ("check", "pair", check_pair),
    ("constr-synth", "pair", constr_pair),
)


@micro("Sigma")
def m_sigma(stx, ctx):
    b, snd = form_args(stx, 2)
    name, fst = binder(b, annotated=True)
    return ctx.make("sigma", name, ctx.expand(fst), ctx.bind(name).expand(snd), src=stx.span)


@micro("cons")
def m_cons(stx, ctx):
    a, b = form_args(stx, 2)
    return ctx.make("pair", ctx.expand(a), ctx.expand(b), src=stx.span)


@micro("ind-Sigma")
def m_ind_sigma(stx, ctx):
    args = [ctx.expand(x) for x in form_args(stx, 3)]
    return ctx.make("ind-sigma", *args, src=stx.span)


SIGMA_MICROS = (m_sigma, m_cons, m_ind_sigma)


@functools.cache
def fowl_sigma() -> LanguageDef:
    return compose("fowl-sigma", [fowl_base()], SIGMA_MICROS, rules=SIGMA_RULES)

