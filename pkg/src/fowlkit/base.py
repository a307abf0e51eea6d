"""fowl-base: bidirectional elaboration of a small Martin-Löf type theory.

Naturals, booleans, homogeneous equality, Pi types and a predicative,
non-cumulative universe hierarchy (``Type l : Type (l+1)``).

Judgements and their calling conventions (``s`` is the session):

* ``synth(s, e, envs) -> (replacement, type)``
* ``check(s, e, expected, envs) -> replacement``
* ``constr-synth(s, e, head, args, envs) -> (replacement, type)``
* ``type-consistent?(s, a, b, depth) -> bool``

A replacement is a new node the caller installs in the child slot it just
elaborated, or None when the node was kept (possibly repaired in place).
"""

from __future__ import annotations

import functools
from typing import Callable, NamedTuple, Sequence

from . import terms as T
from .env import EnvTriple
from .errors import ArityError, CannotSynthesize, ElaborationError, ExpandError, FowlTypeError
from .frontend import LanguageDef, binder, compose, form_args, micro, symbol
from .nbe import Closure, apply, apply_all, convertible, ev, vsort
from .reader import Atom
from .registry import JudgementRegistry, tag_dispatch
from .values import (
    HostClosure, VBOOL, VEqual, VFALSE, VNAT, VPi, VRefl, VSort,
    VSuc, VTRUE, VZERO, Value, const,
)


# --- helpers shared with extensions -----------------------------------------

def show_value(v: Value) -> str:
    return T.show(v.reify(0))


def type_error(message: str, node: T.Term, expected: Value | None = None,
               got: Value | None = None, cls=FowlTypeError):
    raise cls(message, node.src,
              None if expected is None else show_value(expected),
              None if got is None else show_value(got))


def value_of(t: T.Term, envs: EnvTriple) -> Value:
    return ev(t, envs.v_env)


def synth_child(s, node: T.Term, field: str, envs: EnvTriple) -> Value:
    """Synthesize ``node.field``, installing any replacement in place."""
    r, ty = s.synth(getattr(node, field), envs)
    if r is not None:
        setattr(node, field, r)
    return ty


def check_child(s, node: T.Term, field: str, expected: Value, envs: EnvTriple) -> None:
    r = s.check(getattr(node, field), expected, envs)
    if r is not None:
        setattr(node, field, r)


def elab_type(s, node: T.Term, field: str, envs: EnvTriple) -> int:
    """Elaborate ``node.field`` as a type and return its universe level."""
    ty = synth_child(s, node, field, envs)
    if type(ty) is not VSort:
        type_error("expected a type", getattr(node, field), got=ty)
    return ty.level


def check_by_synth(s, e: T.Term, expected: Value, envs: EnvTriple):
    """Mode switch: synthesize, then compare through ``type-consistent?``."""
    r, got = s.synth(e, envs)
    if not s.consistent(got, expected):
        type_error("type mismatch", e, expected, got)
    return r


Domain = Callable[..., Value]


def check_motive(s, node: T.Term, field: str,
                 domains: Sequence[tuple[str, Domain]], envs: EnvTriple) -> Value:
    """Check ``node.field`` is a type family over ``domains`` and return its value.

    Each domain is ``(hint, fn)`` where ``fn`` receives the values bound by the
    previous domains. Motives written as lambdas may omit binder types.
    """
    motive = getattr(node, field)
    if motive is None:
        raise CannotSynthesize("eliminator needs a motive", node.src)
    parent, slot, cur = node, field, motive
    bound: list[Value] = []
    inner = envs
    k = 0
    while k < len(domains) and isinstance(cur, T.Lam):
        hint, dom = domains[k]
        d = dom(*bound)
        if cur.ann is not None:
            elab_type(s, cur, "ann", inner)
            a = value_of(cur.ann, inner)
            if not s.consistent(a, d):
                type_error("motive binder has the wrong type", cur.ann, d, a)
        inner, x = inner.bind(cur.name, d)
        bound.append(x)
        parent, slot, cur = cur, "body", cur.body
        k += 1
    if k == len(domains):
        elab_type(s, parent, slot, inner)
    else:
        ty = synth_child(s, parent, slot, inner)
        for hint, dom in domains[k:]:
            d = dom(*bound)
            if type(ty) is not VPi or not s.consistent(d, ty.dom):
                type_error(f"motive must be a type family over {hint}", cur, got=ty)
            inner, x = inner.bind(hint, d)
            bound.append(x)
            ty = ty.cod.apply(x)
        if type(ty) is not VSort:
            type_error("motive must return a type", cur, got=ty)
    return value_of(getattr(node, field), envs)


def pi(name: str, dom: Value, body: Callable[[Value], Value]) -> VPi:
    return VPi(name, dom, HostClosure(name, body))


# --- judgement defaults -------------------------------------------------------

def _check_default(reg: JudgementRegistry):
    rules = reg.table.table("check")

    def check(s, e, expected, envs):
        rule = rules.get(e.tag)
        if rule is not None:
            return rule(s, e, expected, envs)
        return check_by_synth(s, e, expected, envs)

    return check


def type_consistent(s, a: Value, b: Value, depth: int = 0) -> bool:
    """Default ``type-consistent?``: definitional equality."""
    return convertible(a, b, depth)


BASE_JUDGEMENTS = (
    ("synth", lambda reg: tag_dispatch(reg.table, "synth", position=1)),
    ("check", _check_default),
    ("constr-synth", lambda reg: tag_dispatch(reg.table, "constr-synth", position=2,
                                              key=lambda head: head)),
    ("type-consistent?", lambda reg: type_consistent),
)


# --- synthesis rules ----------------------------------------------------------

def synth_var(s, e, envs):
    return None, envs.t_env.lookup(e.name, e.src)


def synth_sort(s, e, envs):
    return None, vsort(e.level + 1)


def synth_pi(s, e, envs):
    i = elab_type(s, e, "dom", envs)
    inner, _ = envs.bind(e.name, value_of(e.dom, envs))
    j = elab_type(s, e, "cod", inner)
    return None, vsort(max(i, j))


def synth_lam(s, e, envs):
    if e.ann is None:
        raise CannotSynthesize(f"cannot infer the type of (lambda ({e.name}) ...); "
                               "annotate the binder or use ann", e.src)
    elab_type(s, e, "ann", envs)
    dom = value_of(e.ann, envs)
    inner, x = envs.bind(e.name, dom)
    cod = synth_child(s, e, "body", inner)
    return None, VPi(e.name, dom, Closure(envs.v_env, x.head, cod.reify(0)))


def synth_app(s, e, envs):
    fty = synth_child(s, e, "fn", envs)
    if type(fty) is not VPi:
        type_error("applied a non-function", e.fn, got=fty)
    check_child(s, e, "arg", fty.dom, envs)
    return None, fty.cod.apply(value_of(e.arg, envs))


def synth_ann(s, e, envs):
    elab_type(s, e, "type", envs)
    ty = value_of(e.type, envs)
    check_child(s, e, "subject", ty, envs)
    return None, ty


def synth_small_type(s, e, envs):
    return None, vsort(0)


def synth_zero(s, e, envs):
    return None, VNAT


def synth_bool_lit(s, e, envs):
    return None, VBOOL


def synth_suc(s, e, envs):
    return s.constr_synth(e, "suc", [e.pred], envs)


def synth_refl(s, e, envs):
    return s.constr_synth(e, "refl", [e.subject], envs)


def synth_ind_nat(s, e, envs):
    m = check_motive(s, e, "motive", [("n", lambda: VNAT)], envs)
    check_child(s, e, "base", apply(m, VZERO), envs)
    step = pi("n", VNAT, lambda n: VPi("ih", apply(m, n), const(apply(m, VSuc(n)))))
    check_child(s, e, "step", step, envs)
    check_child(s, e, "target", VNAT, envs)
    return None, apply(m, value_of(e.target, envs))


def constant_motive(s, e: T.Term, domain: str, ty: Value) -> T.Term:
    return s.make("lam", "_", s.make(domain, src=e.src), ty.reify(0), src=e.src)


def synth_ind_bool(s, e, envs):
    if e.motive is None:
        t1 = synth_child(s, e, "on_true", envs)
        t2 = synth_child(s, e, "on_false", envs)
        if not s.consistent(t1, t2):
            type_error("branches of if have different types", e.on_false, t1, t2)
        check_child(s, e, "target", VBOOL, envs)
        e.motive = constant_motive(s, e, "bool", t1)
        return None, t1
    m = check_motive(s, e, "motive", [("b", lambda: VBOOL)], envs)
    check_child(s, e, "on_true", apply(m, VTRUE), envs)
    check_child(s, e, "on_false", apply(m, VFALSE), envs)
    check_child(s, e, "target", VBOOL, envs)
    return None, apply(m, value_of(e.target, envs))


def synth_equal(s, e, envs):
    level = elab_type(s, e, "type", envs)
    a = value_of(e.type, envs)
    check_child(s, e, "lhs", a, envs)
    check_child(s, e, "rhs", a, envs)
    return None, vsort(level)


def j_rule(equal_cls: type[VEqual], refl_cls: type[VRefl]):
    """Homogeneous based path induction over ``equal_cls``.

    motive : (x y : A) -> Equal A x y -> Type,  on-refl : (x : A) -> motive x x (refl x)
    """

    def synth_j(s, e, envs):
        p = synth_child(s, e, "proof", envs)
        if type(p) is not equal_cls:
            type_error("J expects an equality proof", e.proof, got=p)
        a = p.type
        m = check_motive(s, e, "motive", [
            ("x", lambda: a),
            ("y", lambda x: a),
            ("p", lambda x, y: equal_cls(a, x, y)),
        ], envs)
        on_refl = pi("x", a, lambda x: apply_all(m, x, x, refl_cls(x)))
        check_child(s, e, "on_refl", on_refl, envs)
        return None, apply_all(m, p.lhs, p.rhs, value_of(e.proof, envs))

    return synth_j


# --- checking rules -----------------------------------------------------------

def check_lam(s, e, expected, envs):
    if type(expected) is not VPi:
        type_error("a lambda needs a function type", e, expected)
    if e.ann is not None:
        elab_type(s, e, "ann", envs)
        a = value_of(e.ann, envs)
        if not s.consistent(a, expected.dom):
            type_error("lambda binder annotation disagrees with the expected domain",
                       e.ann, expected.dom, a)
    inner, x = envs.bind(e.name, expected.dom)
    check_child(s, e, "body", expected.cod.apply(x), inner)
    return None


def refl_check_rule(equal_cls: type[VEqual]):
    def check_refl(s, e, expected, envs):
        if type(expected) is not equal_cls:
            type_error("refl proves an equality", e, expected)
        check_child(s, e, "subject", expected.type, envs)
        v = value_of(e.subject, envs)
        if not (s.consistent(v, expected.lhs) and s.consistent(v, expected.rhs)):
            type_error("refl: the two sides are not equal", e, expected,
                       equal_cls(expected.type, v, v))
        return None

    return check_refl


def check_ind_bool(s, e, expected, envs):
    if e.motive is None:
        e.motive = constant_motive(s, e, "bool", expected)
    return check_by_synth(s, e, expected, envs)


# --- constructor typing --------------------------------------------------------

def constr_suc(s, e, head, args, envs):
    check_child(s, e, "pred", VNAT, envs)
    return None, VNAT


def constr_refl(s, e, head, args, envs):
    ty = synth_child(s, e, "subject", envs)
    v = value_of(e.subject, envs)
    return None, VEqual(ty, v, v)


BASE_RULES = (
    ("synth", "var", synth_var),
    ("synth", "sort", synth_sort),
    ("synth", "pi", synth_pi),
    ("synth", "lam", synth_lam),
    ("synth", "app", synth_app),
    ("synth", "ann", synth_ann),
    ("synth", "nat", synth_small_type),
    ("synth", "zero", synth_zero),
    ("synth", "suc", synth_suc),
    ("synth", "ind-nat", synth_ind_nat),
    ("synth", "bool", synth_small_type),
    ("synth", "true", synth_bool_lit),
    ("synth", "false", synth_bool_lit),
    ("synth", "ind-bool", synth_ind_bool),
    ("synth", "equal", synth_equal),
    ("synth", "refl", synth_refl),
    ("synth", "j", j_rule(VEqual, VRefl)),
    ("check", "lam", check_lam),
    ("check", "refl", refl_check_rule(VEqual)),
    ("check", "ind-bool", check_ind_bool),
    ("constr-synth", "suc", constr_suc),
    ("constr-synth", "refl", constr_refl),
)


# --- micros -------------------------------------------------------------------

@micro("define")
def m_define(stx, ctx):
    name_stx, body = form_args(stx, 2)
    if not ctx.at_top(stx):
        raise ExpandError("define is only allowed at top level", stx.span)
    return ctx.make("define", symbol(name_stx, "definition name"), ctx.expand(body), src=stx.span)


@micro("ann")
def m_ann(stx, ctx):
    e, ty = form_args(stx, 2)
    return ctx.make("ann", ctx.expand(e), ctx.expand(ty), src=stx.span)


def _lambda(stx, ctx):
    b, body = form_args(stx, 2)
    name, ann = binder(b)
    ann_t = None if ann is None else ctx.expand(ann)
    return ctx.make("lam", name, ann_t, ctx.bind(name).expand(body), src=stx.span)


m_lambda = micro("lambda")(_lambda)
m_lambda_sym = micro("λ")(_lambda)


@micro("Pi")
def m_pi(stx, ctx):
    b, cod = form_args(stx, 2)
    name, dom = binder(b, annotated=True)
    return ctx.make("pi", name, ctx.expand(dom), ctx.bind(name).expand(cod), src=stx.span)


@micro("->")
def m_arrow(stx, ctx):
    args = stx.items[1:]
    if len(args) < 2:
        raise ArityError("->", "2 or more", len(args), stx.span)
    t = ctx.expand(args[-1])
    for dom in reversed(args[:-1]):
        t = ctx.make("pi", "_", ctx.expand(dom), t, src=stx.span)
    return t


@micro("Type")
def m_type(stx, ctx):
    args = form_args(stx, (0, 1))
    level = 0
    if args:
        if not (isinstance(args[0], Atom) and args[0].kind == "nat"):
            raise ExpandError("universe level must be a literal natural", args[0].span)
        level = int(args[0].text)
    return ctx.make("sort", level, src=stx.span)


def atom_micro(head: str, tag: str):
    @micro(head, atom=True, form=False)
    def m(stx, ctx):
        return ctx.make(tag, src=stx.span)
    return m


@micro("suc")
def m_suc(stx, ctx):
    (n,) = form_args(stx, 1)
    return ctx.make("suc", ctx.expand(n), src=stx.span)


@micro("ind-Nat")
def m_ind_nat(stx, ctx):
    motive, base, step, target = (ctx.expand(a) for a in form_args(stx, 4))
    return ctx.make("ind-nat", motive, base, step, target, src=stx.span)


@micro("if")
def m_if(stx, ctx):
    c, t, f = (ctx.expand(a) for a in form_args(stx, 3))
    return ctx.make("ind-bool", None, t, f, c, src=stx.span)


@micro("ind-Bool")
def m_ind_bool(stx, ctx):
    motive, t, f, target = (ctx.expand(a) for a in form_args(stx, 4))
    return ctx.make("ind-bool", motive, t, f, target, src=stx.span)


@micro("Equal")
def m_equal(stx, ctx):
    a, x, y = (ctx.expand(a) for a in form_args(stx, 3))
    return ctx.make("equal", a, x, y, src=stx.span)


@micro("refl")
def m_refl(stx, ctx):
    (x,) = form_args(stx, 1)
    return ctx.make("refl", ctx.expand(x), src=stx.span)


@micro("J")
def m_j(stx, ctx):
    motive, proof, on_refl = (ctx.expand(a) for a in form_args(stx, 3))
    return ctx.make("j", motive, proof, on_refl, src=stx.span)


BASE_MICROS = (
    m_define, m_ann, m_lambda, m_lambda_sym, m_pi, m_arrow, m_type,
    atom_micro("Nat", "nat"), atom_micro("zero", "zero"), m_suc, m_ind_nat,
    atom_micro("Bool", "bool"), atom_micro("true", "true"), atom_micro("false", "false"),
    m_if, m_ind_bool, m_equal, m_refl, m_j,
)


@functools.cache
def fowl_base() -> LanguageDef:
    return compose("fowl-base", [], BASE_MICROS, rules=BASE_RULES, judgements=BASE_JUDGEMENTS)


# --- programs -------------------------------------------------------------------

class ProgramItem(NamedTuple):
    name: str | None  # None for a bare expression
    term: T.Term
    type: Value


def elaborate_program(forms: list[T.Term], session) -> list[ProgramItem]:
    """Elaborate top-level forms in order, in place.

    Each ``define`` extends the session environments for later forms. A
    replacement produced for a top-level form is installed in ``forms``.
    """
    s = session
    envs = s.envs
    items = []
    for i, form in enumerate(forms):
        if isinstance(form, T.Define):
            if form.name in envs.t_env:
                raise ElaborationError(f"{form.name} is already defined", form.src)
            ty = synth_child(s, form, "body", envs)
            envs.define(form.name, ty, value_of(form.body, envs))
            items.append(ProgramItem(form.name, form.body, ty))
        else:
            r, ty = s.synth(form, envs)
            if r is not None:
                forms[i] = form = r
            items.append(ProgramItem(None, form, ty))
    return items
