"""Evaluation, read-back, normalization and definitional equality.

Plain environment-based normalization by evaluation: no memoization and no
glued evaluation. Evaluators are looked up per term class in ``EVALUATORS``,
so extensions add variants by registering with :func:`evaluator`.
"""

from __future__ import annotations

from typing import Callable

from . import terms as T
from ._deep import deep
from .env import Env
from .errors import ElaborationError, StuckEliminator, UnknownRule
from .terms import readback_name
from .values import (
    FApp, FIndBool, FIndNat, FJ, VBOOL, VFALSE, VLam, VNAT, VNeutral, VPi,
    VRefl, VSort, VSuc, VTRUE, VZERO, Value, VEqual,
)

EVALUATORS: dict[type, Callable[[T.Term, Env], Value]] = {}


def evaluator(cls: type[T.Term]):
    def register(fn):
        if cls in EVALUATORS:
            raise ValueError(f"evaluator for {cls.__name__} already registered")
        EVALUATORS[cls] = fn
        return fn
    return register


def ev(t: T.Term, env: Env) -> Value:
    try:
        fn = EVALUATORS[t.__class__]
    except KeyError:
        fn = _inherited_evaluator(t)
    return fn(t, env)


def _inherited_evaluator(t: T.Term):
    for cls in type(t).__mro__[1:]:
        fn = EVALUATORS.get(cls)
        if fn is not None:
            EVALUATORS[type(t)] = fn
            return fn
    raise UnknownRule("eval", t.tag, t.src)


@deep
def evaluate(t: T.Term, env: Env | None = None) -> Value:
    """Evaluate ``t`` under ``env`` (empty if omitted). Never mutates ``t``."""
    return ev(t, Env() if env is None else env)


class Closure:
    __slots__ = ("env", "name", "body")

    def __init__(self, env: Env, name: str, body: T.Term):
        self.env = env
        self.name = name
        self.body = body

    def apply(self, v: Value) -> Value:
        return ev(self.body, self.env.extend(self.name, v))


def apply(f: Value, arg: Value) -> Value:
    if type(f) is VLam:
        return f.body.apply(arg)
    if type(f) is VNeutral:
        return f.push(FApp(arg))
    raise StuckEliminator(f"cannot apply non-function value {f!r}")


def apply_all(f: Value, *args: Value) -> Value:
    for a in args:
        f = apply(f, a)
    return f


def reify(v: Value, depth: int = 0) -> T.Term:
    return v.reify(depth)


@deep
def normalize(t: T.Term, env: Env | None = None) -> T.Term:
    return ev(t, Env() if env is None else env).reify(0)


# --- base evaluators ---------------------------------------------------------

_SORTS: dict[int, VSort] = {}


def vsort(level: int) -> VSort:
    s = _SORTS.get(level)
    if s is None:
        s = _SORTS[level] = VSort(level)
    return s


@evaluator(T.Var)
def _ev_var(t, env):
    return env.lookup(t.name, t.src)


@evaluator(T.Sort)
def _ev_sort(t, env):
    return vsort(t.level)


@evaluator(T.Pi)
def _ev_pi(t, env):
    return VPi(t.name, ev(t.dom, env), Closure(env, t.name, t.cod))


@evaluator(T.Lam)
def _ev_lam(t, env):
    return VLam(t.name, Closure(env, t.name, t.body))


@evaluator(T.App)
def _ev_app(t, env):
    return apply(ev(t.fn, env), ev(t.arg, env))


@evaluator(T.Ann)
def _ev_ann(t, env):
    return ev(t.subject, env)


@evaluator(T.NatType)
def _ev_nat(t, env):
    return VNAT


@evaluator(T.Zero)
def _ev_zero(t, env):
    return VZERO


@evaluator(T.Suc)
def _ev_suc(t, env):
    n = 0
    while type(t) is T.Suc:
        n += 1
        t = t.pred
    v = ev(t, env)
    for _ in range(n):
        v = VSuc(v)
    return v


def ind_nat(motive: Callable[[], Value | None], base: Value, step: Value,
            target: Value) -> Value:
    """Natural-number recursion, iterative in the numeral's size."""
    preds = []
    while type(target) is VSuc:
        preds.append(target.pred)
        target = target.pred
    if target is VZERO:
        acc = base
    elif type(target) is VNeutral:
        acc = target.push(FIndNat(motive(), base, step))
    else:
        raise StuckEliminator(f"ind-Nat on {target!r}")
    for n in reversed(preds):
        acc = apply(apply(step, n), acc)
    return acc


@evaluator(T.IndNat)
def _ev_ind_nat(t, env):
    return ind_nat(lambda: None if t.motive is None else ev(t.motive, env),
                   ev(t.base, env), ev(t.step, env), ev(t.target, env))


@evaluator(T.BoolType)
def _ev_bool(t, env):
    return VBOOL


@evaluator(T.TrueLit)
def _ev_true(t, env):
    return VTRUE


@evaluator(T.FalseLit)
def _ev_false(t, env):
    return VFALSE


@evaluator(T.IndBool)
def _ev_ind_bool(t, env):
    target = ev(t.target, env)
    if target is VTRUE:
        return ev(t.on_true, env)
    if target is VFALSE:
        return ev(t.on_false, env)
    if type(target) is VNeutral:
        motive = None if t.motive is None else ev(t.motive, env)
        return target.push(FIndBool(motive, ev(t.on_true, env), ev(t.on_false, env)))
    raise StuckEliminator(f"ind-Bool on {target!r}")


@evaluator(T.Equal)
def _ev_equal(t, env):
    return VEqual(ev(t.type, env), ev(t.lhs, env), ev(t.rhs, env))


@evaluator(T.Refl)
def _ev_refl(t, env):
    return VRefl(ev(t.subject, env))


def j_eliminate(motive: Callable[[], Value], proof: Value, on_refl: Value,
                term=T.J) -> Value:
    if isinstance(proof, VRefl):
        return apply(on_refl, proof.subject)
    if type(proof) is VNeutral:
        return proof.push(FJ(motive(), on_refl, term))
    raise StuckEliminator(f"J on {proof!r}")


@evaluator(T.J)
def _ev_j(t, env):
    return j_eliminate(lambda: ev(t.motive, env), ev(t.proof, env), ev(t.on_refl, env))


@evaluator(T.Define)
def _ev_define(t, env):
    raise ElaborationError("define is only allowed at top level", t.src)


# --- alpha-equivalence -------------------------------------------------------

_MISSING = object()


@deep
def alpha_eq(a: T.Term | None, b: T.Term | None) -> bool:
    """Structural equality up to consistent binder renaming (ignores ids/spans)."""
    return _alpha(a, b, {}, {}, 0)


def _alpha(a, b, ma: dict, mb: dict, depth: int) -> bool:
    if a is None or b is None:
        return a is b
    cls = type(a)
    if cls is not type(b):
        return False
    if cls is T.Var:
        ia = ma.get(a.name)
        ib = mb.get(b.name)
        if ia is None and ib is None:
            return a.name == b.name
        return ia == ib
    if cls is T.Suc:
        while type(a) is T.Suc and type(b) is T.Suc:
            a, b = a.pred, b.pred
        return _alpha(a, b, ma, mb, depth)
    binder = cls.binder
    children = cls.children
    scoped = cls.scoped
    for f in cls.fields:
        if f == binder:
            continue
        if f in children:
            if f not in scoped and not _alpha(getattr(a, f), getattr(b, f), ma, mb, depth):
                return False
        elif getattr(a, f) != getattr(b, f):
            return False
    if not scoped:
        return True
    na, nb = getattr(a, binder), getattr(b, binder)
    old_a, old_b = ma.get(na, _MISSING), mb.get(nb, _MISSING)
    ma[na] = depth
    mb[nb] = depth
    try:
        return all(_alpha(getattr(a, f), getattr(b, f), ma, mb, depth + 1) for f in scoped)
    finally:
        if old_a is _MISSING:
            del ma[na]
        else:
            ma[na] = old_a
        if old_b is _MISSING:
            del mb[nb]
        else:
            mb[nb] = old_b


# --- definitional equality ---------------------------------------------------

def compare(a: Value | None, b: Value | None, depth: int,
            absorbs: Callable[[Value], bool] | None = None) -> bool:
    """Structural comparison of values, descending under binders.

    With ``absorbs`` None this is conversion: it agrees with comparing
    read-back normal forms up to alpha-equivalence. ``absorbs`` marks values
    (the unknown type) that are related to everything; it is not applied
    inside neutral spines, where only conversion is used.
    """
    while True:
        if a is b:
            return True
        if a is None or b is None:
            return False
        if absorbs is not None and (absorbs(a) or absorbs(b)):
            return True
        cls = type(a)
        if cls is not type(b):
            return False
        if cls is VSuc:
            a, b = a.pred, b.pred
            continue
        break
    if cls is VNeutral:
        return _compare_neutral(a, b, depth)
    for f in cls.atoms:
        if getattr(a, f) != getattr(b, f):
            return False
    for f in cls.parts:
        if not compare(getattr(a, f), getattr(b, f), depth, absorbs):
            return False
    for f in cls.closures:
        x = VNeutral(readback_name("x", depth))
        if not compare(getattr(a, f).apply(x), getattr(b, f).apply(x), depth + 1, absorbs):
            return False
    return True


def _compare_neutral(a: VNeutral, b: VNeutral, depth: int) -> bool:
    if a.head != b.head or len(a.spine) != len(b.spine):
        return False
    for fa, fb in zip(a.spine, b.spine):
        cls = type(fa)
        if cls is not type(fb):
            return False
        if getattr(fa, "term", None) is not getattr(fb, "term", None):
            return False
        for f in cls.parts:
            if not compare(getattr(fa, f), getattr(fb, f), depth):
                return False
    return True


def convertible(a: Value, b: Value, depth: int = 0) -> bool:
    """Definitional equality: normal forms agree up to alpha-equivalence."""
    return compare(a, b, depth)
