"""Semantic domain for normalization by evaluation.

Values are immutable. Binders are represented by closures: anything with a
``name`` hint and an ``apply(value)`` method (see :class:`HostClosure` and
``nbe.Closure``). Neutral values are a variable head plus a spine of
elimination frames.
"""

from __future__ import annotations

from typing import Callable, ClassVar

from . import terms as T
from .terms import STATS, readback_name


class Value:
    __slots__ = ()

    # Structure used by the generic comparison in ``nbe``.
    parts: ClassVar[tuple[str, ...]] = ()
    closures: ClassVar[tuple[str, ...]] = ()
    atoms: ClassVar[tuple[str, ...]] = ()

    def reify(self, depth: int) -> T.Term:
        raise NotImplementedError(type(self).__name__)

    def __repr__(self) -> str:
        try:
            return f"<{type(self).__name__} {T.show(self.reify(0))}>"
        except Exception:  # pragma: no cover - debugging aid only
            return f"<{type(self).__name__}>"


def reify_opt(v: Value | None, depth: int) -> T.Term | None:
    return None if v is None else v.reify(depth)


class HostClosure:
    """A closure implemented by a host function (used to build rule types)."""

    __slots__ = ("name", "fn")

    def __init__(self, name: str, fn: Callable[[Value], Value]):
        self.name = name
        self.fn = fn

    def apply(self, v: Value) -> Value:
        return self.fn(v)


def const(v: Value, name: str = "_") -> HostClosure:
    return HostClosure(name, lambda _: v)


class VSort(Value):
    __slots__ = ("level",)
    atoms = ("level",)

    def __init__(self, level: int):
        self.level = level
        STATS.values += 1

    def reify(self, depth):
        return T.Sort(self.level)


class VPi(Value):
    __slots__ = ("name", "dom", "cod")
    parts = ("dom",)
    closures = ("cod",)

    def __init__(self, name: str, dom: Value, cod):
        self.name = name
        self.dom = dom
        self.cod = cod
        STATS.values += 1

    def reify(self, depth):
        x = readback_name(self.name, depth)
        return T.Pi(x, self.dom.reify(depth), self.cod.apply(VNeutral(x)).reify(depth + 1))


def arrow(dom: Value, cod: Value) -> VPi:
    return VPi("_", dom, const(cod))


class VLam(Value):
    __slots__ = ("name", "body")
    closures = ("body",)

    def __init__(self, name: str, body):
        self.name = name
        self.body = body
        STATS.values += 1

    def reify(self, depth):
        x = readback_name(self.name, depth)
        return T.Lam(x, None, self.body.apply(VNeutral(x)).reify(depth + 1))


class VNat(Value):
    __slots__ = ()

    def reify(self, depth):
        return T.NatType()


class VZero(Value):
    __slots__ = ()

    def reify(self, depth):
        return T.Zero()


class VSuc(Value):
    __slots__ = ("pred",)
    parts = ("pred",)

    def __init__(self, pred: Value):
        self.pred = pred
        STATS.values += 1

    def reify(self, depth):
        n = 0
        v: Value = self
        while type(v) is VSuc:
            n += 1
            v = v.pred
        t = v.reify(depth)
        for _ in range(n):
            t = T.Suc(t)
        return t


class VBool(Value):
    __slots__ = ()

    def reify(self, depth):
        return T.BoolType()


class VTrue(Value):
    __slots__ = ()

    def reify(self, depth):
        return T.TrueLit()


class VFalse(Value):
    __slots__ = ()

    def reify(self, depth):
        return T.FalseLit()


class VEqual(Value):
    __slots__ = ("type", "lhs", "rhs")
    parts = ("type", "lhs", "rhs")

    def __init__(self, type_: Value, lhs: Value, rhs: Value):
        self.type = type_
        self.lhs = lhs
        self.rhs = rhs
        STATS.values += 1

    def reify(self, depth):
        return T.Equal(self.type.reify(depth), self.lhs.reify(depth), self.rhs.reify(depth))


class VRefl(Value):
    __slots__ = ("subject",)
    parts = ("subject",)

    def __init__(self, subject: Value):
        self.subject = subject
        STATS.values += 1

    def reify(self, depth):
        return T.Refl(self.subject.reify(depth))


VNAT = VNat()
VZERO = VZero()
VBOOL = VBool()
VTRUE = VTrue()
VFALSE = VFalse()


def vnumeral(n: int) -> Value:
    v: Value = VZERO
    for _ in range(n):
        v = VSuc(v)
    return v


def vnumeral_value(v: Value) -> int | None:
    n = 0
    while type(v) is VSuc:
        n += 1
        v = v.pred
    return n if v is VZERO else None


# --- neutrals ----------------------------------------------------------------

class Frame:
    """One elimination applied to a stuck value. ``parts`` may hold None."""

    __slots__ = ()
    parts: ClassVar[tuple[str, ...]] = ()

    def reify(self, target: T.Term, depth: int) -> T.Term:
        raise NotImplementedError


class FApp(Frame):
    __slots__ = ("arg",)
    parts = ("arg",)

    def __init__(self, arg: Value):
        self.arg = arg

    def reify(self, target, depth):
        return T.App(target, self.arg.reify(depth))


class FIndNat(Frame):
    __slots__ = ("motive", "base", "step")
    parts = ("motive", "base", "step")

    def __init__(self, motive, base, step):
        self.motive = motive
        self.base = base
        self.step = step

    def reify(self, target, depth):
        return T.IndNat(reify_opt(self.motive, depth), self.base.reify(depth),
                        self.step.reify(depth), target)


class FIndBool(Frame):
    __slots__ = ("motive", "on_true", "on_false")
    parts = ("motive", "on_true", "on_false")

    def __init__(self, motive, on_true, on_false):
        self.motive = motive
        self.on_true = on_true
        self.on_false = on_false

    def reify(self, target, depth):
        return T.IndBool(reify_opt(self.motive, depth), self.on_true.reify(depth),
                         self.on_false.reify(depth), target)


class FJ(Frame):
    __slots__ = ("motive", "on_refl", "term")
    parts = ("motive", "on_refl")

    def __init__(self, motive, on_refl, term: type[T.Term] = T.J):
        self.motive = motive
        self.on_refl = on_refl
        self.term = term

    def reify(self, target, depth):
        return self.term(self.motive.reify(depth), target, self.on_refl.reify(depth))


class VNeutral(Value):
    """A variable applied to a spine of frames (innermost first)."""

    __slots__ = ("head", "spine")

    def __init__(self, head: str, spine: tuple[Frame, ...] = ()):
        self.head = head
        self.spine = spine
        STATS.values += 1

    def push(self, frame: Frame) -> VNeutral:
        return VNeutral(self.head, self.spine + (frame,))

    def reify(self, depth):
        t: T.Term = T.Var(self.head)
        for frame in self.spine:
            t = frame.reify(t, depth)
        return t
