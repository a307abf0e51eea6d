"""Deterministic generators for the benchmark programs."""

from __future__ import annotations

from typing import Callable, NamedTuple


# --- asymp: an n-element vector of (Type 0) -----------------------------------

def asymp(n: int) -> str:
    """Vector of ``n`` copies of ``(Type 0)``, built with fowl-vec primitives.

    Lengths are shared top-level definitions ``l0 .. l(n-1)`` so each cons
    cell states its tail length in constant size.
    """
    if n < 0:
        raise ValueError("vector length must be non-negative")
    lines = [f"; asymp: {n}-element vector of (Type 0)"]
    if n:
        lines.append("(define l0 zero)")
        lines.extend(f"(define l{i} (suc l{i - 1}))" for i in range(1, n))
    vec = "(nil (Type 1))"
    for i in range(n):
        vec = f"(:: (Type 1) l{i} (Type 0) {vec})"
    lines.append(f"(define v {vec})")
    lines.append("v")
    return "\n".join(lines) + "\n"


# --- conv-eval: arithmetic by ind-Nat, checked by conversion -------------------

def conv_eval(size: int = 6) -> str:
    """Define addition and multiplication, then check equalities on growing numerals."""
    if size < 1:
        raise ValueError("conv-eval size must be positive")
    lines = [
        "; conv-eval: arithmetic decided by conversion",
        "(define add (ann (lambda (a) (lambda (b)",
        "  (ind-Nat (lambda (_) Nat) b (lambda (k) (lambda (ih) (suc ih))) a)))",
        "  (-> Nat Nat Nat)))",
        "(define mul (ann (lambda (a) (lambda (b)",
        "  (ind-Nat (lambda (_) Nat) zero (lambda (k) (lambda (ih) (add b ih))) a)))",
        "  (-> Nat Nat Nat)))",
    ]
    for i in range(1, size + 1):
        k = 2 * i
        lines.append(f"(define n{i} (mul {k} (add {k} 1)))")
        lines.append(f"(ann (refl n{i}) (Equal Nat n{i} {k * (k + 1)}))")
        lines.append(f"(ann (refl (add n{i} n{i})) (Equal Nat (mul 2 n{i}) {2 * k * (k + 1)}))")
    return "\n".join(lines) + "\n"


# --- stlc-small: a church-encoded simply typed lambda calculus -----------------

_STLC = """\
(define Ty$ (Pi (T (Type 0)) (-> T (-> T T T) T)))
(define iota$ (ann (lambda (T) (lambda (i) (lambda (a) i))) Ty$))
(define arr$ (ann (lambda (A) (lambda (B) (lambda (T) (lambda (i) (lambda (a)
  (a (A T i a) (B T i a)))))))
  (-> Ty$ Ty$ Ty$)))
(define Con$ (Pi (C (Type 0)) (-> C (-> C Ty$ C) C)))
(define empty$ (ann (lambda (C) (lambda (e) (lambda (s) e))) Con$))
(define snoc$ (ann (lambda (G) (lambda (A) (lambda (C) (lambda (e) (lambda (s)
  (s (G C e s) A))))))
  (-> Con$ Ty$ Con$)))
(define Var$ (ann (lambda (G) (lambda (A)
  (Pi (V (-> Con$ Ty$ (Type 0)))
    (-> (Pi (G Con$) (Pi (A Ty$) (V (snoc$ G A) A)))
        (Pi (G Con$) (Pi (B Ty$) (Pi (A Ty$) (-> (V G A) (V (snoc$ G B) A)))))
        (V G A)))))
  (-> Con$ Ty$ (Type 1))))
(define vz$ (ann (lambda (G) (lambda (A) (lambda (V) (lambda (z) (lambda (s) (z G A))))))
  (Pi (G Con$) (Pi (A Ty$) (Var$ (snoc$ G A) A)))))
(define vs$ (ann (lambda (G) (lambda (B) (lambda (A) (lambda (x) (lambda (V) (lambda (z) (lambda (s)
  (s G B A (x V z s)))))))))
  (Pi (G Con$) (Pi (B Ty$) (Pi (A Ty$) (-> (Var$ G A) (Var$ (snoc$ G B) A)))))))
(define Tm$ (ann (lambda (G) (lambda (A)
  (Pi (M (-> Con$ Ty$ (Type 0)))
    (-> (Pi (G Con$) (Pi (A Ty$) (-> (Var$ G A) (M G A))))
        (Pi (G Con$) (Pi (A Ty$) (Pi (B Ty$) (-> (M (snoc$ G A) B) (M G (arr$ A B))))))
        (Pi (G Con$) (Pi (A Ty$) (Pi (B Ty$) (-> (M G (arr$ A B)) (M G A) (M G B)))))
        (M G A)))))
  (-> Con$ Ty$ (Type 1))))
(define var$ (ann (lambda (G) (lambda (A) (lambda (x) (lambda (M) (lambda (v) (lambda (l) (lambda (a)
  (v G A x))))))))
  (Pi (G Con$) (Pi (A Ty$) (-> (Var$ G A) (Tm$ G A))))))
(define lam$ (ann (lambda (G) (lambda (A) (lambda (B) (lambda (t) (lambda (M) (lambda (v) (lambda (l) (lambda (a)
  (l G A B (t M v l a))))))))))
  (Pi (G Con$) (Pi (A Ty$) (Pi (B Ty$) (-> (Tm$ (snoc$ G A) B) (Tm$ G (arr$ A B))))))))
(define app$ (ann (lambda (G) (lambda (A) (lambda (B) (lambda (t) (lambda (u) (lambda (M) (lambda (v) (lambda (l) (lambda (a)
  (a G A B (t M v l a) (u M v l a)))))))))))
  (Pi (G Con$) (Pi (A Ty$) (Pi (B Ty$) (-> (Tm$ G (arr$ A B)) (Tm$ G A) (Tm$ G B)))))))
(define v0$ (ann (lambda (G) (lambda (A) (var$ (snoc$ G A) A (vz$ G A))))
  (Pi (G Con$) (Pi (A Ty$) (Tm$ (snoc$ G A) A)))))
(define v1$ (ann (lambda (G) (lambda (A) (lambda (B)
  (var$ (snoc$ (snoc$ G A) B) A (vs$ (snoc$ G A) B A (vz$ G A))))))
  (Pi (G Con$) (Pi (A Ty$) (Pi (B Ty$) (Tm$ (snoc$ (snoc$ G A) B) A))))))
(define test$ (ann (lambda (G) (lambda (A)
  (lam$ G (arr$ A A) (arr$ A A)
    (lam$ (snoc$ G (arr$ A A)) A A
      @BODY@))))
  (Pi (G Con$) (Pi (A Ty$) (Tm$ G (arr$ (arr$ A A) (arr$ A A)))))))
(define stlc-test$ (ann (test$ empty$ iota$) (Tm$ empty$ (arr$ (arr$ iota$ iota$) (arr$ iota$ iota$)))))
(define Bot$ (Pi (X (Type 0)) X))
(define bot-test$ (ann (lambda (x) (lambda (y) (x (x (x (x (x (x y))))))))
  (-> (-> Bot$ Bot$) Bot$ Bot$)))
"""

_CTX = "(snoc$ (snoc$ G (arr$ A A)) A)"
_F = "(v1$ G (arr$ A A) A)"
_X = "(v0$ (snoc$ G (arr$ A A)) A)"


def _stlc_body(mutate: bool) -> str:
    body = _X
    for i in range(6):
        # The mutated variant claims the innermost application returns A -> A.
        ret = "(arr$ A A)" if (mutate and i == 0) else "A"
        body = f"(app$ {_CTX} A {ret} {_F} {body})"
    return body


def stlc_small(copies: int = 1, mutate: bool = False) -> str:
    """``copies`` alpha-renamed copies of the church-encoded STLC checker.

    Each copy defines its own names, suffixed with the copy index. With
    ``mutate`` the first copy contains an ill-typed application.
    """
    if copies < 1:
        raise ValueError("copy count must be positive")
    out = [f"; stlc-small x{copies}"]
    for k in range(copies):
        text = _STLC.replace("@BODY@", _stlc_body(mutate and k == 0))
        out.append(text.replace("$", f"-{k}" if copies > 1 else ""))
    return "\n".join(out)


# --- catalogue -------------------------------------------------------------------

class BenchSpec(NamedTuple):
    name: str
    generate: Callable[[int], str]
    size: int
    language: str


BENCHMARKS: dict[str, BenchSpec] = {
    "asymp-small": BenchSpec("asymp-small", asymp, 100, "fowl-vec"),
    "asymptotics": BenchSpec("asymptotics", asymp, 1000, "fowl-vec"),
    "conv-eval": BenchSpec("conv-eval", conv_eval, 6, "fowl-base"),
    "stlc-small": BenchSpec("stlc-small", stlc_small, 1, "fowl"),
    "stlc-small5k": BenchSpec("stlc-small5k", stlc_small, 96, "fowl"),
    "stlc-small10k": BenchSpec("stlc-small10k", stlc_small, 192, "fowl"),
}

# Parametric families: the size must be given (or defaults as listed).
FAMILIES: dict[str, BenchSpec] = {
    "asymp": BenchSpec("asymp", asymp, 100, "fowl-vec"),
    "stlc-copies": BenchSpec("stlc-copies", stlc_small, 1, "fowl"),
    "conv-eval": BENCHMARKS["conv-eval"],
}


def resolve(name: str, size: int | None = None) -> BenchSpec:
    """Look up a benchmark by name; ``name:N`` or ``size`` overrides the size."""
    if ":" in name:
        name, _, n = name.partition(":")
        size = int(n)
    spec = BENCHMARKS.get(name) or FAMILIES.get(name)
    if spec is None:
        known = sorted(set(BENCHMARKS) | set(FAMILIES))
        raise KeyError(f"unknown benchmark {name!r}; choose from {', '.join(known)}")
    if size is not None:
        spec = spec._replace(size=size)
    if spec.size < 0 or (spec.generate is not asymp and spec.size < 1):
        raise ValueError(f"invalid size {spec.size} for {spec.name}")
    return spec


def generate(name: str, size: int | None = None) -> str:
    spec = resolve(name, size)
    return spec.generate(spec.size)
