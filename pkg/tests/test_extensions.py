import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from corpus import NEGATIVE, POSITIVE, VSUM
from helpers import elaborate, type_of, type_value
from fowlkit import errors as E
from fowlkit import terms as T
from fowlkit.base import fowl_base
from fowlkit.gen import asymp
from fowlkit.langs import fowl
from fowlkit.nbe import alpha_eq, convertible, ev, normalize
from fowlkit.session import session
from fowlkit.sigma import fowl_sigma
from fowlkit.terms import numeral_value
from fowlkit.vec import VVec, fowl_vec, vec_cells


def test_vec_formation():
    ty = type_of("fowl-vec", "(Vec 2 Nat)")
    assert ty.level == 0
    assert type_of("fowl-vec", "(Vec 2 (Type 0))").level == 1


def test_vec_literal_checks():
    assert convertible(type_of("fowl-vec", "(ann (:: Nat 1 zero (:: Nat 0 zero (nil Nat))) (Vec 2 Nat))"),
                       type_value("fowl-vec", "(Vec 2 Nat)"))


def test_nil_against_nonzero_length():
    with session(fowl_vec()) as s, pytest.raises(E.FowlTypeError):
        s.run("(ann (nil Nat) (Vec (suc zero) Nat))")


def test_cons_length_mismatch_via_constr_synth():
    with session(fowl_vec()) as s, pytest.raises(E.FowlTypeError):
        s.run("(:: Nat 2 0 (nil Nat))")


def test_sigma_examples():
    assert type_of("fowl-sigma", "(ann (cons zero true) (Sigma (x Nat) Bool))")
    ty = type_of("fowl-sigma", "(ann (cons 1 (refl 1)) (Sigma (n Nat) (Equal Nat n 1)))")
    # oracle: substitute the first component into the second type and normalize
    snd = ty.snd.apply(ev(T.numeral(1), _empty()))
    assert convertible(snd, type_value("fowl-base", "(Equal Nat 1 1)"))
    with session(fowl_sigma()) as s, pytest.raises(E.FowlTypeError):
        s.run("(ann (cons zero true) Nat)")


def _empty():
    from fowlkit.env import Env
    return Env()


@pytest.mark.parametrize("n", [0, 1, 7, 100, 1000])
def test_vec_length_soundness(n):
    s, forms, items = elaborate("fowl-vec", asymp(n))
    with s:
        v = items[-1]
        assert isinstance(v.type, VVec)
        assert numeral_value(normalize(v.type.len.reify(0))) == n
        cells, tail = vec_cells(ev(v.term, s.envs.v_env))
        assert len(cells) == n
        nf = normalize(v.term, s.envs.v_env)
        count = 0
        while nf.tag == "vcons":
            count += 1
            nf = nf.rest
        assert count == n and nf.tag == "nil"


def _vector(xs):
    src = "(nil Nat)"
    for i, x in enumerate(reversed(xs)):
        src = f"(:: Nat {i} {x} {src})"
    return src


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 50), max_size=50))
def test_ind_vec_sum_vs_fold(xs):
    with session(fowl_vec()) as s:
        s.run(VSUM)
        t = s.expand(s.read(f"(vsum {len(xs)} {_vector(xs)})")[0])
        s.synth_top(t)
        assert numeral_value(normalize(t, s.envs.v_env)) == sum(xs)


FOLD = """(define is-zero (ann (lambda (n) (ind-Nat (lambda (_) Bool) true (lambda (k) (lambda (ih) false)) n)) (-> Nat Bool)))
(define fold (ann (lambda (n) (lambda (v)
  (ind-Vec Nat (lambda (k) (lambda (w) Nat)) 1
    (lambda (k) (lambda (h) (lambda (t) (lambda (ih)
      (if (is-zero ih) (suc ih) h))))) n v)))
  (Pi (n Nat) (-> (Vec n Nat) Nat))))
"""


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 5), max_size=30))
def test_ind_vec_order_sensitive_fold(xs):
    """A non-commutative right fold: step(h, acc) = 1 if acc == 0 else h."""
    acc = 1
    for h in reversed(xs):
        acc = 1 if acc == 0 else h
    with session(fowl_vec()) as s:
        s.run(FOLD)
        t = s.expand(s.read(f"(fold {len(xs)} {_vector(xs)})")[0])
        s.synth_top(t)
        assert numeral_value(normalize(t, s.envs.v_env)) == acc


def test_ind_vec_stuck_on_neutral():
    with session(fowl_vec()) as s:
        s.run(VSUM)
        [it] = s.run("(ann (lambda (n) (lambda (v) (vsum (suc n) (:: Nat n 4 v)))) (Pi (n Nat) (-> (Vec n Nat) Nat)))")
        nf = normalize(it.term, s.envs.v_env)
        assert "ind-Vec" in T.show(nf)


def test_fowl_accepts_mixed_program():
    src = "(ann (cons 2 (:: Nat 1 0 (:: Nat 0 0 (nil Nat)))) (Sigma (n Nat) (Vec n Nat)))"
    assert type_of("fowl", src)
    with session(fowl_vec()) as s, pytest.raises(E.UnknownForm):
        s.run(src)


PARENT_ONLY = [p for p in POSITIVE if p[1] in ("fowl-base", "fowl-vec", "fowl-sigma")]


@pytest.mark.parametrize("name,lang,src,_", PARENT_ONLY, ids=[p[0] for p in PARENT_ONLY])
def test_fowl_agrees_with_parents(name, lang, src, _):
    s1, f1, i1 = elaborate(lang, src)
    s2, f2, i2 = elaborate("fowl", src)
    with s1, s2:
        assert len(i1) == len(i2)
        for a, b in zip(i1, i2):
            assert alpha_eq(a.term, b.term)
            assert alpha_eq(a.type.reify(0), b.type.reify(0))


BASE_NEG = [n for n in NEGATIVE if n[1] == "fowl-base" and n[3] != "UnknownForm"]


@pytest.mark.parametrize("name,lang,src,err", BASE_NEG, ids=[n[0] for n in BASE_NEG])
def test_fowl_conservative_on_rejections(name, lang, src, err):
    with session(fowl()) as s, pytest.raises(getattr(E, err)):
        s.run(src)


def test_base_usable_after_fowl_built():
    fowl()
    assert type_of("fowl-base", "(suc 1)") is not None
    with session(fowl_base()) as s, pytest.raises(E.UnknownForm):
        s.run("(nil Nat)")


def test_base_source_untouched_by_extensions():
    """Extensions only reference base APIs: no base module attribute is rebound."""
    import fowlkit.base as base
    snapshot = dict(vars(base))
    import fowlkit.geq  # noqa: F401
    import fowlkit.sigma  # noqa: F401
    import fowlkit.vec  # noqa: F401
    fowl()
    assert {k: v for k, v in vars(base).items()} == snapshot
