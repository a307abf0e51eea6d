import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from fowlkit import terms as T
from fowlkit.env import Env, EnvTriple, RenameEnv, fresh_name
from fowlkit.errors import StuckEliminator, UnboundVariable, UnknownRule
from fowlkit.nbe import alpha_eq, convertible, evaluate, normalize, reify
from fowlkit.terms import STATS, base_name, numeral, numeral_value, readback_name, show, snapshot
from fowlkit.values import VNAT, VNeutral, VPi, VSuc, VZERO, arrow, const, vnumeral, vnumeral_value


def lam(x, body, ann=None):
    return T.Lam(x, ann, body)


def app(f, *args):
    for a in args:
        f = T.App(f, a)
    return f


PLUS = lam("a", lam("b", T.IndNat(lam("_", T.NatType()), T.Var("b"),
                                    lam("k", lam("ih", T.Suc(T.Var("ih")))), T.Var("a"))))


def test_node_ids_unique_and_counted():
    before = STATS.terms
    ts = [T.Zero() for _ in range(10)]
    assert STATS.terms - before == 10
    assert len({t.node_id for t in ts}) == 10


def test_term_field_metadata():
    assert T.Pi.fields == ("name", "dom", "cod")
    assert T.Pi.children == ("dom", "cod")
    assert T.Lam.scoped == ("body",)
    assert T.TERM_CLASSES["ind-nat"] is T.IndNat
    with pytest.raises(TypeError):
        T.Suc()


def test_show_and_numerals():
    assert show(numeral(3)) == "3"
    assert numeral_value(numeral(12)) == 12
    assert numeral_value(T.Suc(T.Var("n"))) is None
    assert show(T.Pi("_", T.NatType(), T.NatType())) == "(-> Nat Nat)"
    assert show(app(T.Var("f"), T.Zero(), T.TrueLit())) == "(f 0 true)"


def test_names():
    assert base_name("x′″") == "x"
    assert base_name("x′12") == "x"
    assert base_name("x₁₀") == "x"
    assert base_name("n1") == "n1"
    assert readback_name("y", 12) == "y₁₂"


@given(st.lists(st.sampled_from(["x", "y", "x′", "x₀", "n1", "_"]), max_size=60))
def test_fresh_name_never_reissues(hints):
    r = RenameEnv()
    seen = set()
    for h in hints:
        name, r = fresh_name(r, h)
        assert name not in seen
        seen.add(name)


def test_env_bind_aliases_neutral():
    envs = EnvTriple.empty()
    e2, x = envs.bind("x", VNAT)
    assert x.head != "x" and "′" in x.head
    assert e2.t_env.lookup("x") is VNAT and e2.t_env.lookup(x.head) is VNAT
    assert e2.v_env.lookup("x") is x
    with pytest.raises(UnboundVariable):
        envs.t_env.lookup("x")
    e3, y = e2.bind("x", VNAT)
    assert y.head != x.head


def test_env_persistent_extend():
    e = Env()
    e1 = e.extend("a", 1)
    assert "a" in e1 and "a" not in e
    assert e1.extend("a", 2).lookup("a") == 2 and e1.lookup("a") == 1


def test_normalize_plus():
    assert numeral_value(normalize(app(PLUS, numeral(2), numeral(3)))) == 5


@given(st.integers(0, 50), st.integers(0, 50))
def test_ind_nat_matches_unary_addition(a, b):
    assert numeral_value(normalize(app(PLUS, numeral(a), numeral(b)))) == a + b


def test_evaluate_does_not_mutate():
    t = app(PLUS, numeral(2), numeral(2))
    snap = snapshot(t)
    evaluate(t)
    assert snapshot(t) == snap


def test_stuck_eliminator_on_non_canonical():
    t = T.IndNat(None, T.Zero(), T.Zero(), T.TrueLit())
    with pytest.raises(StuckEliminator):
        evaluate(t)


def test_unknown_evaluator():
    class Mystery(T.Term):
        tag = "mystery-test"
        __slots__ = ()
    with pytest.raises(UnknownRule):
        evaluate(Mystery())


def test_neutral_spine_reify():
    n = VNeutral("n′")
    t = normalize(T.IndNat(lam("_", T.NatType()), T.Zero(), lam("k", lam("ih", T.Var("ih"))),
                           T.Suc(T.Var("n′"))), Env().extend("n′", n))
    assert isinstance(t, T.IndNat) and isinstance(t.target, T.Var)


def test_alpha_eq_examples():
    assert alpha_eq(lam("x", T.Var("x")), lam("y", T.Var("y")))
    assert not alpha_eq(lam("x", lam("y", T.Var("x"))), lam("x", lam("y", T.Var("y"))))
    assert not alpha_eq(T.Var("a"), T.Var("b"))
    assert alpha_eq(T.Pi("a", T.NatType(), T.Var("a")), T.Pi("b", T.NatType(), T.Var("b")))


def test_deep_numeral_roundtrip():
    v = evaluate(numeral(20000))
    assert vnumeral_value(v) == 20000
    assert numeral_value(reify(v)) == 20000
    assert convertible(v, vnumeral(20000))


def test_convertible_under_binders():
    a = VPi("x", VNAT, const(VNAT))
    b = arrow(VNAT, VNAT)
    assert convertible(a, b)
    assert not convertible(a, VPi("x", VNAT, const(VSuc(VZERO))))


# --- differential: value comparison vs alpha-equivalence of normal forms --------

FREE = ["f", "g", "c"]


@st.composite
def nf_terms(draw, bound=(), depth=0):
    """Terms whose evaluation always terminates: applications only of free heads."""
    leaves = [T.NatType, T.Zero, lambda: T.Var(draw(st.sampled_from(FREE[2:])))]
    if bound:
        leaves.append(lambda: T.Var(draw(st.sampled_from(bound))))
    if depth >= 4:
        return draw(st.sampled_from(leaves))()
    kind = draw(st.integers(0, 6))
    if kind == 0:
        return draw(st.sampled_from(leaves))()
    if kind == 1:
        x = draw(st.sampled_from(["x", "y"]))
        return T.Lam(x, None, draw(nf_terms(bound + (x,), depth + 1)))
    if kind == 2:
        x = draw(st.sampled_from(["x", "y"]))
        return T.Pi(x, draw(nf_terms(bound, depth + 1)), draw(nf_terms(bound + (x,), depth + 1)))
    if kind == 3:
        return T.App(T.Var(draw(st.sampled_from(FREE[:2]))), draw(nf_terms(bound, depth + 1)))
    if kind == 4:
        return T.Suc(draw(nf_terms(bound, depth + 1)))
    if kind == 5:
        # beta redex: reduces during evaluation
        x = draw(st.sampled_from(["x", "y"]))
        return T.App(T.Lam(x, None, draw(nf_terms(bound + (x,), depth + 1))),
                     draw(nf_terms(bound, depth + 1)))
    return T.Equal(T.NatType(), draw(nf_terms(bound, depth + 1)), draw(nf_terms(bound, depth + 1)))


def _env():
    e = Env()
    for name in FREE:
        e = e.extend(name, VNeutral(name))
    return e


@settings(max_examples=300, deadline=None)
@given(nf_terms(), nf_terms())
def test_compare_agrees_with_alpha_eq(a, b):
    env = _env()
    va, vb = evaluate(a, env), evaluate(b, env)
    assert convertible(va, vb) == alpha_eq(reify(va), reify(vb))
    assert convertible(va, va)


@settings(max_examples=200, deadline=None)
@given(nf_terms())
def test_normalization_idempotent_random(t):
    env = _env()
    nf = normalize(t, env)
    assert alpha_eq(normalize(nf, env), nf)
