import hypothesis.strategies as st
import pytest
from hypothesis import given

from fowlkit import terms as T
from fowlkit.base import fowl_base
from fowlkit.errors import DuplicateJudgement, DuplicateRule, UnknownRule, UnknownTag
from fowlkit.langs import LANGUAGES, language
from fowlkit.registry import DispatchTable, JudgementRegistry, JudgementSlot, overriding, tag_dispatch, with_override
from fowlkit.session import session
from fowlkit.values import VNAT


def test_define_judgement_twice():
    reg = JudgementRegistry()
    reg.define_judgement("j", lambda x: x)
    with pytest.raises(DuplicateJudgement):
        reg.define_judgement("j", lambda x: x)


@given(st.lists(st.integers(), max_size=100))
def test_fresh_slot_is_default(xs):
    slot = JudgementSlot("double", lambda x: 2 * x, arity=1)
    assert [slot(x) for x in xs] == [2 * x for x in xs]


def test_arity_checked():
    slot = JudgementSlot("f", lambda x: x, arity=1)
    with pytest.raises(TypeError):
        slot(1, 2)


def test_with_override_transparency_and_restore():
    slot = JudgementSlot("f", lambda x: ("f", x))
    g = lambda x: ("g", x)
    assert with_override(slot, g, lambda: slot(1)) == ("g", 1)
    assert slot(1) == ("f", 1)


def test_restoration_under_failure():
    slot = JudgementSlot("f", lambda x: "f")

    def boom():
        assert slot(0) == "g"
        raise RuntimeError("body failed")

    with pytest.raises(RuntimeError):
        with_override(slot, lambda x: "g", boom)
    assert slot(0) == "f" and slot.depth == 0


def test_nested_overrides_lifo():
    slot = JudgementSlot("f", lambda: 0)
    with overriding(slot, lambda: 1):
        with overriding(slot, lambda: 2):
            assert slot() == 2
        assert slot() == 1
    assert slot() == 0


def test_pop_out_of_order_rejected():
    slot = JudgementSlot("f", lambda: 0)
    a, b = (lambda: 1), (lambda: 2)
    slot.push(a)
    slot.push(b)
    with pytest.raises(RuntimeError):
        slot.pop(a)


@given(st.lists(st.one_of(st.integers(0, 9).map(lambda k: ("push", k)), st.just(("pop", None)),
                          st.just(("call", None))), max_size=200))
def test_memo_coherence_random_sequences(ops):
    """Memoized ``fn`` equals unmemoized resolution and an explicit stack model."""
    impls = [(lambda k: (lambda: k))(k) for k in range(10)]
    slot = JudgementSlot("f", lambda: -1)
    model = []
    for op, k in ops:
        if op == "push":
            slot.push(impls[k])
            model.append(k)
        elif op == "pop" and model:
            slot.pop(impls[model.pop()])
        expected = model[-1] if model else -1
        assert slot.fn is slot.resolve()
        assert slot() == expected


def test_dispatch_table():
    table = DispatchTable()
    r = lambda *a: "zero-rule"
    table.register("synth", "zero", r)
    table.register("synth", "zero", r)  # idempotent for the same rule
    with pytest.raises(DuplicateRule):
        table.register("synth", "zero", lambda *a: None)
    before = dict(table.table("synth"))
    table.register("synth", "suc", lambda *a: "suc-rule")
    assert {k: v for k, v in table.table("synth").items() if k != "suc"} == before
    d = tag_dispatch(table, "synth", position=0)
    assert d(T.Zero()) == "zero-rule"
    with pytest.raises(UnknownRule):
        d(T.TrueLit())


def test_invoke_synth_slot_suc_zero():
    with session(fowl_base()) as s:
        r, ty = s.invoke("synth", T.Suc(T.Zero()), s.envs)
        assert r is None and ty is VNAT


def test_memoized_invokes_match_direct():
    with session(fowl_base()) as s:
        slot = s.registry.slot("synth")
        direct = slot.resolve()
        for _ in range(10_000):
            t = T.Zero()
            assert slot.fn(s, t, s.envs) == direct(s, t, s.envs)


def test_constructor_registry_default_and_unknown():
    reg = JudgementRegistry()
    t = reg.make_node("suc", T.Zero())
    assert isinstance(t, T.Suc) and isinstance(t.pred, T.Zero)
    with pytest.raises(UnknownTag):
        reg.make_node("no-such-tag")
    with pytest.raises(UnknownTag):
        reg.register_constructor("no-such-tag", lambda: None)


class TaggedSort(T.Sort):
    """A Sort carrying an extra payload, standing in for an extended struct."""
    __slots__ = ("payload",)

    def __init__(self, level, src=None):
        super().__init__(level, src=src)
        self.payload = "extended"


def test_constructor_interposition_reaches_base_rules():
    """Overriding one constructor changes nodes built inside unmodified base rules."""
    with session(fowl_base()) as s:
        s.registry.register_constructor("sort", _tagged)
        t = s.make("sort", 0)
        assert isinstance(t, TaggedSort)
        items = s.run("(Type 0)")
        assert isinstance(items[0].term, TaggedSort)
        s.registry.register_constructor("lam", _tracking_lam)
        _made.clear()
        s.run("(if true 1 2)")
        assert _made, "base `if` rule built its motive through the constructor registry"


def _tagged(level, src=None):
    return TaggedSort(level, src=src)


_made = []


def _tracking_lam(*fields, src=None):
    t = T.Lam(*fields, src=src)
    _made.append(t)
    return t


@pytest.mark.parametrize("name", list(LANGUAGES))
def test_dispatch_totality(name):
    """Every term tag a shipped language can produce has a synth or check rule."""
    lang = language(name)
    with session(lang) as s:
        synth = s.registry.table.tags("synth")
        check = s.registry.table.tags("check")
        tags = {tag for l in lang.lineage() for (_, tag, _) in l.rule_additions}
        for tag in tags - {"define"}:
            assert tag in synth or tag in check, tag
        for tag in check:
            assert tag in synth or tag in {"lam"}
