import copy

from fowlkit import language, session
from fowlkit._deep import run_deep
from fowlkit.nbe import ev


def elaborate(lang: str, src: str):
    """Return (session, elaborated forms, items); the caller closes the session."""
    s = session(language(lang))
    forms = s.expand_program(s.read(src))
    items = s.elaborate(forms)
    return s, forms, items


def type_of(lang: str, src: str):
    with session(language(lang)) as s:
        return s.run(src)[-1].type


def type_value(lang: str, src: str):
    """Evaluate a closed type expression written in ``lang``."""
    with session(language(lang)) as s:
        t, _ = s.synth_top(s.expand(s.read(src)[0]))
        return ev(t, s.envs.v_env)


def clone(t):
    return run_deep(copy.deepcopy, t)
