"""The shipped language tower and lookup by name."""

from __future__ import annotations

import functools

from .base import fowl_base
from .frontend import LanguageDef, compose
from .sigma import fowl_sigma
from .vec import fowl_vec


@functools.cache
def fowl() -> LanguageDef:
    """The diamond merge of fowl-vec and fowl-sigma; adds nothing of its own."""
    return compose("fowl", [fowl_vec(), fowl_sigma()])


def _geq():
    from .geq import fowl_geq
    return fowl_geq()


LANGUAGES = {
    "fowl-base": fowl_base,
    "fowl-vec": fowl_vec,
    "fowl-sigma": fowl_sigma,
    "fowl": fowl,
    "fowl-geq": _geq,
}


def language(name: str) -> LanguageDef:
    try:
        return LANGUAGES[name]()
    except KeyError:
        raise KeyError(f"unknown language {name!r}; choose from {', '.join(LANGUAGES)}") from None
