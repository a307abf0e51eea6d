"""fowlkit: an extensible dependently typed language framework built on micros."""

from .base import ProgramItem, elaborate_program, fowl_base
from .errors import FowlError, FowlTypeError
from .frontend import LanguageDef, compose, expand, micro
from .langs import LANGUAGES, fowl, language
from .nbe import alpha_eq, convertible, evaluate, normalize, reify
from .reader import read
from .session import Session, session
from .sigma import fowl_sigma
from .terms import show
from .vec import fowl_vec


def fowl_geq():
    from .geq import fowl_geq as make
    return make()


__all__ = [
    "FowlError", "FowlTypeError", "LANGUAGES", "LanguageDef", "ProgramItem", "Session",
    "alpha_eq", "compose", "convertible", "elaborate_program", "evaluate", "expand",
    "fowl", "fowl_base", "fowl_geq", "fowl_sigma", "fowl_vec", "language", "micro",
    "normalize", "read", "reify", "session", "show",
]
