"""Finite categories, the Sammy language and shortest-program search."""

from ._sammy import (
    SammyError,
    check,
    entropy,
    equivalent,
    isomorphic,
    macro_text,
    run,
    search,
    skeleton,
)

__all__ = [
    "SammyError",
    "check",
    "entropy",
    "equivalent",
    "isomorphic",
    "macro_text",
    "run",
    "search",
    "skeleton",
]
