"""Canonical ordering and printing of the tokens used as vertices and poset elements.

Vertices of user-facing complexes are strings.  Constructions such as the
completed nerve or barycentric subdivision produce complexes whose vertices
are tuples or frozensets of other tokens, so every ordering in the package
goes through :func:`token_key`, which is total on nested str/int/tuple/frozenset
values and agrees with plain lexicographic order on strings.
"""
from __future__ import annotations

from typing import Any, Hashable, Iterable


def token_key(x: Any) -> tuple:
    if isinstance(x, str):
        return (0, x)
    if isinstance(x, bool):
        raise TypeError(f"unsupported token {x!r}")
    if isinstance(x, int):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(token_key(y) for y in x))
    if isinstance(x, frozenset):
        return (3, tuple(sorted(token_key(y) for y in x)))
    if x is None:
        return (-1,)
    raise TypeError(f"unsupported token {x!r}")


def sort_tokens(xs: Iterable[Hashable]) -> list:
    return sorted(xs, key=token_key)


def token_str(x: Any) -> str:
    """Compact, whitespace-free rendering for reports."""
    if isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, frozenset):
        return "{" + ",".join(token_str(y) for y in sort_tokens(x)) + "}"
    if isinstance(x, tuple):
        return "(" + ",".join(token_str(y) for y in x) + ")"
    if x is None:
        return "-"
    return repr(x)


def check_vertex_id(v: Any) -> str:
    from .errors import InputError

    if not isinstance(v, str) or not v or any(c.isspace() for c in v):
        raise InputError(f"invalid vertex id {v!r}: must be a nonempty string without whitespace")
    return v
