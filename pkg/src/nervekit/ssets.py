"""Truncated simplicial sets presented by their nondegenerate simplices."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable

from .errors import InputError
from .tokens import sort_tokens, token_str


class _Degenerate:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "DEGENERATE"


DEGENERATE = _Degenerate()


@dataclass(frozen=True)
class SimplicialSetTrunc:
    """Nondegenerate simplices in degrees ``0..max_dim`` with their face data.

    ``faces[x][i]`` is the i-th face of ``x``: a nondegenerate token of the
    degree below, or :data:`DEGENERATE`.  ``complete`` records that there are no
    nondegenerate simplices above ``max_dim`` (so the truncation loses nothing).
    """

    max_dim: int
    nondegenerate: tuple[tuple[Hashable, ...], ...]
    faces: dict = field(compare=False, repr=False)
    complete: bool = False

    def __post_init__(self):
        if self.max_dim < 0:
            raise InputError("max_dim must be >= 0")
        if len(self.nondegenerate) != self.max_dim + 1:
            raise InputError("need one simplex list per degree 0..max_dim")
        seen = {}
        for k, xs in enumerate(self.nondegenerate):
            for x in xs:
                if x in seen:
                    raise InputError(f"simplex {token_str(x)} listed twice")
                seen[x] = k
        for k, xs in enumerate(self.nondegenerate):
            for x in xs:
                fs = self.faces.get(x, ())
                if k == 0:
                    if fs:
                        raise InputError(f"0-simplex {token_str(x)} has faces")
                    continue
                if len(fs) != k + 1:
                    raise InputError(f"simplex {token_str(x)} needs {k + 1} faces, got {len(fs)}")
                for y in fs:
                    if y is not DEGENERATE and seen.get(y) != k - 1:
                        raise InputError(f"face {token_str(y)} of {token_str(x)} is not a nondegenerate {k - 1}-simplex")

    def degree(self, k: int) -> tuple:
        return self.nondegenerate[k] if 0 <= k <= self.max_dim else ()

    def counts(self) -> tuple[int, ...]:
        return tuple(len(xs) for xs in self.nondegenerate)

    def identity_violations(self) -> list[tuple]:
        """Triples (x, i, j) where d_i d_j x != d_{j-1} d_i x with both sides defined."""
        bad = []
        for k in range(2, self.max_dim + 1):
            for x in self.nondegenerate[k]:
                fs = self.faces[x]
                for j in range(k + 1):
                    for i in range(j):
                        a, b = fs[j], fs[i]
                        if a is DEGENERATE or b is DEGENERATE:
                            continue
                        if self.faces[a][i] != self.faces[b][j - 1]:
                            bad.append((x, i, j))
        return bad

    def truncate(self, D: int) -> "SimplicialSetTrunc":
        if D > self.max_dim:
            raise InputError(f"cannot truncate at {D} > {self.max_dim}")
        nd = self.nondegenerate[:D + 1]
        keep = {x for xs in nd for x in xs}
        complete = self.complete and all(not xs for xs in self.nondegenerate[D + 1:])
        return SimplicialSetTrunc(D, nd, {x: f for x, f in self.faces.items() if x in keep}, complete)


def from_complex(K, max_dim: int | None = None) -> SimplicialSetTrunc:
    """Simplicial-set presentation of an ordered simplicial complex."""
    D = K.dim if max_dim is None else max_dim
    D = max(D, 0)
    nd = []
    faces = {}
    for k in range(D + 1):
        xs = K.simplices(k)
        nd.append(tuple(xs))
        for s in xs:
            faces[s] = tuple(s[:i] + s[i + 1:] for i in range(k + 1)) if k else ()
    return SimplicialSetTrunc(D, tuple(nd), faces, complete=K.dim <= D)


def point() -> SimplicialSetTrunc:
    return SimplicialSetTrunc(0, (("*",),), {"*": ()}, complete=True)


def sorted_degree(xs) -> tuple:
    return tuple(sort_tokens(xs))
