"""Finite abstract simplicial complexes given by their facets.

A simplex is a tuple of vertex tokens sorted by :func:`~nervekit.tokens.token_key`.
That fixed order is what the chain complexes use for boundary signs.
"""
from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Callable, Hashable, Iterable, Mapping

from .errors import InputError
from .tokens import sort_tokens, token_key

Simplex = tuple


def simplex(vertices: Iterable[Hashable]) -> Simplex:
    vs = set(vertices)
    if not vs:
        raise InputError("a simplex must be nonempty")
    return tuple(sorted(vs, key=token_key))


def faces(s: Simplex) -> Iterable[Simplex]:
    """All nonempty faces of ``s`` (including ``s``), each sorted."""
    for k in range(1, len(s) + 1):
        yield from combinations(s, k)


def maximal_simplices(simplices: Iterable[Simplex]) -> list[Simplex]:
    """Maximal elements of a downward-closed family of simplices."""
    pool = set(simplices)
    covered = set()
    for s in pool:
        if len(s) > 1:
            for i in range(len(s)):
                covered.add(s[:i] + s[i + 1:])
    return [s for s in pool if s not in covered]


class SimplicialComplex:
    """Downward closure of a set of facets.

    Faces are materialized lazily; the object is immutable and hashable.
    """

    def __init__(self, facets: Iterable[Iterable[Hashable]] = (), vertices: Iterable[Hashable] = ()):
        fs = {simplex(f) for f in facets}
        listed = set(vertices)
        seen = {v for f in fs for v in f}
        fs.update((v,) for v in listed - seen)
        containing: dict = {}
        for f in fs:
            for v in f:
                containing.setdefault(v, []).append(frozenset(f))
        kept = []
        for f in fs:
            fset = frozenset(f)
            if not any(len(g) > len(fset) and fset < g for g in containing[f[0]]):
                kept.append(f)
        self.facets: tuple[Simplex, ...] = tuple(sorted(kept, key=self._simplex_key_static))
        self.vertices: tuple = tuple(sort_tokens(seen | listed))

    @staticmethod
    def _simplex_key_static(s):
        return (len(s), tuple(token_key(v) for v in s))

    @classmethod
    def from_simplices(cls, simplices: Iterable[Simplex]) -> "SimplicialComplex":
        """Build from a downward-closed set of sorted simplices (not re-validated)."""
        pool = set(simplices)
        K = cls.__new__(cls)
        verts = {s[0] for s in pool if len(s) == 1}
        K.facets = tuple(sorted(maximal_simplices(pool), key=cls._simplex_key_static))
        K.vertices = tuple(sort_tokens(verts))
        K.__dict__["all_simplices"] = frozenset(pool)
        return K

    # -- queries --------------------------------------------------------
    @cached_property
    def all_simplices(self) -> frozenset:
        out = set()
        for f in self.facets:
            out.update(faces(f))
        return frozenset(out)

    @cached_property
    def vertex_rank(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def dim(self) -> int:
        return max((len(f) - 1 for f in self.facets), default=-1)

    @cached_property
    def _by_dim(self) -> list[list[Simplex]]:
        out: list[list[Simplex]] = [[] for _ in range(self.dim + 1)]
        for s in self.all_simplices:
            out[len(s) - 1].append(s)
        rank = self.vertex_rank
        for lst in out:
            lst.sort(key=lambda s: tuple(rank[v] for v in s))
        return out

    def simplices(self, k: int) -> list[Simplex]:
        """k-simplices in lexicographic order."""
        if k < 0 or k > self.dim:
            return []
        return self._by_dim[k]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self._by_dim)

    def is_empty(self) -> bool:
        return not self.facets

    def __contains__(self, s) -> bool:
        return tuple(s) in self.all_simplices

    def __len__(self) -> int:
        return len(self.all_simplices)

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self) -> int:
        return hash(self.facets)

    def __le__(self, other: "SimplicialComplex") -> bool:
        return self.all_simplices <= other.all_simplices

    def __repr__(self) -> str:
        return f"SimplicialComplex(facets={[list(f) for f in self.facets]})"

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(f in other.all_simplices for f in self.facets)

    def induced(self, vertices: Iterable[Hashable]) -> "SimplicialComplex":
        vs = set(vertices)
        return SimplicialComplex.from_simplices(s for s in self.all_simplices if vs.issuperset(s))

    def filter(self, keep: Callable[[Simplex], bool]) -> "SimplicialComplex":
        """Subcomplex of simplices satisfying a downward-closed predicate."""
        return SimplicialComplex.from_simplices(s for s in self.all_simplices if keep(s))


EMPTY = SimplicialComplex()


def intersection(*cs: SimplicialComplex) -> SimplicialComplex:
    if not cs:
        raise InputError("intersection of no complexes")
    if len(cs) == 1:
        return cs[0]
    common = cs[0].all_simplices
    for c in cs[1:]:
        common = common & c.all_simplices
        if not common:
            return EMPTY
    return SimplicialComplex.from_simplices(common)


def union(*cs: SimplicialComplex) -> SimplicialComplex:
    return SimplicialComplex(f for c in cs for f in c.facets)


def subcomplex_op(a: SimplicialComplex, b: SimplicialComplex, op: str) -> SimplicialComplex:
    if op == "union":
        return union(a, b)
    if op == "intersection":
        return intersection(a, b)
    raise InputError(f"unknown subcomplex operation {op!r}")


# -- connected components ------------------------------------------------

def component_map(K: SimplicialComplex) -> dict:
    """vertex -> least vertex of its connected component (union-find on the 1-skeleton)."""
    parent = {v: v for v in K.vertices}
    rank = K.vertex_rank

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for f in K.facets:
        r0 = find(f[0])
        for v in f[1:]:
            r = find(v)
            if r != r0:
                # keep the lexicographically least root
                if rank[r] < rank[r0]:
                    parent[r0] = r
                    r0 = r
                else:
                    parent[r] = r0
    return {v: find(v) for v in K.vertices}


def components(K: SimplicialComplex) -> list[tuple[Hashable, SimplicialComplex]]:
    """Connected components as (least vertex, subcomplex), ordered by representative."""
    cmap = component_map(K)
    groups: dict = {}
    for f in K.facets:
        groups.setdefault(cmap[f[0]], []).append(f)
    return [(rep, SimplicialComplex(groups[rep])) for rep in sort_tokens(groups)]


def is_connected(K: SimplicialComplex) -> bool:
    return len(set(component_map(K).values())) == 1


# -- simplicial maps -----------------------------------------------------

class SimplicialMap:
    """Vertex-induced simplicial map; validated on construction."""

    def __init__(self, domain: SimplicialComplex, codomain: SimplicialComplex,
                 vertex_map: Mapping[Hashable, Hashable], check: bool = True):
        self.domain = domain
        self.codomain = codomain
        self.vertex_map = dict(vertex_map)
        if check:
            missing = [v for v in domain.vertices if v not in self.vertex_map]
            if missing:
                raise InputError(f"vertex map undefined on {missing[:5]}")
            for f in domain.facets:
                img = self.image(f)
                if img not in codomain.all_simplices:
                    raise InputError(f"image of simplex {list(f)} is {list(img)}, not a simplex of the codomain")

    def image(self, s: Simplex) -> Simplex:
        return simplex(self.vertex_map[v] for v in s)

    def __call__(self, v):
        return self.vertex_map[v]

    def compose(self, first: "SimplicialMap") -> "SimplicialMap":
        """self ∘ first."""
        return SimplicialMap(first.domain, self.codomain,
                             {v: self.vertex_map[first.vertex_map[v]] for v in first.domain.vertices})

    def preimage(self, sub: SimplicialComplex) -> SimplicialComplex:
        return self.domain.filter(lambda s: self.image(s) in sub.all_simplices)

    def restrict(self, source: SimplicialComplex, target: SimplicialComplex) -> "SimplicialMap":
        return SimplicialMap(source, target, {v: self.vertex_map[v] for v in source.vertices})

    @classmethod
    def identity(cls, K: SimplicialComplex) -> "SimplicialMap":
        return cls(K, K, {v: v for v in K.vertices}, check=False)


def cone(K: SimplicialComplex, apex: Hashable) -> SimplicialComplex:
    if apex in K.vertex_rank:
        raise InputError(f"apex {apex!r} already a vertex")
    if K.is_empty():
        return SimplicialComplex([(apex,)])
    return SimplicialComplex(tuple(f) + (apex,) for f in K.facets)


def boundary_of_simplex(vertices: Iterable[Hashable]) -> SimplicialComplex:
    s = simplex(vertices)
    return SimplicialComplex(combinations(s, len(s) - 1))
