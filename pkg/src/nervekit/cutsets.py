"""Cutsets of posets, their star covers, and the 2-complex R(P, X)."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable

from .errors import InputError
from .homology import cellular_chain_complex, complex_homology, homology
from .linalg import smith_invariants
from .nerves import IndexedCover, complex_token, vbar
from .posets import Poset, maximal_chains, order_complex, poset_components, star, star_elements
from .tokens import sort_tokens, token_str


def _check_subset(P: Poset, X: Iterable[Hashable]) -> list:
    X = sort_tokens(set(X))
    bad = [x for x in X if x not in P]
    if bad:
        raise InputError(f"cutset candidates not in the poset: {[token_str(b) for b in bad[:5]]}")
    return X


def is_cutset(P: Poset, X: Iterable[Hashable]) -> tuple[bool, tuple | None]:
    """Every chain extends by an element of X; witness is a maximal chain missing X."""
    Xs = set(_check_subset(P, X))
    for m in maximal_chains(P):
        if m and not Xs.intersection(m):
            return False, m
    return True, None


def _require_cutset(P: Poset, X) -> list:
    X = _check_subset(P, X)
    ok, wit = is_cutset(P, X)
    if not ok:
        raise InputError(f"not a cutset: maximal chain {[token_str(p) for p in wit]} avoids it")
    return X


def star_cover(P: Poset, X: Iterable[Hashable]) -> IndexedCover:
    X = _require_cutset(P, X)
    amb = order_complex(P)
    mems = {x: order_complex(star(P, x)) for x in X}
    return IndexedCover(amb, X, mems, check=False)


def star_intersection(P: Poset, xs: Iterable[Hashable]) -> frozenset:
    out = None
    for x in xs:
        s = star_elements(P, x)
        out = s if out is None else out & s
    return frozenset() if out is None else out


def gamma_poset(P: Poset, X: Iterable[Hashable]) -> Poset:
    """Components of intersections of stars, as element sets ordered by inclusion."""
    X = _require_cutset(P, X)
    comps: set = set()
    stack = [(i,) for i in range(len(X))]
    while stack:
        idx = stack.pop()
        inter = star_intersection(P, (X[i] for i in idx))
        if not inter:
            continue
        for c in poset_components(P.induced(inter)):
            comps.add(frozenset(c))
        stack.extend(idx + (j,) for j in range(idx[-1] + 1, len(X)))
    cs = list(comps)
    return Poset.from_up(cs, {a: [b for b in cs if a < b] for a in cs})


def gamma_matches_vbar(P: Poset, X: Iterable[Hashable]) -> bool:
    """C -> order complex of C is an isomorphism from Gamma(P, X) onto V-bar of the star cover."""
    G = gamma_poset(P, X)
    vb = vbar(star_cover(P, X)).poset
    image = {C: complex_token(order_complex(P.induced(C))) for C in G.elements}
    if set(image.values()) != set(vb.elements) or len(set(image.values())) != len(image):
        return False
    return all(G.le(a, b) == vb.le(image[a], image[b]) for a in G.elements for b in G.elements)


# -- R(P, X) -------------------------------------------------------------------

@dataclass(frozen=True)
class RComplex:
    """Vertices X; an edge (x, x', rep) per component of St(x) and St(x') intersected;
    a triangle per component of a triple intersection, attached along three edges."""

    vertices: tuple
    edges: tuple  # (x, x', rep) with x before x'
    triangles: tuple  # ((x, x', x''), rep, (e01, e02, e12))

    def chain_complex(self):
        cells = [list(self.vertices), list(self.edges), list(self.triangles)]
        bd = {}
        for e in self.edges:
            bd[e] = {e[0]: -1, e[1]: 1} if e[0] != e[1] else {}
        for t in self.triangles:
            e01, e02, e12 = t[2]
            bd[t] = {e12: 1, e02: -1, e01: 1}
        return cellular_chain_complex(cells, bd)


def r_complex(P: Poset, X: Iterable[Hashable]) -> RComplex:
    X = _require_cutset(P, X)
    if len(poset_components(P)) != 1:
        raise InputError("R(P, X) needs a connected poset")
    edges = []
    edge_of: dict = {}
    for x, y in combinations(X, 2):
        inter = star_intersection(P, (x, y))
        if not inter:
            continue
        for comp in poset_components(P.induced(inter)):
            e = (x, y, comp[0])
            edges.append(e)
            for p in comp:
                edge_of[(x, y, p)] = e
    tris = []
    for x, y, z in combinations(X, 3):
        inter = star_intersection(P, (x, y, z))
        if not inter:
            continue
        for comp in poset_components(P.induced(inter)):
            r = comp[0]
            tris.append(((x, y, z), r, (edge_of[(x, y, r)], edge_of[(x, z, r)], edge_of[(y, z, r)])))
    return RComplex(tuple(X), tuple(edges), tuple(tris))


def spanning_tree(R: RComplex, root=None, search: str = "bfs") -> set:
    """Edges of a spanning tree grown from root (default: least vertex) by BFS or DFS."""
    if not R.vertices:
        return set()
    root = R.vertices[0] if root is None else root
    adj: dict = {v: [] for v in R.vertices}
    for e in R.edges:
        adj[e[0]].append((e, e[1]))
        adj[e[1]].append((e, e[0]))
    seen = {root}
    tree = set()
    todo = deque([root])
    while todo:
        v = todo.popleft() if search == "bfs" else todo.pop()
        for e, w in adj[v]:
            if w not in seen:
                seen.add(w)
                tree.add(e)
                todo.append(w)
    if len(seen) != len(R.vertices):
        raise InputError("R(P, X) is disconnected")
    return tree


@dataclass(frozen=True)
class AbelianGroup:
    rank: int
    torsion: tuple


def pi1_abelianized(R: RComplex, root=None, search: str = "bfs") -> AbelianGroup:
    """Abelianized edge-path group: non-tree edges modulo triangle boundaries, via SNF."""
    tree = spanning_tree(R, root, search)
    gens = [e for e in R.edges if e not in tree]
    gi = {e: i for i, e in enumerate(gens)}
    rels = []
    for t in R.triangles:
        e01, e02, e12 = t[2]
        word: dict = {}
        for e, c in ((e01, 1), (e12, 1), (e02, -1)):
            if e in gi:
                word[gi[e]] = word.get(gi[e], 0) + c
        rels.append({k: v for k, v in word.items() if v})
    snf = smith_invariants(rels, len(gens))
    return AbelianGroup(len(gens) - snf.rank, snf.torsion)


def h1_poset(P: Poset) -> AbelianGroup:
    H = complex_homology(order_complex(P), "z", maxdim=1)
    return AbelianGroup(H.betti_at(1), H.torsion_at(1))


def h1_rcomplex(R: RComplex) -> AbelianGroup:
    H = homology(R.chain_complex(), "z")
    return AbelianGroup(H.betti_at(1), H.torsion_at(1))
