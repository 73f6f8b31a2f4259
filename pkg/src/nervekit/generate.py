"""Seeded random instances and canonical enumeration of small posets."""
from __future__ import annotations

import random
from itertools import combinations
from typing import Callable

import networkx as nx

from .complexes import SimplicialComplex, SimplicialMap, union
from .homology import acyclicity_certificate
from .nerves import IndexedCover
from .posets import Poset, PosetMap, maximal_chains, poset_components


def rng_for(seed: int | str) -> random.Random:
    return random.Random(seed)


def random_complex(rng: random.Random, n_vertices: int, n_facets: int, max_dim: int = 2,
                   prefix: str = "v") -> SimplicialComplex:
    verts = [f"{prefix}{i}" for i in range(n_vertices)]
    facets = []
    for _ in range(n_facets):
        d = rng.randint(0, min(max_dim, n_vertices - 1))
        facets.append(rng.sample(verts, d + 1))
    return SimplicialComplex(facets)


def random_cover(rng: random.Random, max_vertices: int = 12, max_members: int = 5,
                 max_dim: int = 2) -> IndexedCover:
    """Full cover of a random complex; each facet lands in one or more members."""
    nv = rng.randint(3, max_vertices)
    X = random_complex(rng, nv, rng.randint(2, nv + 2), max_dim)
    m = rng.randint(1, max_members)
    names = [f"m{i}" for i in range(m)]
    buckets: dict = {n: [] for n in names}
    for f in X.facets:
        for n in rng.sample(names, rng.randint(1, min(2, m))):
            buckets[n].append(f)
    for n in names:
        if not buckets[n]:
            buckets[n].append(rng.choice(X.facets))
    members = {n: SimplicialComplex(fs) for n, fs in buckets.items()}
    return IndexedCover(X, names, members, check=False)


def _first_bad_component(cov: IndexedCover, n: int):
    for F in cov.nerve_faces():
        for rep, C in cov.components(F):
            if not acyclicity_certificate(C, n).passed:
                return F, C
    return None


def coned_cover(rng: random.Random, n: int, max_vertices: int = 8, max_members: int = 4,
                max_rounds: int = 40) -> IndexedCover | None:
    """Random full cover repaired until every component of every intersection is n-acyclic.

    Each round cones a fresh vertex over one bad component C of an intersection
    and adds the cone to every member containing C.  Returns None if the
    repair does not settle within ``max_rounds``.
    """
    cov = random_cover(rng, max_vertices, max_members)
    members = dict(cov.members)
    order = cov.index_order
    for r in range(max_rounds):
        bad = _first_bad_component(cov, n)
        if bad is None:
            return cov
        F, C = bad
        apex = f"a{r}"
        cone = SimplicialComplex([tuple(f) + (apex,) for f in C.facets])
        for i in order:
            if C <= members[i]:
                members[i] = union(members[i], cone)
        amb = union(*members.values())
        cov = IndexedCover(amb, order, members, check=False)
    return cov if _first_bad_component(cov, n) is None else None


def random_poset(rng: random.Random, n: int, p: float = 0.35, prefix: str = "p") -> Poset:
    els = [f"{prefix}{i}" for i in range(n)]
    rels = [(els[i], els[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Poset(els, rels)


def random_connected_poset(rng: random.Random, n: int, p: float = 0.4) -> Poset:
    while True:
        P = random_poset(rng, n, p)
        if len(poset_components(P)) == 1:
            return P


def random_cutset(rng: random.Random, P: Poset) -> list:
    """A random subset grown until every maximal chain meets it."""
    X = set(rng.sample(P.elements, rng.randint(1, max(1, len(P) // 3))))
    for m in maximal_chains(P):
        if m and not X.intersection(m):
            X.add(rng.choice(m))
    return sorted(X)


def random_simplicial_map(rng: random.Random, K: SimplicialComplex, n_targets: int,
                          prefix: str = "w") -> SimplicialMap:
    """Random vertex map out of K; the codomain is the image plus a few random facets."""
    targets = [f"{prefix}{i}" for i in range(n_targets)]
    vm = {v: rng.choice(targets) for v in K.vertices}
    img = [tuple(vm[v] for v in f) for f in K.facets]
    extra = random_complex(rng, n_targets, rng.randint(0, 3), 2, prefix)
    L = union(SimplicialComplex(img), extra)
    return SimplicialMap(K, L, vm)


def random_order_preserving(rng: random.Random, P: Poset, Q: Poset) -> PosetMap | None:
    """Random order-preserving map, built along a linear extension of P (None if stuck)."""
    order = sorted(P.elements, key=lambda x: len(P.down(x)))
    f: dict = {}
    for p in order:
        lower = [f[d] for d in P.down(p)]
        ok = [q for q in Q.elements if all(Q.le(l, q) for l in lower)]
        if not ok:
            return None
        f[p] = rng.choice(ok)
    return PosetMap(P, Q, f)


def random_small_poset(rng: random.Random, max_size: int, prefix: str) -> Poset:
    """A small poset drawn from a few shapes with varied connectivity (possibly empty)."""
    kind = rng.choice(["point", "s0", "antichain", "chain", "cone", "random", "empty"])
    if kind == "empty":
        return Poset([])
    if kind == "point":
        return Poset([f"{prefix}0"])
    if kind == "s0":
        return Poset([f"{prefix}0", f"{prefix}1"])
    size = rng.randint(1, max_size)
    if kind == "antichain":
        return Poset([f"{prefix}{i}" for i in range(size)])
    if kind == "chain":
        els = [f"{prefix}{i}" for i in range(size)]
        return Poset(els, list(zip(els, els[1:])))
    P = random_poset(rng, size, 0.4, prefix)
    if kind == "cone":
        top = f"{prefix}t"
        return Poset(list(P.elements) + [top], P.relations() + [(e, top) for e in P.elements])
    return P


# -- canonical posets ------------------------------------------------------------

def _graph(P: Poset) -> nx.DiGraph:
    G = nx.DiGraph()
    G.add_nodes_from(P.elements)
    G.add_edges_from(P.cover_relations)
    return G


def _ideals(P: Poset) -> list[frozenset]:
    """All down-closed subsets, generated from antichains."""
    out = set()
    els = P.elements
    for r in range(len(els) + 1):
        for A in combinations(els, r):
            if all(not P.comparable(a, b) for a, b in combinations(A, 2)):
                down = set(A)
                for a in A:
                    down |= P.down(a)
                out.add(frozenset(down))
    return list(out)


def canonical_posets(n: int) -> list[Poset]:
    """One poset per isomorphism class on elements "0".."n-1"."""
    return canonical_posets_by_size(n)[n]


def canonical_posets_by_size(n: int) -> list[list[Poset]]:
    """Canonical posets of every size 0..n (one list per size).

    Every poset arises from a smaller one by adding a maximal element whose
    strict down-set is an order ideal; duplicates are removed by isomorphism
    testing inside Weisfeiler-Lehman hash buckets.
    """
    level = [Poset([])]
    levels = [level]
    for size in range(1, n + 1):
        new = str(size - 1)
        buckets: dict = {}
        out = []
        for P in level:
            for I in _ideals(P):
                up = {e: set(P.up(e)) for e in P.elements}
                for e in I:
                    up[e].add(new)
                up[new] = set()
                Q = Poset.from_up(list(P.elements) + [new], up)
                G = _graph(Q)
                h = (nx.weisfeiler_lehman_graph_hash(G, iterations=3),
                     tuple(sorted(d for _, d in G.in_degree())))
                bucket = buckets.setdefault(h, [])
                if any(nx.is_isomorphic(G, H) for H in bucket):
                    continue
                bucket.append(G)
                out.append(Q)
        level = out
        levels.append(level)
    return levels


def sample(rng: random.Random, make: Callable, count: int, keep: Callable = lambda x: True,
           max_tries: int = 10000) -> list:
    """Draw instances from make(rng) until count of them satisfy keep."""
    out = []
    tries = 0
    while len(out) < count and tries < max_tries:
        tries += 1
        x = make(rng)
        if x is not None and keep(x):
            out.append(x)
    return out
