"""Nerve-type constructions on indexed simplicial covers.

A completed-nerve element is the pair ``(F, rep)``: ``F`` is a tuple of indices
in cover order and ``rep`` is the least vertex of one component of the
intersection of the members indexed by ``F``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence

from .complexes import (SimplicialComplex, SimplicialMap, component_map, components,
                        intersection, union)
from .errors import InputError
from .homology import AcyclicityCertificate, Coefficients, acyclicity_certificate
from .posets import Poset, PosetMap, face_poset, opposite, order_complex
from .ssets import SimplicialSetTrunc
from .tokens import sort_tokens, token_key, token_str


class IndexedCover:
    """Subcomplexes of one ambient complex, indexed by a totally ordered set.

    The same subcomplex may appear under several indices.  Intersections and
    their components are cached per index set.
    """

    def __init__(self, ambient: SimplicialComplex, index_order: Sequence[Hashable],
                 members: Mapping[Hashable, SimplicialComplex], check: bool = True):
        self.ambient = ambient
        self.index_order: tuple = tuple(index_order)
        if len(set(self.index_order)) != len(self.index_order):
            raise InputError("index tokens must be distinct")
        if set(members) != set(self.index_order):
            extra = set(members) ^ set(self.index_order)
            raise InputError(f"members and index order disagree on {sort_tokens(extra)[:5]}")
        self.members: dict = {i: members[i] for i in self.index_order}
        if check:
            for i, m in self.members.items():
                for f in m.facets:
                    if f not in ambient.all_simplices:
                        raise InputError(f"member {token_str(i)}: facet {list(f)} is not a simplex of the ambient complex")
        self.position = {i: n for n, i in enumerate(self.index_order)}
        self._inter: dict = {}
        self._comps: dict = {}
        self._faces: list | None = None

    def __repr__(self) -> str:
        return f"IndexedCover({len(self.index_order)} members over {len(self.ambient.vertices)} vertices)"

    def __eq__(self, other) -> bool:
        return (isinstance(other, IndexedCover) and self.ambient == other.ambient
                and self.index_order == other.index_order and self.members == other.members)

    def __hash__(self) -> int:
        return hash((self.ambient, self.index_order))

    @property
    def is_full_cover(self) -> bool:
        if not self.members:
            return self.ambient.is_empty()
        covered = set().union(*(m.all_simplices for m in self.members.values()))
        return all(f in covered for f in self.ambient.facets)

    def require_full(self) -> None:
        if not self.is_full_cover:
            covered = set().union(*(m.all_simplices for m in self.members.values())) if self.members else set()
            missing = next(f for f in self.ambient.facets if f not in covered)
            raise InputError(f"not a full cover: simplex {list(missing)} lies in no member")

    def ordered(self, F: Iterable[Hashable]) -> tuple:
        return tuple(sorted(set(F), key=self.position.__getitem__))

    def intersection(self, F: Iterable[Hashable]) -> SimplicialComplex:
        key = frozenset(F)
        hit = self._inter.get(key)
        if hit is not None:
            return hit
        if not key:
            raise InputError("intersection over an empty index set")
        idx = self.ordered(key)
        if len(idx) == 1:
            out = self.members[idx[0]]
        else:
            out = intersection(self.intersection(idx[:-1]), self.members[idx[-1]])
        self._inter[key] = out
        return out

    def component_data(self, F: Iterable[Hashable]) -> tuple[dict, list]:
        """(vertex -> component representative, [(rep, component)]) for the intersection over F."""
        key = frozenset(F)
        hit = self._comps.get(key)
        if hit is None:
            K = self.intersection(key)
            hit = (component_map(K), components(K))
            self._comps[key] = hit
        return hit

    def components(self, F: Iterable[Hashable]) -> list[tuple[Hashable, SimplicialComplex]]:
        return self.component_data(F)[1]

    def component_of(self, F: Iterable[Hashable], vertex) -> Hashable:
        return self.component_data(F)[0][vertex]

    def component(self, F: Iterable[Hashable], rep) -> SimplicialComplex:
        for r, C in self.components(F):
            if r == rep:
                return C
        raise InputError(f"{token_str(rep)} does not represent a component over {list(F)}")

    def nerve_faces(self) -> list[tuple]:
        """Index tuples (in cover order) with nonempty intersection, by size then position."""
        if self._faces is None:
            out = []
            stack = [(i,) for i in reversed(self.index_order) if not self.members[i].is_empty()]
            while stack:
                F = stack.pop()
                out.append(F)
                start = self.position[F[-1]] + 1
                for j in reversed(self.index_order[start:]):
                    G = F + (j,)
                    if not self.intersection(G).is_empty():
                        stack.append(G)
            out.sort(key=lambda F: (len(F), [self.position[i] for i in F]))
            self._faces = out
        return self._faces

    def containing(self, s: tuple) -> tuple:
        """Indices of the members containing the simplex s, in cover order."""
        return tuple(i for i in self.index_order if s in self.members[i].all_simplices)

    def reindexed(self, order: Sequence[Hashable]) -> "IndexedCover":
        if sorted(order, key=token_key) != sorted(self.index_order, key=token_key):
            raise InputError("reindexing must permute the index set")
        return IndexedCover(self.ambient, order, self.members, check=False)


# -- nerves ---------------------------------------------------------------------

def nerve(cov: IndexedCover) -> SimplicialComplex:
    faces = cov.nerve_faces()
    return SimplicialComplex(faces)


def completed_nerve_elements(cov: IndexedCover) -> list[tuple]:
    return [(F, rep) for F in cov.nerve_faces() for rep, _ in cov.components(F)]


def completed_nerve(cov: IndexedCover) -> Poset:
    """Pairs (F, rep); (F, C) < (G, D) iff F is a proper subset of G and D lies in C."""
    elems = completed_nerve_elements(cov)
    up: dict = {e: set() for e in elems}
    for G, rep in elems:
        for r in range(1, len(G)):
            for F in combinations(G, r):
                up[(F, cov.component_of(F, rep))].add((G, rep))
    return Poset.from_up(elems, up)


def completed_nerve_sset(cov: IndexedCover, D: int) -> SimplicialSetTrunc:
    """Nondegenerate presentation: strictly increasing index tuples with a component."""
    if D < 0:
        raise InputError("D must be >= 0")
    by_deg: list[list] = [[] for _ in range(D + 1)]
    faces: dict = {}
    top = 0
    for F, rep in completed_nerve_elements(cov):
        k = len(F) - 1
        top = max(top, k)
        if k > D:
            continue
        by_deg[k].append((F, rep))
        if k == 0:
            faces[(F, rep)] = ()
        else:
            faces[(F, rep)] = tuple(
                (G, cov.component_of(G, rep)) for G in (F[:i] + F[i + 1:] for i in range(k + 1)))
    nd = tuple(tuple(sort_tokens(xs)) for xs in by_deg)
    return SimplicialSetTrunc(D, nd, faces, complete=top <= D)


# -- Grothendieck model and V-bar ----------------------------------------------------

@dataclass(frozen=True)
class GrothendieckModel:
    """Grothendieck construction of the component functor over the opposite nerve.

    Objects are ``(F, vertex set of a component)``; ``(F, c) <= (G, d)`` iff G is
    a subset of F and c maps into d.  ``bijection`` sends completed-nerve
    elements to objects.
    """

    poset: Poset
    bijection: dict = field(repr=False)

    def isomorphism_to_opposite(self, cn: Poset) -> PosetMap:
        return PosetMap(opposite(cn), self.poset, self.bijection, check=False)

    def verify(self, cn: Poset) -> bool:
        if set(self.bijection) != set(cn.elements):
            return False
        return self.isomorphism_to_opposite(cn).is_isomorphism()


def grothendieck_model(cov: IndexedCover) -> GrothendieckModel:
    # pi_0 computed afresh as vertex-set partitions, independent of representatives
    objs = []
    pi0: dict = {}
    for F in cov.nerve_faces():
        key = frozenset(F)
        blocks = []
        for _, C in components(cov.intersection(F)):
            blocks.append(frozenset(C.vertices))
        pi0[key] = blocks
        objs.extend((key, b) for b in blocks)

    def image(c: frozenset, G: frozenset) -> frozenset:
        v = next(iter(c))
        return next(b for b in pi0[G] if v in b)

    up: dict = {o: set() for o in objs}
    for F, c in objs:
        for r in range(1, len(F)):
            for G in combinations(sorted(F, key=token_key), r):
                G = frozenset(G)
                up[(F, c)].add((G, image(c, G)))
    P = Poset.from_up(objs, up)
    bij = {}
    for F, rep in completed_nerve_elements(cov):
        key = frozenset(F)
        bij[(F, rep)] = (key, next(b for b in pi0[key] if rep in b))
    return GrothendieckModel(P, bij)


def complex_token(K: SimplicialComplex) -> tuple:
    """Canonical hashable identity of a subcomplex (its sorted facets)."""
    return K.facets


@dataclass(frozen=True)
class VBar:
    """Distinct components of intersections ordered by inclusion, with the map q."""

    poset: Poset
    q: PosetMap = field(repr=False)
    complexes: dict = field(repr=False)


def vbar(cov: IndexedCover) -> VBar:
    cn = completed_nerve(cov)
    cx: dict = {}
    assign = {}
    for F, rep in cn.elements:
        C = cov.component(F, rep)
        t = complex_token(C)
        cx[t] = C
        assign[(F, rep)] = t
    P = inclusion_poset(cx)
    return VBar(P, PosetMap(opposite(cn), P, assign), cx)


def inclusion_poset(cx: Mapping[Hashable, SimplicialComplex]) -> Poset:
    toks = list(cx)
    up = {a: [b for b in toks if b != a and cx[a].all_simplices <= cx[b].all_simplices] for a in toks}
    return Poset.from_up(toks, up)


# -- morphisms -----------------------------------------------------------------------

class CoverMorphism:
    """Pair (f, phi) with f(V(i)) inside W(phi(i)) for every index i."""

    def __init__(self, source: IndexedCover, target: IndexedCover, f: SimplicialMap,
                 phi: Mapping[Hashable, Hashable]):
        if f.domain != source.ambient or f.codomain != target.ambient:
            raise InputError("vertex map must go between the two ambient complexes")
        self.source, self.target, self.f = source, target, f
        self.phi = dict(phi)
        for i in source.index_order:
            if i not in self.phi:
                raise InputError(f"index map undefined on {token_str(i)}")
            j = self.phi[i]
            if j not in target.members:
                raise InputError(f"index {token_str(j)} not in the target cover")
            W = target.members[j].all_simplices
            for s in source.members[i].facets:
                if f.image(s) not in W:
                    raise InputError(f"f(V({token_str(i)})) is not inside W({token_str(j)}): "
                                     f"{list(s)} maps to {list(f.image(s))}")

    def is_equivalence(self) -> bool:
        """phi bijective and phi^{-1} carries nerve faces of the target to nerve faces of the source."""
        if len(set(self.phi.values())) != len(self.phi) or len(self.phi) != len(self.target.index_order):
            return False
        inv = {j: i for i, j in self.phi.items()}
        src = {frozenset(F) for F in self.source.nerve_faces()}
        return all(frozenset(inv[j] for j in G) in src for G in self.target.nerve_faces())

    def pi0_bijective(self) -> bool:
        """Whether every intersection over F maps bijectively onto the components over phi(F)."""
        for F in self.source.nerve_faces():
            G = {self.phi[i] for i in F}
            cm = self.target.component_data(G)[0]
            images = [cm[self.f(rep)] for rep, _ in self.source.components(F)]
            if len(set(images)) != len(images) or len(images) != len(self.target.components(G)):
                return False
        return True


@dataclass(frozen=True)
class NerveMaps:
    nerve_map: SimplicialMap
    completed_map: PosetMap
    isomorphism_expected: bool  # equivalence with component bijections
    is_isomorphism: bool


def induced_nerve_maps(m: CoverMorphism) -> NerveMaps:
    src, tgt = m.source, m.target
    N1, N2 = nerve(src), nerve(tgt)
    nmap = SimplicialMap(N1, N2, {i: m.phi[i] for i in N1.vertices})
    assign = {}
    for F, rep in completed_nerve_elements(src):
        G = tgt.ordered(m.phi[i] for i in F)
        assign[(F, rep)] = (G, tgt.component_of(G, m.f(rep)))
    cmap = PosetMap(completed_nerve(src), completed_nerve(tgt), assign)
    expected = m.is_equivalence() and m.pi0_bijective()
    return NerveMaps(nmap, cmap, expected, cmap.is_isomorphism())


# -- eta -----------------------------------------------------------------------------

@dataclass(frozen=True)
class EtaMap:
    poset_map: PosetMap  # opposite(face_poset(ambient)) -> completed nerve
    simplicial_map: SimplicialMap  # sd(ambient) -> order complex of the completed nerve


def eta_value(cov: IndexedCover, s: tuple) -> tuple:
    F = cov.containing(s)
    if not F:
        raise InputError(f"not a full cover: simplex {list(s)} lies in no member")
    return F, cov.component_of(F, s[0])


def eta_map(cov: IndexedCover) -> EtaMap:
    cov.require_full()
    fp = face_poset(cov.ambient)
    cn = completed_nerve(cov)
    assign = {s: eta_value(cov, s) for s in fp.elements}
    pm = PosetMap(opposite(fp), cn, assign)
    sm = SimplicialMap(order_complex(fp), order_complex(cn), assign)
    return EtaMap(pm, sm)


def eta_fiber(cov: IndexedCover, element: tuple, eta: EtaMap | None = None) -> frozenset:
    """Simplices sigma with eta(sigma) >= element in the completed nerve."""
    eta = eta or eta_map(cov)
    cn = eta.poset_map.codomain
    return frozenset(s for s, e in eta.poset_map.assignment.items() if cn.le(element, e))


def eta_fiber_mismatches(cov: IndexedCover, eta: EtaMap | None = None) -> list[tuple]:
    """Completed-nerve elements whose eta fiber differs from their component."""
    eta = eta or eta_map(cov)
    bad = []
    for F, rep in eta.poset_map.codomain.elements:
        if eta_fiber(cov, (F, rep), eta) != cov.component(F, rep).all_simplices:
            bad.append((F, rep))
    return bad


# -- completion -------------------------------------------------------------------

@dataclass(frozen=True)
class Completion:
    """Components C_sigma of the intersections over V_sigma, for every simplex sigma.

    ``members`` maps canonical tokens ``h0, h1, ...`` to distinct C_sigma;
    ``vhat`` orders them by inclusion; ``vtilde`` holds the distinct index sets
    V_sigma under reverse inclusion; ``c`` sends V_sigma to the full intersection
    and is None when some intersection is disconnected (``c_failure`` names sigma).
    """

    members: dict
    vhat: Poset
    vtilde: Poset
    c: PosetMap | None
    c_failure: tuple | None
    source: dict = field(repr=False)  # simplex -> member token

    def cover(self, ambient: SimplicialComplex) -> IndexedCover:
        return IndexedCover(ambient, list(self.members), self.members, check=False)


def completion(cov: IndexedCover) -> Completion:
    cov.require_full()
    cs: dict = {}
    vs: set = set()
    source_c = {}
    failure = None
    for s in sorted(cov.ambient.all_simplices, key=lambda s: (len(s), [token_key(v) for v in s])):
        F = cov.containing(s)
        vs.add(F)
        C = cov.component(F, cov.component_of(F, s[0]))
        t = complex_token(C)
        cs.setdefault(t, C)
        source_c[s] = t
        if failure is None and len(cov.components(F)) > 1:
            failure = s
    order = sorted(cs, key=lambda t: (sum(len(f) for f in t), [[token_key(v) for v in f] for f in t]))
    names = {t: f"h{n}" for n, t in enumerate(order)}
    members = {names[t]: cs[t] for t in order}
    vhat = inclusion_poset(members)
    vt = list(vs)
    vtilde = Poset.from_up(vt, {a: [b for b in vt if b != a and set(b) <= set(a)] for a in vt})
    cmap = None
    if failure is None:
        by_tok = {complex_token(C): n for n, C in members.items()}
        cmap = PosetMap(vtilde, vhat, {F: by_tok[complex_token(cov.intersection(F))] for F in vt})
    return Completion(members, vhat, vtilde, cmap, failure, {s: names[t] for s, t in source_c.items()})


def is_complete(cov: IndexedCover) -> tuple[bool, tuple | None]:
    """Every nonempty intersection equals the union of the members it contains."""
    for F in cov.nerve_faces():
        I = cov.intersection(F)
        inside = [m for m in cov.members.values() if m.all_simplices <= I.all_simplices]
        if not inside or union(*inside) != I:
            return False, F
    return True, None


# -- hypotheses ---------------------------------------------------------------------

@dataclass(frozen=True)
class HypothesisItem:
    indices: tuple
    rep: Hashable
    level: int
    certificate: AcyclicityCertificate

    @property
    def passed(self) -> bool:
        return self.certificate.passed


@dataclass(frozen=True)
class HypothesisReport:
    n: int
    items: tuple[HypothesisItem, ...]

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.items)

    def failures(self) -> list[HypothesisItem]:
        return [i for i in self.items if not i.passed]


def hypothesis_check(cov: IndexedCover, n: int, coeffs: Coefficients | str = "q") -> HypothesisReport:
    """Every component over F with 1 <= |F| <= n must be (n - |F| + 1)-acyclic."""
    items = []
    for F in cov.nerve_faces():
        if len(F) > n:
            continue
        level = n - len(F) + 1
        for rep, C in cov.components(F):
            items.append(HypothesisItem(F, rep, level, acyclicity_certificate(C, level, coeffs)))
    return HypothesisReport(n, tuple(items))
