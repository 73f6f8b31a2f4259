"""Finite posets, order-preserving maps, and their order complexes."""
from __future__ import annotations

from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from typing import Hashable, Iterable, Mapping

from .complexes import SimplicialComplex
from .errors import InputError
from .tokens import sort_tokens, token_key, token_str


class Poset:
    """Strict partial order stored as transitively closed up-sets.

    ``relations`` may be any acyclic generating set of pairs ``(a, b)`` meaning
    ``a < b``; a cycle raises :class:`InputError` naming the cycle.
    """

    def __init__(self, elements: Iterable[Hashable], relations: Iterable[tuple] = ()):
        elems = set(elements)
        gens: dict = {e: set() for e in elems}
        for a, b in relations:
            for x in (a, b):
                if x not in elems:
                    raise InputError(f"relation mentions unknown element {x!r}")
            if a == b:
                raise InputError(f"relation cycle: [{token_str(a)}, {token_str(a)}]")
            gens[a].add(b)
        try:
            # predecessors in TopologicalSorter terms = strictly greater elements
            order = list(TopologicalSorter(gens).static_order())
        except CycleError as exc:
            cycle = exc.args[1]
            raise InputError("relation cycle: [" + ", ".join(token_str(c) for c in cycle) + "]") from None
        up: dict = {}
        for e in order:  # greater elements come first
            acc = set()
            for b in gens[e]:
                acc.add(b)
                acc |= up[b]
            up[e] = frozenset(acc)
        self._init(elems, up)

    def _init(self, elems, up):
        self.elements: tuple = tuple(sort_tokens(elems))
        self._up: dict = up
        self._set = frozenset(elems)

    @classmethod
    def from_up(cls, elements: Iterable[Hashable], up: Mapping[Hashable, Iterable[Hashable]]) -> "Poset":
        """Trusted constructor: ``up[e]`` must already be the full strict up-set of ``e``."""
        P = cls.__new__(cls)
        elems = set(elements)
        P._init(elems, {e: frozenset(up.get(e, ())) for e in elems})
        return P

    @classmethod
    def from_leq(cls, elements: Iterable[Hashable], leq) -> "Poset":
        """Build from a relation predicate ``leq(a, b)`` assumed to be a partial order."""
        elems = list(elements)
        return cls.from_up(elems, {a: [b for b in elems if b != a and leq(a, b)] for a in elems})

    # -- relation queries ------------------------------------------------
    def __contains__(self, x) -> bool:
        return x in self._set

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def lt(self, a, b) -> bool:
        return b in self._up[a]

    def le(self, a, b) -> bool:
        return a == b or b in self._up[a]

    def comparable(self, a, b) -> bool:
        return a == b or b in self._up[a] or a in self._up[b]

    def up(self, x) -> frozenset:
        """Strict up-set of x."""
        return self._up[x]

    @cached_property
    def _down(self) -> dict:
        down: dict = {e: set() for e in self.elements}
        for a, ups in self._up.items():
            for b in ups:
                down[b].add(a)
        return {e: frozenset(v) for e, v in down.items()}

    def down(self, x) -> frozenset:
        return self._down[x]

    def relations(self) -> list[tuple]:
        """All strict pairs a < b, sorted."""
        return [(a, b) for a in self.elements for b in sort_tokens(self._up[a])]

    @cached_property
    def cover_relations(self) -> list[tuple]:
        out = []
        for a in self.elements:
            ups = self._up[a]
            for b in sort_tokens(ups):
                if not any(b in self._up[c] for c in ups):
                    out.append((a, b))
        return out

    @cached_property
    def _covers_up(self) -> dict:
        cu: dict = {e: [] for e in self.elements}
        for a, b in self.cover_relations:
            cu[a].append(b)
        return cu

    def minimal(self) -> list:
        return [e for e in self.elements if not self._down[e]]

    def maximal(self) -> list:
        return [e for e in self.elements if not self._up[e]]

    def induced(self, subset: Iterable[Hashable]) -> "Poset":
        s = set(subset)
        bad = s - self._set
        if bad:
            raise InputError(f"elements not in poset: {sort_tokens(bad)[:5]}")
        return Poset.from_up(s, {e: self._up[e] & s for e in s})

    def is_chain(self, subset: Iterable[Hashable]) -> bool:
        xs = list(subset)
        return all(self.comparable(a, b) for i, a in enumerate(xs) for b in xs[i + 1:])

    def __eq__(self, other) -> bool:
        return isinstance(other, Poset) and self._set == other._set and self._up == other._up

    def __hash__(self) -> int:
        return hash((self._set, frozenset(self.relations())))

    def __repr__(self) -> str:
        return f"Poset({len(self)} elements, {sum(map(len, self._up.values()))} relations)"


# -- maps ------------------------------------------------------------------

class PosetMap:
    """Order-preserving map; monotonicity checked on every strict relation."""

    def __init__(self, domain: Poset, codomain: Poset, assignment: Mapping, check: bool = True):
        self.domain = domain
        self.codomain = codomain
        self.assignment = dict(assignment)
        if check:
            for p in domain.elements:
                if p not in self.assignment:
                    raise InputError(f"map undefined on {token_str(p)}")
                if self.assignment[p] not in codomain:
                    raise InputError(f"image of {token_str(p)} is not in the codomain")
            for a, b in domain.relations():
                if not codomain.le(self.assignment[a], self.assignment[b]):
                    raise InputError(
                        f"map not order-preserving: {token_str(a)} < {token_str(b)} but "
                        f"f({token_str(a)}) = {token_str(self.assignment[a])} is not <= "
                        f"f({token_str(b)}) = {token_str(self.assignment[b])}")

    def __call__(self, p):
        return self.assignment[p]

    def preimage(self, subset: Iterable[Hashable]) -> Poset:
        s = set(subset)
        return self.domain.induced(p for p in self.domain.elements if self.assignment[p] in s)

    def simplicial(self):
        """Induced simplicial map of order complexes."""
        from .complexes import SimplicialMap

        return SimplicialMap(order_complex(self.domain), order_complex(self.codomain), self.assignment)

    def is_injective(self) -> bool:
        return len(set(self.assignment.values())) == len(self.assignment)

    def is_isomorphism(self) -> bool:
        if not self.is_injective() or len(self.codomain) != len(self.domain):
            return False
        f = self.assignment
        return all(self.domain.le(a, b) == self.codomain.le(f[a], f[b])
                   for a in self.domain.elements for b in self.domain.elements)

    @classmethod
    def identity(cls, P: Poset) -> "PosetMap":
        return cls(P, P, {p: p for p in P.elements}, check=False)


# -- constructions -----------------------------------------------------------

def maximal_chains(P: Poset) -> list[tuple]:
    """Maximal chains, each listed bottom to top, in lexicographic order."""
    if not len(P):
        return [()]
    covers = P._covers_up
    out = []
    stack = [(m,) for m in reversed(P.minimal())]
    while stack:
        chain = stack.pop()
        nxt = covers[chain[-1]]
        if not nxt:
            out.append(chain)
        else:
            for b in reversed(nxt):
                stack.append(chain + (b,))
    out.sort(key=lambda c: tuple(token_key(x) for x in c))
    return out


def chains(P: Poset, include_empty: bool = False) -> list[tuple]:
    """All chains (as tuples listed bottom to top)."""
    out = [()] if include_empty else []
    stack = [(e,) for e in reversed(P.elements)]
    while stack:
        c = stack.pop()
        out.append(c)
        for b in reversed(sort_tokens(P.up(c[-1]))):
            stack.append(c + (b,))
    return out


def order_complex(P: Poset) -> SimplicialComplex:
    if not len(P):
        return SimplicialComplex()
    return SimplicialComplex(maximal_chains(P))


def face_poset(K: SimplicialComplex) -> Poset:
    sims = K.all_simplices
    up: dict = {s: set() for s in sims}
    for t in sims:
        n = len(t)
        if n == 1:
            continue
        # every proper face of t lies strictly below t
        for mask in range(1, (1 << n) - 1):
            face = tuple(t[i] for i in range(n) if mask >> i & 1)
            up[face].add(t)
    return Poset.from_up(sims, up)


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    return order_complex(face_poset(K))


def opposite(P: Poset) -> Poset:
    return Poset.from_up(P.elements, P._down)


def upset(P: Poset, q) -> Poset:
    _require(P, q)
    return P.induced(P.up(q) | {q})


def downset(P: Poset, q) -> Poset:
    _require(P, q)
    return P.induced(P.down(q) | {q})


def star(P: Poset, x) -> Poset:
    _require(P, x)
    return P.induced(P.up(x) | P.down(x) | {x})


def star_elements(P: Poset, x) -> frozenset:
    return P.up(x) | P.down(x) | {x}


def _require(P: Poset, x):
    if x not in P:
        raise InputError(f"element {token_str(x)} not in poset")


def poset_components(P: Poset) -> list[list]:
    """Classes of the equivalence relation generated by the order, each sorted,
    ordered by least element."""
    parent = {e: e for e in P.elements}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in P.elements:
        for b in P.up(a):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
    groups: dict = {}
    for e in P.elements:
        groups.setdefault(find(e), []).append(e)
    out = [sort_tokens(g) for g in groups.values()]
    out.sort(key=lambda g: token_key(g[0]))
    return out


def product_poset(P: Poset, Q: Poset) -> Poset:
    elems = [(p, q) for p in P.elements for q in Q.elements]
    return Poset.from_leq(elems, lambda a, b: P.le(a[0], b[0]) and Q.le(a[1], b[1]))
