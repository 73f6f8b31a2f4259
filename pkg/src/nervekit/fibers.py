"""Fiber machinery for poset maps: joins, fiber verifiers, essential chains, P^Q joins."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Mapping

from .complexes import SimplicialComplex, SimplicialMap
from .errors import InputError
from .homology import (Coefficients, acyclicity_certificate, acyclicity_level, induced_map,
                       InducedMapResult)
from .nerves import IndexedCover
from .posets import Poset, PosetMap, chains, maximal_chains, order_complex, upset
from .report import PASS, SKIPPED, Check, overall, sorted_checks, status
from .tokens import sort_tokens, token_key, token_str


# -- coherence -------------------------------------------------------------------

def upper_bounds(Q: Poset, S: Iterable[Hashable]) -> set:
    out = None
    for s in S:
        ub = set(Q.up(s)) | {s}
        out = ub if out is None else out & ub
    return set(Q.elements) if out is None else out


def join(Q: Poset, S: Iterable[Hashable]):
    """Least upper bound of S, or None when S is unbounded or has no unique minimum upper bound."""
    ub = upper_bounds(Q, S)
    mins = [u for u in ub if not any(Q.lt(v, u) for v in ub)]
    if len(mins) == 1 and all(Q.le(mins[0], v) for v in ub):
        return mins[0]
    return None


@dataclass(frozen=True)
class CoherenceCertificate:
    minimal: tuple
    joins: dict  # frozenset of minimal elements -> join
    failures: tuple  # bounded-above subsets without a join
    bounded_below: bool = True

    @property
    def valid(self) -> bool:
        return self.bounded_below and not self.failures


def coherence(Q: Poset) -> CoherenceCertificate:
    M = Q.minimal()
    below = all(any(Q.le(m, q) for m in M) for q in Q.elements)
    joins: dict = {}
    failures = []
    # grow subsets in index order; an unbounded subset has no bounded supersets
    frontier = [(i,) for i in range(len(M))]
    while frontier:
        nxt = []
        for idx in frontier:
            S = frozenset(M[i] for i in idx)
            if not upper_bounds(Q, S):
                continue
            j = join(Q, S)
            if j is None:
                failures.append(tuple(M[i] for i in idx))
            else:
                joins[S] = j
            nxt.extend(idx + (k,) for k in range(idx[-1] + 1, len(M)))
        frontier = nxt
    return CoherenceCertificate(tuple(M), joins, tuple(failures), below)


def joined_minima(cert: CoherenceCertificate) -> set:
    """All joins of nonempty bounded-above subsets of minimal elements."""
    return set(cert.joins.values())


# -- fibers --------------------------------------------------------------------

def quillen_fibers(f: PosetMap) -> dict:
    """q -> f^{-1}(Q_{>=q}) as an induced subposet of the domain."""
    Q = f.codomain
    return {q: f.preimage(Q.up(q) | {q}) for q in Q.elements}


def chain_cover(Q: Poset) -> IndexedCover:
    """Cover of the order complex by the simplices of its maximal chains."""
    amb = order_complex(Q)
    mems = {}
    for m in maximal_chains(Q):
        if m:
            mems[chain_fingerprint(m)] = SimplicialComplex([m])
    return IndexedCover(amb, list(mems), mems, check=False)


def upcone_cover(Q: Poset) -> IndexedCover:
    """Cover of the order complex by the cones Q_{>=m}, m minimal."""
    amb = order_complex(Q)
    mems = {m: order_complex(upset(Q, m)) for m in Q.minimal()}
    return IndexedCover(amb, list(mems), mems, check=False)


def chain_fingerprint(chain: Iterable[Hashable]) -> str:
    return "<".join(token_str(x) for x in chain)


@dataclass(frozen=True)
class FiberVerdict:
    mode: str
    param: int
    hypotheses_passed: bool
    conclusion_passed: bool
    induced: InducedMapResult
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return overall(self.checks) == PASS


def _fiber_check(name: str, P: Poset, level: int, coeffs, numbers: dict) -> Check:
    cert = acyclicity_certificate(order_complex(P), level, coeffs)
    witness = None
    if not cert.passed:
        witness = {"fiber_size": len(P), "degree": cert.witness_degree, "detail": cert.detail}
    return Check(name, status(cert.passed), witness, dict(numbers, required_acyclicity=level))


def verify_fiber(f: PosetMap, mode: str, param: int, coeffs: Coefficients | str = "q") -> FiberVerdict:
    """Hypotheses of a fiber theorem for f, then the induced map of the order-complex map.

    quillen(k): every fiber over Q_{>=q} k-acyclic; conclusion iso through k, epi at k+1.
    copo(n): fiber over the join of each bounded-above k-set of minimal elements
    (n-k+1)-acyclic; conclusion iso through n, epi at n+1.
    achain(n): preimage of each intersection of k distinct maximal chains
    (n-k+1)-acyclic; conclusion as for copo.
    """
    coeffs = Coefficients.parse(coeffs)
    if not coeffs.is_field:
        raise InputError("fiber verification computes induced maps; use a field")
    Q = f.codomain
    checks: list[Check] = []
    if mode == "quillen":
        for q, fib in quillen_fibers(f).items():
            checks.append(_fiber_check(f"hypothesis/fiber-over/{token_str(q)}", fib, param, coeffs, {}))
    elif mode == "copo":
        cert = coherence(Q)
        if not cert.valid:
            raise InputError("copo mode needs a coherent codomain; bounded-above minimal sets without a join: "
                             + str([[token_str(x) for x in s] for s in cert.failures]))
        for S, j in sorted(cert.joins.items(), key=lambda kv: (len(kv[0]), sort_tokens(kv[0]))):
            k = len(S)
            fib = f.preimage(Q.up(j) | {j})
            name = "hypothesis/join/" + ",".join(token_str(m) for m in sort_tokens(S))
            checks.append(_fiber_check(name, fib, param - k + 1, coeffs, {"join": token_str(j), "k": k}))
    elif mode == "achain":
        ms = [m for m in maximal_chains(Q) if m]
        # sizes k >= param + 3 need (-2)-acyclicity, which always holds
        for k in range(1, min(len(ms), param + 2) + 1):
            level = param - k + 1
            for combo in combinations(ms, k):
                inter = set(combo[0]).intersection(*combo[1:])
                name = "hypothesis/chains/" + "|".join(chain_fingerprint(m) for m in combo)
                fib = f.preimage(inter)
                checks.append(_fiber_check(name, fib, level, coeffs, {"k": k, "intersection_size": len(inter)}))
        if len(ms) > param + 2:
            checks.append(Check("hypothesis/chains/vacuous", SKIPPED, None,
                                {"reason": "required acyclicity <= -2", "from_k": param + 3}))
    else:
        raise InputError(f"unknown fiber mode {mode!r}; use quillen, copo or achain")
    hyp_ok = not any(c.failed for c in checks if c.name.startswith("hypothesis/"))
    top = param + 1  # conclusion: iso through param, epi at param+1
    D = max(top, 0)
    im = induced_map(f.simplicial(), coeffs, D)
    concl_ok = im.is_acyclic_map(top)
    for k in range(top + 1):
        dm = im[k]
        need = "iso" if k < top else "epi"
        ok = dm.iso if need == "iso" else dm.epi
        numbers = {"rank": dm.rank, "betti_source": dm.dim_source, "betti_target": dm.dim_target,
                   "required": need, "iso": dm.iso, "epi": dm.epi}
        if hyp_ok:
            checks.append(Check(f"conclusion/H{k}", status(ok), None if ok else {"degree": k, "required": need},
                                numbers))
        else:
            checks.append(Check(f"conclusion/H{k}", SKIPPED, None, dict(numbers, reason="hypotheses failed")))
    return FiberVerdict(mode, param, hyp_ok, concl_ok, im, tuple(sorted_checks(checks)))


# -- neighborhoods, cores, essential chains --------------------------------------

def neighborhood(P: Poset, S: Iterable[Hashable]) -> frozenset:
    """Elements comparable or equal to every element of S."""
    S = list(S)
    return frozenset(p for p in P.elements if all(P.comparable(p, s) for s in S))


def core(P: Poset, S: Iterable[Hashable]) -> frozenset:
    """Elements of S comparable or equal to every element of S."""
    S = list(S)
    return frozenset(s for s in S if all(P.comparable(s, t) for t in S))


def is_essential(P: Poset, S: Iterable[Hashable]) -> bool:
    S = frozenset(S)
    return S == core(P, neighborhood(P, S))


@dataclass(frozen=True)
class EssentialChains:
    chains: tuple  # sorted tuples, bottom to top
    by_intersection: frozenset
    by_fixed_point: frozenset

    @property
    def agree(self) -> bool:
        return self.by_intersection == self.by_fixed_point


def _sorted_chain(P: Poset, S: frozenset) -> tuple:
    return tuple(sorted(S, key=lambda x: (len(P.down(x)), token_key(x))))


def essential_chains(P: Poset) -> EssentialChains:
    closure = {frozenset(m) for m in maximal_chains(P)}
    frontier = set(closure)
    while frontier:
        new = set()
        for a in frontier:
            for b in closure:
                c = a & b
                if c not in closure:
                    new.add(c)
        closure |= new
        frontier = new
    fixed = frozenset(frozenset(c) for c in chains(P, include_empty=True) if is_essential(P, c))
    closure = frozenset(closure)
    listed = sorted((_sorted_chain(P, c) for c in closure | fixed),
                    key=lambda c: (len(c), [token_key(x) for x in c]))
    return EssentialChains(tuple(listed), closure, fixed)


# -- P^Q joins ------------------------------------------------------------------

def pq_join(P: Poset, Qs: Mapping[Hashable, Poset]) -> tuple[Poset, PosetMap]:
    """(p, q) <= (p', q') iff p = p' and q <= q' in Q_p, or p < p'."""
    missing = [p for p in P.elements if p not in Qs]
    if missing:
        raise InputError(f"no poset assigned to {token_str(missing[0])}")
    elems = [(p, q) for p in P.elements for q in Qs[p].elements]
    up = {}
    for p, q in elems:
        u = {(p, r) for r in Qs[p].up(q)}
        for p2 in P.up(p):
            u.update((p2, r) for r in Qs[p2].elements)
        up[(p, q)] = u
    PQ = Poset.from_up(elems, up)
    return PQ, PosetMap(PQ, P, {e: e[0] for e in elems}, check=False)


def connectivity(Q: Poset, coeffs: Coefficients | str = "q") -> float:
    """Homological connectivity: -2 empty, -1 disconnected, else largest n that is n-acyclic."""
    return acyclicity_level(order_complex(Q), coeffs)


def join_bound(sigma: Iterable[Hashable], Qs: Mapping[Hashable, Poset], coeffs: Coefficients | str = "q") -> float:
    sigma = list(sigma)
    return 2 * (len(sigma) - 1) + sum(connectivity(Qs[p], coeffs) for p in sigma)


@dataclass(frozen=True)
class JoinBoundCheck:
    chain: tuple
    bound: float
    level: int  # degree actually tested
    passed: bool


def check_join_bound(P: Poset, Qs: Mapping[Hashable, Poset], coeffs: Coefficients | str = "q") -> list[JoinBoundCheck]:
    """For every nonempty chain sigma, the preimage of sigma is acyclic through the join bound."""
    PQ, pi = pq_join(P, Qs)
    out = []
    for sigma in chains(P):
        b = join_bound(sigma, Qs, coeffs)
        K = order_complex(pi.preimage(sigma))
        level = int(b) if b != float("inf") else max(K.dim, 0)
        ok = acyclicity_certificate(K, level, coeffs).passed
        out.append(JoinBoundCheck(sigma, b, level, ok))
    return out


def covex_cover(P: Poset) -> IndexedCover:
    """Cover of the order complex of P^Q (every Q_p a two-point antichain) by preimages of maximal chains."""
    s0 = Poset(["+", "-"])
    PQ, pi = pq_join(P, {p: s0 for p in P.elements})
    amb = order_complex(PQ)
    mems = {}
    for m in maximal_chains(P):
        if m:
            mems[chain_fingerprint(m)] = amb.induced(pi.preimage(m).elements)
    return IndexedCover(amb, list(mems), mems, check=False)


# -- detection -------------------------------------------------------------------

@dataclass(frozen=True)
class DetectionVerdict:
    n: int
    hypotheses_passed: bool
    conclusion_passed: bool
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return overall(self.checks) == PASS


def preimage_cover(f: SimplicialMap, cov: IndexedCover) -> IndexedCover:
    mems = {i: f.preimage(cov.members[i]) for i in cov.index_order}
    return IndexedCover(f.domain, cov.index_order, mems, check=False)


def detection_check(f: SimplicialMap, cov: IndexedCover, n: int,
                    coeffs: Coefficients | str = "q") -> DetectionVerdict:
    """Restrictions over k-fold intersections must be (n-k+1)-acyclic maps; then f is n-acyclic."""
    if cov.ambient != f.codomain:
        raise InputError("the cover must live on the codomain of f")
    cov.require_full()
    coeffs = Coefficients.parse(coeffs)
    pre = preimage_cover(f, cov)
    checks = []
    for F in cov.nerve_faces():
        k = len(F)
        m = n - k + 1
        if m < 0:
            continue
        target = cov.intersection(F)
        source = pre.intersection(F)
        r = SimplicialMap(source, target, {v: f.vertex_map[v] for v in source.vertices}, check=False)
        im = induced_map(r, coeffs, m)
        ok = im.is_acyclic_map(m)
        fail = im.first_failure(m)
        name = "hypothesis/" + ",".join(token_str(i) for i in F)
        witness = None if ok else {"indices": [token_str(i) for i in F], "degree": fail[0], "required": fail[1]}
        checks.append(Check(name, status(ok), witness, {"required_acyclicity": m}))
    hyp_ok = not any(c.failed for c in checks)
    D = max(n, 0)
    im = induced_map(f, coeffs, D)
    concl = im.is_acyclic_map(n)
    for k in range(n + 1):
        dm = im[k]
        need = "iso" if k < n else "epi"
        ok = dm.iso if need == "iso" else dm.epi
        numbers = {"rank": dm.rank, "betti_source": dm.dim_source, "betti_target": dm.dim_target, "required": need}
        if hyp_ok:
            checks.append(Check(f"conclusion/H{k}", status(ok), None if ok else {"degree": k, "required": need},
                                numbers))
        else:
            checks.append(Check(f"conclusion/H{k}", SKIPPED, None, dict(numbers, reason="hypotheses failed")))
    return DetectionVerdict(n, hyp_ok, concl, tuple(sorted_checks(checks)))
