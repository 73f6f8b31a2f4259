"""Čech levels, the discrete Čech complex, and the nerve-theorem harness."""
from __future__ import annotations

from dataclasses import dataclass

from .complexes import SimplicialComplex
from .errors import InputError
from .homology import (Coefficients, HomologyResult, RangeReport, complex_homology, homology,
                       normalized_chain_complex, poset_homology, range_compare)
from .nerves import HypothesisReport, IndexedCover, completed_nerve, hypothesis_check
from .report import PASS, SKIPPED, Check, overall, sorted_checks, status
from .ssets import DEGENERATE, SimplicialSetTrunc
from .tokens import token_str


@dataclass(frozen=True)
class CechLevel:
    k: int
    cells: tuple[tuple[tuple, SimplicialComplex], ...]


def _tuples(cov: IndexedCover, k_max: int, allow_repeats: bool):
    """Index tuples of length <= k_max + 1 with nonempty intersection, grouped by length."""
    out = [[] for _ in range(k_max + 1)]
    live = [i for i in cov.index_order if not cov.members[i].is_empty()]
    frontier = [(i,) for i in live]
    for k in range(k_max + 1):
        out[k] = frontier
        if k == k_max:
            break
        nxt = []
        for t in frontier:
            for j in live:
                if not allow_repeats and j == t[-1]:
                    continue
                if j in t or not cov.intersection(t + (j,)).is_empty():
                    nxt.append(t + (j,))
        frontier = nxt
    return out


def cech_levels(cov: IndexedCover, k_max: int) -> list[CechLevel]:
    """Level k: every (k+1)-tuple of indices (repeats allowed) with nonempty intersection."""
    if k_max < 0:
        raise InputError("k_max must be >= 0")
    return [CechLevel(k, tuple((t, cov.intersection(t)) for t in ts))
            for k, ts in enumerate(_tuples(cov, k_max, True))]


def fiber_product_mismatches(cov: IndexedCover, k: int) -> list:
    """Check that level k is the fiber product of level k-1 and level 1 over the shared index.

    A level-k cell t corresponds to (t[:-1], t[-2:]); conversely every such pair
    with a nonempty common region must come from a cell, with the same region.
    """
    if k < 1:
        raise InputError("fiber products start at level 1")
    levels = cech_levels(cov, k)
    cells = dict(levels[k].cells)
    lower = dict(levels[k - 1].cells)
    edges = dict(levels[1].cells)
    bad = []
    pairs = {}
    for t, region in lower.items():
        for e, eregion in edges.items():
            if e[0] != t[-1]:
                continue
            common = region.all_simplices & eregion.all_simplices
            if common:
                pairs[t + (e[1],)] = common
    if set(pairs) != set(cells):
        bad.extend(sorted(set(pairs) ^ set(cells), key=lambda t: [cov.position[i] for i in t]))
    for t, common in pairs.items():
        if t in cells and cells[t].all_simplices != common:
            bad.append(t)
    return bad


def cech_delta(cov: IndexedCover, D: int) -> SimplicialSetTrunc:
    """Nondegenerate simplices: tuples without adjacent repeats, with a component of the intersection."""
    if D < 0:
        raise InputError("D must be >= 0")
    pos = cov.position
    by_deg = []
    faces: dict = {}
    for k, ts in enumerate(_tuples(cov, D, False)):
        ts = sorted(ts, key=lambda t: [pos[i] for i in t])
        xs = []
        for t in ts:
            for rep, _ in cov.components(t):
                x = (t, rep)
                xs.append(x)
                if k == 0:
                    faces[x] = ()
                    continue
                fs = []
                for i in range(k + 1):
                    if 0 < i < k and t[i - 1] == t[i + 1]:
                        fs.append(DEGENERATE)
                    else:
                        u = t[:i] + t[i + 1:]
                        fs.append((u, cov.component_of(u, rep)))
                faces[x] = tuple(fs)
        by_deg.append(tuple(xs))
    # a nondegenerate simplex has a nondegenerate 0th face, so an empty degree ends the list
    complete = not by_deg[D]
    return SimplicialSetTrunc(D, tuple(by_deg), faces, complete)


def cech_homology(cov: IndexedCover, through: int, coeffs: Coefficients | str = "q") -> HomologyResult:
    """Homology of the discrete Čech complex in degrees 0..through."""
    return homology(normalized_chain_complex(cech_delta(cov, through + 1)), coeffs)


def same_homology(a: HomologyResult, b: HomologyResult, through: int) -> bool:
    return all(a.betti_at(k) == b.betti_at(k) and a.torsion_at(k) == b.torsion_at(k)
               for k in range(through + 1))


@dataclass(frozen=True)
class NerveVerdict:
    n: int
    hypotheses: HypothesisReport
    comparison: RangeReport | None
    cech_agrees: bool | None
    h_ambient: HomologyResult | None
    h_nerve: HomologyResult | None
    h_cech: HomologyResult | None
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return overall(self.checks) == PASS


def _fname(F) -> str:
    return ",".join(token_str(i) for i in F)


def verify_nerve_theorem(cov: IndexedCover, n: int, coeffs: Coefficients | str = "q") -> NerveVerdict:
    """Hypotheses per index set; if they all hold, compare homology of ambient, completed nerve and Čᵟ."""
    cov.require_full()
    coeffs = Coefficients.parse(coeffs)
    hyp = hypothesis_check(cov, n, coeffs)
    checks = []
    for it in hyp.items:
        c = it.certificate
        checks.append(Check(
            f"hypothesis/{_fname(it.indices)}/{token_str(it.rep)}",
            status(c.passed),
            None if c.passed else {"indices": [token_str(i) for i in it.indices], "component": token_str(it.rep),
                                   "degree": c.witness_degree, "detail": c.detail},
            {"required_acyclicity": it.level}))
    if not hyp.passed:
        for name in ("conclusion/cech-agreement", "conclusion/range"):
            checks.append(Check(name, SKIPPED, None, {"reason": "hypotheses failed"}))
        return NerveVerdict(n, hyp, None, None, None, None, None, tuple(sorted_checks(checks)))
    top = max(n + 1, 0)
    hx = complex_homology(cov.ambient, coeffs, maxdim=top)
    hn = poset_homology(completed_nerve(cov), coeffs, maxdim=top)
    hc = cech_homology(cov, top, coeffs)
    rc = range_compare(hx, hn, n)
    fails = [{"degree": i.degree, "kind": i.kind, "ambient": _jsonable(i.left), "nerve": _jsonable(i.right)}
             for i in rc.failures()]
    checks.append(Check("conclusion/range", status(rc.passed), fails or None,
                        {"betti_ambient": hx.profile(top), "betti_completed_nerve": hn.profile(top)}))
    agree = same_homology(hc, hn, top)
    checks.append(Check("conclusion/cech-agreement", status(agree),
                        None if agree else {"betti_cech": hc.profile(top), "betti_completed_nerve": hn.profile(top)},
                        {"betti_cech": hc.profile(top)}))
    return NerveVerdict(n, hyp, rc, agree, hx, hn, hc, tuple(sorted_checks(checks)))


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x
