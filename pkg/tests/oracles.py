"""Independent reference computations used to pin library results.

Nothing here calls into the library's homology engine: faces are enumerated
from facets directly and ranks / invariant factors come from sympy.
"""
from __future__ import annotations

from itertools import combinations

from sympy import GF, QQ, ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.matrices import DomainMatrix


def faces_by_dim(facets) -> list[list[tuple]]:
    """All simplices (as sorted string tuples) grouped by dimension."""
    seen = set()
    for f in facets:
        f = sorted(str(v) for v in f)
        for r in range(1, len(f) + 1):
            seen.update(combinations(f, r))
    top = max((len(s) for s in seen), default=0)
    return [sorted(s for s in seen if len(s) == k + 1) for k in range(top)]


def boundary_rows(cells_k, cells_km1) -> list[list[int]]:
    idx = {s: i for i, s in enumerate(cells_km1)}
    M = [[0] * len(cells_k) for _ in cells_km1]
    for j, s in enumerate(cells_k):
        for i in range(len(s)):
            M[idx[s[:i] + s[i + 1:]]][j] += (-1) ** i
    return M


def _rank(rows, ncols, domain) -> int:
    if not rows or not ncols:
        return 0
    return DomainMatrix.from_list(rows, domain).rank()


def betti(facets, p: int = 0, maxdim: int | None = None) -> list[int]:
    """Betti numbers over Q (p = 0) or F_p, degrees 0..maxdim (default: top dimension)."""
    cells = faces_by_dim(facets)
    top = len(cells) - 1 if maxdim is None else maxdim
    dom = QQ if p == 0 else GF(p)
    ranks = [0] * (top + 3)
    for k in range(1, min(len(cells), top + 2)):
        ranks[k] = _rank(boundary_rows(cells[k], cells[k - 1]), len(cells[k]), dom)
    out = []
    for k in range(top + 1):
        n = len(cells[k]) if k < len(cells) else 0
        out.append(n - ranks[k] - ranks[k + 1])
    return out


def integer_homology(facets, maxdim: int | None = None) -> tuple[list[int], list[tuple]]:
    """(betti, torsion per degree) over Z via sympy invariant factors."""
    cells = faces_by_dim(facets)
    top = len(cells) - 1 if maxdim is None else maxdim
    rk = [0] * (top + 3)
    tors: list[tuple] = [()] * (top + 3)
    for k in range(1, min(len(cells), top + 2)):
        rows = boundary_rows(cells[k], cells[k - 1])
        inv = [abs(int(d)) for d in invariant_factors(Matrix(rows), domain=ZZ) if d != 0]
        rk[k] = len(inv)
        tors[k - 1] = tuple(sorted(d for d in inv if d > 1))
    b = []
    for k in range(top + 1):
        n = len(cells[k]) if k < len(cells) else 0
        b.append(n - rk[k] - rk[k + 1])
    return b, [tors[k] for k in range(top + 1)]


def components(vertices, facets) -> list[frozenset]:
    """Connected components by repeated merging of facet vertex sets."""
    blocks = [{str(v)} for v in vertices]
    for f in facets:
        f = {str(v) for v in f}
        hit = [b for b in blocks if b & f]
        rest = [b for b in blocks if not b & f]
        merged = set(f)
        for b in hit:
            merged |= b
        blocks = rest + [merged]
    return [frozenset(b) for b in blocks]


def chains_by_subsets(elements, le) -> list[tuple]:
    """Every nonempty chain, found by testing all subsets (small posets only)."""
    els = list(elements)
    out = []
    for r in range(1, len(els) + 1):
        for S in combinations(els, r):
            if all(le(a, b) or le(b, a) for a, b in combinations(S, 2)):
                out.append(S)
    return out


def reduced_betti(b: list[int], empty: bool) -> list[int]:
    """Reduced Betti numbers indexed from degree -1."""
    if empty:
        return [1] + [0] * len(b)
    return [0, b[0] - 1] + list(b[1:]) if b else [0]


def join_reduced_betti(a: list[int], b: list[int]) -> list[int]:
    """Reduced Betti of a join from reduced Betti of the factors (both indexed from -1)."""
    out = [0] * (len(a) + len(b))
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y  # degree (i-1)+(j-1)+1 = i+j-1
    return out
