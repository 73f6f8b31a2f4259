"""Exact homology of simplicial complexes, truncated simplicial sets and small CW complexes.

Degree ceilings are explicit: a chain complex built through degree ``D`` from
an object that has cells above ``D`` is *truncated*, and its homology is only
reported through ``D - 1``.  Nothing above the ceiling is ever reported as 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Sequence

from .complexes import SimplicialComplex, SimplicialMap
from .errors import InputError
from .linalg import Field, Reducer, kernel_basis, rank, smith_invariants
from .posets import Poset, order_complex
from .ssets import DEGENERATE, SimplicialSetTrunc
from .tokens import sort_tokens


@dataclass(frozen=True)
class Coefficients:
    kind: str  # "q", "z" or "fp"
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("q", "z", "fp"):
            raise InputError(f"unknown coefficient kind {self.kind!r}")
        if self.kind == "fp" and not _is_prime(self.p):
            raise InputError(f"field characteristic {self.p} is not prime")

    @classmethod
    def parse(cls, text: str | "Coefficients") -> "Coefficients":
        if isinstance(text, Coefficients):
            return text
        t = text.strip().lower()
        if t in ("q", "qq", "rational"):
            return cls("q")
        if t in ("z", "zz", "integer"):
            return cls("z")
        if t.startswith("fp:"):
            try:
                return cls("fp", int(t[3:]))
            except ValueError:
                raise InputError(f"bad coefficient spec {text!r}") from None
        if t.startswith("f") and t[1:].isdigit():
            return cls("fp", int(t[1:]))
        raise InputError(f"bad coefficient spec {text!r}; use q, z, f2 or fp:<p>")

    @property
    def is_field(self) -> bool:
        return self.kind != "z"

    @property
    def field(self) -> Field:
        if self.kind == "z":
            raise InputError("integer coefficients do not form a field")
        return Field(self.p)

    def __str__(self) -> str:
        return {"q": "q", "z": "z"}.get(self.kind, f"fp:{self.p}")


QQ = Coefficients("q")
ZZ = Coefficients("z")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- chain complexes ---------------------------------------------------------------

@dataclass(frozen=True)
class ChainComplexData:
    """Free chain complex in degrees ``0..top``.

    ``boundaries[k - 1]`` is the sparse matrix of the boundary from degree k to k-1,
    stored as one ``{row: coeff}`` dict per degree-k basis cell.
    """

    ranks: tuple[int, ...]
    boundaries: tuple[tuple[dict, ...], ...]
    labels: tuple[tuple, ...] = field(repr=False)
    truncated: bool = False

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def boundary(self, k: int) -> Sequence[dict]:
        """Columns of the boundary out of degree k (empty dicts for k = 0 or above top)."""
        if k <= 0:
            return [{} for _ in range(self.ranks[0])] if self.ranks else []
        if k > self.top:
            return []
        return self.boundaries[k - 1]

    def homology_ceiling(self) -> int:
        """Highest degree whose homology this complex determines."""
        return self.top - 1 if self.truncated else self.top

    def square_zero_violations(self) -> list[int]:
        """Degrees k where the composite of consecutive boundaries out of k is nonzero."""
        bad = []
        for k in range(2, self.top + 1):
            lower = self.boundaries[k - 2]
            for col in self.boundaries[k - 1]:
                acc: dict = {}
                for i, a in col.items():
                    for r, b in lower[i].items():
                        acc[r] = acc.get(r, 0) + a * b
                if any(acc.values()):
                    bad.append(k)
                    break
        return bad


def _permutation_sign(seq: Sequence[int]) -> int:
    sign = 1
    s = list(seq)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign


def chain_complex(K: SimplicialComplex, D: int | None = None) -> ChainComplexData:
    """Simplicial chains in degrees 0..D (D defaults to dim K)."""
    if D is None:
        D = max(K.dim, 0)
    if D < 0:
        raise InputError("degree ceiling must be >= 0")
    bases = [K.simplices(k) for k in range(D + 1)]
    index = [{s: i for i, s in enumerate(b)} for b in bases]
    bds = []
    for k in range(1, D + 1):
        lower = index[k - 1]
        cols = []
        for s in bases[k]:
            cols.append({lower[s[:i] + s[i + 1:]]: (-1) ** i for i in range(k + 1)})
        bds.append(tuple(cols))
    return ChainComplexData(tuple(len(b) for b in bases), tuple(bds),
                            tuple(tuple(b) for b in bases), truncated=K.dim > D)


def normalized_chain_complex(S: SimplicialSetTrunc, D: int | None = None) -> ChainComplexData:
    """Normalized chains: one generator per nondegenerate simplex, degenerate faces dropped."""
    if D is None:
        D = S.max_dim
    if D < 0:
        raise InputError("degree ceiling must be >= 0")
    if D > S.max_dim:
        raise InputError(f"simplicial set truncated at {S.max_dim}, chains requested through {D}")
    bases = [sort_tokens(S.degree(k)) for k in range(D + 1)]
    index = [{x: i for i, x in enumerate(b)} for b in bases]
    bds = []
    for k in range(1, D + 1):
        lower = index[k - 1]
        cols = []
        for x in bases[k]:
            col: dict = {}
            for i, y in enumerate(S.faces[x]):
                if y is DEGENERATE:
                    continue
                r = lower[y]
                col[r] = col.get(r, 0) + (-1) ** i
            cols.append({r: a for r, a in col.items() if a})
        bds.append(tuple(cols))
    higher_empty = all(not S.degree(k) for k in range(D + 1, S.max_dim + 1))
    truncated = not (S.complete and higher_empty)
    return ChainComplexData(tuple(len(b) for b in bases), tuple(bds),
                            tuple(tuple(b) for b in bases), truncated=truncated)


def cellular_chain_complex(cells: Sequence[Sequence[Hashable]],
                           boundary: dict, truncated: bool = False) -> ChainComplexData:
    """Chain complex from explicit cells per degree and ``boundary[cell] = {face: coeff}``."""
    index = [{c: i for i, c in enumerate(cs)} for cs in cells]
    bds = []
    for k in range(1, len(cells)):
        cols = []
        for c in cells[k]:
            cols.append({index[k - 1][f]: a for f, a in boundary.get(c, {}).items() if a})
        bds.append(tuple(cols))
    return ChainComplexData(tuple(len(cs) for cs in cells), tuple(bds),
                            tuple(tuple(cs) for cs in cells), truncated)


# -- homology -----------------------------------------------------------------------

@dataclass(frozen=True)
class HomologyResult:
    """Betti numbers (and integral torsion) in degrees ``0..len(betti)-1``.

    When ``complete`` is set, every degree above is genuinely zero; otherwise
    higher degrees were not computed.
    """

    coeffs: Coefficients
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    complete: bool

    @property
    def ceiling(self) -> int | None:
        """First degree that was not computed (None when nothing is missing)."""
        return None if self.complete else len(self.betti)

    def computed(self, k: int) -> bool:
        return self.complete or k < len(self.betti)

    def betti_at(self, k: int) -> int:
        if k < 0:
            return 0
        if k < len(self.betti):
            return self.betti[k]
        if self.complete:
            return 0
        raise InputError(f"degree {k} not computed (ceiling {len(self.betti)})")

    def torsion_at(self, k: int) -> tuple[int, ...]:
        if k < 0:
            return ()
        if k < len(self.torsion):
            return self.torsion[k]
        if self.complete:
            return ()
        raise InputError(f"degree {k} not computed (ceiling {len(self.betti)})")

    def vanishes_at(self, k: int) -> bool:
        return self.betti_at(k) == 0 and not self.torsion_at(k)

    def mod_p_dimension(self, k: int, p: int) -> int:
        return self.betti_at(k) + sum(1 for t in self.torsion_at(k) if t % p == 0)

    def profile(self, upto: int) -> list:
        """Betti numbers for degrees 0..upto with None where not computed."""
        return [self.betti_at(k) if self.computed(k) else None for k in range(upto + 1)]

    def trimmed(self) -> tuple[int, ...]:
        """Betti numbers with trailing zeros removed."""
        b = list(self.betti)
        while b and b[-1] == 0:
            b.pop()
        return tuple(b)


def homology(C: ChainComplexData, coeffs: Coefficients | str = "q") -> HomologyResult:
    coeffs = Coefficients.parse(coeffs)
    top = C.top
    ranks = [0] * (top + 2)
    tors: list[tuple[int, ...]] = [()] * (top + 2)
    for k in range(1, top + 1):
        cols = C.boundary(k)
        if not cols:
            continue
        if coeffs.is_field:
            ranks[k] = rank(cols, coeffs.field)
        else:
            snf = smith_invariants(cols, C.ranks[k - 1])
            ranks[k] = snf.rank
            tors[k - 1] = snf.torsion
    last = C.homology_ceiling()
    betti = tuple(C.ranks[k] - ranks[k] - ranks[k + 1] for k in range(last + 1))
    torsion = tuple(tors[k] for k in range(last + 1))
    return HomologyResult(coeffs, betti, torsion, complete=not C.truncated)


def complex_homology(K: SimplicialComplex, coeffs: Coefficients | str = "q",
                     maxdim: int | None = None) -> HomologyResult:
    """Homology of K, through ``maxdim`` when given (otherwise all degrees)."""
    if maxdim is None:
        return homology(chain_complex(K), coeffs)
    return homology(chain_complex(K, maxdim + 1), coeffs)


def poset_homology(P: Poset, coeffs: Coefficients | str = "q", maxdim: int | None = None) -> HomologyResult:
    return complex_homology(order_complex(P), coeffs, maxdim)


def sset_homology(S: SimplicialSetTrunc, coeffs: Coefficients | str = "q") -> HomologyResult:
    return homology(normalized_chain_complex(S), coeffs)


def euler_characteristic(C: ChainComplexData) -> int:
    return sum((-1) ** k * n for k, n in enumerate(C.ranks))


# -- induced maps ---------------------------------------------------------------------

@dataclass(frozen=True)
class DegreeMap:
    degree: int
    matrix: tuple[tuple, ...]  # rows index codomain homology basis, columns domain basis
    rank: int
    dim_source: int
    dim_target: int

    @property
    def epi(self) -> bool:
        return self.rank == self.dim_target

    @property
    def mono(self) -> bool:
        return self.rank == self.dim_source

    @property
    def iso(self) -> bool:
        return self.epi and self.mono


@dataclass(frozen=True)
class InducedMapResult:
    coeffs: Coefficients
    degrees: tuple[DegreeMap, ...]

    def __getitem__(self, k: int) -> DegreeMap:
        return self.degrees[k]

    def iso_through(self, n: int) -> bool:
        return all(self.degrees[k].iso for k in range(0, n + 1))

    def is_acyclic_map(self, m: int) -> bool:
        """Iso in degrees < m and epi in degree m (vacuous for m < 0)."""
        if m < 0:
            return True
        return self.iso_through(m - 1) and self.degrees[m].epi

    def first_failure(self, m: int) -> tuple[int, str] | None:
        for k in range(0, m):
            if not self.degrees[k].iso:
                return k, "iso"
        if m >= 0 and not self.degrees[m].epi:
            return m, "epi"
        return None


def simplicial_chain_map(f: SimplicialMap, k: int) -> list[dict]:
    """Degree-k chain map columns (domain k-simplex -> signed codomain simplex)."""
    rank = f.codomain.vertex_rank
    target = {s: i for i, s in enumerate(f.codomain.simplices(k))}
    cols = []
    for s in f.domain.simplices(k):
        img = [rank[f.vertex_map[v]] for v in s]
        if len(set(img)) < len(img):
            cols.append({})
            continue
        t = f.image(s)
        cols.append({target[t]: _permutation_sign(img)})
    return cols


def _homology_reps(C: ChainComplexData, k: int, F: Field) -> tuple[list[dict], Reducer]:
    n = C.ranks[k] if k <= C.top else 0
    if k == 0:
        cycles = [{j: 1} for j in range(n)]
    else:
        cycles = kernel_basis(C.boundary(k), F)
    R = Reducer(F, track=True)
    for col in C.boundary(k + 1):
        R.add(col)
    reps = []
    for z in cycles:
        independent, _ = R.add(z, {len(reps): 1})
        if independent:
            reps.append(z)
    return reps, R


def _apply(cols: Sequence[dict], v: dict) -> dict:
    out: dict = {}
    for j, a in v.items():
        for i, b in cols[j].items():
            out[i] = out.get(i, 0) + a * b
    return out


def induced_map_chain(CX: ChainComplexData, CY: ChainComplexData, chain_maps: Sequence[Sequence[dict]],
                      coeffs: Coefficients | str, D: int) -> InducedMapResult:
    """Induced map on homology in degrees 0..D from an explicit chain map."""
    coeffs = Coefficients.parse(coeffs)
    if not coeffs.is_field:
        raise InputError("induced maps are computed over a field; use q or fp:<p>")
    for C, name in ((CX, "domain"), (CY, "codomain")):
        if C.homology_ceiling() < D:
            raise InputError(f"{name} chain complex only determines homology through {C.homology_ceiling()}")
    F = coeffs.field
    out = []
    for k in range(D + 1):
        reps_x, _ = _homology_reps(CX, k, F)
        reps_y, RY = _homology_reps(CY, k, F)
        matrix_cols = []
        for h in reps_x:
            y = F.vector(_apply(chain_maps[k], h)) if k < len(chain_maps) else {}
            rem, coeffs_y = RY.reduce(y)
            if rem:
                raise InputError(f"chain map does not send cycles to cycles in degree {k}")
            matrix_cols.append({t: a for t, a in coeffs_y.items()})
        r = rank(matrix_cols, F)
        rows = tuple(tuple(F.norm(c.get(i, 0)) for c in matrix_cols) for i in range(len(reps_y)))
        out.append(DegreeMap(k, rows, r, len(reps_x), len(reps_y)))
    return InducedMapResult(coeffs, tuple(out))


def induced_map(f: SimplicialMap, coeffs: Coefficients | str = "q", D: int | None = None) -> InducedMapResult:
    """Induced map of a simplicial map on homology in degrees 0..D over a field."""
    coeffs = Coefficients.parse(coeffs)
    if not coeffs.is_field:
        raise InputError("induced maps are computed over a field; use q or fp:<p>")
    if D is None:
        D = max(f.domain.dim, f.codomain.dim, 0)
    CX = chain_complex(f.domain, D + 1)
    CY = chain_complex(f.codomain, D + 1)
    maps = [simplicial_chain_map(f, k) for k in range(D + 1)]
    return induced_map_chain(CX, CY, maps, coeffs, D)


# -- certificates -------------------------------------------------------------------

@dataclass(frozen=True)
class AcyclicityCertificate:
    passed: bool
    n: int
    witness_degree: int | None = None  # -1: empty, 0: disconnected, k > 0: H_k != 0
    detail: str = ""


def acyclicity_certificate(K: SimplicialComplex, n: int,
                           coeffs: Coefficients | str = "q") -> AcyclicityCertificate:
    """Nonempty, connected and H_k = 0 for 0 < k <= n (conventions for n <= -1)."""
    if n <= -2:
        return AcyclicityCertificate(True, n)
    if K.is_empty():
        return AcyclicityCertificate(False, n, -1, "empty")
    if n == -1:
        return AcyclicityCertificate(True, n)
    H = complex_homology(K, coeffs, maxdim=n)
    if H.betti_at(0) != 1:
        return AcyclicityCertificate(False, n, 0, f"{H.betti_at(0)} components")
    for k in range(1, n + 1):
        if not H.vanishes_at(k):
            return AcyclicityCertificate(False, n, k, f"H_{k}: betti {H.betti_at(k)}, torsion {list(H.torsion_at(k))}")
    return AcyclicityCertificate(True, n)


def acyclicity_level(K: SimplicialComplex, coeffs: Coefficients | str = "q") -> float:
    """Largest n with K n-acyclic: -2 empty, -1 disconnected, inf when all positive degrees vanish."""
    if K.is_empty():
        return -2
    H = complex_homology(K, coeffs)
    if H.betti_at(0) != 1:
        return -1
    for k in range(1, max(K.dim, 0) + 1):
        if not H.vanishes_at(k):
            return k - 1
    return float("inf")


@dataclass(frozen=True)
class CompareItem:
    degree: int
    kind: str  # "iso" or "surjectability"
    passed: bool
    left: object
    right: object


@dataclass(frozen=True)
class RangeReport:
    n: int
    coeffs: Coefficients
    items: tuple[CompareItem, ...]

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.items)

    def failures(self) -> list[CompareItem]:
        return [i for i in self.items if not i.passed]


def range_compare(HX: HomologyResult, HN: HomologyResult, n: int) -> RangeReport:
    """Homological shadow of an (n+1)-acyclic zig-zag from X to N.

    Degrees 0..n must agree; in degree n+1 only the necessary conditions for a
    surjection H_{n+1}(X) -> H_{n+1}(N) are checked.
    """
    if HX.coeffs != HN.coeffs:
        raise InputError("homology computed with different coefficients")
    for H, name in ((HX, "X"), (HN, "N")):
        if not H.computed(n + 1):
            raise InputError(f"homology of {name} not computed through degree {n + 1}")
    items = []
    integral = HX.coeffs.kind == "z"
    for k in range(0, n + 1):
        if integral:
            left = (HX.betti_at(k), HX.torsion_at(k))
            right = (HN.betti_at(k), HN.torsion_at(k))
        else:
            left, right = HX.betti_at(k), HN.betti_at(k)
        items.append(CompareItem(k, "iso", left == right, left, right))
    k = n + 1
    if k >= 0:
        ok = HX.betti_at(k) >= HN.betti_at(k)
        left: object = HX.betti_at(k)
        right: object = HN.betti_at(k)
        if integral:
            primes = sorted({p for t in HX.torsion_at(k) + HN.torsion_at(k) for p in prime_divisors(t)})
            dims = {p: (HX.mod_p_dimension(k, p), HN.mod_p_dimension(k, p)) for p in primes}
            ok = ok and all(a >= b for a, b in dims.values())
            left = (HX.betti_at(k), HX.torsion_at(k))
            right = (HN.betti_at(k), HN.torsion_at(k))
        items.append(CompareItem(k, "surjectability", ok, left, right))
    return RangeReport(n, HX.coeffs, tuple(items))
