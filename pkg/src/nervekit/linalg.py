"""Exact sparse linear algebra for boundary matrices.

Vectors and matrix columns are ``dict[int, value]`` with zero entries absent.
Two engines:

* :class:`Reducer` -- incremental column reduction over a field (the rationals,
  with values kept as ``int`` whenever integral, or ``Z/p``), optionally
  recording which original columns each reduced column came from.
* :func:`smith_invariants` -- invariant factors of an integer matrix: sparse
  elimination on unit pivots followed by a dense Smith normal form of the
  remaining core with smallest-absolute-value pivoting.

No floating point anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = dict


class Field:
    """Arithmetic for one coefficient field; ``p == 0`` means the rationals."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        self.p = p

    def norm(self, a):
        if self.p:
            return a % self.p
        if type(a) is Fraction and a.denominator == 1:
            return a.numerator
        return a

    def div(self, a, b):
        if self.p:
            return a * pow(b, -1, self.p) % self.p
        if type(a) is int and type(b) is int:
            if a % b == 0:
                return a // b
            return Fraction(a, b)
        return self.norm(Fraction(a) / b)

    def vector(self, v: Vector) -> Vector:
        out = {}
        for k, a in v.items():
            a = self.norm(a)
            if a:
                out[k] = a
        return out

    def axpy(self, v: Vector, c, w: Vector) -> None:
        """v -= c * w, in place."""
        p = self.p
        for k, b in w.items():
            x = v.get(k, 0) - c * b
            if p:
                x %= p
            elif type(x) is Fraction and x.denominator == 1:
                x = x.numerator
            if x:
                v[k] = x
            else:
                v.pop(k, None)

    def __repr__(self) -> str:
        return f"Field(p={self.p})"


QQ = Field(0)


class Reducer:
    """Span of a growing set of vectors, kept in echelon form keyed by lowest index.

    With ``track=True`` every stored vector carries a combination ``{tag: coeff}``
    expressing it through the tags of the vectors that were added, so
    :meth:`reduce` can also return coordinates.
    """

    def __init__(self, field: Field, track: bool = False):
        self.field = field
        self.track = track
        self.pivots: dict[int, tuple[Vector, Vector]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, v: Vector) -> tuple[Vector, Vector]:
        """Return ``(remainder, coeffs)`` with ``v = remainder + sum coeffs[t] * tagged_vector(t)``."""
        F = self.field
        v = F.vector(v)
        coeffs: Vector = {}
        pivots = self.pivots
        while v:
            low = max(v)
            hit = pivots.get(low)
            if hit is None:
                break
            w, tag = hit
            c = v[low]  # pivot entries are normalized to 1
            F.axpy(v, c, w)
            if self.track and tag:
                F.axpy(coeffs, -c, tag)
        return v, coeffs

    def add(self, v: Vector, tag: Vector | None = None) -> tuple[bool, Vector]:
        """Insert ``v``; returns (independent?, coeffs of the dependency when not)."""
        r, coeffs = self.reduce(v)
        if not r:
            return False, coeffs
        F = self.field
        low = max(r)
        inv = r[low]
        if inv != 1:
            r = {k: F.div(a, inv) for k, a in r.items()}
        if self.track:
            t = dict(tag or {})
            F.axpy(t, 1, coeffs)  # t - coeffs: the stored vector is v - sum coeffs*tags
            if inv != 1:
                t = {k: F.div(a, inv) for k, a in t.items()}
            self.pivots[low] = (r, t)
        else:
            self.pivots[low] = (r, {})
        return True, coeffs


def rank(columns: Iterable[Vector], field: Field) -> int:
    R = Reducer(field)
    return sum(1 for c in columns if R.add(c)[0])


def kernel_basis(columns: Sequence[Vector], field: Field) -> list[Vector]:
    """Basis of the null space of the matrix with the given columns (as column-index vectors)."""
    R = Reducer(field, track=True)
    out = []
    for j, col in enumerate(columns):
        independent, coeffs = R.add(col, {j: 1})
        if not independent:
            # col_j = sum coeffs[t] col_t  =>  e_j - sum coeffs e_t in the kernel
            z = {j: 1}
            field.axpy(z, 1, coeffs)
            out.append(z)
    return out


# -- integers ------------------------------------------------------------------

@dataclass(frozen=True)
class SmithResult:
    invariants: tuple[int, ...]  # nonzero invariant factors d1 | d2 | ..., all positive

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariants if d > 1)


def smith_invariants(columns: Sequence[Vector], nrows: int) -> SmithResult:
    """Invariant factors of the integer matrix with the given sparse columns."""
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for j, col in enumerate(columns):
        for i, a in col.items():
            if a:
                rows.setdefault(i, {})[j] = a
                cols.setdefault(j, set()).add(i)
    ones = 0
    # phase 1: eliminate unit pivots (Schur complement stays integral);
    # sweep rows shortest-first and repeat while progress is made
    progress = True
    while progress:
        progress = False
        for i in sorted(rows, key=lambda r: len(rows[r])):
            row = rows.get(i)
            if not row:
                continue
            j = min((c for c, a in row.items() if a == 1 or a == -1),
                    key=lambda c: len(cols[c]), default=None)
            if j is None:
                continue
            _eliminate_unit(rows, cols, i, j)
            ones += 1
            progress = True
    # phase 2: dense SNF of what is left
    live_rows = sorted(rows)
    live_cols = sorted(c for c in cols if cols[c])
    dense = [[rows[r].get(c, 0) for c in live_cols] for r in live_rows]
    core = _dense_smith(dense)
    return SmithResult(tuple([1] * ones + core))


def _eliminate_unit(rows, cols, i, j):
    prow = rows.pop(i)
    a = prow[j]
    for c in prow:
        cols[c].discard(i)
    for r in cols.pop(j):
        row = rows[r]
        factor = row.pop(j) * a  # a = ±1, so b/a = b*a
        for c, v in prow.items():
            if c == j:
                continue
            x = row.get(c, 0) - factor * v
            if x:
                if c not in row:
                    cols[c].add(r)
                row[c] = x
            elif c in row:
                del row[c]
                cols[c].discard(r)
        if not row:
            del rows[r]
    for c in prow:
        if c != j and c in cols and not cols[c]:
            del cols[c]


def _dense_smith(A: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form (nonzero entries, in divisibility order)."""
    A = [row[:] for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < m and t < n:
        # smallest nonzero |entry| in the trailing block
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                a = row[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        ri, rt = A[i], A[t]
                        for j in range(t, n):
                            ri[j] -= q * rt[j]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for row in A[t:]:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if done:
                # enforce divisibility by folding in an offending row
                bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
                if bad is None:
                    break
                rt, rb = A[t], A[bad]
                for j in range(t, n):
                    rt[j] += rb[j]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            _, i, j = min(cand)
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return _normalize_invariants(diag)


def _normalize_invariants(ds: list[int]) -> list[int]:
    """Re-derive a divisibility chain from any diagonal (same cokernel)."""
    ds = [d for d in ds if d]
    changed = True
    while changed:
        changed = False
        for i in range(len(ds)):
            for j in range(i + 1, len(ds)):
                a, b = ds[i], ds[j]
                if b % a:
                    g = gcd(a, b)
                    ds[i], ds[j] = g, a * b // g
                    changed = True
    return sorted(ds)
