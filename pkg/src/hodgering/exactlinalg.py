"""Exact rank, kernel and cokernel computations over the rationals.

Two elimination engines share one contract:

* a dense fraction-free (Bareiss) echelon form on integer rows, and
* a sparse row-insertion echelon form on integer rows stored as dicts.

Both return the *reduced* kernel basis (one vector per non-pivot column, with a
1 in that column and 0 in every other non-pivot column).  The pivot columns of
an echelon form are the greedy column basis of the matrix, so the reduced
basis depends only on the matrix and the two engines agree exactly.

``naive_rank_and_kernel`` is an independent textbook elimination over
``fractions.Fraction`` kept as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import gmpy2
from gmpy2 import mpq, mpz

from .polycore import Q

SPARSE_DENSITY = 0.25


class RationalMatrix:
    """Row-major matrix of rationals with dense or sparse storage.

    ``rows`` is a list of lists (dense) or a list of ``{col: value}`` dicts
    (sparse).  Zero entries are never stored in sparse mode.
    """

    def __init__(self, rows, ncols: int | None = None, sparse: bool | None = None):
        rows = list(rows)
        if rows and isinstance(rows[0], dict):
            if ncols is None:
                raise ValueError("sparse rows need an explicit column count")
            data = [{int(j): Q(v) for j, v in r.items() if v} for r in rows]
            is_sparse = True
        else:
            data = [[Q(v) for v in r] for r in rows]
            if ncols is None:
                ncols = len(data[0]) if data else 0
            if any(len(r) != ncols for r in data):
                raise ValueError("ragged matrix")
            is_sparse = False
        self.nrows = len(data)
        self.ncols = ncols
        self._data = data
        self._sparse = is_sparse
        for r in data if is_sparse else ():
            if r and (min(r) < 0 or max(r) >= ncols):
                raise IndexError("column index out of bounds")
        if sparse is not None and sparse != is_sparse:
            self._convert(sparse)

    def _convert(self, sparse: bool):
        if sparse:
            self._data = [{j: v for j, v in enumerate(r) if v} for r in self._data]
        else:
            dense = []
            for r in self._data:
                row = [mpq(0)] * self.ncols
                for j, v in r.items():
                    row[j] = v
                dense.append(row)
            self._data = dense
        self._sparse = sparse

    @classmethod
    def from_columns(cls, columns: Sequence[dict], nrows: int) -> "RationalMatrix":
        rows = [dict() for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows[i][j] = v
        return cls(rows, ncols=len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_sparse(self) -> bool:
        return self._sparse

    def nnz(self) -> int:
        if self._sparse:
            return sum(len(r) for r in self._data)
        return sum(1 for r in self._data for v in r if v)

    def density(self) -> float:
        size = self.nrows * self.ncols
        return self.nnz() / size if size else 0.0

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError("matrix index out of bounds")
        if self._sparse:
            return self._data[i].get(j, mpq(0))
        return self._data[i][j]

    def sparse_rows(self) -> list[dict]:
        if self._sparse:
            return [dict(r) for r in self._data]
        return [{j: v for j, v in enumerate(r) if v} for r in self._data]

    def dense_rows(self) -> list[list]:
        if not self._sparse:
            return [list(r) for r in self._data]
        out = []
        for r in self._data:
            row = [mpq(0)] * self.ncols
            for j, v in r.items():
                row[j] = v
            out.append(row)
        return out

    def transpose(self) -> "RationalMatrix":
        cols = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.sparse_rows()):
            for j, v in r.items():
                cols[j][i] = v
        return RationalMatrix(cols, ncols=self.nrows, sparse=self._sparse)

    def apply(self, v: Sequence) -> list:
        v = [Q(x) for x in v]
        out = []
        for r in self.sparse_rows():
            out.append(sum((c * v[j] for j, c in r.items()), mpq(0)))
        return out


def as_matrix(M) -> RationalMatrix:
    return M if isinstance(M, RationalMatrix) else RationalMatrix(M)


@dataclass
class KernelResult:
    rank: int
    kernel_dim: int
    kernel_basis: list = field(default_factory=list)
    pivot_columns: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# helpers


def _integer_row(values: dict) -> dict:
    """Scale a rational row to a primitive integer row (same span)."""
    if not values:
        return {}
    den = mpz(1)
    for v in values.values():
        den = gmpy2.lcm(den, v.denominator)
    row = {j: mpz(v * den) for j, v in values.items()}
    g = mpz(0)
    for v in row.values():
        g = gmpy2.gcd(g, v)
        if g == 1:
            break
    if g > 1:
        row = {j: v // g for j, v in row.items()}
    return row


def _primitive(row: dict) -> dict:
    g = mpz(0)
    for v in row.values():
        g = gmpy2.gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


def _reduced_kernel(pivots: list[tuple[int, dict]], ncols: int) -> list[list]:
    """Kernel basis from an echelon form given as (pivot column, integer row) pairs."""
    # back-substitute to reduced echelon form over Q
    pivots = sorted(pivots, key=lambda t: t[0])
    reduced: dict[int, dict] = {}
    for col, row in reversed(pivots):
        lead = row[col]
        r = {j: mpq(v, lead) for j, v in row.items()}
        for j in [j for j in r if j != col and j in reduced]:
            c = r[j]
            for k, v in reduced[j].items():
                s = r.get(k, 0) - c * v
                if s:
                    r[k] = s
                else:
                    r.pop(k, None)
        reduced[col] = r
    pivot_cols = set(reduced)
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        v = [mpq(0)] * ncols
        v[free] = mpq(1)
        for col, r in reduced.items():
            c = r.get(free)
            if c:
                v[col] = -c
        basis.append(v)
    return basis


def _bitlen(v) -> int:
    return gmpy2.bit_length(v)


# ---------------------------------------------------------------------------
# dense Bareiss


def _bareiss(rows: list[list], ncols: int) -> list[tuple[int, dict]]:
    """Fraction-free echelon form; returns (pivot column, row dict) pairs.

    Pivot rule: the leftmost column with a nonzero entry among the remaining
    rows; within it the entry of smallest bit length, then the lowest row.
    """
    rows = [list(r) for r in rows]
    m = len(rows)
    prev = mpz(1)
    r = 0
    out = []
    for c in range(ncols):
        if r == m:
            break
        best = None
        for i in range(r, m):
            v = rows[i][c]
            if v:
                b = _bitlen(v)
                if best is None or b < best[0]:
                    best = (b, i)
        if best is None:
            continue
        i = best[1]
        rows[r], rows[i] = rows[i], rows[r]
        piv_row = rows[r]
        p = piv_row[c]
        for i in range(r + 1, m):
            row = rows[i]
            a = row[c]
            if a:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - a * piv_row[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = (p * row[j]) // prev
            row[c] = mpz(0)
        out.append((c, {j: piv_row[j] for j in range(c, ncols) if piv_row[j]}))
        prev = p
        r += 1
    return out


# ---------------------------------------------------------------------------
# sparse insertion echelon


def _sparse_echelon(rows: list[dict]) -> dict[int, dict]:
    pivots: dict[int, dict] = {}
    for values in rows:
        row = _integer_row(values)
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                pivots[lead] = row
                break
            a = row[lead]
            p = prow[lead]
            g = gmpy2.gcd(a, p)
            sa, sp = p // g, a // g
            new = {j: v * sa for j, v in row.items()}
            for j, v in prow.items():
                s = new.get(j, 0) - sp * v
                if s:
                    new[j] = s
                else:
                    new.pop(j, None)
            row = _primitive(new) if new else new
    return pivots


# ---------------------------------------------------------------------------
# public API


def _choose_sparse(M: RationalMatrix, sparse: bool | None) -> bool:
    if sparse is not None:
        return sparse
    return M.density() < SPARSE_DENSITY


def _echelon(M: RationalMatrix, sparse: bool | None) -> list[tuple[int, dict]]:
    if _choose_sparse(M, sparse):
        return sorted(_sparse_echelon(M.sparse_rows()).items())
    int_rows = []
    for r in M.sparse_rows():
        ir = _integer_row(r)
        row = [mpz(0)] * M.ncols
        for j, v in ir.items():
            row[j] = v
        int_rows.append(row)
    return _bareiss(int_rows, M.ncols)


def rank(M, sparse: bool | None = None) -> int:
    M = as_matrix(M)
    if M.nrows == 0 or M.ncols == 0:
        return 0
    return len(_echelon(M, sparse))


def rank_and_kernel(M, sparse: bool | None = None) -> KernelResult:
    """Rank, kernel dimension and reduced kernel basis of ``M``.

    ``sparse`` forces a storage path; by default the sparse path is used when
    fewer than a quarter of the entries are nonzero.
    """
    M = as_matrix(M)
    if M.nrows == 0 or M.ncols == 0:
        basis = [[mpq(int(i == j)) for i in range(M.ncols)] for j in range(M.ncols)]
        return KernelResult(0, M.ncols, basis, [])
    ech = _echelon(M, sparse)
    basis = _reduced_kernel(ech, M.ncols)
    return KernelResult(len(ech), M.ncols - len(ech), basis, [c for c, _ in ech])


def cokernel_dim(M, sparse: bool | None = None) -> int:
    M = as_matrix(M)
    return M.nrows - rank(M, sparse)


def span_rank(vectors: Sequence[dict]) -> int:
    """Rank of a family of sparse vectors (dicts keyed by any hashable)."""
    keys: dict = {}
    rows = []
    for v in vectors:
        rows.append({keys.setdefault(k, len(keys)): Q(c) for k, c in v.items() if c})
    return len(_sparse_echelon(rows))


# ---------------------------------------------------------------------------
# independent oracle


def naive_rank_and_kernel(rows: Sequence[Sequence]) -> tuple[int, list[list[Fraction]]]:
    """Textbook Gauss-Jordan over ``Fraction``; returns (rank, reduced kernel basis)."""
    A = [[Fraction(int(v.numerator), int(v.denominator)) if hasattr(v, "denominator") else Fraction(v)
          for v in row] for row in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    pivot_cols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        lead = A[r][c]
        A[r] = [v / lead for v in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivot_cols.append(c)
        r += 1
        if r == m:
            break
    basis = []
    for free in range(n):
        if free in pivot_cols:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for i, c in enumerate(pivot_cols):
            v[c] = -A[i][free]
        basis.append(v)
    return len(pivot_cols), basis
