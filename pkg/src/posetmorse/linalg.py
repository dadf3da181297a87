"""Exact integer matrices, Smith normal form and integer solving.

Everything here works over Python ints, so entries never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import SolveFailure


class IntMatrix:
    """Sparse integer matrix stored as one ``{col: value}`` dict per row.

    Instances are treated as immutable once built.
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[dict[int, int]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError("row count does not match nrows")
        self._rows = [{j: v for j, v in r.items() if v} for r in rows]

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            rows.append({j: int(v) for j, v in enumerate(r) if v})
        return cls(len(data), ncols, rows)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int, int]]) -> IntMatrix:
        rows: list[dict[int, int]] = [{} for _ in range(nrows)]
        for i, j, v in entries:
            if v:
                rows[i][j] = rows[i].get(j, 0) + v
        return cls(nrows, ncols, rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def row(self, i: int) -> dict[int, int]:
        return self._rows[i]

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self._rows[i].get(j, 0)

    def entries(self) -> Iterator[tuple[int, int, int]]:
        """Nonzero entries in row-major order."""
        for i, r in enumerate(self._rows):
            for j in sorted(r):
                yield i, j, r[j]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def is_zero(self) -> bool:
        return not any(self._rows)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_entries(self.ncols, self.nrows, ((j, i, v) for i, j, v in self.entries()))

    def select_columns(self, cols: Sequence[int]) -> IntMatrix:
        where = {c: k for k, c in enumerate(cols)}
        rows = [{where[j]: v for j, v in r.items() if j in where} for r in self._rows]
        return IntMatrix(self.nrows, len(cols), rows)

    def column(self, j: int) -> list[int]:
        return [r.get(j, 0) for r in self._rows]

    def apply(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.ncols:
            raise ValueError(f"vector of length {len(vec)} applied to {self.shape} matrix")
        return [sum(v * vec[j] for j, v in r.items()) for r in self._rows]

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        rows = []
        for r in self._rows:
            acc: dict[int, int] = {}
            for k, a in r.items():
                for j, b in other._rows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            rows.append(acc)
        return IntMatrix(self.nrows, other.ncols, rows)

    def _combine(self, other: IntMatrix, sign: int) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        rows = []
        for a, b in zip(self._rows, other._rows):
            acc = dict(a)
            for j, v in b.items():
                acc[j] = acc.get(j, 0) + sign * v
            rows.append(acc)
        return IntMatrix(self.nrows, self.ncols, rows)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        return self._combine(other, 1)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self._combine(other, -1)

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.nrows, self.ncols, [{j: -v for j, v in r.items()} for r in self._rows])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"IntMatrix({self.nrows}x{self.ncols}, {self.to_dense()})"


def _as_dense(M: IntMatrix | Sequence[Sequence[int]]) -> tuple[list[list[int]], int, int]:
    if isinstance(M, IntMatrix):
        return M.to_dense(), M.nrows, M.ncols
    rows = [list(map(int, r)) for r in M]
    ncols = len(rows[0]) if rows else 0
    return rows, len(rows), ncols


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class SNFResult:
    """``left @ M @ right == diag(diagonal)`` with ``left``/``right`` unimodular.

    ``diagonal`` has length ``min(m, n)``; the first ``rank`` entries are
    positive and each divides the next, the rest are zero.
    """

    diagonal: tuple[int, ...]
    rank: int
    left: list[list[int]]
    right: list[list[int]]
    left_inv: list[list[int]]
    right_inv: list[list[int]]

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.diagonal[: self.rank]


def smith_normal_form(M: IntMatrix | Sequence[Sequence[int]]) -> SNFResult:
    """Smith normal form with unimodular transforms and their inverses.

    Pivot: the nonzero entry of smallest absolute value in the remaining
    block, ties broken by row-major position.
    """
    A, m, n = _as_dense(M)
    U, Ui, V, Vi = _identity(m), _identity(m), _identity(n), _identity(n)

    def swap_rows(i: int, k: int) -> None:
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]
        for row in Ui:
            row[i], row[k] = row[k], row[i]

    def add_row(i: int, k: int, c: int) -> None:
        # row_i += c * row_k
        Ai, Ak = A[i], A[k]
        for j in range(n):
            if Ak[j]:
                Ai[j] += c * Ak[j]
        Ui_, Uk = U[i], U[k]
        for j in range(m):
            if Uk[j]:
                Ui_[j] += c * Uk[j]
        for row in Ui:
            if row[i]:
                row[k] -= c * row[i]

    def negate_row(i: int) -> None:
        A[i] = [-v for v in A[i]]
        U[i] = [-v for v in U[i]]
        for row in Ui:
            row[i] = -row[i]

    def swap_cols(j: int, l: int) -> None:
        for row in A:
            row[j], row[l] = row[l], row[j]
        for row in V:
            row[j], row[l] = row[l], row[j]
        Vi[j], Vi[l] = Vi[l], Vi[j]

    def add_col(j: int, l: int, c: int) -> None:
        # col_j += c * col_l
        for row in A:
            if row[l]:
                row[j] += c * row[l]
        for row in V:
            if row[l]:
                row[j] += c * row[l]
        Vj, Vl = Vi[j], Vi[l]
        for k in range(n):
            if Vj[k]:
                Vl[k] -= c * Vj[k]

    rank = 0
    for s in range(min(m, n)):
        while True:
            best = None
            for i in range(s, m):
                row = A[i]
                for j in range(s, n):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != s:
                swap_rows(s, i)
            if j != s:
                swap_cols(s, j)
            p = A[s][s]
            dirty = False
            for i in range(s + 1, m):
                if A[i][s]:
                    q = A[i][s] // p
                    if q:
                        add_row(i, s, -q)
                    dirty = dirty or A[i][s] != 0
            for j in range(s + 1, n):
                if A[s][j]:
                    q = A[s][j] // p
                    if q:
                        add_col(j, s, -q)
                    dirty = dirty or A[s][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(s + 1, m) for j in range(s + 1, n) if A[i][j] % p),
                None,
            )
            if bad is not None:
                add_row(s, bad, 1)
                continue
            break
        if s >= m or s >= n or A[s][s] == 0:
            break
        if A[s][s] < 0:
            negate_row(s)
        rank += 1

    diagonal = tuple(A[k][k] for k in range(min(m, n)))
    return SNFResult(diagonal, rank, U, V, Ui, Vi)


def _normalize_diagonal(values: list[int]) -> list[int]:
    """Turn a list of nonzero diagonal entries into invariant factors."""
    from math import gcd

    d = sorted(abs(v) for v in values)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def invariant_factors(M: IntMatrix) -> list[int]:
    """Nonzero Smith invariant factors of ``M``, ascending.

    Sparse elimination on unit pivots first; whatever block survives is
    handed to :func:`smith_normal_form`. The result does not depend on the
    pivot order because invariant factors are unique.
    """
    rows = {i: dict(r) for i, r in enumerate(M._rows) if r}
    cols: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)

    units = 0
    progress = True
    while progress and rows:
        progress = False
        for i in sorted(rows):
            r = rows.get(i)
            if r is None:
                continue
            if not r:
                del rows[i]
                continue
            candidates = [j for j, v in r.items() if v in (1, -1)]
            if not candidates:
                continue
            j = min(candidates, key=lambda c: (len(cols[c]), c))
            p = r[j]
            for k in sorted(cols[j] - {i}):
                rk = rows[k]
                q = rk[j] * p  # p is a unit so p == 1/p
                for c, v in r.items():
                    nv = rk.get(c, 0) - q * v
                    if nv:
                        if c not in rk:
                            cols.setdefault(c, set()).add(k)
                        rk[c] = nv
                    elif c in rk:
                        del rk[c]
                        cols[c].discard(k)
                if not rk:
                    del rows[k]
            for c in r:
                cols[c].discard(i)
            del rows[i]
            units += 1
            progress = True

    factors = [1] * units
    if rows:
        live_cols = sorted({j for r in rows.values() for j in r})
        where = {c: k for k, c in enumerate(live_cols)}
        dense = [[0] * len(live_cols) for _ in rows]
        for a, i in enumerate(sorted(rows)):
            for j, v in rows[i].items():
                dense[a][where[j]] = v
        rest = smith_normal_form(dense)
        factors.extend(rest.invariant_factors)
    return _normalize_diagonal(factors) if any(f != 1 for f in factors) else factors


def rank(M: IntMatrix) -> int:
    return len(invariant_factors(M))


def solve_integer(A: IntMatrix | Sequence[Sequence[int]], b: Sequence[int], snf: SNFResult | None = None) -> list[int]:
    """An integer solution ``y`` of ``A y = b``; raises SolveFailure if none exists."""
    dense, m, n = _as_dense(A)
    if len(b) != m:
        raise ValueError("right-hand side has wrong length")
    if snf is None:
        snf = smith_normal_form(dense)
    z = [sum(u * bj for u, bj in zip(row, b)) for row in snf.left]
    w = [0] * n
    for i in range(m):
        d = snf.diagonal[i] if i < snf.rank else 0
        if d == 0:
            if z[i]:
                raise SolveFailure("system has no solution")
            continue
        if z[i] % d:
            raise SolveFailure("system has no integer solution")
        w[i] = z[i] // d
    y = [sum(row[k] * w[k] for k in range(n)) for row in snf.right]
    return y


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def dense_matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> list[list[int]]:
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(ncols)] for i in range(len(A))]
